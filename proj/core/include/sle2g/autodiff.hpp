#pragma once

#include <cmath>

namespace sle2g {

// Hyper-dual number v + d1 ε₁ + d2 ε₂ + d12 ε₁ε₂ with ε₁² = ε₂² = 0.
// Seeding ε₁ and ε₂ with directions u, w yields the directional derivatives
// in d1, d2 and the second mixed derivative uᵀ H w in d12.
struct HyperDual {
    double v = 0, d1 = 0, d2 = 0, d12 = 0;

    HyperDual() = default;
    HyperDual(double x) : v(x) {}  // NOLINT(google-explicit-constructor)
    HyperDual(double x, double a, double b, double ab) : v(x), d1(a), d2(b), d12(ab) {}

    HyperDual& operator+=(const HyperDual& o) { v += o.v; d1 += o.d1; d2 += o.d2; d12 += o.d12; return *this; }
    HyperDual& operator-=(const HyperDual& o) { v -= o.v; d1 -= o.d1; d2 -= o.d2; d12 -= o.d12; return *this; }
    HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
    HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

    friend HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
    friend HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
    friend HyperDual operator-(const HyperDual& a) { return {-a.v, -a.d1, -a.d2, -a.d12}; }
    friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
        return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + a.v * b.d2,
                a.d12 * b.v + a.d1 * b.d2 + a.d2 * b.d1 + a.v * b.d12};
    }
    friend HyperDual operator/(const HyperDual& a, const HyperDual& b) { return a * inv(b); }

    friend HyperDual lift(const HyperDual& x, double f, double df, double d2f) {
        return {f, df * x.d1, df * x.d2, df * x.d12 + d2f * x.d1 * x.d2};
    }
    friend HyperDual inv(const HyperDual& x) {
        const double r = 1.0 / x.v;
        return lift(x, r, -r * r, 2.0 * r * r * r);
    }
    friend HyperDual sin(const HyperDual& x) { return lift(x, std::sin(x.v), std::cos(x.v), -std::sin(x.v)); }
    friend HyperDual cos(const HyperDual& x) { return lift(x, std::cos(x.v), -std::sin(x.v), -std::cos(x.v)); }
    friend HyperDual tan(const HyperDual& x) {
        const double t = std::tan(x.v);
        return lift(x, t, 1.0 + t * t, 2.0 * t * (1.0 + t * t));
    }
    friend HyperDual exp(const HyperDual& x) {
        const double e = std::exp(x.v);
        return lift(x, e, e, e);
    }
    friend HyperDual log(const HyperDual& x) { return lift(x, std::log(x.v), 1.0 / x.v, -1.0 / (x.v * x.v)); }
    friend HyperDual sqrt(const HyperDual& x) {
        const double s = std::sqrt(x.v);
        return lift(x, s, 0.5 / s, -0.25 / (s * x.v));
    }
    friend HyperDual pow(const HyperDual& x, double p) {
        const double f = std::pow(x.v, p);
        return lift(x, f, p * f / x.v, p * (p - 1.0) * f / (x.v * x.v));
    }
};

inline double value_of(double x) { return x; }
inline double value_of(const HyperDual& x) { return x.v; }

// Applies a scalar function with known value and first two derivatives.
inline double lift(double, double f, double, double) { return f; }

}  // namespace sle2g
