#pragma once

#include <cmath>

#include "sle2g/autodiff.hpp"

namespace sle2g {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

// Half-angle wrappers: sin₂(x) = sin(x/2), cos₂(x) = cos(x/2), cot₂(x) = cot(x/2).
template <class T>
T sin2(const T& x) {
    using std::sin;
    return sin(x * 0.5);
}

template <class T>
T cos2(const T& x) {
    using std::cos;
    return cos(x * 0.5);
}

template <class T>
T cot2(const T& x) {
    using std::cos;
    using std::sin;
    return cos(x * 0.5) / sin(x * 0.5);
}

// cot₂′ = −(1 + cot₂²)/2
template <class T>
T cot2_d1(const T& x) {
    const T c = cot2(x);
    return -(1.0 + c * c) * 0.5;
}

// cot₂″ = cot₂(1 + cot₂²)/2
template <class T>
T cot2_d2(const T& x) {
    const T c = cot2(x);
    return c * (1.0 + c * c) * 0.5;
}

// cot₂‴ = −(1 + cot₂²)(1 + 3cot₂²)/4
template <class T>
T cot2_d3(const T& x) {
    const T c = cot2(x);
    return -(1.0 + c * c) * (1.0 + 3.0 * c * c) * 0.25;
}

}  // namespace sle2g
