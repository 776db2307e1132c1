#include "sle2g/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace sle2g {

QuadRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1 || !(alpha > -1.0 && beta > -1.0)) throw std::domain_error("gauss_jacobi: invalid parameters");
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 1);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag(k) = k == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double m = k + 1.0;
            const double t = 2.0 * m + ab;
            sub(k) = std::sqrt(4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0)));
        }
    }
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = diag(0);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        for (int k = 0; k < n; ++k) rule.nodes[k] = es.eigenvalues()(k);
        const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                               std::lgamma(ab + 2.0);
        for (int k = 0; k < n; ++k) {
            const double v = es.eigenvectors()(0, k);
            rule.weights[k] = std::exp(log_mu0) * v * v;
        }
        return rule;
    }
    rule.weights[0] = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                               std::lgamma(ab + 2.0));
    return rule;
}

QuadRule tanh_sinh_rule(double a, double b, int level) {
    const double h = std::ldexp(1.0, -level);
    const double half = 0.5 * (b - a);
    const double hp = 1.5707963267948966;
    QuadRule rule;
    for (int k = 0;; ++k) {
        const double t = k * h;
        const double u = hp * std::sinh(t);
        // 1 − tanh(u) computed without cancellation
        const double e = std::exp(-2.0 * u);
        const double one_minus = 2.0 * e / (1.0 + e);
        const double w = h * hp * std::cosh(t) / (std::cosh(u) * std::cosh(u)) * half;
        const double d = half * one_minus;
        if (d < 1e-15 * (b - a) || w < 1e-300) break;
        if (k == 0) {
            rule.nodes.push_back(a + half);
            rule.weights.push_back(w);
        } else {
            rule.nodes.push_back(a + d);
            rule.weights.push_back(w);
            rule.nodes.push_back(b - d);
            rule.weights.push_back(w);
        }
    }
    return rule;
}

}  // namespace sle2g
