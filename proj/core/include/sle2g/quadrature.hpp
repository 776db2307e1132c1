#pragma once

#include <vector>

namespace sle2g {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

// n-point Gauss–Jacobi rule on [−1,1] for the weight (1−x)^α (1+x)^β,
// computed by Golub–Welsch.
QuadRule gauss_jacobi(int n, double alpha, double beta);

// Truncated tanh–sinh rule on (a,b) with step 2^{-level}, cut where the node
// distance to an endpoint drops below 1e-15·(b−a). Endpoint singularities
// need no special handling; a factor x^{−s} loses O((1e-15)^{1−s}) mass.
QuadRule tanh_sinh_rule(double a, double b, int level);

}  // namespace sle2g
