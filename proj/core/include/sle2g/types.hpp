#pragma once

namespace sle2g {

// Four marked boundary angles with the alternating ordering
// w1 > v1 > w2 > v2 > w1 − 2π.
struct BoundaryConfig {
    double w1 = 0, v1 = 0, w2 = 0, v2 = 0;
    void validate() const;
    static BoundaryConfig symmetric();
};

// (Z1, Z2) = (W1 − V1, W2 − V2) along the simultaneous-growth time curve.
struct ZState {
    double z1 = 0, z2 = 0;
    void validate() const;
};

}  // namespace sle2g
