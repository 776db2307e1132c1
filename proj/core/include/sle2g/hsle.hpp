#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sle2g/loewner.hpp"
#include "sle2g/specfun.hpp"
#include "sle2g/types.hpp"

namespace sle2g {

// Marked covering angles of a radial hSLE: start w0, target winf, force
// points v1, v2, ordered w0 > v1 > v2 > winf > w0 − 2π or the reverse.
struct HsleMarks {
    double w0 = 0, v1 = 0, v2 = 0, winf = 0;
    void validate() const;
    // Distance from w0 to the nearest other mark on the circle.
    double gap() const;
    // Smallest distance between circularly adjacent marks.
    double min_separation() const;
};

// Drift of ŵ₀ in the radial hSLE SDE.
double hsle_drift(const KappaContext& ctx, double w0, double winf, double v1, double v2);
// Marks of curve j of a 2-SLE with link pattern (w1 → v1; w2 → v2).
HsleMarks hsle_marks(const BoundaryConfig& cfg, int j);

// Euler–Maruyama radial hSLE that records its slits in a RadialTrace and
// carries extra boundary points along the flow. Near a mark the local step
// shrinks to gap²/(16κ); the chain terminates once the gap falls below
// collision_gap, the step no longer advances the capacity in floating
// point, or the driver crosses a mark.
class HsleChain {
public:
    static constexpr double kCollisionGap = 1e-9;

    HsleChain(const KappaContext& ctx, const HsleMarks& marks, double dt, std::uint64_t seed,
              double collision_gap = kCollisionGap);

    std::size_t add_companion(double v);
    // One step; false once terminated.
    bool step();

    const HsleMarks& marks() const { return m_; }
    double companion(std::size_t i) const { return extra_[i]; }
    const RadialTrace& trace() const { return trace_; }
    std::size_t steps() const { return trace_.size(); }
    double capacity() const { return trace_.capacity(trace_.size()); }
    bool terminated() const { return dead_; }
    double last_drift() const { return drift_; }
    double collision_tolerance() const { return tol_; }

private:
    const KappaContext* ctx_;
    HsleMarks m_;
    double dt_, tol_;
    double drift_ = 0;
    bool dead_ = false;
    std::vector<double> extra_;
    RadialTrace trace_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

struct HsleStop {
    enum Kind { radius, capacity } kind = capacity;
    double value = 1.0;
};

struct HsleRun {
    DrivingPath path;
    // Companion trajectories aligned with path.times.
    std::vector<double> v1, v2, winf;
    // Drift used on each interval.
    std::vector<double> drift;
    bool reached = false;     // stop event reached
    bool terminated = false;  // collision before the stop
    double min_distance = 1;  // over the checked tips
};

HsleRun simulate_hsle(const KappaContext& ctx, const BoundaryConfig& cfg, int j, double dt, std::uint64_t seed,
                      const HsleStop& stop);

}  // namespace sle2g
