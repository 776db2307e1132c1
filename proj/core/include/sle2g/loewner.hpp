#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace sle2g {

using cplx = std::complex<double>;

// Driving function sampled on a time grid; speed[i] is the capacity rate on
// [times[i], times[i+1]].
struct DrivingPath {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> speed;

    static DrivingPath constant(double w, double total, double dt);
    static DrivingPath from_samples(std::vector<double> times, std::vector<double> values);

    void validate() const;
    double total_capacity() const;
    // Path restricted to capacity ≥ s, re-based so that its capacity starts at 0.
    DrivingPath shifted(double s) const;

    void write_csv(std::ostream& os) const;
    static DrivingPath read_csv(std::istream& is);
};

struct FlowPoint {
    cplx image;
    bool swallowed = false;
    double exit_capacity = 0;  // capacity at which the point was swallowed
};

struct FlowResult {
    std::vector<FlowPoint> points;
    double capacity = 0;
};

inline constexpr double kDefaultMicroStep = 1e-4;

// Piecewise-constant slit decomposition of a path: one (driver, capacity)
// pair per micro-step.
struct SlitStep {
    double w;
    double delta;
};
std::vector<SlitStep> slit_steps(const DrivingPath& path, double t, double micro_dt = kDefaultMicroStep);

FlowResult radial_flow(const DrivingPath& path, const std::vector<cplx>& points, double t,
                       double micro_dt = kDefaultMicroStep);
FlowResult covering_flow(const DrivingPath& path, const std::vector<cplx>& points, double t,
                         double micro_dt = kDefaultMicroStep);
FlowResult chordal_flow(const DrivingPath& path, const std::vector<cplx>& points, double t,
                        double micro_dt = kDefaultMicroStep);

cplx tip_position(const DrivingPath& path, double t, double micro_dt = kDefaultMicroStep);
// Minimum of |η(s)| over the tips at the grid times s ≤ t (and at t itself).
double min_distance_to_origin(const DrivingPath& path, double t, double micro_dt = kDefaultMicroStep);

// Exact single-step maps for a slit of capacity δ driven at angle w.
cplx radial_slit_forward(cplx z, double w, double delta);
cplx radial_slit_inverse(cplx h, double w, double delta);
// Boundary point in covering coordinates; keeps the lift of v.
double covering_slit_forward(double v, double w, double delta);
cplx covering_slit_forward(cplx zeta, double w, double delta);
// Modulus x of the tip of a radial slit of capacity δ: 4x/(1+x)² = e^{−δ}.
double slit_tip_modulus(double delta);

// Growing record of slit steps supporting cheap tip reconstruction by
// backward flow. Used by the curve samplers.
class RadialTrace {
public:
    void push(double w, double delta);
    void truncate(std::size_t n);
    std::size_t size() const { return cw_.size(); }
    double capacity(std::size_t n) const { return cap_[n]; }
    double driver(std::size_t k) const { return w_[k]; }

    // Tip after n steps (n ≥ 1), i.e. g_n^{-1}(e^{i w_{n−1}}).
    cplx tip(std::size_t n) const;
    // g_n^{-1}(h) for an interior point h.
    cplx pullback(cplx h, std::size_t n) const;
    // Tips after each count in ns (strictly increasing) in a single backward sweep.
    void tips(const std::vector<std::size_t>& ns, std::vector<cplx>& out) const;
    // Same, then pulled back through `base` (a trace whose hull was mapped out first).
    void tips_through(const std::vector<std::size_t>& ns, const RadialTrace* base, std::size_t base_n,
                      std::vector<cplx>& out) const;

private:
    std::vector<double> w_, cw_, sw_, e_, tipx_, cap_{0.0};
};

}  // namespace sle2g
