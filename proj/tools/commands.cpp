#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "sle2g/checks.hpp"
#include "sle2g/density.hpp"
#include "sle2g/montecarlo.hpp"
#include "sle2g/timecurve.hpp"

namespace sle2g::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path output_path(const RunConfig& c, const std::string& suffix) {
    fs::create_directories(c.out_dir);
    return fs::path(c.out_dir) / (c.prefix + suffix);
}

// Writes CSV text with a leading schema_version column.
void write_versioned(const fs::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    std::istringstream in(body);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out << (header ? std::string("schema_version") : std::to_string(kSchemaVersion)) << ',' << line << '\n';
        header = false;
    }
}

// Reads a versioned CSV and returns it without the schema_version column.
std::string read_versioned(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + p.string());
    std::string line, body;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const std::string first = line.substr(0, comma);
        if (comma == std::string::npos || first != (header ? std::string("schema_version") : std::to_string(kSchemaVersion)))
            throw ValidationError(p.string() + ": missing or unsupported schema_version");
        body += line.substr(comma + 1) + '\n';
        header = false;
    }
    if (header) throw ValidationError(p.string() + " is empty");
    return body;
}

void write_json(const fs::path& p, const json& j) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << j.dump(2) << '\n';
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw ValidationError("cannot open " + p.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(p.string() + ": " + e.what());
    }
}

json header(const std::string& command, const RunConfig& c) {
    return {{"schema_version", kSchemaVersion}, {"command", command}, {"config", to_json(c)}};
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double to_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw ValidationError("malformed number: " + s);
    return v;
}

std::vector<EstimateRecord> parse_records(const std::string& body) {
    std::istringstream in(body);
    std::string line;
    std::getline(in, line);
    if (line != EstimateRecord::csv_header()) throw ValidationError("not an estimate CSV: " + line);
    std::vector<EstimateRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != 10) throw ValidationError("estimate CSV: expected 10 columns");
        EstimateRecord r;
        r.kappa = to_double(c[0]);
        r.method = c[1];
        r.r_or_t = to_double(c[2]);
        r.estimate = to_double(c[3]);
        r.std_error = to_double(c[4]);
        r.ess = to_double(c[5]);
        r.n_paths = std::stoull(c[6]);
        r.dt = to_double(c[7]);
        r.seed = std::stoull(c[8]);
        r.flags = c[9];
        out.push_back(r);
    }
    return out;
}

std::string records_csv(const std::vector<EstimateRecord>& recs) {
    std::ostringstream ss;
    write_records_csv(ss, recs);
    return ss.str();
}

void print_records(const std::vector<EstimateRecord>& recs) {
    for (const auto& r : recs)
        std::printf("%-13s r_or_t=%-8g estimate=%.6g stderr=%.3g ess=%.4g dt=%g %s\n", r.method.c_str(), r.r_or_t,
                    r.estimate, r.std_error, r.ess, r.dt, r.flags.c_str());
}

std::vector<EstimateRecord> curve_records(const KappaContext& ctx, const RunConfig& c,
                                          const std::vector<CurvePathResult>& paths, double dt) {
    auto recs = aggregate_two_curve(ctx, c.boundary, c.r_list, paths, dt, *c.seed);
    const bool usable = std::any_of(recs.begin(), recs.end(), [](const EstimateRecord& r) {
        return r.std_error > 0 && !r.has_flag("insufficient") && !r.has_flag("degenerate");
    });
    if (usable) {
        auto c0 = c0_from_hits(ctx, c.boundary, recs);
        c0.dt = dt;
        recs.push_back(c0);
    }
    return recs;
}

ZPathEnsemble parse_z_paths(const std::string& body, const RunConfig& c, double dt) {
    std::istringstream in(body);
    std::string line;
    std::getline(in, line);
    if (line != "path_id,t,z1,z2,log_weight,absorbed") throw ValidationError("not a Z-path CSV: " + line);
    ZPathEnsemble ens;
    ens.kappa = c.kappa;
    ens.dt = dt;
    ens.t_grid = c.t_list;
    ens.master_seed = *c.seed;
    ens.first_index = c.first_index;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 6) throw ValidationError("Z-path CSV: expected 6 columns");
        ens.records.push_back({std::stoull(f[0]), to_double(f[1]), to_double(f[2]), to_double(f[3]), to_double(f[4]),
                               f[5] == "1"});
    }
    if (ens.records.size() % ens.t_grid.size() != 0) throw ValidationError("Z-path CSV: incomplete path");
    ens.n_paths = ens.records.size() / ens.t_grid.size();
    return ens;
}

struct SimOutput {
    std::string paths_csv;
    std::vector<EstimateRecord> recs;
};

SimOutput run_method(const KappaContext& ctx, const RunConfig& c, double dt) {
    SimOutput o;
    std::ostringstream paths;
    if (c.method == "z-weighted") {
        ZSimOptions opt;
        opt.record_times = c.t_list;
        opt.first_index = c.first_index;
        opt.threads = c.threads;
        const auto ens = simulate_z_ensemble(ctx, c.z0, c.t_list.back(), dt, c.n_paths, *c.seed, opt);
        ens.write_csv(paths);
        o.recs = survival_records(ctx, c.z0, ens);
    } else {
        CurveOptions opt;
        opt.first_index = c.first_index;
        opt.threads = c.threads;
        opt.check_stride = c.check_stride;
        if (c.method == "curves") {
            const auto p = sample_two_curve_paths(ctx, c.boundary, c.r_list, c.n_paths, dt, *c.seed, opt);
            write_curve_paths_csv(paths, c.r_list, p);
            o.recs = curve_records(ctx, c, p, dt);
        } else {
            const double r_min = *std::min_element(c.r_list.begin(), c.r_list.end());
            const auto p = sample_intersection_paths(ctx, c.boundary, r_min, c.n_paths, dt, *c.seed, opt);
            write_intersection_paths_csv(paths, p);
            o.recs = aggregate_intersection(ctx, c.boundary, c.r_list, p, dt, *c.seed);
        }
    }
    o.paths_csv = paths.str();
    return o;
}

std::vector<EstimateRecord> records_from_paths(const KappaContext& ctx, const RunConfig& c, const std::string& body) {
    std::istringstream in(body);
    if (c.method == "z-weighted") return survival_records(ctx, c.z0, parse_z_paths(body, c, c.dt));
    if (c.method == "curves") {
        std::vector<double> r_list;
        const auto p = read_curve_paths_csv(in, r_list);
        if (r_list != c.r_list) throw ValidationError("curve path CSV radii differ from the sidecar");
        return curve_records(ctx, c, p, c.dt);
    }
    return aggregate_intersection(ctx, c.boundary, c.r_list, read_intersection_paths_csv(in), c.dt, *c.seed);
}

}  // namespace

int cmd_check(const RunConfig& c) {
    auto ctx = KappaContext::make(c.kappa);
    if (c.alpha0_shift != 0.0) ctx = ctx.with_alpha0_shift(c.alpha0_shift);
    json checks = json::array();
    bool ok = true;
    for (const auto& r : run_identity_suite(ctx, c.n_max)) {
        ok = ok && r.passed();
        checks.push_back({{"name", r.name}, {"tolerance", r.tolerance}, {"residual", r.residual}, {"passed", r.passed()}});
        std::printf("%-20s residual %.3e  tolerance %.1e  %s\n", r.name.c_str(), r.residual, r.tolerance,
                    r.passed() ? "PASS" : "FAIL");
    }
    json rep = header("check", c);
    rep["checks"] = checks;
    rep["passed"] = ok;
    const auto path = output_path(c, "_check.json");
    write_json(path, rep);
    std::printf("%s; report written to %s\n", ok ? "all checks passed" : "CHECK FAILURE", path.string().c_str());
    return ok ? 0 : 1;
}

int cmd_density(const RunConfig& c) {
    const auto ctx = KappaContext::make(c.kappa);
    const SpectralBasis basis(ctx, c.n_max);
    const double h = kPi / c.grid;
    auto node = [&](int i) { return (i + 0.5) * h; };

    std::ostringstream inf, tr, sv;
    for (auto* s : {&inf, &tr, &sv}) s->precision(17);
    inf << "z1,z2,density\n";
    tr << "t,z1,z2,density,tail_bound\n";
    for (int i = 0; i < c.grid; ++i)
        for (int j = 0; j < c.grid; ++j) inf << node(i) << ',' << node(j) << ',' << tilde_pZ_infty(basis, {node(i), node(j)}) << '\n';
    for (double t : c.t_list)
        for (int i = 0; i < c.grid; ++i)
            for (int j = 0; j < c.grid; ++j) {
                const auto r = tilde_pZ_t(basis, c.z0, {node(i), node(j)}, t);
                tr << t << ',' << node(i) << ',' << node(j) << ',' << r.value << ',' << r.tail_bound << '\n';
            }

    sv << "t,survival,asymptote,ratio,tail_bound\n";
    const int K = static_cast<int>(std::floor(c.survival_t_max / c.survival_dt + 1e-9));
    double st = 0, sl = 0, stt = 0, stl = 0;
    int m = 0;
    for (int k = 0; k <= K; ++k) {
        const double t = k * c.survival_dt;
        const auto s = survival_P2(basis, c.z0, t);
        const double a = survival_asymptote(basis, c.z0, t);
        sv << t << ',' << s.value << ',' << a << ',' << s.value / a << ',' << s.tail_bound << '\n';
        if (t >= c.slope_window[0] - 1e-12 && t <= c.slope_window[1] + 1e-12 && s.value > 0) {
            const double l = std::log(s.value);
            st += t;
            sl += l;
            stt += t * t;
            stl += t * l;
            ++m;
        }
    }
    if (m < 2) throw ValidationError("slope_window holds fewer than two survival grid points");
    const double slope = (m * stl - st * sl) / (m * stt - st * st);

    const auto p_inf = output_path(c, "_pZ_infty.csv"), p_t = output_path(c, "_pZ_t.csv"),
               p_s = output_path(c, "_survival.csv"), p_j = output_path(c, ".json");
    write_versioned(p_inf, inf.str());
    write_versioned(p_t, tr.str());
    write_versioned(p_s, sv.str());
    json side = header("density", c);
    side["Z"] = basis.survival_cache().Z;
    side["alpha0"] = ctx.alpha0;
    side["survival_slope"] = slope;
    side["slope_minus_target"] = slope + ctx.alpha0;
    side["files"] = {p_inf.filename().string(), p_t.filename().string(), p_s.filename().string()};
    write_json(p_j, side);
    std::printf("Z = %.15g\nsurvival slope over [%g, %g] = %.10f (target %.10f)\n", basis.survival_cache().Z,
                c.slope_window[0], c.slope_window[1], slope, -ctx.alpha0);
    return 0;
}

int cmd_simulate(RunConfig c) {
    if (!c.seed) {
        std::random_device rd;
        c.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        std::printf("generated seed %llu\n", static_cast<unsigned long long>(*c.seed));
    }
    const auto ctx = KappaContext::make(c.kappa);
    const auto base = run_method(ctx, c, c.dt);
    auto all = base.recs;
    const auto p_paths = output_path(c, "_paths.csv"), p_est = output_path(c, "_estimates.csv"),
               p_j = output_path(c, ".json");
    json side = header("simulate", c);
    side["path_range"] = {c.first_index, c.first_index + c.n_paths};
    side["files"] = {{"paths", p_paths.filename().string()}, {"estimates", p_est.filename().string()}};
    if (c.dt_halving) {
        const auto half = run_method(ctx, c, c.dt / 2);
        all.insert(all.end(), half.recs.begin(), half.recs.end());
        std::ostringstream st;
        st.precision(17);
        st << "method,r_or_t,dt,estimate,stderr,dt_half,estimate_half,stderr_half,difference,difference_stderr\n";
        for (std::size_t i = 0; i < base.recs.size(); ++i) {
            const auto &a = base.recs[i], &b = half.recs[i];
            st << a.method << ',' << a.r_or_t << ',' << a.dt << ',' << a.estimate << ',' << a.std_error << ',' << b.dt
               << ',' << b.estimate << ',' << b.std_error << ',' << a.estimate - b.estimate << ','
               << std::hypot(a.std_error, b.std_error) << '\n';
        }
        const auto p_dt = output_path(c, "_dt_study.csv");
        write_versioned(p_dt, st.str());
        side["files"]["dt_study"] = p_dt.filename().string();
    }
    write_versioned(p_paths, base.paths_csv);
    write_versioned(p_est, records_csv(all));
    write_json(p_j, side);
    print_records(all);
    return 0;
}

int cmd_fit(const RunConfig& c, const std::string& input) {
    const auto recs = parse_records(read_versioned(input));
    if (recs.empty()) throw ValidationError(input + " holds no records");
    const std::string method = recs.front().method;
    const double dt = recs.front().dt;
    std::vector<PowerLawPoint> pts;
    for (const auto& r : recs) {
        if (r.method != method || r.dt != dt) continue;
        if (r.has_flag("insufficient") || r.has_flag("degenerate") || r.has_flag("low_ess") || !(r.estimate > 0))
            continue;
        if (!c.fit_window.empty() && (r.r_or_t < c.fit_window[0] || r.r_or_t > c.fit_window[1])) continue;
        if (c.model == "power" && !(r.r_or_t > 0 && r.r_or_t < 1)) continue;
        pts.push_back({c.model == "power" ? r.r_or_t : std::exp(r.r_or_t), r.estimate, r.std_error});
    }
    const bool any_zero = std::any_of(pts.begin(), pts.end(), [](const PowerLawPoint& p) { return !(p.std_error > 0); });
    const bool all_zero = std::all_of(pts.begin(), pts.end(), [](const PowerLawPoint& p) { return !(p.std_error > 0); });
    if (any_zero && !all_zero)
        pts.erase(std::remove_if(pts.begin(), pts.end(), [](const PowerLawPoint& p) { return !(p.std_error > 0); }),
                  pts.end());
    if (pts.size() < 2) throw ValidationError("fewer than two usable records for the fit");
    const auto f = fit_power_law(pts);
    const double alpha0 = KappaContext::make(recs.front().kappa).alpha0;
    json out = header("fit", c);
    out["input"] = input;
    out["method"] = method;
    out["dt"] = dt;
    out["model"] = c.model;
    out["exponent"] = f.exponent;
    out["exponent_stderr"] = f.exponent_stderr;
    out["intercept"] = f.intercept;
    out["intercept_stderr"] = f.intercept_stderr;
    out["n_points"] = pts.size();
    out["alpha0"] = alpha0;
    out["relative_deviation"] = std::abs(f.exponent) / alpha0 - 1.0;
    const auto path = output_path(c, "_fit.json");
    write_json(path, out);
    std::printf("%s fit of %s records: exponent %.6f +- %.6f, intercept %.6g +- %.3g (alpha0 %.6f)\n",
                c.model.c_str(), method.c_str(), f.exponent, f.exponent_stderr, f.intercept, f.intercept_stderr,
                alpha0);
    return 0;
}

int cmd_report(const RunConfig& c, const std::vector<std::string>& sidecars) {
    if (sidecars.empty()) throw ValidationError("report needs at least one simulate sidecar");
    struct Part {
        RunConfig cfg;
        fs::path paths;
    };
    std::vector<Part> parts;
    for (const auto& s : sidecars) {
        const json j = read_json(s);
        if (j.value("command", "") != "simulate") throw ValidationError(s + " is not a simulate sidecar");
        if (j.value("schema_version", 0) != kSchemaVersion) throw ValidationError(s + ": unsupported schema_version");
        RunConfig cfg;
        merge_json(cfg, j.at("config"));
        parts.push_back({cfg, fs::path(s).parent_path() / j.at("files").at("paths").get<std::string>()});
    }
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) { return a.cfg.first_index < b.cfg.first_index; });
    auto key = [](RunConfig k) {
        k.first_index = k.n_paths = 0;
        k.out_dir = k.prefix = "";
        k.threads = 1;
        k.dt_halving = false;
        return to_json(k).dump();
    };
    RunConfig merged = parts.front().cfg;
    std::string body;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        if (key(p.cfg) != key(merged)) throw ValidationError("sidecars describe different runs");
        if (i > 0 && p.cfg.first_index != merged.first_index + merged.n_paths)
            throw ValidationError("path-index ranges must be disjoint and contiguous");
        if (i > 0) merged.n_paths += p.cfg.n_paths;
        const std::string part = read_versioned(p.paths);
        body += i == 0 ? part : part.substr(part.find('\n') + 1);
    }
    merged.out_dir = c.out_dir;
    merged.prefix = c.prefix;
    merged.dt_halving = false;
    const auto ctx = KappaContext::make(merged.kappa);
    const auto recs = records_from_paths(ctx, merged, body);
    const auto p_paths = output_path(merged, "_paths.csv"), p_est = output_path(merged, "_estimates.csv"),
               p_j = output_path(merged, ".json");
    write_versioned(p_paths, body);
    write_versioned(p_est, records_csv(recs));
    json side = header("simulate", merged);
    side["path_range"] = {merged.first_index, merged.first_index + merged.n_paths};
    side["files"] = {{"paths", p_paths.filename().string()}, {"estimates", p_est.filename().string()}};
    side["merged_from"] = sidecars;
    write_json(p_j, side);
    std::printf("merged %zu parts covering paths [%llu, %llu)\n", parts.size(),
                static_cast<unsigned long long>(merged.first_index),
                static_cast<unsigned long long>(merged.first_index + merged.n_paths));
    print_records(recs);
    return 0;
}

}  // namespace sle2g::cli
