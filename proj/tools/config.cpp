#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sle2g/specfun.hpp"
#include "sle2g/trig.hpp"

namespace sle2g::cli {

using nlohmann::json;

json to_json(const RunConfig& c) {
    json j;
    j["kappa"] = c.kappa;
    j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    j["threads"] = c.threads;
    j["out_dir"] = c.out_dir;
    j["prefix"] = c.prefix;
    j["alpha0_shift"] = c.alpha0_shift;
    j["n_max"] = c.n_max;
    j["z0"] = {c.z0.z1, c.z0.z2};
    j["grid"] = c.grid;
    j["t_list"] = c.t_list;
    j["survival_t_max"] = c.survival_t_max;
    j["survival_dt"] = c.survival_dt;
    j["slope_window"] = c.slope_window;
    j["method"] = c.method;
    j["boundary"] = {c.boundary.w1, c.boundary.v1, c.boundary.w2, c.boundary.v2};
    j["r_list"] = c.r_list;
    j["n_paths"] = c.n_paths;
    j["first_index"] = c.first_index;
    j["dt"] = c.dt;
    j["dt_halving"] = c.dt_halving;
    j["check_stride"] = c.check_stride;
    j["model"] = c.model;
    j["fit_window"] = c.fit_window;
    return j;
}

void merge_json(RunConfig& c, const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "kappa") c.kappa = v.get<double>();
            else if (key == "seed") c.seed = v.is_null() ? std::nullopt : std::optional(v.get<std::uint64_t>());
            else if (key == "threads") c.threads = v.get<unsigned>();
            else if (key == "out_dir") c.out_dir = v.get<std::string>();
            else if (key == "prefix") c.prefix = v.get<std::string>();
            else if (key == "alpha0_shift") c.alpha0_shift = v.get<double>();
            else if (key == "n_max") c.n_max = v.get<int>();
            else if (key == "z0") {
                const auto z = v.get<std::vector<double>>();
                if (z.size() != 2) throw ValidationError("z0 must have two entries");
                c.z0 = {z[0], z[1]};
            } else if (key == "grid") c.grid = v.get<int>();
            else if (key == "t_list") c.t_list = v.get<std::vector<double>>();
            else if (key == "survival_t_max") c.survival_t_max = v.get<double>();
            else if (key == "survival_dt") c.survival_dt = v.get<double>();
            else if (key == "slope_window") c.slope_window = v.get<std::vector<double>>();
            else if (key == "method") c.method = v.get<std::string>();
            else if (key == "boundary") {
                const auto b = v.get<std::vector<double>>();
                if (b.size() != 4) throw ValidationError("boundary must list w1, v1, w2, v2");
                c.boundary = {b[0], b[1], b[2], b[3]};
            } else if (key == "r_list") c.r_list = v.get<std::vector<double>>();
            else if (key == "n_paths") c.n_paths = v.get<std::uint64_t>();
            else if (key == "first_index") c.first_index = v.get<std::uint64_t>();
            else if (key == "dt") c.dt = v.get<double>();
            else if (key == "dt_halving") c.dt_halving = v.get<bool>();
            else if (key == "check_stride") c.check_stride = v.get<int>();
            else if (key == "model") c.model = v.get<std::string>();
            else if (key == "fit_window") c.fit_window = v.get<std::vector<double>>();
            else if (key == "schema_version") {
                if (v.get<int>() != kSchemaVersion) throw ValidationError("unsupported schema_version");
            } else throw ValidationError("unknown config key: " + key);
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("config " + path + ": " + e.what());
    }
    RunConfig c;
    merge_json(c, j);
    return c;
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

void require_list(const std::vector<double>& v, const std::string& name, bool sorted) {
    require(!v.empty(), name + " must be nonempty");
    for (double x : v) require(std::isfinite(x), name + " entries must be finite");
    if (sorted) require(std::is_sorted(v.begin(), v.end()), name + " must be sorted");
}

}  // namespace

void validate(const RunConfig& c, const std::string& command) {
    try {
        KappaContext::make(c.kappa);
    } catch (const std::domain_error& e) {
        throw ValidationError(e.what());
    }
    require(c.threads >= 1, "threads must be at least 1");
    if (command == "check") {
        require(std::isfinite(c.alpha0_shift), "alpha0_shift must be finite");
        require(c.n_max >= 12 && c.n_max <= 120, "n_max must lie in [12,120]");
    } else if (command == "density") {
        require(c.n_max >= 4 && c.n_max <= 120, "n_max must lie in [4,120]");
        require(c.z0.z1 > 0 && c.z0.z1 < kPi && c.z0.z2 > 0 && c.z0.z2 < kPi, "z0 must lie in (0,pi)^2");
        require(c.grid >= 2 && c.grid <= 1024, "grid must lie in [2,1024]");
        require_list(c.t_list, "t_list", true);
        for (double t : c.t_list) require(t > 0, "density times must be positive");
        require(c.survival_dt > 0 && c.survival_t_max > 0, "survival grid must be positive");
        require(c.slope_window.size() == 2 && c.slope_window[0] < c.slope_window[1] && c.slope_window[0] >= 0,
                "slope_window must be an increasing pair of nonnegative times");
        require(c.slope_window[1] <= c.survival_t_max, "slope_window must lie inside the survival grid");
    } else if (command == "simulate") {
        require(c.method == "z-weighted" || c.method == "curves" || c.method == "intersection",
                "method must be z-weighted, curves or intersection");
        require(c.n_paths >= 1, "n_paths must be positive");
        require(c.dt > 0 && std::isfinite(c.dt), "dt must be positive");
        if (c.method == "z-weighted") {
            require(c.z0.z1 > 0 && c.z0.z1 < kPi && c.z0.z2 > 0 && c.z0.z2 < kPi,
                    "z0 must lie in (0,pi)^2");
            require_list(c.t_list, "t_list", true);
            for (double t : c.t_list) require(t >= 0, "times must be nonnegative");
        } else {
            try {
                c.boundary.validate();
            } catch (const std::domain_error& e) {
                throw ValidationError(e.what());
            }
            require_list(c.r_list, "r_list", false);
            for (double r : c.r_list) require(r > 0 && r < 0.25, "hit radii must lie in (0,1/4)");
            require(c.check_stride >= 1, "check_stride must be at least 1");
            if (c.method == "intersection") require(c.kappa > 4, "intersection estimates need kappa in (4,8)");
        }
    } else if (command == "fit") {
        require(c.model == "power" || c.model == "exp", "model must be power or exp");
        require(c.fit_window.empty() || (c.fit_window.size() == 2 && c.fit_window[0] < c.fit_window[1]),
                "fit_window must be empty or an increasing pair");
    }
}

}  // namespace sle2g::cli
