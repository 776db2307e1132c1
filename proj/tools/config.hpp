#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sle2g/trig.hpp"
#include "sle2g/types.hpp"

namespace sle2g::cli {

inline constexpr int kSchemaVersion = 1;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every parameter of a run. Precedence: built-in defaults, then the JSON
// config file, then command-line flags.
struct RunConfig {
    double kappa = 6.0;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string out_dir = ".";
    std::string prefix = "sle2g";

    // check
    double alpha0_shift = 0.0;
    int n_max = 40;

    // density
    ZState z0{kPi / 2, kPi / 2};
    int grid = 64;
    std::vector<double> t_list{0.5, 1.0, 2.0, 4.0};
    double survival_t_max = 8.0;
    double survival_dt = 0.25;
    std::vector<double> slope_window{4.0, 8.0};

    // simulate
    std::string method = "z-weighted";
    BoundaryConfig boundary = BoundaryConfig::symmetric();
    std::vector<double> r_list{0.05, 0.1, 0.2};
    std::uint64_t n_paths = 1000;
    std::uint64_t first_index = 0;
    double dt = 1e-3;
    bool dt_halving = false;
    int check_stride = 1;

    // fit
    std::string model = "power";
    std::vector<double> fit_window;
};

nlohmann::json to_json(const RunConfig& c);
// Overwrites the fields present in j; unknown keys are rejected.
void merge_json(RunConfig& c, const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Checks every field used by the command before any computation.
void validate(const RunConfig& c, const std::string& command);

}  // namespace sle2g::cli
