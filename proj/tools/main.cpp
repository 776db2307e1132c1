#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace sle2g;
using namespace sle2g::cli;

namespace {

class Flags {
public:
    explicit Flags(CLI::App* app) : app_(app) {}

    template <class T>
    Flags& add(const std::string& name, T RunConfig::*field, const std::string& desc) {
        auto value = std::make_shared<T>();
        CLI::Option* opt = app_->add_option(name, *value, desc);
        apply_.push_back([opt, value, field](RunConfig& c) {
            if (opt->count()) c.*field = *value;
        });
        return *this;
    }

    Flags& pair(const std::string& name, ZState RunConfig::*field, const std::string& desc) {
        auto value = std::make_shared<std::vector<double>>();
        CLI::Option* opt = app_->add_option(name, *value, desc)->expected(2);
        apply_.push_back([opt, value, field](RunConfig& c) {
            if (opt->count()) c.*field = {(*value)[0], (*value)[1]};
        });
        return *this;
    }

    Flags& toggle(const std::string& name, bool RunConfig::*field, const std::string& desc) {
        auto value = std::make_shared<bool>(false);
        CLI::Option* opt = app_->add_flag(name, *value, desc);
        apply_.push_back([opt, value, field](RunConfig& c) {
            if (opt->count()) c.*field = *value;
        });
        return *this;
    }

    Flags& boundary() {
        auto value = std::make_shared<std::vector<double>>();
        CLI::Option* opt = app_->add_option("--boundary", *value, "marked angles w1 v1 w2 v2")->expected(4);
        apply_.push_back([opt, value](RunConfig& c) {
            if (opt->count()) c.boundary = {(*value)[0], (*value)[1], (*value)[2], (*value)[3]};
        });
        return *this;
    }

    Flags& common(std::string& config_path) {
        app_->add_option("--config", config_path, "JSON config file");
        add("--kappa", &RunConfig::kappa, "SLE parameter in (0,8)");
        add("--threads", &RunConfig::threads, "worker threads");
        add("--out-dir", &RunConfig::out_dir, "output directory");
        add("--prefix", &RunConfig::prefix, "output file prefix");
        auto seed = std::make_shared<std::uint64_t>();
        CLI::Option* opt = app_->add_option("--seed", *seed, "master seed");
        apply_.push_back([opt, seed](RunConfig& c) {
            if (opt->count()) c.seed = *seed;
        });
        return *this;
    }

    void apply(RunConfig& c) const {
        for (const auto& f : apply_) f(c);
    }

private:
    CLI::App* app_;
    std::vector<std::function<void(RunConfig&)>> apply_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sle2g: two-curve SLE Green's function toolkit"};
    app.require_subcommand(1);
    app.footer(
        "Parameter precedence: built-in defaults, then the --config JSON file, then command-line flags.\n"
        "Exit codes: 0 success, 1 check failure, 2 validation error, 3 runtime error.");

    std::string config_path;
    std::string input;
    std::vector<std::string> inputs;
    std::vector<Flags> flags;

    auto* check = app.add_subcommand("check", "run the identity and property suite");
    flags.emplace_back(check);
    flags.back().common(config_path).add("--alpha0-shift", &RunConfig::alpha0_shift, "perturb alpha0 (sensitivity probe)")
        .add("--n-max", &RunConfig::n_max, "spectral truncation degree");

    auto* density = app.add_subcommand("density", "spectral densities and survival curves");
    flags.emplace_back(density);
    flags.back().common(config_path).add("--n-max", &RunConfig::n_max, "spectral truncation degree")
        .pair("--z0", &RunConfig::z0, "starting point z1 z2")
        .add("--grid", &RunConfig::grid, "grid points per axis")
        .add("--t-list", &RunConfig::t_list, "times of the transition-density grids")
        .add("--survival-t-max", &RunConfig::survival_t_max, "last survival time")
        .add("--survival-dt", &RunConfig::survival_dt, "survival time step")
        .add("--slope-window", &RunConfig::slope_window, "time window of the slope fit");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
    flags.emplace_back(simulate);
    flags.back().common(config_path).add("--method", &RunConfig::method, "z-weighted, curves or intersection")
        .pair("--z0", &RunConfig::z0, "starting point z1 z2")
        .add("--t-list", &RunConfig::t_list, "survival times")
        .boundary()
        .add("--r-list", &RunConfig::r_list, "hit radii in (0,1/4)")
        .add("--n-paths", &RunConfig::n_paths, "number of paths")
        .add("--first-index", &RunConfig::first_index, "index of the first path")
        .add("--dt", &RunConfig::dt, "time or capacity step")
        .toggle("--dt-halving", &RunConfig::dt_halving, "also run at dt/2 and emit paired records")
        .add("--check-stride", &RunConfig::check_stride, "steps between tip checks");

    auto* fit = app.add_subcommand("fit", "power-law or exponential fit of an estimate CSV");
    flags.emplace_back(fit);
    fit->add_option("input", input, "estimate CSV")->required();
    flags.back().common(config_path).add("--model", &RunConfig::model, "power or exp")
        .add("--fit-window", &RunConfig::fit_window, "range of r_or_t used");

    auto* report = app.add_subcommand("report", "merge simulate outputs over path-index ranges");
    flags.emplace_back(report);
    report->add_option("sidecars", inputs, "simulate sidecar JSON files")->required();
    flags.back().common(config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const auto& f : flags) f.apply(cfg);
        const std::string cmd = app.get_subcommands().front()->get_name();
        validate(cfg, cmd);
        if (cmd == "check") return cmd_check(cfg);
        if (cmd == "density") return cmd_density(cfg);
        if (cmd == "simulate") return cmd_simulate(cfg);
        if (cmd == "fit") return cmd_fit(cfg, input);
        return cmd_report(cfg, inputs);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return 3;
    }
}
