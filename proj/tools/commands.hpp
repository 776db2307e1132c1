#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace sle2g::cli {

// Each returns the process exit code: 0 success, 1 check failure.
int cmd_check(const RunConfig& cfg);
int cmd_density(const RunConfig& cfg);
int cmd_simulate(RunConfig cfg);
int cmd_fit(const RunConfig& cfg, const std::string& input);
// Merges simulate outputs over disjoint, contiguous path-index ranges.
int cmd_report(const RunConfig& cfg, const std::vector<std::string>& sidecars);

}  // namespace sle2g::cli
