#pragma once

// The command implementations behind the `fdassoc` tool. Each returns a
// table; the tool only parses flags and writes output.

#include <optional>
#include <string>
#include <vector>

#include "fdassoc/cli/table.hpp"
#include "fdassoc/optimize.hpp"
#include "fdassoc/rate.hpp"
#include "fdassoc/sim/simulator.hpp"

namespace fdassoc::cli {

struct SimOptions {
    sim::SimConfig config;
    unsigned quantities = sim::kAllQuantities;
    std::vector<Mode> modes = all_modes();
    /// When set, one CSV row per replication is written here.
    std::optional<std::string> samples_path;
};

/// Parses a comma-separated list such as "FD_DUA,HD_DL" (or "all").
std::vector<Mode> parse_mode_list(const std::string& list);
/// association,distances,interference,utility or all.
unsigned parse_quantity_list(const std::string& list);

ResultTable cmd_analyze(const std::string& scenario_path, const std::vector<Mode>& modes);
ResultTable cmd_sweep(const std::string& scenario_path, const std::string& sweep_path, const SimOptions& sim);
ResultTable cmd_simulate(const std::string& scenario_path, const SimOptions& sim);

struct ValidationReport {
    ResultTable table;
    bool pass = true;
};
ValidationReport cmd_validate(const std::string& scenario_path, const SimOptions& sim, double z_limit = 3.0);

enum class OptimizeMethod { ClosedForm, Grid, Both };
OptimizeMethod parse_optimize_method(const std::string& name);
ResultTable cmd_optimize(const std::string& scenario_path, OptimizeMethod method, const GridSpec& grid);

}  // namespace fdassoc::cli
