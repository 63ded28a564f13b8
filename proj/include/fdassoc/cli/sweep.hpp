#pragma once

// Parameter sweeps over scenario fields addressed by dotted/indexed paths,
// e.g. `tiers[0].density_per_km2`, `power_control.epsilon`, `tiers[*].sic_bs_db`.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdassoc/model.hpp"
#include "fdassoc/rate.hpp"

namespace fdassoc::cli {

/// Sets every field the path resolves to. Throws ConfigError when the path
/// does not resolve to an existing numeric field.
void set_path(nlohmann::json& scenario, const std::string& path, double value);
/// Value at a path; a `[*]` path must resolve to equal values.
double get_path(const nlohmann::json& scenario, const std::string& path);

enum class GridScale { Linear, Log };

struct Grid {
    GridScale scale = GridScale::Linear;
    double min = 0.0;
    double max = 1.0;
    int points = 2;

    std::vector<double> values() const;  // endpoints exact
};

/// `target = factor * value + offset`, applied after the swept parameter.
struct Lock {
    std::string path;
    double factor = 1.0;
    double offset = 0.0;
};

enum SweepQuantity : unsigned {
    kSweepUtility = 1,
    kSweepComponents = 2,
    kSweepHdNetwork = 4,
    kSweepPsi = 8,
    kSweepInterference = 16,
    kSweepSimInterference = 32,
    kSweepSimUtility = 64,
};

struct SweepSpec {
    std::string parameter;
    /// When set, grid values are ratios to this field and the parameter is
    /// set to value * field.
    std::optional<std::string> relative_to;
    Grid grid;
    std::vector<Lock> locks;
    std::vector<Mode> modes;
    unsigned quantities = kSweepUtility;
};

SweepSpec parse_sweep(const nlohmann::json& doc);
SweepSpec load_sweep(const std::string& path);

/// The scenario at one grid point.
RawScenario apply_sweep_point(const RawScenario& base, const SweepSpec& spec, double value);

}  // namespace fdassoc::cli
