#pragma once

// Golden fixtures: a manifest of (command line, golden table, tolerance)
// entries, replayed in-process and compared cell by cell.

#include <optional>
#include <string>
#include <vector>

#include "fdassoc/cli/table.hpp"

namespace fdassoc::cli {

struct Tolerance {
    double rel = 0.0;
    double abs = 0.0;
};

struct Fixture {
    std::string name;
    std::vector<std::string> args;  // paths relative to the manifest directory
    std::string golden;             // relative to the manifest directory
    Tolerance tolerance;
};

std::vector<Fixture> load_manifest(const std::string& path);

/// Describes the first difference, or nothing when the tables agree. The
/// tool version line of the provenance is ignored.
std::optional<std::string> compare_tables(const ResultTable& golden, const ResultTable& actual, const Tolerance& tol);

struct ReplayOutcome {
    bool pass = false;
    std::string detail;
};

/// Runs one fixture with `root` as the base for relative paths. With
/// `regenerate`, the golden file is rewritten instead of compared.
ReplayOutcome replay_fixture(const Fixture& f, const std::string& root, bool regenerate = false,
                             double tolerance_scale = 1.0);

}  // namespace fdassoc::cli
