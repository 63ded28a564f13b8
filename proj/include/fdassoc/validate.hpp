#pragma once

// Analytic counterparts of the simulator's estimates and the z-score report
// that compares them.

#include <string>
#include <vector>

#include "fdassoc/model.hpp"
#include "fdassoc/sim/simulator.hpp"

namespace fdassoc {

/// Analytic value for a simulator tag (see sim::simulate for the tag names).
/// Throws ConfigError for unknown tags.
double analytic_reference(const Scenario& s, const std::string& tag);

struct ValidationRow {
    std::string tag;
    double analytic;
    double simulated;
    double std_error;
    std::size_t n_samples;
    double z;  // NaN when the estimate is undefined
    bool pass;
};

/// Rows are checked against |z| <= z_limit. A zero standard error passes only
/// when analytic and simulated agree to 1e-12 relative.
std::vector<ValidationRow> compare_with_analysis(const Scenario& s, const std::vector<sim::SimEstimate>& estimates,
                                                 double z_limit = 3.0);

/// Utility of the half-duplex network in which the DL and UL links each use
/// half of the band: HD_DL + HD_UL - 2 ln 2.
double hd_network_utility(const Scenario& s);

}  // namespace fdassoc
