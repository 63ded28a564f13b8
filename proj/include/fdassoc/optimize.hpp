#pragma once

// Association weights that maximize the decoupled full-duplex utility:
// the closed form (DL by received power, UL by distance) and a grid-search
// verifier that also reports the best coupled assignment.

#include <cstddef>
#include <string>
#include <vector>

#include "fdassoc/model.hpp"

namespace fdassoc {

/// Weights in scenario-file tier order, scaled so the first tier has 1.
struct WeightAssignment {
    std::vector<double> ul;
    std::vector<double> dl;
};

struct ClosedFormWeights {
    WeightAssignment weights;
    /// Common sensitivity, no UE power cap, and constant sigma_b * P across tiers.
    bool assumptions_hold = true;
    std::vector<std::string> warnings;
};

ClosedFormWeights optimal_weights_closed_form(const Scenario& s);

/// Effective densities of the closed form, in normalized tier order.
std::vector<double> optimal_dl_densities(const Scenario& s);
std::vector<double> optimal_ul_densities(const Scenario& s);

struct SubproblemObjectives {
    double p1;
    double p2;
};

/// The two decoupled subproblem objectives with unit constants, for candidate
/// effective densities in normalized tier order. Throws ValidationError when
/// sum_j lambda_j / Lambda_j differs from 1 by more than 1e-9 on either link.
SubproblemObjectives evaluate_p1_p2_objectives(const Scenario& s,
                                               const std::vector<double>& dl_density,
                                               const std::vector<double>& ul_density);

/// Returns a copy with new weights (file order) and tiers re-sorted.
Scenario with_weights(const Scenario& s, const WeightAssignment& w);

struct GridSpec {
    double span_db = 20.0;
    int points = 9;
    int threads = 1;
};

struct OptimizationResult {
    WeightAssignment assignment;
    double utility = 0.0;
    std::string method;
    std::size_t evaluations = 0;
    double runner_up_gap = 0.0;
    /// Grid index of the optimum per free ratio (file tiers 2..K).
    std::vector<int> dl_index;
    std::vector<int> ul_index;  // -1 marks the U = D candidate
};

struct GridSearchResult {
    OptimizationResult dua;
    OptimizationResult cua;
    /// Best DUA over U at every D grid point >= the CUA value there.
    bool dua_dominates = true;
    /// Ratio grids used, as multiples of the closed-form ratios.
    std::vector<double> offsets;
};

GridSearchResult grid_search_weights(const Scenario& s, const GridSpec& grid);

}  // namespace fdassoc
