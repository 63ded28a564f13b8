#pragma once

// Mean interference and self-interference at a typical BS (UL) and a typical
// UE (DL), with the pair-correlation models of the interfering processes.

#include <cstddef>
#include <vector>

#include "fdassoc/model.hpp"

namespace fdassoc {

enum class PairKind { DlToDl, UlToUl, DlToUl, UlToDl };

/// Interferer-density multiplier around a receiver. DlToDl and UlToUl are
/// hard exclusions at `exclusion_radius`; DlToUl and UlToDl thin the process
/// by 1 - exp(-pi * repulsion_density * r^2) beyond `min_distance`.
struct PairCorrelation {
    PairKind kind;
    double exclusion_radius = 0.0;
    double repulsion_density = 0.0;
    double min_distance = 0.0;

    double operator()(double r) const;
};

struct MeanInterference {
    double total = 0.0;
    std::vector<double> per_tier_bs_part;
    std::vector<double> per_tier_ue_part;
};

/// int_d^inf (1 - exp(-pi lambda r^2)) r^{1-alpha} dr.
double k1(double d, double alpha, double lambda);

/// E[min(rho_i G^eps R^{eps alpha}, P_max) R^{2-alpha} 1{R > d_o}] / (rho_i G^eps)
/// with R the UL serving distance of tier i.
double k2(const Scenario& s, std::size_t i);

/// Repulsion density of tier-i BSs around a typical BS.
double bs_repulsion_density(const Scenario& s, std::size_t i);

MeanInterference mean_ul_interference(const Scenario& s, std::size_t k);
double mean_ul_self_interference(const Scenario& s, std::size_t k);

/// BS part conditioned on the DL serving distance r_j (> 0).
MeanInterference mean_dl_interference(const Scenario& s, std::size_t j, double r_j);
/// Unconditional in r_j; finite only for alpha < 4.
MeanInterference mean_dl_interference_unconditional(const Scenario& s, std::size_t j);
double mean_dl_self_interference(const Scenario& s, std::size_t k);

/// sum_i 2 pi lambda_i (D_j/D_i)^{(2-alpha)/alpha} P_i / (G (alpha-2)): the DL
/// BS interference at serving distance r is this times r^{2-alpha}.
double dl_bs_interference_scale(const Scenario& s, std::size_t j);

}  // namespace fdassoc
