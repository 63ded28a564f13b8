#pragma once

// Mean rate utility E[ln R^DL] + E[ln R^UL] (ln of nats/s/Hz) for the seven
// operating modes. All per-tier vectors are in normalized tier order.

#include <cstddef>
#include <string>
#include <vector>

#include "fdassoc/assoc.hpp"
#include "fdassoc/model.hpp"

namespace fdassoc {

enum class Mode { FdDua, FdCua, Fd3nt, LegacyDl, LegacyUl, HdDl, HdUl };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& name);  // throws ConfigError
std::vector<Mode> all_modes();

struct RateReport {
    Mode mode = Mode::FdDua;
    double total = 0.0;
    bool has_dl = false;
    bool has_ul = false;
    double dl_component = 0.0;  // ln R_o^DL - dl_penalty when has_dl
    double ul_component = 0.0;
    double dl_penalty = 0.0;
    double ul_penalty = 0.0;
    /// Penalties conditioned on the (DL tier, UL tier) cell. Single-link modes
    /// use the diagonal.
    Matrix dl_pair_penalty;
    Matrix ul_pair_penalty;
    Matrix psi;
    std::vector<double> a1;
    double a2 = 0.0;
    std::vector<double> a3;
    Matrix k3;
    std::vector<double> k4;
    std::vector<double> tx_power_mean;
};

/// DL BS interference scale: the mean BS interference at serving distance r is a1 * r^{2-alpha}.
double a1(const Scenario& s, std::size_t j);
/// Noise plus mean UE-to-UE interference.
double a2(const Scenario& s);
/// Noise plus mean interference at a tier-k BS.
double a3(const Scenario& s, std::size_t k);
/// 1 / E[R_j^alpha | (j,k)].
double k3(const Scenario& s, std::size_t j, std::size_t k);
/// (pi Lambda_k^UL)^{alpha/2} rho_k G^eps E[R^alpha / min(rho_k G^eps R^{eps alpha}, P_max)].
double k4(const Scenario& s, std::size_t k);

RateReport mean_rate_utility(const Scenario& s, Mode mode);

/// Conditional log rate coverage E[ln P(SINR > tau) | (j,k)] of one link in
/// the decoupled full-duplex network, assembled from raw conditional distance
/// moments rather than from the aggregated constants.
double rate_coverage_log(const Scenario& s, std::size_t j, std::size_t k, Link link);

/// E[R_k^alpha / min(R_k^{eps alpha}, P_max/(rho_k G^eps)) | (j,k)], by
/// integration over the joint distance law.
double ul_inverse_signal_moment(const Scenario& s, std::size_t j, std::size_t k);

struct Coverage {
    double probability;
    bool underflow;  // the linearized log coverage is below the double range
};
Coverage coverage_from_log(double log_coverage);

// Interference-limited closed forms of the half-duplex utilities.

/// HD UL with no noise, no cap on UE power and no minimum UE-BS distance.
double hd_ul_utility_uncapped(const Scenario& s);
/// The same with equal UL weights and equal sensitivities.
double hd_ul_utility_nearest_bs(double tau_ul, double alpha, double epsilon);
/// HD DL with no noise.
double hd_dl_utility_no_noise(const Scenario& s);
/// HD DL with no noise and D_i = 1/P_i.
double hd_dl_utility_max_power(double tau_dl, double alpha);

}  // namespace fdassoc
