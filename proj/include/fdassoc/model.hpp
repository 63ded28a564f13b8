#pragma once

// Scenario description: raw (as written in a scenario file, dB units) and
// validated (SI linear units, tiers ordered by UL/DL weight ratio).

#include <cstddef>
#include <string>
#include <vector>

namespace fdassoc {

/// Tier as written in a scenario file.
struct RawTier {
    double density_per_km2 = 0.0;
    double bs_power_dbm = 0.0;
    double sensitivity_dbm = 0.0;
    double sic_bs_db = 0.0;
    double ul_weight = 1.0;
    double dl_weight = 1.0;
};

enum class BsRepulsion { BetaB, EffectiveDlDensity };

struct RawScenario {
    std::vector<RawTier> tiers;
    double alpha = 4.0;
    double alpha_b = 4.0;
    double alpha_u = 4.0;
    double gain_db = 0.0;
    double gain_b_db = 0.0;
    double gain_u_db = 0.0;
    double noise_dbm = -104.0;
    double epsilon = 1.0;
    double p_max_dbm = 23.0;  // +inf means no cap
    double sic_ue_db = 0.0;
    double d_o_m = 1.0;
    double d_b_m = 1.0;
    double d_u_m = 1.0;
    double beta_b = 1.0;
    BsRepulsion bs_repulsion = BsRepulsion::BetaB;
    double tau_dl_db = 0.0;
    double tau_ul_db = 0.0;
    double si_fading_m_bs = 1.0;
    double si_fading_m_ue = 1.0;
};

struct TierParams {
    double density;      // per m^2
    double bs_power;     // W
    double sensitivity;  // W
    double si_mean_bs;   // residual SI gain at the BS
    double ul_weight;
    double dl_weight;
};

struct ChannelParams {
    double alpha;
    double alpha_b;
    double alpha_u;
    double gain;
    double gain_b;
    double gain_u;
    double noise;  // W
};

struct PowerControlParams {
    double epsilon;
    double p_max;       // W, may be +inf
    double si_mean_ue;  // residual SI gain at the UE
};

struct PairCorrelationParams {
    double d_o;
    double d_b;
    double d_u;
    double beta_b;
    BsRepulsion bs_repulsion;
};

struct Thresholds {
    double tau_dl;
    double tau_ul;
};

/// Nakagami shape of the SI channels; only the simulator uses it.
struct SiFading {
    double m_bs;
    double m_ue;
};

struct Scenario {
    std::vector<TierParams> tiers;
    ChannelParams channel;
    PowerControlParams power_control;
    PairCorrelationParams pair_corr;
    Thresholds thresholds;
    SiFading si_fading;
    /// user_index[k] is the position in the scenario file of tier k.
    std::vector<std::size_t> user_index;
    /// Non-fatal findings from validation.
    std::vector<std::string> warnings;
    /// The file-level values this scenario was validated from, in file order.
    RawScenario source;

    std::size_t size() const { return tiers.size(); }
    double delta() const { return 2.0 / channel.alpha; }
    double rate_dl() const;
    double rate_ul() const;
};

/// Checks every constraint, converts to SI linear units and rescales the
/// weights so that the first tier has U = D = 1. Tier order is unchanged.
Scenario validate(const RawScenario& raw);

struct NormalizedScenario {
    Scenario scenario;
    /// permutation[k] = index, in the input scenario, of normalized tier k.
    std::vector<std::size_t> permutation;
};

/// Stable sort of the tiers by U/D ascending.
NormalizedScenario normalize_tier_order(const Scenario& s);

/// validate followed by normalize_tier_order.
Scenario prepare(const RawScenario& raw);

/// Reorders a per-tier sequence from normalized order back to file order.
template <typename T>
std::vector<T> to_user_order(const Scenario& s, const std::vector<T>& values) {
    std::vector<T> out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) out[s.user_index[k]] = values[k];
    return out;
}

/// Ratios U_k/D_k in the scenario's current tier order.
std::vector<double> weight_ratios(const Scenario& s);

}  // namespace fdassoc
