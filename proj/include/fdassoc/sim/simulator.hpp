#pragma once

// Monte Carlo ground truth: BSs as independent PPPs in a square window, UEs
// dropped densely and associated in UL by weighted path loss, one active UE
// per BS, and observers (a typical UE or BS) at the origin.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fdassoc/model.hpp"
#include "fdassoc/rate.hpp"
#include "fdassoc/sim/philox.hpp"

namespace fdassoc::sim {

struct SimConfig {
    double window_half_width = 10000.0;  // m
    double ue_density_multiplier = 20.0;  // UE density over the total BS density
    /// UEs are dropped in a disk of this many mean BS spacings around the
    /// origin; interference from farther UEs is below the Monte Carlo noise.
    double ue_disk_spacings = 15.0;
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double max_expected_points = 5e7;
};

/// Throws ConfigError on a bad config and ResourceError past the point cap.
void check_config(const Scenario& s, const SimConfig& cfg);

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct NetworkRealization {
    double half_width = 0.0;
    double ue_radius = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;

    // BSs, grouped by tier (normalized order); tier t occupies
    // [tier_begin[t], tier_begin[t+1]).
    std::vector<double> bs_x, bs_y, bs_power;
    std::vector<std::uint32_t> bs_tier;
    std::vector<std::size_t> tier_begin;
    /// D^{2/alpha} and U^{2/alpha}: weights of squared distances.
    std::vector<double> dl_metric, ul_metric;
    /// Unit-mean exponential fades of each BS toward the typical UE and
    /// toward the BS under measurement.
    std::vector<double> bs_fade_to_ue, bs_fade_to_bs;
    std::size_t planted = kNone;  // BS placed at the origin, if any

    // Active UL UEs.
    std::vector<double> ue_x, ue_y, ue_power, ue_link_distance;
    std::vector<double> ue_fade_to_ue, ue_fade_to_bs;
    std::vector<std::size_t> ue_bs;
    std::vector<std::size_t> active_ue;  // per BS; kNone when idle
    std::size_t dropped_ues = 0;

    std::size_t bs_count() const { return bs_x.size(); }
};

struct RealizationRequest {
    std::optional<std::size_t> planted_tier;
    bool drop_ues = true;
    bool link_fades = true;  // off leaves the fade vectors empty
    std::uint32_t stream = 0;
};

NetworkRealization sample_realization(const Scenario& s, const SimConfig& cfg, std::uint64_t rep,
                                      const RealizationRequest& req = {});

struct TypicalUeLinks {
    std::size_t dl_tier, ul_tier;
    std::size_t dl_bs, ul_bs;
    double dl_distance, ul_distance;
};

/// DL and UL serving BSs of a UE at (x, y); ties go to the lower (tier, index).
/// Throws DomainError when the realization has no BS.
TypicalUeLinks associate_typical_ue(const NetworkRealization& real, const Scenario& s,
                                    double x = 0.0, double y = 0.0);

/// Uplink transmit power of a tier-k UE at distance r from its BS.
double ue_tx_power(const Scenario& s, std::size_t k, double r);

struct UeInterference {
    std::vector<double> bs_by_tier;  // W, per interfering BS tier
    double ue = 0.0;                 // W, from active UEs
    double si = 0.0;                 // W, own UL transmission leaking into the DL
    double bs_total() const;
};

/// Interference at the origin UE: every BS except its DL server and every
/// active UE except the one its UL server would otherwise schedule. Link fades
/// come with the realization; `si_fades` draws the self-interference fade.
UeInterference measure_interference_at_typical_ue(const NetworkRealization& real,
                                                  const Scenario& s, const TypicalUeLinks& links,
                                                  Philox& si_fades);

struct BsInterference {
    std::vector<double> bs_by_tier;
    double ue = 0.0;
    double si = 0.0;
    double bs_total() const;
};

/// Interference at BS `bs` from every other BS (thinned by the BS pair
/// correlation) and every active UE not scheduled by `bs`.
BsInterference measure_interference_at_bs(const NetworkRealization& real, const Scenario& s,
                                          std::size_t bs, Philox& si_fades);

struct SimEstimate {
    std::string tag;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

enum Quantity : unsigned {
    kAssociation = 1u,
    kDistances = 2u,
    kInterference = 4u,
    kUtility = 8u,
    kAllQuantities = 15u,
};

struct SimRequest {
    unsigned quantities = kAllQuantities;
    std::vector<Mode> modes = all_modes();
    bool keep_samples = false;
};

struct SimResult {
    std::vector<SimEstimate> estimates;
    /// Per-replication samples, replications x tags, NaN where undefined,
    /// when keep_samples is set.
    std::vector<std::string> sample_tags;
    std::vector<double> samples;
};

/// Runs the requested experiments. Identical (scenario, config, request) give
/// bit-identical results for any thread count. Tags name tiers by their
/// 1-based position in the scenario file:
///   psi.J.K, dist.dl.J, dist.dl.J.m2, dist.ul.K, dist.ul.K.m2, power.ul.K,
///   interference.dl_bs_scaled, interference.dl_ue, interference.dl_si,
///   interference.ul_bs.K, interference.ul_ue.K, interference.ul_si.K,
///   utility.MODE, utility.MODE.dl, utility.MODE.ul
SimResult simulate(const Scenario& s, const SimConfig& cfg, const SimRequest& req);

SimEstimate estimate_rate_utility(const Scenario& s, const SimConfig& cfg, Mode mode);
std::vector<SimEstimate> estimate_distance_and_power_stats(const Scenario& s, const SimConfig& cfg);

/// Looks up a tag; throws ConfigError when absent.
const SimEstimate& find_estimate(const std::vector<SimEstimate>& rows, const std::string& tag);

}  // namespace fdassoc::sim
