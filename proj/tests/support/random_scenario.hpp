#pragma once

// Randomized scenarios for property tests. Every draw passes validation.

#include <cmath>
#include <random>

#include "fdassoc/model.hpp"

namespace testing_support {

struct RandomScenarioOptions {
    int max_tiers = 5;
    double alpha_lo = 2.5;
    double alpha_hi = 5.0;
    bool uncapped = false;
};

inline fdassoc::RawScenario random_raw_scenario(std::mt19937_64& rng,
                                                const RandomScenarioOptions& opt = {}) {
    std::uniform_int_distribution<int> tiers(1, opt.max_tiers);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto between = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };

    fdassoc::RawScenario raw;
    const int k = tiers(rng);
    for (int t = 0; t < k; ++t) {
        fdassoc::RawTier tier;
        tier.density_per_km2 = std::pow(10.0, between(-0.5, 2.0));
        tier.bs_power_dbm = between(20.0, 46.0);
        tier.sensitivity_dbm = between(-90.0, -40.0);
        tier.sic_bs_db = between(60.0, 120.0);
        tier.ul_weight = t == 0 ? 1.0 : std::pow(10.0, between(-2.0, 2.0));
        tier.dl_weight = t == 0 ? 1.0 : std::pow(10.0, between(-2.0, 2.0));
        raw.tiers.push_back(tier);
    }
    raw.alpha = between(opt.alpha_lo, opt.alpha_hi);
    raw.alpha_b = between(2.5, 3.9);
    raw.alpha_u = between(2.5, 3.9);
    raw.gain_db = between(0.0, 40.0);
    raw.gain_b_db = between(0.0, 40.0);
    raw.gain_u_db = between(0.0, 40.0);
    raw.noise_dbm = between(-120.0, -95.0);
    // Keep alpha (1 - eps) below 4 so d_o may be anything.
    raw.epsilon = between(std::max(0.05, 1.0 - 3.9 / raw.alpha), 1.0);
    raw.p_max_dbm = opt.uncapped ? INFINITY : between(15.0, 30.0);
    raw.sic_ue_db = between(60.0, 120.0);
    raw.d_o_m = between(0.5, 5.0);
    raw.d_b_m = between(1.0, 60.0);
    raw.d_u_m = between(0.5, 5.0);
    raw.beta_b = between(0.5, 2.0);
    raw.tau_dl_db = between(-5.0, 5.0);
    raw.tau_ul_db = between(-5.0, 5.0);
    return raw;
}

inline fdassoc::Scenario random_scenario(std::mt19937_64& rng, const RandomScenarioOptions& opt = {}) {
    return fdassoc::prepare(random_raw_scenario(rng, opt));
}

}  // namespace testing_support
