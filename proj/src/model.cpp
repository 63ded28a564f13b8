#include "fdassoc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fdassoc/errors.hpp"
#include "fdassoc/mathkit.hpp"

namespace fdassoc {

namespace {

using math::Decibel;

void require(bool ok, const std::string& field, const std::string& constraint) {
    if (!ok) throw ValidationError(field + ": " + constraint);
}

void require_finite(double v, const std::string& field) {
    require(std::isfinite(v), field, "must be finite");
}

std::string tier_field(std::size_t k, const char* name) {
    std::ostringstream os;
    os << "tiers[" << k << "]." << name;
    return os.str();
}

}  // namespace

double Scenario::rate_dl() const { return std::log1p(thresholds.tau_dl); }
double Scenario::rate_ul() const { return std::log1p(thresholds.tau_ul); }

Scenario validate(const RawScenario& raw) {
    require(!raw.tiers.empty(), "tiers", "at least one tier is required");

    require_finite(raw.alpha, "channel.alpha");
    require_finite(raw.alpha_b, "channel.alpha_b");
    require_finite(raw.alpha_u, "channel.alpha_u");
    require(raw.alpha > 2.0, "channel.alpha", "path-loss exponent must exceed 2");
    require(raw.alpha_b > 2.0, "channel.alpha_b", "path-loss exponent must exceed 2");
    require(raw.alpha_u > 2.0, "channel.alpha_u", "path-loss exponent must exceed 2");
    require_finite(raw.gain_db, "channel.gain_db");
    require_finite(raw.gain_b_db, "channel.gain_b_db");
    require_finite(raw.gain_u_db, "channel.gain_u_db");
    require(!std::isnan(raw.noise_dbm) && raw.noise_dbm != math::kInf, "channel.noise_dbm",
            "must be finite or -inf");
    require_finite(raw.epsilon, "power_control.epsilon");
    require(raw.epsilon >= 0.0 && raw.epsilon <= 1.0, "power_control.epsilon",
            "power control factor must lie in [0, 1]");
    require(!std::isnan(raw.p_max_dbm) && raw.p_max_dbm != -math::kInf, "power_control.p_max_dbm",
            "must be finite or inf");
    require_finite(raw.sic_ue_db, "power_control.sic_ue_db");
    require(!std::isnan(raw.d_o_m) && raw.d_o_m >= 0.0, "pair_corr.d_o_m", "distance must be >= 0");
    require(!std::isnan(raw.d_b_m) && raw.d_b_m >= 0.0, "pair_corr.d_b_m", "distance must be >= 0");
    require(!std::isnan(raw.d_u_m) && raw.d_u_m >= 0.0, "pair_corr.d_u_m", "distance must be >= 0");
    require(std::isfinite(raw.d_o_m) && std::isfinite(raw.d_b_m) && std::isfinite(raw.d_u_m),
            "pair_corr", "distances must be finite");
    require(std::isfinite(raw.beta_b) && raw.beta_b > 0.0, "pair_corr.beta_b",
            "repulsion parameter must be positive");
    require_finite(raw.tau_dl_db, "thresholds.tau_dl_db");
    require_finite(raw.tau_ul_db, "thresholds.tau_ul_db");
    require(std::isfinite(raw.si_fading_m_bs) && raw.si_fading_m_bs > 0.0, "si_fading.m_bs",
            "Nakagami shape must be positive");
    require(std::isfinite(raw.si_fading_m_ue) && raw.si_fading_m_ue > 0.0, "si_fading.m_ue",
            "Nakagami shape must be positive");

    Scenario s;
    s.source = raw;
    const double u_first = raw.tiers.front().ul_weight;
    const double d_first = raw.tiers.front().dl_weight;
    for (std::size_t k = 0; k < raw.tiers.size(); ++k) {
        const RawTier& t = raw.tiers[k];
        require(std::isfinite(t.density_per_km2) && t.density_per_km2 > 0.0,
                tier_field(k, "density_per_km2"), "density must be positive");
        require_finite(t.bs_power_dbm, tier_field(k, "bs_power_dbm"));
        require_finite(t.sensitivity_dbm, tier_field(k, "sensitivity_dbm"));
        require(!std::isnan(t.sic_bs_db) && t.sic_bs_db != -math::kInf, tier_field(k, "sic_bs_db"),
                "must be finite or inf");
        require(std::isfinite(t.ul_weight) && t.ul_weight > 0.0, tier_field(k, "ul_weight"),
                "weight must be positive");
        require(std::isfinite(t.dl_weight) && t.dl_weight > 0.0, tier_field(k, "dl_weight"),
                "weight must be positive");
        s.tiers.push_back(TierParams{
            t.density_per_km2 * 1e-6,
            math::dbm_to_watts(Decibel{t.bs_power_dbm}).value,
            math::dbm_to_watts(Decibel{t.sensitivity_dbm}).value,
            math::db_to_linear(Decibel{-t.sic_bs_db}).value,
            t.ul_weight / u_first,
            t.dl_weight / d_first,
        });
        s.user_index.push_back(k);
    }

    s.channel = ChannelParams{
        raw.alpha,
        raw.alpha_b,
        raw.alpha_u,
        math::db_to_linear(Decibel{raw.gain_db}).value,
        math::db_to_linear(Decibel{raw.gain_b_db}).value,
        math::db_to_linear(Decibel{raw.gain_u_db}).value,
        math::dbm_to_watts(Decibel{raw.noise_dbm}).value,
    };
    s.power_control = PowerControlParams{
        raw.epsilon,
        math::dbm_to_watts(Decibel{raw.p_max_dbm}).value,
        math::db_to_linear(Decibel{-raw.sic_ue_db}).value,
    };
    s.pair_corr = PairCorrelationParams{raw.d_o_m, raw.d_b_m, raw.d_u_m, raw.beta_b, raw.bs_repulsion};
    s.thresholds = Thresholds{
        math::db_to_linear(Decibel{raw.tau_dl_db}).value,
        math::db_to_linear(Decibel{raw.tau_ul_db}).value,
    };
    s.si_fading = SiFading{raw.si_fading_m_bs, raw.si_fading_m_ue};

    const double inverted = raw.alpha * (1.0 - raw.epsilon);
    if (inverted >= 4.0) {
        s.warnings.push_back("alpha*(1-epsilon) >= 4: UE interference integral diverges without d_o");
        require(raw.d_o_m > 0.0, "pair_corr.d_o_m",
                "must be positive when alpha*(1-epsilon) >= 4");
    }
    if (raw.d_b_m == 0.0 && raw.alpha_b >= 4.0) {
        require(false, "pair_corr.d_b_m", "must be positive when alpha_b >= 4");
    }
    if (raw.d_u_m == 0.0 && raw.alpha_u >= 4.0) {
        require(false, "pair_corr.d_u_m", "must be positive when alpha_u >= 4");
    }
    return s;
}

std::vector<double> weight_ratios(const Scenario& s) {
    std::vector<double> mu;
    mu.reserve(s.size());
    for (const auto& t : s.tiers) mu.push_back(t.ul_weight / t.dl_weight);
    return mu;
}

NormalizedScenario normalize_tier_order(const Scenario& s) {
    const std::vector<double> mu = weight_ratios(s);
    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return mu[a] < mu[b]; });

    NormalizedScenario out{s, perm};
    for (std::size_t k = 0; k < perm.size(); ++k) {
        out.scenario.tiers[k] = s.tiers[perm[k]];
        out.scenario.user_index[k] = s.user_index[perm[k]];
    }
    return out;
}

Scenario prepare(const RawScenario& raw) {
    return normalize_tier_order(validate(raw)).scenario;
}

}  // namespace fdassoc
