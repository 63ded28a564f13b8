#include <cmath>
#include <string>

#include "doctest.h"
#include "fdassoc/errors.hpp"
#include "fdassoc/model.hpp"
#include "fdassoc/scenario_io.hpp"

using namespace fdassoc;

namespace {

const char* kTwoTier = R"({
  "tiers": [
    {"density_per_km2": 5, "bs_power_dbm": 37, "sensitivity_dbm": -40, "sic_bs_db": 70, "ul_weight": 2, "dl_weight": 4},
    {"density_per_km2": 20, "bs_power_dbm": 33, "sensitivity_dbm": -40, "sic_bs_db": 70, "ul_weight": 2, "dl_weight": 1}
  ],
  "channel": {"alpha": 4, "alpha_b": 3.7, "alpha_u": 4, "gain_db": 0, "gain_b_db": 30, "gain_u_db": 0, "noise_dbm": -104},
  "power_control": {"epsilon": 0.9, "p_max_dbm": 23, "sic_ue_db": 70},
  "pair_corr": {"d_o_m": 1, "d_b_m": 40, "d_u_m": 1, "beta_b": 1},
  "thresholds": {"tau_dl_db": 0, "tau_ul_db": 0}
})";

RawScenario two_tier() { return parse_scenario(kTwoTier); }

std::string error_of(const RawScenario& raw) {
    try {
        validate(raw);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("units are converted to linear SI values") {
    const Scenario s = validate(two_tier());
    CHECK(s.tiers[0].density == doctest::Approx(5e-6));
    CHECK(s.tiers[0].bs_power == doctest::Approx(std::pow(10.0, 0.7)).epsilon(1e-14));
    CHECK(s.tiers[0].sensitivity == doctest::Approx(1e-7).epsilon(1e-14));
    CHECK(s.tiers[0].si_mean_bs == doctest::Approx(1e-7).epsilon(1e-14));
    CHECK(s.channel.gain_b == doctest::Approx(1e3).epsilon(1e-14));
    CHECK(s.power_control.p_max == doctest::Approx(0.19952623149688797).epsilon(1e-14));
    CHECK(s.rate_dl() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("weights are rescaled so the first tier has unit weights") {
    const Scenario s = validate(two_tier());
    CHECK(s.tiers[0].ul_weight == 1.0);
    CHECK(s.tiers[0].dl_weight == 1.0);
    CHECK(s.tiers[1].ul_weight == 1.0);
    CHECK(s.tiers[1].dl_weight == 0.25);
}

TEST_CASE("tiers are ordered by UL/DL weight ratio") {
    const Scenario s = prepare(two_tier());
    // U/D is 1 for file tier 1 and 4 for file tier 2.
    CHECK(s.user_index[0] == 0);
    CHECK(s.user_index[1] == 1);

    RawScenario swapped = two_tier();
    swapped.tiers[1].dl_weight = 16.0;
    const Scenario t = prepare(swapped);
    CHECK(t.user_index[0] == 1);
    CHECK(t.user_index[1] == 0);
    const auto mu = weight_ratios(t);
    CHECK(mu[0] <= mu[1]);
    const auto back = to_user_order(t, std::vector<double>{t.tiers[0].density, t.tiers[1].density});
    CHECK(back[0] == doctest::Approx(5e-6));
}

TEST_CASE("stable order for equal ratios") {
    RawScenario raw = two_tier();
    raw.tiers[1].dl_weight = 4.0;
    raw.tiers.push_back(raw.tiers[0]);
    const Scenario s = prepare(raw);
    CHECK(s.user_index == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("infinite caps and zero noise are accepted") {
    RawScenario raw = two_tier();
    raw.p_max_dbm = INFINITY;
    raw.noise_dbm = -INFINITY;
    raw.tiers[0].sic_bs_db = INFINITY;
    const Scenario s = validate(raw);
    CHECK(std::isinf(s.power_control.p_max));
    CHECK(s.channel.noise == 0.0);
    CHECK(s.tiers[0].si_mean_bs == 0.0);
}

TEST_CASE("constraint violations name the field") {
    RawScenario raw = two_tier();
    raw.alpha = 2.0;
    CHECK(error_of(raw).find("channel.alpha:") == 0);

    raw = two_tier();
    raw.epsilon = 1.2;
    CHECK(error_of(raw).find("power_control.epsilon") == 0);

    raw = two_tier();
    raw.tiers[1].density_per_km2 = 0.0;
    CHECK(error_of(raw).find("tiers[1].density_per_km2") == 0);

    raw = two_tier();
    raw.tiers[0].ul_weight = -1.0;
    CHECK(error_of(raw).find("tiers[0].ul_weight") == 0);

    raw = two_tier();
    raw.tiers.clear();
    CHECK(error_of(raw).find("tiers") == 0);

    raw = two_tier();
    raw.alpha_b = 4.2;
    raw.d_b_m = 0.0;
    CHECK(error_of(raw).find("pair_corr.d_b_m") == 0);
}

TEST_CASE("strong inversion needs a minimum UE-BS distance") {
    RawScenario raw = two_tier();
    raw.alpha = 5.0;
    raw.epsilon = 0.1;
    const Scenario s = validate(raw);
    CHECK(s.warnings.size() == 1);
    raw.d_o_m = 0.0;
    CHECK(error_of(raw).find("pair_corr.d_o_m") == 0);
}

TEST_CASE("JSON round trip and content hash") {
    const RawScenario raw = two_tier();
    const Scenario s = prepare(raw);
    const RawScenario again = parse_scenario(serialize_scenario(s));
    CHECK(scenario_hash(again) == scenario_hash(raw));
    CHECK(scenario_hash(raw).size() == 16);

    RawScenario other = raw;
    other.tiers[0].density_per_km2 = 6.0;
    CHECK(scenario_hash(other) != scenario_hash(raw));

    RawScenario inf = raw;
    inf.p_max_dbm = INFINITY;
    CHECK(std::isinf(parse_scenario(serialize_scenario(validate(inf))).p_max_dbm));
}

TEST_CASE("parse errors carry origin and line") {
    const std::string bad = "{\n  \"tiers\": [\n    {,}\n  ]\n}";
    try {
        parse_scenario(bad, "broken.json");
        FAIL("expected a parse error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("broken.json:3") == 0);
    }
    CHECK_THROWS_AS(parse_scenario("{\"tiers\": []}"), ValidationError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ValidationError);
}

TEST_CASE("optional fields") {
    nlohmann::json doc = nlohmann::json::parse(kTwoTier);
    doc["pair_corr"]["bs_repulsion"] = "effective_dl_density";
    doc["si_fading"] = {{"m_bs", 2.0}, {"m_ue", 3.0}};
    const RawScenario raw = raw_from_json(doc);
    CHECK(raw.bs_repulsion == BsRepulsion::EffectiveDlDensity);
    CHECK(raw.si_fading_m_ue == 3.0);
    doc["pair_corr"]["bs_repulsion"] = "nearest";
    CHECK_THROWS_AS(raw_from_json(doc), ValidationError);
    doc["pair_corr"]["bs_repulsion"] = "beta_b";
    doc["channel"]["alpha"] = "four";
    CHECK_THROWS_AS(raw_from_json(doc), ValidationError);
}

}
