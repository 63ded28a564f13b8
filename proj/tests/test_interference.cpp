#include <cmath>
#include <random>

#include "doctest.h"
#include "fdassoc/assoc.hpp"
#include "fdassoc/errors.hpp"
#include "fdassoc/interference.hpp"
#include "oracle.hpp"
#include "random_scenario.hpp"

using namespace fdassoc;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("interference") {

TEST_CASE("near/far repulsion integral") {
    for (double alpha : {2.5, 3.7, 4.0, 5.2}) {
        for (double d : {1.0, 40.0}) {
            for (double lambda : {1e-6, 5e-5}) {
                INFO("alpha=" << alpha << " d=" << d << " lambda=" << lambda);
                CHECK(rel(k1(d, alpha, lambda), oracle::repulsive_campbell(d, alpha, lambda)) < 1e-9);
            }
        }
    }
    CHECK(rel(k1(0.0, 3.7, 2e-5), oracle::repulsive_campbell(0.0, 3.7, 2e-5)) < 1e-8);
    CHECK_THROWS_AS(k1(0.0, 4.0, 1e-5), DomainError);
    CHECK_THROWS_AS(k1(1.0, 2.0, 1e-5), DomainError);
    CHECK(k1(1.0, 3.0, 0.0) == 0.0);
}

TEST_CASE("mean interference matches Campbell integrals") {
    std::mt19937_64 rng(29);
    testing_support::RandomScenarioOptions opt;
    opt.max_tiers = 3;
    for (int n = 0; n < 25; ++n) {
        const Scenario s = random_scenario(rng, opt);
        for (std::size_t k = 0; k < s.size(); ++k) {
            const MeanInterference ul = mean_ul_interference(s, k);
            INFO("scenario " << n << " tier " << k);
            CHECK(rel(ul.total, oracle::mean_ul_interference(s, k)) < 1e-8);
            double parts = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) parts += ul.per_tier_bs_part[i] + ul.per_tier_ue_part[i];
            CHECK(rel(parts, ul.total) < 1e-14);

            for (double r : {3.0, 80.0, 400.0}) {
                CHECK(rel(mean_dl_interference(s, k, r).total, oracle::mean_dl_interference(s, k, r)) < 1e-8);
            }
        }
    }
}

TEST_CASE("self-interference means") {
    std::mt19937_64 rng(31);
    const Scenario s = testing_support::random_scenario(rng);
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(mean_ul_self_interference(s, k) == s.tiers[k].si_mean_bs * s.tiers[k].bs_power);
        CHECK(mean_dl_self_interference(s, k) ==
              doctest::Approx(s.power_control.si_mean_ue * tx_power_moment(s, k, 1)).epsilon(1e-15));
    }
}

TEST_CASE("BS repulsion switch") {
    std::mt19937_64 rng(37);
    RawScenario raw = testing_support::random_raw_scenario(rng);
    const Scenario base = prepare(raw);
    raw.bs_repulsion = BsRepulsion::EffectiveDlDensity;
    const Scenario alt = prepare(raw);
    const auto eff = effective_densities(alt);
    for (std::size_t i = 0; i < alt.size(); ++i) {
        CHECK(bs_repulsion_density(base, i) == doctest::Approx(base.tiers[i].density / base.pair_corr.beta_b));
        CHECK(bs_repulsion_density(alt, i) == eff[i].dl);
    }
}

TEST_CASE("DL BS interference scale") {
    std::mt19937_64 rng(41);
    const Scenario s = testing_support::random_scenario(rng);
    const double alpha = s.channel.alpha;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double r = 57.0;
        double bs = 0.0;
        for (double part : mean_dl_interference(s, j, r).per_tier_bs_part) bs += part;
        CHECK(rel(dl_bs_interference_scale(s, j) * std::pow(r, 2.0 - alpha), bs) < 1e-13);
    }
}

TEST_CASE("unconditional DL interference needs alpha below 4") {
    std::mt19937_64 rng(43);
    testing_support::RandomScenarioOptions opt;
    opt.alpha_lo = 2.5;
    opt.alpha_hi = 3.5;
    const Scenario s = testing_support::random_scenario(rng, opt);
    const auto eff = effective_densities(s);
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double ref = oracle::rayleigh_expectation(
            eff[j].dl, [&](double r) { return mean_dl_interference(s, j, r).total; });
        CHECK(rel(mean_dl_interference_unconditional(s, j).total, ref) < 1e-8);
    }
    RawScenario raw = s.source;
    raw.alpha = 4.0;
    CHECK_THROWS_AS(mean_dl_interference_unconditional(prepare(raw), 0), DomainError);
    CHECK_THROWS_AS(mean_dl_interference(s, 0, 0.0), DomainError);
}

}
