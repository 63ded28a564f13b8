#include <cmath>
#include <random>

#include "doctest.h"
#include "fdassoc/assoc.hpp"
#include "fdassoc/errors.hpp"
#include "oracle.hpp"
#include "random_scenario.hpp"

using namespace fdassoc;
using testing_support::random_scenario;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Scenario two_tier(double d2 = 2.5118864315095806, double u2 = 1.0) {
    RawScenario raw;
    raw.tiers = {{5, 37, -40, 70, 1, 1}, {20, 33, -40, 70, u2, d2}};
    raw.alpha = 4;
    raw.alpha_b = 3.7;
    raw.alpha_u = 4;
    raw.gain_b_db = 30;
    raw.epsilon = 0.9;
    raw.p_max_dbm = 23;
    raw.sic_ue_db = 70;
    raw.d_o_m = 1;
    raw.d_b_m = 40;
    raw.d_u_m = 1;
    return prepare(raw);
}

}  // namespace

TEST_SUITE("assoc") {

TEST_CASE("association probabilities close on randomized scenarios") {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 200; ++n) {
        const Scenario s = random_scenario(rng);
        const Matrix psi = joint_association_matrix(s);
        const TierProbabilities a = per_tier_probability(s);
        double total = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            double row = 0.0;
            double col = 0.0;
            for (std::size_t k = 0; k < s.size(); ++k) {
                CHECK(psi(j, k) >= 0.0);
                if (k > j) CHECK(psi(j, k) == 0.0);
                row += psi(j, k);
                col += psi(k, j);
            }
            CHECK(std::abs(row - a.dl[j]) <= 1e-12);
            CHECK(std::abs(col - a.ul[j]) <= 1e-12);
            total += row;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("single tier associates with probability one") {
    RawScenario raw;
    raw.tiers = {{10, 30, -60, 90, 1, 1}};
    const Scenario s = prepare(raw);
    CHECK(joint_association_matrix(s)(0, 0) == 1.0);
    CHECK(per_tier_probability(s).dl[0] == 1.0);
}

TEST_CASE("coupled weights never split the links") {
    const Scenario s = two_tier(2.0, 2.0);
    const Matrix psi = joint_association_matrix(s);
    CHECK(psi(1, 0) == 0.0);
    CHECK(psi(0, 0) + psi(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("joint association matrix matches direct integration") {
    std::mt19937_64 rng(5);
    testing_support::RandomScenarioOptions opt;
    opt.max_tiers = 3;
    for (int n = 0; n < 12; ++n) {
        const Scenario s = random_scenario(rng, opt);
        const Matrix psi = joint_association_matrix(s);
        for (std::size_t j = 0; j < s.size(); ++j) {
            for (std::size_t k = 0; k <= j; ++k) {
                const double ref = oracle::psi(s, j, k);
                INFO("scenario " << n << " j=" << j << " k=" << k);
                if (ref < 1e-14) {
                    CHECK(psi(j, k) < 1e-12);
                } else {
                    CHECK(rel(psi(j, k), ref) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("joint partial moments match direct integration") {
    std::mt19937_64 rng(17);
    testing_support::RandomScenarioOptions opt;
    opt.max_tiers = 3;
    for (int n = 0; n < 8; ++n) {
        const Scenario s = random_scenario(rng, opt);
        const double alpha = s.channel.alpha;
        for (std::size_t j = 0; j < s.size(); ++j) {
            for (std::size_t k = 0; k <= j; ++k) {
                if (oracle::psi(s, j, k) < 1e-10) continue;
                for (double m : {2.0, alpha, 1.3}) {
                    const double dl = oracle::joint_expectation(
                        s, j, k, [m](double x, double) { return std::pow(x, m); });
                    const double ul = oracle::joint_expectation(
                        s, j, k, [m](double, double y) { return std::pow(y, m); });
                    INFO("scenario " << n << " j=" << j << " k=" << k << " m=" << m);
                    CHECK(rel(joint_partial_moment(s, j, k, Link::Dl, m), dl) < 1e-8);
                    CHECK(rel(joint_partial_moment(s, j, k, Link::Ul, m), ul) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("joint density integrates to the association probability") {
    const Scenario s = two_tier(2.5118864315095806, 1.0);
    const Matrix psi = joint_association_matrix(s);
    // Tier 1 in normalized order has the larger DL weight ratio.
    const double alpha = s.channel.alpha;
    const double lo = std::pow(s.tiers[1].dl_weight / s.tiers[0].dl_weight, 1.0 / alpha);
    const double hi = std::pow(s.tiers[1].ul_weight / s.tiers[0].ul_weight, 1.0 / alpha);
    const double total = oracle::integrate_to_inf([&](double rj) {
        return oracle::integrate_pieces(
            [&](double rk) { return joint_distance_pdf(s, 1, 0, rj, rk); }, {}, rj * lo, rj * hi);
    });
    CHECK(rel(total, psi(1, 0)) < 1e-9);
    CHECK_THROWS_AS(joint_distance_pdf(s, 0, 1, 1.0, 1.0), DomainError);
}

TEST_CASE("marginal distance law") {
    const Scenario s = two_tier();
    const auto eff = effective_densities(s);
    for (std::size_t j = 0; j < 2; ++j) {
        for (Link link : {Link::Dl, Link::Ul}) {
            const double lambda = link == Link::Dl ? eff[j].dl : eff[j].ul;
            CHECK(marginal_distance_cdf(s, j, link, 100.0) ==
                  doctest::Approx(-std::expm1(-oracle::kPi * lambda * 1e4)).epsilon(1e-14));
            for (int n : {1, 2, 4}) {
                const double ref =
                    oracle::rayleigh_expectation(lambda, [n](double r) { return std::pow(r, n); });
                CHECK(rel(marginal_distance_moment(s, j, link, n), ref) < 1e-10);
            }
            const double ref =
                oracle::rayleigh_expectation(lambda, [](double r) { return std::pow(r, -1.5); });
            CHECK(rel(marginal_distance_moment_real(s, j, link, -1.5), ref) < 1e-8);
        }
    }
    CHECK(eff[0].dl == doctest::Approx(oracle::dl_effective_density(s, 0)).epsilon(1e-14));
    CHECK(eff[1].ul == doctest::Approx(oracle::ul_effective_density(s, 1)).epsilon(1e-14));
}

TEST_CASE("tower property ties joint and marginal moments") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 50; ++n) {
        const Scenario s = random_scenario(rng);
        const auto a = per_tier_probability(s);
        const Matrix psi = joint_association_matrix(s);
        for (std::size_t j = 0; j < s.size(); ++j) {
            for (double m : {2.0, s.channel.alpha}) {
                double joint = 0.0;
                for (std::size_t k = 0; k <= j; ++k) {
                    if (psi(j, k) > 0.0) {
                        joint += psi(j, k) * joint_distance_moment_real(s, j, k, Link::Dl, m);
                    }
                }
                const double marginal = a.dl[j] * marginal_distance_moment_real(s, j, Link::Dl, m);
                CHECK(rel(joint, marginal) < 1e-9);
            }
        }
    }
}

TEST_CASE("conditioning on an empty association event throws") {
    const Scenario s = two_tier(2.0, 2.0);
    CHECK_THROWS_AS(joint_distance_moment(s, 1, 0, Link::Dl, 2), DomainError);
}

TEST_CASE("transmit power law") {
    const Scenario s = two_tier();
    for (std::size_t k = 0; k < 2; ++k) {
        const double lambda = oracle::ul_effective_density(s, k);
        for (int n : {1, 2}) {
            const double ref = oracle::rayleigh_expectation(
                lambda, [&](double r) { return std::pow(oracle::tx_power(s, k, r), n); }, 0.0,
                oracle::cap_radius(s, k));
            CHECK(rel(tx_power_moment(s, k, n), ref) < 1e-9);
        }
        CHECK(tx_power_cdf(s, k, s.power_control.p_max) == 1.0);
        CHECK(tx_power_cdf(s, k, 0.0) == 0.0);
        CHECK(tx_power_moment_below_cap(s, k, 1) < tx_power_moment(s, k, 1));
    }

    RawScenario raw = s.source;
    raw.p_max_dbm = INFINITY;
    const Scenario uncapped = prepare(raw);
    CHECK(std::isinf(tx_cap_argument(uncapped, 0)));
    CHECK(tx_power_moment_below_cap(uncapped, 0, 1) ==
          doctest::Approx(tx_power_moment(uncapped, 0, 1)).epsilon(1e-15));

    raw = s.source;
    raw.epsilon = 0.0;
    const Scenario flat = prepare(raw);
    const double rho = flat.tiers[0].sensitivity;
    CHECK(tx_power_moment(flat, 0, 2) == doctest::Approx(rho * rho).epsilon(1e-15));
    CHECK(tx_power_cdf(flat, 0, 0.999 * rho) == 0.0);
    CHECK(tx_power_cdf(flat, 0, rho) == 1.0);
}

}
