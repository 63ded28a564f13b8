#include <cmath>

#include "doctest.h"
#include "fdassoc/errors.hpp"
#include "fdassoc/mathkit.hpp"
#include "gamma_cases.hpp"
#include "oracle.hpp"

using namespace fdassoc;
using namespace fdassoc::math;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("mathkit") {

TEST_CASE("unit conversions") {
    CHECK(dbm_to_watts({30.0}).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dbm_to_watts({-104.0}).value == doctest::Approx(3.981071705534972e-14).epsilon(1e-14));
    CHECK(db_to_linear({70.0}).value == doctest::Approx(1e7).epsilon(1e-15));
    CHECK(watts_to_dbm({0.2}).value == doctest::Approx(23.010299956639813).epsilon(1e-14));
    CHECK(linear_to_db({2.5118864315095806}).value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(std::isinf(dbm_to_watts({kInf}).value));
    CHECK(dbm_to_watts({-kInf}).value == 0.0);
}

TEST_CASE("gamma function and its poles") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    CHECK(gamma_fn(-0.85) == doctest::Approx(std::tgamma(-0.85)).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-2.0), DomainError);
}

TEST_CASE("incomplete gammas against quadrature at fixed points") {
    CHECK(rel(upper_incomplete_gamma(-0.85, 0.5), oracle::upper_gamma(-0.85, 0.5)) < 1e-10);
    CHECK(rel(lower_incomplete_gamma(1.8, 2.3), oracle::lower_gamma(1.8, 2.3)) < 1e-10);
    CHECK(rel(generalized_gamma(1.3, 0.2, 4.0), oracle::generalized_gamma(1.3, 0.2, 4.0)) < 1e-10);
    CHECK(rel(upper_incomplete_gamma(0.15, 1e-3), oracle::upper_gamma(0.15, 1e-3)) < 1e-10);
    CHECK(rel(upper_incomplete_gamma(-2.4, 30.0), oracle::upper_gamma(-2.4, 30.0)) < 1e-10);
}

TEST_CASE("limits and identities") {
    CHECK(upper_incomplete_gamma(2.5, 0.0) == doctest::Approx(gamma_fn(2.5)).epsilon(1e-14));
    CHECK(lower_incomplete_gamma(2.5, kInf) == doctest::Approx(gamma_fn(2.5)).epsilon(1e-14));
    CHECK(generalized_gamma(1.7, 0.3, 0.3) == 0.0);
    CHECK(generalized_gamma(1.7, 0.3, kInf) == doctest::Approx(upper_incomplete_gamma(1.7, 0.3)).epsilon(1e-14));
    CHECK(upper_incomplete_gamma(1.0, 3.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
    // Gamma(s+1, a) = s Gamma(s, a) + a^s e^{-a}, across negative orders.
    for (double s : {-2.3, -1.5, -0.85, -0.2, 0.4, 1.7}) {
        for (double a : {0.01, 0.7, 3.0, 25.0}) {
            const double lhs = upper_incomplete_gamma(s + 1.0, a);
            const double rhs = s * upper_incomplete_gamma(s, a) + std::pow(a, s) * std::exp(-a);
            CHECK(rel(lhs, rhs) < 1e-11);
        }
    }
    for (double s : {0.3, 1.0, 2.7}) {
        for (double x : {0.05, 1.0, 4.0, 30.0}) {
            CHECK(rel(lower_incomplete_gamma(s, x) + upper_incomplete_gamma(s, x), gamma_fn(s)) < 1e-13);
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(upper_incomplete_gamma(-0.5, 0.0), DomainError);
    CHECK_THROWS_AS(upper_incomplete_gamma(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(lower_incomplete_gamma(-0.5, 1.0), DomainError);
    CHECK_THROWS_AS(generalized_gamma(1.0, 2.0, 1.0), DomainError);
}

TEST_CASE("randomized gamma family within 1e-8 of quadrature") {
    for (const auto& c : testing_support::random_gamma_cases(200, 7)) {
        INFO(c.kind << " s=" << c.s << " a=" << c.a << " b=" << c.b);
        CHECK(rel(c.value, c.reference) < 1e-8);
    }
}

TEST_CASE("Gauss-Legendre rule integrates degree 63 exactly") {
    const auto rule = gauss_legendre_32();
    REQUIRE(rule.size == 32);
    double weights = 0.0;
    double x62 = 0.0;
    for (int i = 0; i < rule.size; ++i) {
        weights += rule.weights[i];
        x62 += rule.weights[i] * std::pow(rule.nodes[i], 62);
    }
    CHECK(weights == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x62 == doctest::Approx(2.0 / 63.0).epsilon(1e-12));
}

}
