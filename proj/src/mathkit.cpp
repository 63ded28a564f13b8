#include "fdassoc/mathkit.hpp"

#include <array>
#include <cmath>
#include <string>

#include "fdassoc/errors.hpp"

namespace fdassoc::math {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 20000;
constexpr double kTiny = 1e-300;

// x^s e^{-x}, evaluated in log space.
double power_exp(double s, double x) {
    if (x == 0.0) return s == 0.0 ? 1.0 : (s > 0.0 ? 0.0 : kInf);
    return std::exp(s * std::log(x) - x);
}

bool is_nonpositive_integer(double s) {
    return s <= 0.0 && std::floor(s) == s;
}

// gamma(s, x) for s > 0 by the power series; converges for every x but is
// used only when x < s + 1.
double lower_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double ap = s;
    for (int n = 1; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * power_exp(s, x);
}

// Gamma(s, x) for x > 0 by the Legendre continued fraction (modified Lentz).
// Valid for any real s; fast once x exceeds roughly max(s + 1, 1).
double upper_continued_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return power_exp(s, x) * h;
}

// Gamma(s, a) for s in [0, 1) and 0 < a < 1, split at 1:
//   int_a^1 x^{s-1} e^{-x} dx = sum_n (-1)^n / n! * (1 - a^{s+n}) / (s+n)
// Every (1 - a^{s+n}) / (s+n) is positive, so s -> 0 stays well conditioned.
double upper_small_order_small_arg(double s, double a) {
    const double log_a = std::log(a);
    double sum = 0.0;
    double inv_fact = 1.0;
    for (int n = 0; n < 200; ++n) {
        const double order = s + n;
        const double piece = order == 0.0 ? -log_a : -std::expm1(order * log_a) / order;
        const double term = (n % 2 == 0 ? 1.0 : -1.0) * inv_fact * piece;
        sum += term;
        if (n > 0 && std::abs(term) < std::abs(sum) * kEps) break;
        inv_fact /= (n + 1);
    }
    return sum + upper_continued_fraction(s, 1.0);
}

// Positive-order (or zero-order) base evaluation, a > 0.
double upper_base(double s, double a) {
    if (a >= s + 1.0 || a >= 1.0) return upper_continued_fraction(s, a);
    if (s < 1.0) return upper_small_order_small_arg(s, a);
    return std::tgamma(s) - lower_series(s, a);
}

// 32-point Gauss-Legendre rule on [-1, 1], built once by Newton iteration.
struct GaussLegendre32 {
    static constexpr int kN = 32;
    std::array<double, kN> nodes{};
    std::array<double, kN> weights{};

    GaussLegendre32() {
        for (int i = 0; i < kN / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (kN + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= kN; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kN * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[i] = -x;
            nodes[kN - 1 - i] = x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[kN - 1 - i] = w;
        }
    }
};

const GaussLegendre32& gauss_legendre() {
    static const GaussLegendre32 rule;
    return rule;
}

double integrate_short_interval(double s, double a, double b) {
    const auto& rule = gauss_legendre();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < GaussLegendre32::kN; ++i) {
        const double x = mid + half * rule.nodes[i];
        sum += rule.weights[i] * power_exp(s - 1.0, x);
    }
    return sum * half;
}

}  // namespace

QuadratureRule gauss_legendre_32() {
    const auto& rule = gauss_legendre();
    return QuadratureRule{rule.nodes.data(), rule.weights.data(), GaussLegendre32::kN};
}

Linear dbm_to_watts(Decibel x) {
    return Linear{std::pow(10.0, (x.value - 30.0) / 10.0)};
}

Linear db_to_linear(Decibel x) {
    return Linear{std::pow(10.0, x.value / 10.0)};
}

Decibel watts_to_dbm(Linear x) {
    return Decibel{10.0 * std::log10(x.value) + 30.0};
}

Decibel linear_to_db(Linear x) {
    return Decibel{10.0 * std::log10(x.value)};
}

double gamma_fn(double s) {
    if (is_nonpositive_integer(s)) {
        throw DomainError("gamma function pole at s = " + std::to_string(s));
    }
    return std::tgamma(s);
}

double upper_incomplete_gamma(double s, double a) {
    if (std::isnan(s) || std::isnan(a) || a < 0.0) {
        throw DomainError("upper incomplete gamma needs a >= 0");
    }
    if (std::isinf(a)) return 0.0;
    if (a == 0.0) {
        if (s <= 0.0) throw DomainError("upper incomplete gamma diverges for a = 0, s <= 0");
        return std::tgamma(s);
    }
    if (s > 0.0 || a >= 1.0) return upper_base(s, a);

    // s <= 0, a < 1: descend from order s + n in [0, 1).
    const int n = static_cast<int>(std::ceil(-s));
    double order = s + n;
    if (order >= 1.0) order -= 1.0;
    double value = upper_base(order, a);
    const double log_a = std::log(a);
    while (order - 1.0 >= s - 1e-12) {
        const double t = order - 1.0;
        value = (value - std::exp(t * log_a - a)) / t;
        order = t;
    }
    return value;
}

double lower_incomplete_gamma(double s, double b) {
    if (std::isnan(s) || std::isnan(b) || s <= 0.0) {
        throw DomainError("lower incomplete gamma needs s > 0");
    }
    if (b < 0.0) throw DomainError("lower incomplete gamma needs b >= 0");
    if (b == 0.0) return 0.0;
    if (std::isinf(b)) return std::tgamma(s);
    if (b < s + 1.0) return lower_series(s, b);
    return std::tgamma(s) - upper_continued_fraction(s, b);
}

double generalized_gamma(double s, double a, double b) {
    if (std::isnan(a) || std::isnan(b) || a < 0.0) {
        throw DomainError("generalized gamma needs a >= 0");
    }
    if (a > b) throw DomainError("generalized gamma needs a <= b");
    if (a == b) return 0.0;
    if (std::isinf(b)) return upper_incomplete_gamma(s, a);
    if (a == 0.0) {
        if (s <= 0.0) throw DomainError("generalized gamma diverges for a = 0, s <= 0");
        return lower_incomplete_gamma(s, b);
    }
    if (b - a <= std::min(0.5 * a, 2.0)) return integrate_short_interval(s, a, b);
    if (s > 0.0 && b < s + 1.0) {
        return lower_incomplete_gamma(s, b) - lower_incomplete_gamma(s, a);
    }
    return upper_incomplete_gamma(s, a) - upper_incomplete_gamma(s, b);
}

}  // namespace fdassoc::math
