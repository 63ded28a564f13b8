#pragma once

// Reference values by direct numerical integration of the defining integrals.
// Nothing here calls into the library's analytic kernels, so agreement is an
// independent check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fdassoc/model.hpp"

namespace oracle {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double upper_gamma(double s, double a) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [s, a](double t) {
        const double x = a + t;
        return std::exp((s - 1.0) * std::log(x) - x);
    };
    if (a == 0.0) {
        boost::math::quadrature::tanh_sinh<double> head;
        auto g = [s](double x) { return std::exp((s - 1.0) * std::log(x) - x); };
        return head.integrate(g, 0.0, 1.0, 1e-15) +
               integrator.integrate([&](double t) { return g(1.0 + t); }, 1e-15);
    }
    return integrator.integrate(f, 1e-15);
}

inline double generalized_gamma(double s, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [s](double x) { return std::exp((s - 1.0) * std::log(x) - x); };
    return integrator.integrate(f, a, b, 1e-15);
}

inline double lower_gamma(double s, double b) { return generalized_gamma(s, 0.0, b); }

/// Adaptive Gauss-Kronrod on [lo, hi] split at the given interior points.
inline double integrate_pieces(const std::function<double(double)>& f, std::vector<double> cuts,
                               double lo, double hi) {
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = std::max(lo, cuts[i]);
        const double b = std::min(hi, cuts[i + 1]);
        if (!(b > a)) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-11);
    }
    return total;
}

inline double integrate_to_inf(const std::function<double(double)>& f, double lo = 0.0) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, lo, std::numeric_limits<double>::infinity(), 12, 1e-11);
}

/// Nearest tier-i BS distance density.
inline double nearest_pdf(double lambda, double x) {
    return 2.0 * kPi * lambda * x * std::exp(-kPi * lambda * x * x);
}

/// E[h(R_j, R_k) 1{DL tier j, UL tier k}] with R_j, R_k the DL and UL serving
/// distances, integrating over the independent nearest-BS distances of every tier.
inline double joint_expectation(const fdassoc::Scenario& s, std::size_t j, std::size_t k,
                                const std::function<double(double, double)>& h) {
    const double alpha = s.channel.alpha;
    const double delta = 2.0 / alpha;
    const auto& t = s.tiers;
    double total_density = 0.0;
    for (const auto& tier : t) total_density += tier.density;
    const double scale = 1.0 / std::sqrt(kPi * total_density);

    if (j == k) {
        double m = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == j) continue;
            m += t[i].density * std::pow(std::max(t[j].dl_weight / t[i].dl_weight,
                                                  t[j].ul_weight / t[i].ul_weight),
                                         delta);
        }
        auto f = [&](double u) {
            const double x = u * scale;
            return scale * nearest_pdf(t[j].density, x) * std::exp(-kPi * m * x * x) * h(x, x);
        };
        return integrate_to_inf(f);
    }

    const double y_lo_ratio = std::pow(t[j].dl_weight / t[k].dl_weight, 1.0 / alpha);
    const double y_hi_ratio = std::pow(t[j].ul_weight / t[k].ul_weight, 1.0 / alpha);
    if (!(y_hi_ratio > y_lo_ratio)) return 0.0;

    auto outer = [&](double u) {
        const double x = u * scale;
        auto inner = [&](double y) {
            double exponent = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i == j || i == k) continue;
                const double dl = x * x * std::pow(t[j].dl_weight / t[i].dl_weight, delta);
                const double ul = y * y * std::pow(t[k].ul_weight / t[i].ul_weight, delta);
                exponent += t[i].density * std::max(dl, ul);
            }
            return nearest_pdf(t[k].density, y) * std::exp(-kPi * exponent) * h(x, y);
        };
        std::vector<double> cuts;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == j || i == k) continue;
            cuts.push_back(x * std::pow(t[j].dl_weight * t[i].ul_weight /
                                            (t[i].dl_weight * t[k].ul_weight),
                                        1.0 / alpha));
        }
        return scale * nearest_pdf(t[j].density, x) *
               integrate_pieces(inner, cuts, x * y_lo_ratio, x * y_hi_ratio);
    };
    return integrate_to_inf(outer);
}

inline double psi(const fdassoc::Scenario& s, std::size_t j, std::size_t k) {
    return joint_expectation(s, j, k, [](double, double) { return 1.0; });
}

/// Rayleigh serving-distance law of effective density `lambda`, restricted to
/// r >= lo. `kink` marks a distance where h is not smooth.
inline double rayleigh_expectation(double lambda, const std::function<double(double)>& h,
                                   double lo = 0.0, double kink = 0.0) {
    const double scale = 1.0 / std::sqrt(kPi * lambda);
    auto f = [&](double u) {
        const double r = lo + u * scale;
        return scale * nearest_pdf(lambda, r) * h(r);
    };
    // A kink many scales out sits where the density has already vanished.
    const double far = (kink - lo) / scale;
    const double split = far > 0.0 && far < 40.0 ? far : 1.0;
    // tanh-sinh near the origin copes with integrable endpoint singularities.
    // The lower end stops short of 0 where h may overflow; the omitted mass is negligible.
    boost::math::quadrature::tanh_sinh<double> head;
    return head.integrate(f, 1e-60, split, 1e-13) + integrate_to_inf(f, split);
}

/// Distance beyond which a tier-k UE transmits at full power.
inline double cap_radius(const fdassoc::Scenario& s, std::size_t k) {
    const auto& pc = s.power_control;
    return std::pow(pc.p_max / (s.tiers[k].sensitivity * std::pow(s.channel.gain, pc.epsilon)),
                    1.0 / (pc.epsilon * s.channel.alpha));
}

inline double ul_effective_density(const fdassoc::Scenario& s, std::size_t k) {
    const double delta = 2.0 / s.channel.alpha;
    double sum = 0.0;
    for (const auto& t : s.tiers) sum += std::pow(s.tiers[k].ul_weight / t.ul_weight, delta) * t.density;
    return sum;
}

inline double dl_effective_density(const fdassoc::Scenario& s, std::size_t k) {
    const double delta = 2.0 / s.channel.alpha;
    double sum = 0.0;
    for (const auto& t : s.tiers) sum += std::pow(s.tiers[k].dl_weight / t.dl_weight, delta) * t.density;
    return sum;
}

inline double tx_power(const fdassoc::Scenario& s, std::size_t k, double r) {
    const auto& pc = s.power_control;
    return std::min(s.tiers[k].sensitivity *
                        std::pow(s.channel.gain * std::pow(r, s.channel.alpha), pc.epsilon),
                    pc.p_max);
}

/// int_d^inf (1 - exp(-pi lambda r^2)) r^{1-alpha} dr
inline double repulsive_campbell(double d, double alpha, double lambda) {
    auto f = [&](double r) { return -std::expm1(-kPi * lambda * r * r) * std::pow(r, 1.0 - alpha); };
    // The integrand lives on two scales (d and the mean spacing), so split
    // geometrically between them before the infinite tail.
    const double scale = 1.0 / std::sqrt(kPi * lambda);
    const double top = 20.0 * std::max(scale, d);
    std::vector<double> cuts;
    for (double r = std::max(d, 1e-3 * scale) * 2.0; r < top; r *= 2.0) cuts.push_back(r);
    // Algebraic tails need exp-sinh; Gauss-Kronrod's map to [0, 1) truncates them.
    boost::math::quadrature::exp_sinh<double> tail;
    double head = 0.0;
    if (d == 0.0) {
        // r^{3-alpha} near the origin is singular for alpha > 3; r = v^q with
        // q (4 - alpha) = 2 turns it into a smooth integrand.
        const double q = 2.0 / (4.0 - alpha);
        auto g = [&](double v) {
            if (v == 0.0) return 0.0;
            const double r = std::pow(v, q);
            const double x = kPi * lambda * r * r;
            const double ratio = x < 1e-8 ? 1.0 - 0.5 * x : -std::expm1(-x) / x;
            return kPi * lambda * ratio * q * std::exp((q * (4.0 - alpha) - 1.0) * std::log(v));
        };
        boost::math::quadrature::tanh_sinh<double> ts;
        head = ts.integrate(g, 0.0, std::pow(cuts.front(), 1.0 / q), 1e-14);
        d = cuts.front();
    }
    return head + integrate_pieces(f, cuts, d, top) +
           tail.integrate([&](double t) { return f(top + t); }, 1e-14);
}

/// Mean aggregate interference at a typical tier-k BS, straight from Campbell's theorem.
inline double mean_ul_interference(const fdassoc::Scenario& s, std::size_t k) {
    const auto& ch = s.channel;
    const double alpha = ch.alpha;
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& t = s.tiers[i];
        const double repulsion = t.density / s.pair_corr.beta_b;
        total += 2.0 * kPi * t.density * t.bs_power / ch.gain_b *
                 repulsive_campbell(s.pair_corr.d_b, ch.alpha_b, repulsion);
        const double reach = std::pow(t.ul_weight / s.tiers[k].ul_weight, 1.0 / alpha);
        auto per_ue = [&](double r_own) {
            // Interferers sit farther than reach * r_own from the tagged BS.
            const double near = reach * r_own;
            return tx_power(s, i, r_own) * std::pow(near, 2.0 - alpha) / (alpha - 2.0) / ch.gain;
        };
        // The UL serving distance law is cut below d_o without renormalization.
        total += 2.0 * kPi * t.density *
                 rayleigh_expectation(ul_effective_density(s, i), per_ue, s.pair_corr.d_o, cap_radius(s, i));
    }
    return total;
}

/// Mean aggregate interference at a typical UE served in DL by tier j from distance r_j.
inline double mean_dl_interference(const fdassoc::Scenario& s, std::size_t j, double r_j) {
    const auto& ch = s.channel;
    const double alpha = ch.alpha;
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& t = s.tiers[i];
        const double near = std::pow(t.dl_weight / s.tiers[j].dl_weight, -1.0 / alpha) * r_j;
        total += 2.0 * kPi * t.density * t.bs_power / ch.gain * std::pow(near, 2.0 - alpha) / (alpha - 2.0);
        const double lambda = ul_effective_density(s, i);
        const double mean_power =
            rayleigh_expectation(lambda, [&](double r) { return tx_power(s, i, r); }, 0.0, cap_radius(s, i));
        total += 2.0 * kPi * t.density * mean_power / ch.gain_u *
                 repulsive_campbell(s.pair_corr.d_u, ch.alpha_u, lambda);
    }
    return total;
}

}  // namespace oracle
