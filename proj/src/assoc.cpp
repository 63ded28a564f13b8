#include "fdassoc/assoc.hpp"

#include <algorithm>
#include <cmath>

#include "fdassoc/errors.hpp"
#include "fdassoc/mathkit.hpp"

namespace fdassoc {

namespace {

using math::kInf;
using math::kPi;

void check_tier(const Scenario& s, std::size_t j) {
    if (j >= s.size()) throw DomainError("tier index out of range");
}

// One piece of the UL/DL boundary integral between consecutive weight ratios.
struct Segment {
    double upsilon;  // D_j^delta * sum_{i>l} lambda_i D_i^{-delta}
    double omega;    // (sum_{i<=l} lambda_i U_i^{-delta}) / (sum_{i>l} lambda_i D_i^{-delta})
    double lo;       // mu_l^delta
    double hi;       // mu_{l+1}^delta
};

std::vector<Segment> segments(const Scenario& s, std::size_t j, std::size_t k) {
    const double delta = s.delta();
    const std::size_t n = s.size();
    std::vector<Segment> out;
    for (std::size_t l = k; l < j; ++l) {
        double ul_part = 0.0;
        double dl_part = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const TierParams& t = s.tiers[i];
            if (i <= l) {
                ul_part += t.density * std::pow(t.ul_weight, -delta);
            } else {
                dl_part += t.density * std::pow(t.dl_weight, -delta);
            }
        }
        const TierParams& a = s.tiers[l];
        const TierParams& b = s.tiers[l + 1];
        out.push_back(Segment{
            std::pow(s.tiers[j].dl_weight, delta) * dl_part,
            ul_part / dl_part,
            std::pow(a.ul_weight / a.dl_weight, delta),
            std::pow(b.ul_weight / b.dl_weight, delta),
        });
    }
    return out;
}

// (D_j / U_k)^delta lambda_j lambda_k: common prefactor of the k < j branch.
double cross_prefactor(const Scenario& s, std::size_t j, std::size_t k) {
    return s.tiers[j].density * s.tiers[k].density *
           std::pow(s.tiers[j].dl_weight / s.tiers[k].ul_weight, s.delta());
}

// E[R_j^m 1{(j,k)}] for k < j.
double cross_dl_partial(const Scenario& s, std::size_t j, std::size_t k, double m) {
    const double q = 0.5 * (2.0 + m);
    double sum = 0.0;
    for (const Segment& g : segments(s, j, k)) {
        if (g.hi <= g.lo) continue;
        const double base = std::pow(1.0 + g.lo * g.omega, -q);
        const double rel = std::log1p((g.hi - g.lo) * g.omega / (1.0 + g.lo * g.omega));
        const double diff = base * -std::expm1(-q * rel);
        sum += std::pow(g.upsilon, -(4.0 + m) / 2.0) * diff / g.omega;
    }
    return cross_prefactor(s, j, k) * std::tgamma(q) * std::pow(kPi, -0.5 * m) * sum;
}

// E[R_k^n 1{(j,k)}] for k < j.
double cross_ul_partial(const Scenario& s, std::size_t j, std::size_t k, double n) {
    const double q = 0.5 * (2.0 + n);
    double sum = 0.0;
    for (const Segment& g : segments(s, j, k)) {
        if (g.hi <= g.lo) continue;
        const double top = std::pow(g.hi / (1.0 + g.hi * g.omega), q);
        const double log_ratio = std::log1p((g.lo - g.hi) / g.hi) +
                                 std::log1p((g.hi - g.lo) * g.omega / (1.0 + g.lo * g.omega));
        const double diff = -top * std::expm1(q * log_ratio);
        sum += std::pow(g.upsilon, -(4.0 + n) / 2.0) * diff;
    }
    const double scale = std::pow(s.tiers[j].dl_weight / s.tiers[k].ul_weight, n / s.channel.alpha);
    return cross_prefactor(s, j, k) * scale * std::tgamma(q) * std::pow(kPi, -0.5 * n) * sum;
}

double rayleigh_moment(double density, double order) {
    return std::tgamma(1.0 + 0.5 * order) * std::pow(kPi * density, -0.5 * order);
}

}  // namespace

std::vector<EffectiveDensity> effective_densities(const Scenario& s) {
    const double delta = s.delta();
    std::vector<EffectiveDensity> out;
    for (const TierParams& tj : s.tiers) {
        EffectiveDensity e{0.0, 0.0};
        for (const TierParams& ti : s.tiers) {
            e.dl += std::pow(tj.dl_weight / ti.dl_weight, delta) * ti.density;
            e.ul += std::pow(tj.ul_weight / ti.ul_weight, delta) * ti.density;
        }
        out.push_back(e);
    }
    return out;
}

TierProbabilities per_tier_probability(const Scenario& s) {
    TierProbabilities p;
    const auto eff = effective_densities(s);
    for (std::size_t j = 0; j < s.size(); ++j) {
        p.dl.push_back(s.tiers[j].density / eff[j].dl);
        p.ul.push_back(s.tiers[j].density / eff[j].ul);
    }
    return p;
}

double same_tier_density(const Scenario& s, std::size_t j) {
    check_tier(s, j);
    const double delta = s.delta();
    const TierParams& tj = s.tiers[j];
    double sum = 0.0;
    for (const TierParams& ti : s.tiers) {
        const double ratio = std::max(tj.dl_weight / ti.dl_weight, tj.ul_weight / ti.ul_weight);
        sum += std::pow(ratio, delta) * ti.density;
    }
    return sum;
}

Matrix joint_association_matrix(const Scenario& s) {
    const std::size_t n = s.size();
    Matrix psi(n);
    for (std::size_t j = 0; j < n; ++j) {
        psi(j, j) = s.tiers[j].density / same_tier_density(s, j);
        for (std::size_t k = 0; k < j; ++k) {
            double sum = 0.0;
            for (const Segment& g : segments(s, j, k)) {
                if (g.hi <= g.lo) continue;
                sum += (g.hi - g.lo) /
                       ((1.0 + g.lo * g.omega) * (1.0 + g.hi * g.omega) * g.upsilon * g.upsilon);
            }
            psi(j, k) = cross_prefactor(s, j, k) * sum;
        }
    }
    return psi;
}

double marginal_distance_cdf(const Scenario& s, std::size_t j, Link link, double r) {
    check_tier(s, j);
    if (r <= 0.0) return 0.0;
    const auto e = effective_densities(s)[j];
    const double density = link == Link::Dl ? e.dl : e.ul;
    return -std::expm1(-kPi * density * r * r);
}

double marginal_distance_moment_real(const Scenario& s, std::size_t j, Link link, double order) {
    check_tier(s, j);
    if (order <= -2.0) throw DomainError("distance moment diverges for order <= -2");
    const auto e = effective_densities(s)[j];
    return rayleigh_moment(link == Link::Dl ? e.dl : e.ul, order);
}

double marginal_distance_moment(const Scenario& s, std::size_t j, Link link, int n) {
    if (n < 0) throw DomainError("distance moment order must be >= 0");
    return marginal_distance_moment_real(s, j, link, n);
}

double joint_distance_pdf(const Scenario& s, std::size_t j, std::size_t k, double r_j,
                          double r_k) {
    check_tier(s, j);
    check_tier(s, k);
    if (k > j) throw DomainError("UL tier above DL tier has probability zero in normalized order");
    if (r_j < 0.0 || r_k < 0.0) return 0.0;
    const double lj = s.tiers[j].density;
    if (j == k) {
        return 2.0 * kPi * lj * r_j * std::exp(-kPi * same_tier_density(s, j) * r_j * r_j);
    }
    const double alpha = s.channel.alpha;
    const double delta = s.delta();
    const TierParams& tj = s.tiers[j];
    const TierParams& tk = s.tiers[k];
    const double lower = std::pow(tj.dl_weight / tk.dl_weight, 1.0 / alpha) * r_j;
    const double upper = std::pow(tj.ul_weight / tk.ul_weight, 1.0 / alpha) * r_j;
    if (!(r_k > lower && r_k < upper)) return 0.0;
    double void_mass = 0.0;
    for (const TierParams& ti : s.tiers) {
        const double dl = std::pow(tj.dl_weight / ti.dl_weight, delta) * r_j * r_j;
        const double ul = std::pow(tk.ul_weight / ti.ul_weight, delta) * r_k * r_k;
        void_mass += ti.density * std::max(dl, ul);
    }
    return 4.0 * kPi * kPi * lj * tk.density * r_j * r_k * std::exp(-kPi * void_mass);
}

double joint_partial_moment(const Scenario& s, std::size_t j, std::size_t k, Link which,
                            double order) {
    check_tier(s, j);
    check_tier(s, k);
    if (order <= -2.0) throw DomainError("distance moment diverges for order <= -2");
    if (k > j) return 0.0;
    if (j == k) {
        const double m = same_tier_density(s, j);
        return s.tiers[j].density / m * rayleigh_moment(m, order);
    }
    return which == Link::Dl ? cross_dl_partial(s, j, k, order) : cross_ul_partial(s, j, k, order);
}

double joint_distance_moment_real(const Scenario& s, std::size_t j, std::size_t k, Link which,
                                  double order) {
    const double mass = joint_partial_moment(s, j, k, which, 0.0);
    if (!(mass > 0.0)) throw DomainError("association pair has probability zero");
    if (j == k) return rayleigh_moment(same_tier_density(s, j), order);
    return joint_partial_moment(s, j, k, which, order) / mass;
}

double joint_distance_moment(const Scenario& s, std::size_t j, std::size_t k, Link which,
                             int order) {
    if (order < 0) throw DomainError("distance moment order must be >= 0");
    return joint_distance_moment_real(s, j, k, which, order);
}

double tx_cap_argument(const Scenario& s, std::size_t k) {
    check_tier(s, k);
    const auto& pc = s.power_control;
    const double scale = s.tiers[k].sensitivity * std::pow(s.channel.gain, pc.epsilon);
    const double ratio = pc.p_max / scale;
    if (pc.epsilon == 0.0) return ratio >= 1.0 ? kInf : 0.0;
    if (std::isinf(ratio)) return kInf;
    const double lambda = effective_densities(s)[k].ul;
    return kPi * lambda * std::pow(ratio, 2.0 / (pc.epsilon * s.channel.alpha));
}

double tx_power_cdf(const Scenario& s, std::size_t k, double t) {
    check_tier(s, k);
    const auto& pc = s.power_control;
    if (t >= pc.p_max) return 1.0;
    if (t <= 0.0) return 0.0;
    const double scale = s.tiers[k].sensitivity * std::pow(s.channel.gain, pc.epsilon);
    if (pc.epsilon == 0.0) return t >= std::min(scale, pc.p_max) ? 1.0 : 0.0;
    const double lambda = effective_densities(s)[k].ul;
    return -std::expm1(-kPi * lambda * std::pow(t / scale, 2.0 / (pc.epsilon * s.channel.alpha)));
}

double tx_power_moment_below_cap(const Scenario& s, std::size_t k, int n) {
    check_tier(s, k);
    if (n < 0) throw DomainError("power moment order must be >= 0");
    const auto& pc = s.power_control;
    const double scale = s.tiers[k].sensitivity * std::pow(s.channel.gain, pc.epsilon);
    const double cap = tx_cap_argument(s, k);
    if (pc.epsilon == 0.0) return cap > 0.0 ? std::pow(scale, n) : 0.0;
    const double lambda = effective_densities(s)[k].ul;
    const double order = 0.5 * n * pc.epsilon * s.channel.alpha;
    const double mass = std::isinf(cap) ? std::tgamma(1.0 + order)
                                        : math::lower_incomplete_gamma(1.0 + order, cap);
    return std::pow(scale, n) * std::pow(kPi * lambda, -order) * mass;
}

double tx_power_moment(const Scenario& s, std::size_t k, int n) {
    const double below = tx_power_moment_below_cap(s, k, n);
    const double cap = tx_cap_argument(s, k);
    if (std::isinf(cap)) return below;
    return below + std::pow(s.power_control.p_max, n) * std::exp(-cap);
}

}  // namespace fdassoc
