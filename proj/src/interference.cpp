#include "fdassoc/interference.hpp"

#include <algorithm>
#include <cmath>

#include "fdassoc/assoc.hpp"
#include "fdassoc/errors.hpp"
#include "fdassoc/mathkit.hpp"

namespace fdassoc {

using math::kInf;
using math::kPi;

double PairCorrelation::operator()(double r) const {
    switch (kind) {
        case PairKind::DlToDl:
        case PairKind::UlToUl:
            return r > exclusion_radius ? 1.0 : 0.0;
        case PairKind::DlToUl:
        case PairKind::UlToDl:
            if (r < min_distance) return 0.0;
            return -std::expm1(-kPi * repulsion_density * r * r);
    }
    return 0.0;
}

double k1(double d, double alpha, double lambda) {
    if (!(alpha > 2.0)) throw DomainError("k1 needs alpha > 2");
    if (!(d >= 0.0)) throw DomainError("k1 needs d >= 0");
    if (!(lambda >= 0.0)) throw DomainError("k1 needs a nonnegative density");
    if (lambda == 0.0 || std::isinf(d)) return 0.0;
    const double scale = std::pow(kPi * lambda, 0.5 * (alpha - 2.0));
    if (d == 0.0) {
        if (alpha >= 4.0) throw DomainError("k1 diverges at d = 0 for alpha >= 4");
        return scale * std::tgamma(0.5 * (4.0 - alpha)) / (alpha - 2.0);
    }
    // The near-field term d^{2-alpha}(1 - e^{-x}) and the far-field gamma term
    // are both nonnegative, so no cancellation occurs.
    const double x = kPi * lambda * d * d;
    const double near = std::pow(d, 2.0 - alpha) * -std::expm1(-x);
    const double far = scale * math::upper_incomplete_gamma(0.5 * (4.0 - alpha), x);
    return (near + far) / (alpha - 2.0);
}

double k2(const Scenario& s, std::size_t i) {
    const double alpha = s.channel.alpha;
    const double eps = s.power_control.epsilon;
    const double lambda = effective_densities(s)[i].ul;
    const double d_o = s.pair_corr.d_o;
    const double start = kPi * lambda * d_o * d_o;
    const double cap = tx_cap_argument(s, i);

    double below = 0.0;
    if (cap > start) {
        const double order = 0.5 * (4.0 - alpha * (1.0 - eps));
        below = std::pow(kPi * lambda, 0.5 * (alpha * (1.0 - eps) - 2.0)) *
                math::generalized_gamma(order, start, cap);
    }
    double above = 0.0;
    if (!std::isinf(cap)) {
        const double scale = s.tiers[i].sensitivity * std::pow(s.channel.gain, eps);
        above = s.power_control.p_max / scale * std::pow(kPi * lambda, 0.5 * (alpha - 2.0)) *
                math::upper_incomplete_gamma(0.5 * (4.0 - alpha), std::max(start, cap));
    }
    return below + above;
}

double bs_repulsion_density(const Scenario& s, std::size_t i) {
    if (s.pair_corr.bs_repulsion == BsRepulsion::EffectiveDlDensity) {
        return effective_densities(s)[i].dl;
    }
    return s.tiers[i].density / s.pair_corr.beta_b;
}

MeanInterference mean_ul_interference(const Scenario& s, std::size_t k) {
    if (k >= s.size()) throw DomainError("tier index out of range");
    const auto& ch = s.channel;
    const double alpha = ch.alpha;
    const double eps = s.power_control.epsilon;
    MeanInterference out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const TierParams& t = s.tiers[i];
        const double bs = 2.0 * kPi * t.density *
                          k1(s.pair_corr.d_b, ch.alpha_b, bs_repulsion_density(s, i)) *
                          t.bs_power / ch.gain_b;
        const double ratio = std::pow(t.ul_weight / s.tiers[k].ul_weight, (2.0 - alpha) / alpha);
        const double ue = 2.0 * kPi * t.density * ratio * t.sensitivity * std::pow(ch.gain, eps) *
                          k2(s, i) / (ch.gain * (alpha - 2.0));
        out.per_tier_bs_part.push_back(bs);
        out.per_tier_ue_part.push_back(ue);
        out.total += bs + ue;
    }
    return out;
}

double mean_ul_self_interference(const Scenario& s, std::size_t k) {
    return s.tiers.at(k).si_mean_bs * s.tiers[k].bs_power;
}

double dl_bs_interference_scale(const Scenario& s, std::size_t j) {
    const double alpha = s.channel.alpha;
    double sum = 0.0;
    for (const TierParams& t : s.tiers) {
        sum += 2.0 * kPi * t.density *
               std::pow(s.tiers.at(j).dl_weight / t.dl_weight, (2.0 - alpha) / alpha) * t.bs_power;
    }
    return sum / (s.channel.gain * (alpha - 2.0));
}

namespace {

MeanInterference dl_interference(const Scenario& s, std::size_t j, double distance_factor) {
    const auto& ch = s.channel;
    const double alpha = ch.alpha;
    const auto eff = effective_densities(s);
    MeanInterference out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const TierParams& t = s.tiers[i];
        const double bs = 2.0 * kPi * t.density *
                          std::pow(s.tiers[j].dl_weight / t.dl_weight, (2.0 - alpha) / alpha) *
                          distance_factor * t.bs_power / (ch.gain * (alpha - 2.0));
        const double ue = 2.0 * kPi * t.density * k1(s.pair_corr.d_u, ch.alpha_u, eff[i].ul) *
                          tx_power_moment(s, i, 1) / ch.gain_u;
        out.per_tier_bs_part.push_back(bs);
        out.per_tier_ue_part.push_back(ue);
        out.total += bs + ue;
    }
    return out;
}

}  // namespace

MeanInterference mean_dl_interference(const Scenario& s, std::size_t j, double r_j) {
    if (j >= s.size()) throw DomainError("tier index out of range");
    if (!(r_j > 0.0)) throw DomainError("DL BS interference diverges at zero serving distance");
    return dl_interference(s, j, std::pow(r_j, 2.0 - s.channel.alpha));
}

MeanInterference mean_dl_interference_unconditional(const Scenario& s, std::size_t j) {
    if (j >= s.size()) throw DomainError("tier index out of range");
    if (s.channel.alpha >= 4.0) {
        throw DomainError("unconditional DL BS interference diverges for alpha >= 4");
    }
    return dl_interference(s, j,
                           marginal_distance_moment_real(s, j, Link::Dl, 2.0 - s.channel.alpha));
}

double mean_dl_self_interference(const Scenario& s, std::size_t k) {
    return s.power_control.si_mean_ue * tx_power_moment(s, k, 1);
}

}  // namespace fdassoc
