#include "fdassoc/rate.hpp"

#include <algorithm>
#include <cmath>

#include "fdassoc/errors.hpp"
#include "fdassoc/interference.hpp"
#include "fdassoc/mathkit.hpp"

namespace fdassoc {

namespace {

using math::kInf;
using math::kPi;

constexpr double kSubintervalRatio = 1.25;

struct Context {
    const Scenario& s;
    std::vector<EffectiveDensity> eff;
    TierProbabilities prob;
    std::vector<double> tx_mean;

    explicit Context(const Scenario& sc)
        : s(sc), eff(effective_densities(sc)), prob(per_tier_probability(sc)) {
        for (std::size_t k = 0; k < sc.size(); ++k) tx_mean.push_back(tx_power_moment(sc, k, 1));
    }
};

double gamma_alpha(const Scenario& s) { return std::tgamma(1.0 + 0.5 * s.channel.alpha); }

// tau^UL G^{1-eps} / rho_k * K4(k) / (pi Lambda_k^UL)^{alpha/2}: multiplies the
// interference-plus-noise seen by a tier-k BS.
double ul_signal_factor(const Context& c, std::size_t k) {
    const Scenario& s = c.s;
    const double g = std::pow(s.channel.gain, 1.0 - s.power_control.epsilon);
    return s.thresholds.tau_ul * g / s.tiers[k].sensitivity * k4(s, k) /
           std::pow(kPi * c.eff[k].ul, 0.5 * s.channel.alpha);
}

// DL penalty of a UE whose only self-interference-free terms are BS
// interference and `noise_like` (noise plus UE interference).
double dl_base_penalty(const Context& c, std::size_t j, double noise_like) {
    const Scenario& s = c.s;
    const double lam = kPi * c.eff[j].dl;
    return s.thresholds.tau_dl * s.channel.gain / s.tiers[j].bs_power *
           (a1(s, j) / lam + gamma_alpha(s) * noise_like / std::pow(lam, 0.5 * s.channel.alpha));
}

void finish(RateReport& r, const Scenario& s) {
    r.total = 0.0;
    if (r.has_dl) {
        r.dl_component = s.rate_dl() > 0.0 ? std::log(s.rate_dl()) - r.dl_penalty : -kInf;
        r.total += r.dl_component;
    }
    if (r.has_ul) {
        r.ul_component = s.rate_ul() > 0.0 ? std::log(s.rate_ul()) - r.ul_penalty : -kInf;
        r.total += r.ul_component;
    }
}

void fill_audit(RateReport& r, const Context& c) {
    const Scenario& s = c.s;
    const std::size_t n = s.size();
    r.psi = joint_association_matrix(s);
    r.a2 = a2(s);
    r.k3 = Matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        r.a1.push_back(a1(s, j));
        r.a3.push_back(a3(s, j));
        r.k4.push_back(k4(s, j));
        for (std::size_t k = 0; k <= j; ++k) {
            if (r.psi(j, k) > 0.0) r.k3(j, k) = k3(s, j, k);
        }
    }
    r.tx_power_mean = c.tx_mean;
    r.dl_pair_penalty = Matrix(n);
    r.ul_pair_penalty = Matrix(n);
}

RateReport decoupled(const Scenario& s, Mode label) {
    const Context c(s);
    RateReport r;
    r.mode = label;
    r.has_dl = r.has_ul = true;
    fill_audit(r, c);
    const std::size_t n = s.size();
    const double si_ue = s.power_control.si_mean_ue;
    for (std::size_t k = 0; k < n; ++k) {
        const double ul = ul_signal_factor(c, k) * (mean_ul_self_interference(s, k) + r.a3[k]);
        for (std::size_t j = k; j < n; ++j) {
            if (!(r.psi(j, k) > 0.0)) continue;
            const double dl = dl_base_penalty(c, j, r.a2) +
                              s.thresholds.tau_dl * s.channel.gain / s.tiers[j].bs_power * si_ue *
                                  c.tx_mean[k] / r.k3(j, k);
            r.dl_pair_penalty(j, k) = dl;
            r.ul_pair_penalty(j, k) = ul;
            r.dl_penalty += r.psi(j, k) * dl;
            r.ul_penalty += r.psi(j, k) * ul;
        }
    }
    finish(r, s);
    return r;
}

// Sum of UL interference terms at a tier-k BS, optionally without the DL
// interference of tier-k BSs themselves.
double ul_interference(const Scenario& s, std::size_t k, bool include_bs, bool exclude_own_bs) {
    const MeanInterference m = mean_ul_interference(s, k);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        sum += m.per_tier_ue_part[i];
        if (include_bs && !(exclude_own_bs && i == k)) sum += m.per_tier_bs_part[i];
    }
    return sum;
}

RateReport single_links(const Scenario& s, Mode mode) {
    const Context c(s);
    RateReport r;
    r.mode = mode;
    fill_audit(r, c);
    const std::size_t n = s.size();
    const double noise = s.channel.noise;

    const bool dl = mode == Mode::LegacyDl || mode == Mode::HdDl || mode == Mode::Fd3nt;
    const bool ul = mode == Mode::LegacyUl || mode == Mode::HdUl || mode == Mode::Fd3nt;
    r.has_dl = dl;
    r.has_ul = ul;

    if (dl) {
        const double noise_like = mode == Mode::HdDl ? noise : r.a2;
        for (std::size_t j = 0; j < n; ++j) {
            const double p = dl_base_penalty(c, j, noise_like);
            r.dl_pair_penalty(j, j) = p;
            r.dl_penalty += c.prob.dl[j] * p;
        }
    }
    if (ul) {
        for (std::size_t k = 0; k < n; ++k) {
            double load = noise;
            switch (mode) {
                case Mode::HdUl:
                    load += ul_interference(s, k, false, false);
                    break;
                case Mode::LegacyUl:
                    load += ul_interference(s, k, true, true);
                    break;
                default:
                    load += mean_ul_self_interference(s, k) + ul_interference(s, k, true, false);
                    break;
            }
            const double p = ul_signal_factor(c, k) * load;
            r.ul_pair_penalty(k, k) = p;
            r.ul_penalty += c.prob.ul[k] * p;
        }
    }
    finish(r, s);
    return r;
}

// pi W r_cap^2 for g(r) = r^alpha / min(r^{eps alpha}, cap_ratio).
double inverse_signal_cap(const Scenario& s, double w, double cap_ratio) {
    const double eps = s.power_control.epsilon;
    if (eps == 0.0) return cap_ratio >= 1.0 ? kInf : 0.0;
    if (std::isinf(cap_ratio)) return kInf;
    return kPi * w * std::pow(cap_ratio, 2.0 / (eps * s.channel.alpha));
}

// Times pi W with extra = 0 this is E[g(R)] for R Rayleigh of density W;
// times 1/2 with extra = 1 it is int_0^inf g(r) r^3 exp(-pi W r^2) dr.
double inverse_signal_integral(const Scenario& s, double w, double cap_ratio, int extra) {
    const double alpha = s.channel.alpha;
    const double eps = s.power_control.epsilon;
    const double cap = inverse_signal_cap(s, w, cap_ratio);
    const double pw = kPi * w;
    const double low_order = 1.0 + extra + 0.5 * alpha * (1.0 - eps);
    const double high_order = 1.0 + extra + 0.5 * alpha;
    double below = 0.0;
    if (cap > 0.0) {
        const double g = std::isinf(cap) ? std::tgamma(low_order)
                                         : math::lower_incomplete_gamma(low_order, cap);
        below = std::pow(pw, -low_order) * g;
    }
    double above = 0.0;
    if (!std::isinf(cap)) {
        above = std::pow(pw, -high_order) * math::upper_incomplete_gamma(high_order, cap) /
                cap_ratio;
    }
    return below + above;
}

// inner(W) = int_0^inf g(r) r^3 exp(-pi W r^2) dr.
double inverse_signal_inner(const Scenario& s, double w, double cap_ratio) {
    return 0.5 * inverse_signal_integral(s, w, cap_ratio, 1);
}

}  // namespace

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::FdDua: return "FD_DUA";
        case Mode::FdCua: return "FD_CUA";
        case Mode::Fd3nt: return "FD_3NT";
        case Mode::LegacyDl: return "LEGACY_DL";
        case Mode::LegacyUl: return "LEGACY_UL";
        case Mode::HdDl: return "HD_DL";
        case Mode::HdUl: return "HD_UL";
    }
    return "?";
}

Mode parse_mode(const std::string& name) {
    for (Mode m : all_modes()) {
        if (mode_name(m) == name) return m;
    }
    throw ConfigError("unknown mode '" + name + "'");
}

std::vector<Mode> all_modes() {
    return {Mode::FdDua, Mode::FdCua, Mode::Fd3nt, Mode::LegacyDl,
            Mode::LegacyUl, Mode::HdDl, Mode::HdUl};
}

double a1(const Scenario& s, std::size_t j) { return dl_bs_interference_scale(s, j); }

double a2(const Scenario& s) {
    const auto eff = effective_densities(s);
    double sum = s.channel.noise;
    for (std::size_t i = 0; i < s.size(); ++i) {
        sum += 2.0 * kPi * s.tiers[i].density * k1(s.pair_corr.d_u, s.channel.alpha_u, eff[i].ul) *
               tx_power_moment(s, i, 1) / s.channel.gain_u;
    }
    return sum;
}

double a3(const Scenario& s, std::size_t k) {
    return s.channel.noise + mean_ul_interference(s, k).total;
}

double k3(const Scenario& s, std::size_t j, std::size_t k) {
    return 1.0 / joint_distance_moment_real(s, j, k, Link::Dl, s.channel.alpha);
}

double k4(const Scenario& s, std::size_t k) {
    const double alpha = s.channel.alpha;
    const double eps = s.power_control.epsilon;
    const double lambda = effective_densities(s)[k].ul;
    const double cap = tx_cap_argument(s, k);
    const double low_order = 0.5 * (2.0 + alpha * (1.0 - eps));
    const double high_order = 0.5 * (2.0 + alpha);
    double below = 0.0;
    if (cap > 0.0) {
        const double g = std::isinf(cap) ? std::tgamma(low_order)
                                         : math::lower_incomplete_gamma(low_order, cap);
        below = std::pow(kPi * lambda, 0.5 * eps * alpha) * g;
    }
    double above = 0.0;
    if (!std::isinf(cap)) {
        const double scale = s.tiers[k].sensitivity * std::pow(s.channel.gain, eps);
        above = scale / s.power_control.p_max * math::upper_incomplete_gamma(high_order, cap);
    }
    return below + above;
}

RateReport mean_rate_utility(const Scenario& s, Mode mode) {
    switch (mode) {
        case Mode::FdDua:
            return decoupled(s, mode);
        case Mode::FdCua: {
            Scenario coupled = s;
            for (TierParams& t : coupled.tiers) t.ul_weight = t.dl_weight;
            return decoupled(coupled, mode);
        }
        default:
            return single_links(s, mode);
    }
}

double ul_inverse_signal_moment(const Scenario& s, std::size_t j, std::size_t k) {
    const double eps = s.power_control.epsilon;
    const double cap_ratio =
        s.power_control.p_max / (s.tiers[k].sensitivity * std::pow(s.channel.gain, eps));
    if (j == k) {
        // Both links share one BS whose distance is Rayleigh with this density.
        const double m = same_tier_density(s, j);
        return inverse_signal_integral(s, m, cap_ratio, 0) * (kPi * m);
    }
    const double mass = joint_partial_moment(s, j, k, Link::Ul, 0.0);
    if (!(mass > 0.0)) throw DomainError("association pair has probability zero");

    // With r_j = y r_k and v = y^2 the void mass is r_k^2 W(v), W piecewise
    // linear in v with kinks where a tier switches between the DL and UL bound.
    const double delta = s.delta();
    const TierParams& tj = s.tiers[j];
    const TierParams& tk = s.tiers[k];
    const double v_lo = std::pow(tk.ul_weight / tj.ul_weight, delta);
    const double v_hi = std::pow(tk.dl_weight / tj.dl_weight, delta);
    std::vector<double> dl_coef;
    std::vector<double> ul_coef;
    std::vector<double> cuts{v_lo, v_hi};
    for (const TierParams& ti : s.tiers) {
        dl_coef.push_back(std::pow(tj.dl_weight / ti.dl_weight, delta));
        ul_coef.push_back(std::pow(tk.ul_weight / ti.ul_weight, delta));
        const double kink = ul_coef.back() / dl_coef.back();
        if (kink > v_lo && kink < v_hi) cuts.push_back(kink);
    }
    std::sort(cuts.begin(), cuts.end());

    auto void_density = [&](double v) {
        double w = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            w += s.tiers[i].density * std::max(dl_coef[i] * v, ul_coef[i]);
        }
        return w;
    };

    const math::QuadratureRule rule = math::gauss_legendre_32();
    double integral = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c];
        const double b = cuts[c + 1];
        if (!(b > a)) continue;
        const int pieces = std::max(
            1, static_cast<int>(std::ceil(std::log(b / a) / std::log(kSubintervalRatio))));
        const double step = std::pow(b / a, 1.0 / pieces);
        double lo = a;
        for (int p = 0; p < pieces; ++p) {
            const double hi = p + 1 == pieces ? b : lo * step;
            const double mid = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo);
            double acc = 0.0;
            for (int q = 0; q < rule.size; ++q) {
                const double v = mid + half * rule.nodes[q];
                acc += rule.weights[q] * inverse_signal_inner(s, void_density(v), cap_ratio);
            }
            integral += acc * half;
            lo = hi;
        }
    }
    return 2.0 * kPi * kPi * tj.density * tk.density * integral / mass;
}

double rate_coverage_log(const Scenario& s, std::size_t j, std::size_t k, Link link) {
    if (k > j || !(joint_partial_moment(s, j, k, Link::Dl, 0.0) > 0.0)) {
        throw DomainError("association pair has probability zero");
    }
    const double alpha = s.channel.alpha;
    if (link == Link::Dl) {
        const double near = joint_distance_moment_real(s, j, k, Link::Dl, 2.0);
        const double far = joint_distance_moment_real(s, j, k, Link::Dl, alpha);
        const double si = s.power_control.si_mean_ue * tx_power_moment(s, k, 1);
        return -s.thresholds.tau_dl * s.channel.gain / s.tiers[j].bs_power *
               (a1(s, j) * near + (si + a2(s)) * far);
    }
    const double eps = s.power_control.epsilon;
    const double load = mean_ul_self_interference(s, k) + a3(s, k);
    return -s.thresholds.tau_ul * s.channel.gain /
           (s.tiers[k].sensitivity * std::pow(s.channel.gain, eps)) * load *
           ul_inverse_signal_moment(s, j, k);
}

Coverage coverage_from_log(double log_coverage) {
    if (log_coverage > 0.0) return Coverage{1.0, false};
    const double p = std::exp(log_coverage);
    return Coverage{p, p == 0.0 && std::isfinite(log_coverage)};
}

double hd_ul_utility_uncapped(const Scenario& s) {
    const double alpha = s.channel.alpha;
    const double eps = s.power_control.epsilon;
    const double tilt = alpha * (1.0 - eps);
    const auto prob = per_tier_probability(s);
    const double gammas = std::tgamma(0.5 * (2.0 + tilt)) * std::tgamma(0.5 * (4.0 - tilt));
    double penalty = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        double inner = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double ratio = s.tiers[i].ul_weight / s.tiers[k].ul_weight;
            inner += 2.0 * s.tiers[i].sensitivity * std::pow(ratio, (2.0 - alpha) / alpha) *
                     std::pow(ratio, 1.0 - eps) * prob.ul[i] / (alpha - 2.0);
        }
        penalty += prob.ul[k] * s.thresholds.tau_ul / s.tiers[k].sensitivity * gammas * inner;
    }
    return std::log(s.rate_ul()) - penalty;
}

double hd_ul_utility_nearest_bs(double tau_ul, double alpha, double epsilon) {
    const double tilt = alpha * (1.0 - epsilon);
    return std::log(std::log1p(tau_ul)) - 2.0 * tau_ul / (alpha - 2.0) *
                                              std::tgamma(0.5 * (2.0 + tilt)) *
                                              std::tgamma(0.5 * (4.0 - tilt));
}

double hd_dl_utility_no_noise(const Scenario& s) {
    const double alpha = s.channel.alpha;
    const auto prob = per_tier_probability(s);
    double penalty = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        double inner = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            inner += 2.0 * s.tiers[i].bs_power * (s.tiers[i].dl_weight / s.tiers[j].dl_weight) *
                     prob.dl[i] / (alpha - 2.0);
        }
        penalty += prob.dl[j] * s.thresholds.tau_dl / s.tiers[j].bs_power * inner;
    }
    return std::log(s.rate_dl()) - penalty;
}

double hd_dl_utility_max_power(double tau_dl, double alpha) {
    return std::log(std::log1p(tau_dl)) - 2.0 * tau_dl / (alpha - 2.0);
}

}  // namespace fdassoc
