#include "fdassoc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

#include "fdassoc/assoc.hpp"
#include "fdassoc/errors.hpp"
#include "fdassoc/interference.hpp"
#include "fdassoc/rate.hpp"

namespace fdassoc {

namespace {

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

// Mixed-radix enumeration of `dims` digits in [0, base).
std::vector<int> digits(std::size_t index, std::size_t dims, int base) {
    std::vector<int> out(dims);
    for (std::size_t d = dims; d-- > 0;) {
        out[d] = static_cast<int>(index % base);
        index /= base;
    }
    return out;
}

template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
    const std::size_t workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

ClosedFormWeights optimal_weights_closed_form(const Scenario& s) {
    ClosedFormWeights out;
    const std::size_t n = s.size();
    std::vector<double> power(n);
    for (std::size_t k = 0; k < n; ++k) power[s.user_index[k]] = s.tiers[k].bs_power;
    for (std::size_t t = 0; t < n; ++t) {
        out.weights.ul.push_back(1.0);
        out.weights.dl.push_back(power[0] / power[t]);
    }

    const TierParams& first = s.tiers.front();
    for (const TierParams& t : s.tiers) {
        if (!nearly_equal(t.sensitivity, first.sensitivity)) {
            out.assumptions_hold = false;
            out.warnings.push_back("sensitivities differ across tiers");
            break;
        }
    }
    if (!std::isinf(s.power_control.p_max)) {
        out.assumptions_hold = false;
        out.warnings.push_back("UE transmit power is capped");
    }
    for (const TierParams& t : s.tiers) {
        if (!nearly_equal(t.si_mean_bs * t.bs_power, first.si_mean_bs * first.bs_power)) {
            out.assumptions_hold = false;
            out.warnings.push_back("BS residual self-interference power differs across tiers");
            break;
        }
    }
    return out;
}

std::vector<double> optimal_dl_densities(const Scenario& s) {
    const double delta = s.delta();
    double sum = 0.0;
    for (const TierParams& t : s.tiers) sum += std::pow(t.bs_power, delta) * t.density;
    std::vector<double> out;
    for (const TierParams& t : s.tiers) out.push_back(std::pow(t.bs_power, -delta) * sum);
    return out;
}

std::vector<double> optimal_ul_densities(const Scenario& s) {
    double sum = 0.0;
    for (const TierParams& t : s.tiers) sum += t.density;
    return std::vector<double>(s.size(), sum);
}

SubproblemObjectives evaluate_p1_p2_objectives(const Scenario& s,
                                               const std::vector<double>& dl_density,
                                               const std::vector<double>& ul_density) {
    const std::size_t n = s.size();
    if (dl_density.size() != n || ul_density.size() != n) {
        throw ValidationError("effective densities must have one entry per tier");
    }
    double dl_mass = 0.0;
    double ul_mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!(dl_density[j] > 0.0) || !(ul_density[j] > 0.0)) {
            throw ValidationError("effective densities must be positive");
        }
        dl_mass += s.tiers[j].density / dl_density[j];
        ul_mass += s.tiers[j].density / ul_density[j];
    }
    if (std::abs(dl_mass - 1.0) > 1e-9 || std::abs(ul_mass - 1.0) > 1e-9) {
        throw ValidationError("effective densities violate the association-probability constraint");
    }

    const double alpha = s.channel.alpha;
    const double eps = s.power_control.epsilon;
    double bs_sum = 0.0;
    double ue_dl_sum = 0.0;
    double ue_ul_sum = 0.0;
    double ue_si_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const TierParams& t = s.tiers[i];
        bs_sum += t.bs_power * t.density * std::pow(dl_density[i], 0.5 * (alpha - 2.0));
        ue_dl_sum += t.sensitivity * t.density *
                     k1(s.pair_corr.d_u, s.channel.alpha_u, ul_density[i]) /
                     std::pow(ul_density[i], 0.5 * eps * alpha);
        ue_ul_sum += t.sensitivity * t.density * std::pow(ul_density[i], 0.5 * eps * alpha);
        ue_si_sum += t.sensitivity * t.density / std::pow(ul_density[i], 0.5 * (2.0 + eps * alpha));
    }
    SubproblemObjectives out{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        const TierParams& t = s.tiers[j];
        const double dl_weight = t.density / (t.bs_power * std::pow(dl_density[j], 0.5 * (2.0 + alpha)));
        const double ul_weight = t.density / (t.sensitivity * std::pow(ul_density[j], 0.5 * (2.0 + alpha)));
        out.p1 += dl_weight * bs_sum + dl_weight * ue_dl_sum;
        out.p2 += ul_weight * ue_ul_sum + dl_weight * ue_si_sum;
    }
    return out;
}

Scenario with_weights(const Scenario& s, const WeightAssignment& w) {
    const std::size_t n = s.size();
    if (w.ul.size() != n || w.dl.size() != n) {
        throw ValidationError("weight assignment must have one entry per tier");
    }
    Scenario out = s;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t u = s.user_index[k];
        if (!(w.ul[u] > 0.0) || !(w.dl[u] > 0.0)) throw ValidationError("weights must be positive");
        out.tiers[k].ul_weight = w.ul[u];
        out.tiers[k].dl_weight = w.dl[u];
        out.source.tiers[u].ul_weight = w.ul[u];
        out.source.tiers[u].dl_weight = w.dl[u];
    }
    return normalize_tier_order(out).scenario;
}

GridSearchResult grid_search_weights(const Scenario& s, const GridSpec& grid) {
    if (grid.points < 1) throw ValidationError("grid needs at least one point per ratio");
    const std::size_t n = s.size();
    const std::size_t free = n - 1;
    const WeightAssignment center = optimal_weights_closed_form(s).weights;

    GridSearchResult out;
    const double step = grid.points > 1 ? 2.0 * grid.span_db / (grid.points - 1) : 0.0;
    for (int i = 0; i < grid.points; ++i) {
        const double db = grid.points > 1 ? -grid.span_db + i * step : 0.0;
        out.offsets.push_back(std::pow(10.0, db / 10.0));
    }

    std::size_t d_count = 1;
    for (std::size_t d = 0; d < free; ++d) d_count *= grid.points;
    // The extra U candidate per D point is U = D, so the coupled assignment is
    // always inside the decoupled search space.
    const std::size_t u_count = d_count + 1;

    auto dl_of = [&](const std::vector<int>& idx) {
        std::vector<double> dl{1.0};
        for (std::size_t t = 0; t < free; ++t) dl.push_back(center.dl[t + 1] * out.offsets[idx[t]]);
        return dl;
    };
    auto ul_of = [&](const std::vector<int>& idx) {
        std::vector<double> ul{1.0};
        for (std::size_t t = 0; t < free; ++t) ul.push_back(center.ul[t + 1] * out.offsets[idx[t]]);
        return ul;
    };

    std::vector<double> dua(d_count * u_count);
    std::vector<double> cua(d_count);
    parallel_for(d_count * u_count, grid.threads, [&](std::size_t flat) {
        const std::size_t di = flat / u_count;
        const std::size_t ui = flat % u_count;
        const auto dl = dl_of(digits(di, free, grid.points));
        const auto ul = ui == d_count ? dl : ul_of(digits(ui, free, grid.points));
        dua[flat] = mean_rate_utility(with_weights(s, WeightAssignment{ul, dl}), Mode::FdDua).total;
    });
    parallel_for(d_count, grid.threads, [&](std::size_t di) {
        const auto dl = dl_of(digits(di, free, grid.points));
        cua[di] = mean_rate_utility(with_weights(s, WeightAssignment{dl, dl}), Mode::FdCua).total;
    });

    auto pick = [](const std::vector<double>& values) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (values[i] > values[best]) best = i;
        }
        double runner = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i != best) runner = std::max(runner, values[i]);
        }
        return std::pair<std::size_t, double>{best, values[best] - runner};
    };

    const auto [dua_best, dua_gap] = pick(dua);
    const std::size_t di = dua_best / u_count;
    const std::size_t ui = dua_best % u_count;
    out.dua.method = "grid_search";
    out.dua.evaluations = dua.size();
    out.dua.utility = dua[dua_best];
    out.dua.runner_up_gap = dua.size() > 1 ? dua_gap : 0.0;
    out.dua.dl_index = digits(di, free, grid.points);
    out.dua.assignment.dl = dl_of(out.dua.dl_index);
    if (ui == d_count) {
        out.dua.ul_index.assign(free, -1);
        out.dua.assignment.ul = out.dua.assignment.dl;
    } else {
        out.dua.ul_index = digits(ui, free, grid.points);
        out.dua.assignment.ul = ul_of(out.dua.ul_index);
    }

    const auto [cua_best, cua_gap] = pick(cua);
    out.cua.method = "grid_search";
    out.cua.evaluations = cua.size();
    out.cua.utility = cua[cua_best];
    out.cua.runner_up_gap = cua.size() > 1 ? cua_gap : 0.0;
    out.cua.dl_index = digits(cua_best, free, grid.points);
    out.cua.ul_index = out.cua.dl_index;
    out.cua.assignment.dl = dl_of(out.cua.dl_index);
    out.cua.assignment.ul = out.cua.assignment.dl;

    for (std::size_t d = 0; d < d_count; ++d) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t u = 0; u < u_count; ++u) best = std::max(best, dua[d * u_count + u]);
        if (best < cua[d]) out.dua_dominates = false;
    }
    return out;
}

}  // namespace fdassoc
