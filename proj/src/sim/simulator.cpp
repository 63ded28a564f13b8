#include "fdassoc/sim/simulator.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "fdassoc/assoc.hpp"
#include "fdassoc/errors.hpp"
#include "fdassoc/interference.hpp"
#include "fdassoc/sim/spatial_grid.hpp"
#include "fdassoc/simd/kernels.hpp"

namespace fdassoc::sim {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Stream ids within one replication.
constexpr std::uint32_t kUeNetwork = 0;
constexpr std::uint32_t kUeFades = 1;
constexpr std::uint32_t kBsNetwork = 2;
constexpr std::uint32_t kBsFades = 3;

double total_density(const Scenario& s) {
    double sum = 0.0;
    for (const TierParams& t : s.tiers) sum += t.density;
    return sum;
}

double ue_disk_radius(const Scenario& s, const SimConfig& cfg) {
    const double spacing = 1.0 / std::sqrt(kPi * total_density(s));
    return std::min(cfg.ue_disk_spacings * spacing, cfg.window_half_width);
}

// About 64 BSs per tile.
double tile_side(const Scenario& s) { return std::sqrt(64.0 / total_density(s)); }

constexpr int kTileReach = 511;  // tiles per half-axis
constexpr std::size_t kMaxTiers = 15;

std::uint32_t tile_index(int ix, int iy) {
    return static_cast<std::uint32_t>((ix + kTileReach) + 2 * kTileReach * (iy + kTileReach));
}
constexpr std::uint32_t kPlantedTile = 0xFFFFF;
// Experiment bit marking the substreams that hold link fades.
constexpr std::uint32_t kFadeBit = 0x80;

std::array<double, 2> fades_at(const Philox& stream, std::size_t index) {
    const auto u = stream.uniforms_at(static_cast<std::uint32_t>(index));
    return {-std::log(u[0]), -std::log(u[1])};
}

// Stream word: experiment in bits 0-7, source in bits 8-11 (0 for UEs, 1 + tier
// for BSs), tile in bits 12-31.
std::uint32_t stream_id(std::uint32_t experiment, std::size_t source, std::uint32_t tile) {
    return experiment | static_cast<std::uint32_t>(source) << 8 | tile << 12;
}

double gamma_fade(Philox& rng, double shape) {
    return std::gamma_distribution<double>(shape, 1.0 / shape)(rng);
}

}  // namespace

void check_config(const Scenario& s, const SimConfig& cfg) {
    if (!(cfg.window_half_width > 0.0) || !std::isfinite(cfg.window_half_width)) {
        throw ConfigError("window half-width must be positive and finite");
    }
    if (!(cfg.ue_density_multiplier > 0.0)) throw ConfigError("UE density multiplier must be positive");
    if (!(cfg.ue_disk_spacings > 0.0)) throw ConfigError("UE disk radius must be positive");
    if (cfg.replications < 100) throw ConfigError("at least 100 replications are required");
    if (cfg.threads == 0) throw ConfigError("thread budget must be at least 1");
    if (cfg.replications > 0xFFFFFFFFu) throw ConfigError("at most 2^32 replications");
    if (s.size() > kMaxTiers) throw ConfigError("the simulator supports at most 15 tiers");
    double densest = 0.0;
    for (const EffectiveDensity& e : effective_densities(s)) densest = std::max({densest, e.dl, e.ul});
    const double hw = cfg.window_half_width;
    if (kPi * densest * hw * hw < 50.0) {
        throw ConfigError("window too small: pi * Lambda_max * half_width^2 = " +
                          std::to_string(kPi * densest * hw * hw) + " < 50");
    }
    if (hw > kTileReach * tile_side(s)) {
        throw ResourceError("window spans more than " + std::to_string(2 * kTileReach) +
                            " sampling tiles per axis");
    }
    const double r = ue_disk_radius(s, cfg);
    const double expected = total_density(s) * 4.0 * hw * hw +
                            cfg.ue_density_multiplier * total_density(s) * kPi * r * r;
    if (expected > cfg.max_expected_points) {
        throw ResourceError("expected " + std::to_string(expected) + " points per realization exceed the cap of " +
                            std::to_string(cfg.max_expected_points));
    }
}

double ue_tx_power(const Scenario& s, std::size_t k, double r) {
    const auto& pc = s.power_control;
    const double g = std::pow(s.channel.gain * std::pow(r, s.channel.alpha), pc.epsilon);
    return std::min(s.tiers[k].sensitivity * g, pc.p_max);
}

NetworkRealization sample_realization(const Scenario& s, const SimConfig& cfg, std::uint64_t rep,
                                      const RealizationRequest& req) {
    NetworkRealization real;
    real.half_width = cfg.window_half_width;
    real.seed = cfg.seed;
    real.replication = rep;

    // BSs come tile by tile from tiles anchored at the origin, each with its
    // own substream, so a larger window adds points without moving any.
    const double hw = cfg.window_half_width;
    const double side = tile_side(s);
    const int reach = static_cast<int>(std::ceil(hw / side));
    const double delta = s.delta();
    real.tier_begin.push_back(0);
    for (std::size_t t = 0; t < s.size(); ++t) {
        const TierParams& tier = s.tiers[t];
        auto add = [&](double x, double y, const Philox& fade, std::size_t index) {
            real.bs_x.push_back(x);
            real.bs_y.push_back(y);
            if (!req.link_fades) return;
            const auto h = fades_at(fade, index);
            real.bs_fade_to_ue.push_back(h[0]);
            real.bs_fade_to_bs.push_back(h[1]);
        };
        if (req.planted_tier && *req.planted_tier == t) {
            real.planted = real.bs_x.size();
            add(0.0, 0.0, Philox(cfg.seed, stream_id(req.stream | kFadeBit, t + 1, kPlantedTile), rep), 0);
        }
        for (int iy = -reach; iy < reach; ++iy) {
            for (int ix = -reach; ix < reach; ++ix) {
                const std::uint32_t tile = tile_index(ix, iy);
                Philox rng(cfg.seed, stream_id(req.stream, t + 1, tile), rep);
                const Philox fade(cfg.seed, stream_id(req.stream | kFadeBit, t + 1, tile), rep);
                const long long count = std::poisson_distribution<long long>(tier.density * side * side)(rng);
                for (long long i = 0; i < count; ++i) {
                    const double x = side * (ix + rng.uniform());
                    const double y = side * (iy + rng.uniform());
                    if (std::abs(x) > hw || std::abs(y) > hw) continue;
                    add(x, y, fade, static_cast<std::size_t>(i));
                }
            }
        }
        const std::size_t n = real.bs_x.size() - real.tier_begin.back();
        real.bs_tier.insert(real.bs_tier.end(), n, static_cast<std::uint32_t>(t));
        real.bs_power.insert(real.bs_power.end(), n, tier.bs_power);
        real.dl_metric.insert(real.dl_metric.end(), n, std::pow(tier.dl_weight, delta));
        real.ul_metric.insert(real.ul_metric.end(), n, std::pow(tier.ul_weight, delta));
        real.tier_begin.push_back(real.bs_x.size());
    }
    const std::size_t n_bs = real.bs_count();
    real.active_ue.assign(n_bs, kNone);
    if (!req.drop_ues || n_bs == 0) return real;
    Philox rng(cfg.seed, stream_id(req.stream, 0, 0), rep);

    // Dense UE drop; each BS schedules the eligible UE with the smallest key,
    // which is a uniform pick among them. UEs within d_o of their BS are not
    // eligible.
    const double radius = ue_disk_radius(s, cfg);
    real.ue_radius = radius;
    const double ue_density = cfg.ue_density_multiplier * total_density(s);
    const long long count = std::poisson_distribution<long long>(ue_density * kPi * radius * radius)(rng);
    real.dropped_ues = static_cast<std::size_t>(count);
    const SpatialGrid grid(real.bs_x.data(), real.bs_y.data(), n_bs, hw);
    const double floor = *std::min_element(real.ul_metric.begin(), real.ul_metric.end());
    const double d_o2 = s.pair_corr.d_o * s.pair_corr.d_o;
    std::vector<double> key(n_bs, 2.0);
    std::vector<double> cand_x(n_bs), cand_y(n_bs), cand_r2(n_bs);
    std::vector<long long> cand(n_bs);
    for (long long u = 0; u < count; ++u) {
        const double r = radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * kPi * rng.uniform();
        const double draw = rng.uniform();
        const double x = r * std::cos(theta);
        const double y = r * std::sin(theta);
        const simd::Nearest at = grid.nearest_weighted(x, y, real.ul_metric.data(), floor);
        const double dx = real.bs_x[at.index] - x;
        const double dy = real.bs_y[at.index] - y;
        const double r2 = dx * dx + dy * dy;
        if (r2 < d_o2) continue;
        if (draw < key[at.index]) {
            key[at.index] = draw;
            cand_x[at.index] = x;
            cand_y[at.index] = y;
            cand_r2[at.index] = r2;
            cand[at.index] = u;
        }
    }
    const Philox fade(cfg.seed, stream_id(req.stream | kFadeBit, 0, 0), rep);
    for (std::size_t b = 0; b < n_bs; ++b) {
        if (key[b] > 1.0) continue;
        if (req.link_fades) {
            const auto h = fades_at(fade, static_cast<std::size_t>(cand[b]));
            real.ue_fade_to_ue.push_back(h[0]);
            real.ue_fade_to_bs.push_back(h[1]);
        }
        const double d = std::sqrt(cand_r2[b]);
        real.active_ue[b] = real.ue_x.size();
        real.ue_x.push_back(cand_x[b]);
        real.ue_y.push_back(cand_y[b]);
        real.ue_bs.push_back(b);
        real.ue_link_distance.push_back(d);
        real.ue_power.push_back(ue_tx_power(s, real.bs_tier[b], d));
    }
    return real;
}

TypicalUeLinks associate_typical_ue(const NetworkRealization& real, const Scenario& s, double x,
                                    double y) {
    (void)s;
    const std::size_t n = real.bs_count();
    if (n == 0) throw DomainError("no base station in the window");
    const simd::Nearest dl =
        simd::nearest_weighted(real.bs_x.data(), real.bs_y.data(), real.dl_metric.data(), n, x, y);
    const simd::Nearest ul =
        simd::nearest_weighted(real.bs_x.data(), real.bs_y.data(), real.ul_metric.data(), n, x, y);
    auto dist = [&](std::size_t b) { return std::hypot(real.bs_x[b] - x, real.bs_y[b] - y); };
    return {real.bs_tier[dl.index], real.bs_tier[ul.index], dl.index, ul.index, dist(dl.index),
            dist(ul.index)};
}

double UeInterference::bs_total() const {
    double sum = 0.0;
    for (double v : bs_by_tier) sum += v;
    return sum;
}

double BsInterference::bs_total() const {
    double sum = 0.0;
    for (double v : bs_by_tier) sum += v;
    return sum;
}

UeInterference measure_interference_at_typical_ue(const NetworkRealization& real,
                                                  const Scenario& s, const TypicalUeLinks& links,
                                                  Philox& si_fades) {
    const ChannelParams& ch = s.channel;
    UeInterference out;
    const double* h = real.bs_fade_to_ue.data();
    for (std::size_t t = 0; t < s.size(); ++t) {
        const std::size_t lo = real.tier_begin[t];
        const std::size_t n = real.tier_begin[t + 1] - lo;
        const std::size_t skip = links.dl_bs >= lo && links.dl_bs < lo + n ? links.dl_bs - lo : n;
        out.bs_by_tier.push_back(simd::accumulate_interference(
                                     real.bs_x.data() + lo, real.bs_y.data() + lo,
                                     real.bs_power.data() + lo, h + lo, n, 0.0, 0.0,
                                     ch.alpha, 0.0, skip) /
                                 ch.gain);
    }
    const std::size_t m = real.ue_x.size();
    const std::size_t replaced = real.active_ue[links.ul_bs];
    const double d_u = s.pair_corr.d_u;
    out.ue = simd::accumulate_interference(real.ue_x.data(), real.ue_y.data(), real.ue_power.data(),
                                           real.ue_fade_to_ue.data(), m, 0.0, 0.0, ch.alpha_u, d_u * d_u,
                                           replaced == kNone ? m : replaced) /
             ch.gain_u;
    const double own = ue_tx_power(s, links.ul_tier, links.ul_distance);
    out.si = s.power_control.si_mean_ue * own * gamma_fade(si_fades, s.si_fading.m_ue);
    return out;
}

BsInterference measure_interference_at_bs(const NetworkRealization& real, const Scenario& s,
                                          std::size_t bs, Philox& si_fades) {
    const ChannelParams& ch = s.channel;
    const double bx = real.bs_x[bs];
    const double by = real.bs_y[bs];
    const double d_b2 = s.pair_corr.d_b * s.pair_corr.d_b;
    BsInterference out;
    out.bs_by_tier.assign(s.size(), 0.0);
    // The pair-correlation thinning enters as its retention probability,
    // which has the same mean as random thinning and less variance.
    for (std::size_t t = 0; t < s.size(); ++t) {
        const double repulsion = kPi * bs_repulsion_density(s, t);
        double sum = 0.0;
        for (std::size_t i = real.tier_begin[t]; i < real.tier_begin[t + 1]; ++i) {
            if (i == bs) continue;
            const double dx = real.bs_x[i] - bx;
            const double dy = real.bs_y[i] - by;
            const double r2 = dx * dx + dy * dy;
            if (!(r2 > d_b2)) continue;
            const double keep = -std::expm1(-repulsion * r2);
            sum += real.bs_power[i] * real.bs_fade_to_bs[i] * keep * std::pow(r2, -0.5 * ch.alpha_b);
        }
        out.bs_by_tier[t] = sum / ch.gain_b;
    }
    const std::size_t m = real.ue_x.size();
    const std::size_t own = real.active_ue[bs];
    out.ue = simd::accumulate_interference(real.ue_x.data(), real.ue_y.data(), real.ue_power.data(),
                                           real.ue_fade_to_bs.data(), m, bx, by, ch.alpha, 0.0,
                                           own == kNone ? m : own) /
             ch.gain;
    const std::size_t k = real.bs_tier[bs];
    out.si = s.tiers[k].si_mean_bs * s.tiers[k].bs_power * gamma_fade(si_fades, s.si_fading.m_bs);
    return out;
}

namespace {

struct Layout {
    std::vector<std::string> tags;
    std::size_t psi = 0, dist = 0, interf = 0, util = 0;
    std::vector<Mode> modes;
};

bool has_dl(Mode m) { return m != Mode::LegacyUl && m != Mode::HdUl; }
bool has_ul(Mode m) { return m != Mode::LegacyDl && m != Mode::HdDl; }

Layout make_layout(const Scenario& s, const SimRequest& req, const std::vector<Mode>& modes) {
    Layout l;
    const std::size_t n = s.size();
    // Column blocks are laid out in file tier order.
    std::vector<std::size_t> by_file(n);
    for (std::size_t t = 0; t < n; ++t) by_file[s.user_index[t]] = t;
    auto label = [&](std::size_t f) { return std::to_string(f + 1); };
    l.psi = l.tags.size();
    if (req.quantities & kAssociation) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) l.tags.push_back("psi." + label(j) + "." + label(k));
        }
    }
    l.dist = l.tags.size();
    if (req.quantities & kDistances) {
        for (std::size_t f = 0; f < n; ++f) {
            l.tags.push_back("dist.dl." + label(f));
            l.tags.push_back("dist.dl." + label(f) + ".m2");
            l.tags.push_back("dist.ul." + label(f));
            l.tags.push_back("dist.ul." + label(f) + ".m2");
            l.tags.push_back("power.ul." + label(f));
        }
    }
    l.interf = l.tags.size();
    if (req.quantities & kInterference) {
        l.tags.push_back("interference.dl_bs_scaled");
        l.tags.push_back("interference.dl_ue");
        l.tags.push_back("interference.dl_si");
        for (std::size_t f = 0; f < n; ++f) {
            l.tags.push_back("interference.ul_bs." + label(f));
            l.tags.push_back("interference.ul_ue." + label(f));
            l.tags.push_back("interference.ul_si." + label(f));
        }
    }
    l.util = l.tags.size();
    if (req.quantities & kUtility) {
        l.modes = modes;
        for (Mode m : modes) {
            const std::string base = "utility." + mode_name(m);
            l.tags.push_back(base);
            l.tags.push_back(base + ".dl");
            l.tags.push_back(base + ".ul");
        }
    }
    return l;
}

// One replication; `row` has one slot per tag, pre-filled with NaN.
void run_replication(const Scenario& s, const SimConfig& cfg, const SimRequest& req,
                     const Layout& l, std::uint64_t rep, double* row) {
    const std::size_t n = s.size();
    const bool want_ue_side = req.quantities & (kInterference | kUtility);
    RealizationRequest net;
    net.stream = kUeNetwork;
    net.drop_ues = want_ue_side;
    net.link_fades = want_ue_side;
    const NetworkRealization real = sample_realization(s, cfg, rep, net);
    auto file = [&](std::size_t t) { return s.user_index[t]; };

    std::optional<TypicalUeLinks> links;
    if (real.bs_count() > 0) links = associate_typical_ue(real, s);

    if (req.quantities & kAssociation) {
        for (std::size_t c = 0; c < n * n; ++c) row[l.psi + c] = 0.0;
        if (links) row[l.psi + file(links->dl_tier) * n + file(links->ul_tier)] = 1.0;
        else for (std::size_t c = 0; c < n * n; ++c) row[l.psi + c] = kNan;
    }
    if ((req.quantities & kDistances) && links) {
        const double rj = links->dl_distance;
        const double rk = links->ul_distance;
        double* dl = row + l.dist + 5 * file(links->dl_tier);
        double* ul = row + l.dist + 5 * file(links->ul_tier);
        dl[0] = rj;
        dl[1] = rj * rj;
        ul[2] = rk;
        ul[3] = rk * rk;
        ul[4] = ue_tx_power(s, links->ul_tier, rk);
    }
    if (!want_ue_side || !links) return;

    const ChannelParams& ch = s.channel;
    Philox fades(cfg.seed, kUeFades, rep);
    const UeInterference at_ue = measure_interference_at_typical_ue(real, s, *links, fades);
    const std::size_t j = links->dl_tier;
    const std::size_t k = links->ul_tier;

    if (req.quantities & kInterference) {
        row[l.interf + 0] = at_ue.bs_total() * std::pow(links->dl_distance, ch.alpha - 2.0);
        row[l.interf + 1] = at_ue.ue;
        row[l.interf + 2] = at_ue.si;

        // Typical BS of one tier per replication, cycling through the tiers.
        const std::size_t t = rep % n;
        RealizationRequest planted;
        planted.stream = kBsNetwork;
        planted.planted_tier = t;
        const NetworkRealization with_bs = sample_realization(s, cfg, rep, planted);
        Philox bs_fades(cfg.seed, kBsFades, rep);
        const BsInterference at_bs = measure_interference_at_bs(with_bs, s, with_bs.planted, bs_fades);
        double* slot = row + l.interf + 3 + 3 * file(t);
        slot[0] = at_bs.bs_total();
        slot[1] = at_bs.ue;
        slot[2] = at_bs.si;
    }

    if (req.quantities & kUtility) {
        const BsInterference at_ul = measure_interference_at_bs(real, s, links->ul_bs, fades);
        const double noise = ch.noise;
        const double own = ue_tx_power(s, k, links->ul_distance);
        const double dl_factor =
            s.thresholds.tau_dl * ch.gain * std::pow(links->dl_distance, ch.alpha) / s.tiers[j].bs_power;
        const double ul_factor =
            s.thresholds.tau_ul * ch.gain * std::pow(links->ul_distance, ch.alpha) / own;
        // Self-interference enters through its mean.
        const double dl_si = s.power_control.si_mean_ue * own;
        const double ul_si = s.tiers[k].si_mean_bs * s.tiers[k].bs_power;
        const double ul_bs = at_ul.bs_total();
        const double ul_bs_other = ul_bs - at_ul.bs_by_tier[k];
        const double log_dl = std::log(s.rate_dl());
        const double log_ul = std::log(s.rate_ul());
        for (std::size_t i = 0; i < l.modes.size(); ++i) {
            const Mode m = l.modes[i];
            double dl_load = noise + at_ue.bs_total();
            double ul_load = noise + at_ul.ue;
            switch (m) {
                case Mode::FdDua:
                case Mode::FdCua:
                    dl_load += at_ue.ue + dl_si;
                    ul_load += ul_bs + ul_si;
                    break;
                case Mode::Fd3nt:
                    dl_load += at_ue.ue;
                    ul_load += ul_bs + ul_si;
                    break;
                case Mode::LegacyDl:
                    dl_load += at_ue.ue;
                    break;
                case Mode::LegacyUl:
                    ul_load += ul_bs_other;
                    break;
                case Mode::HdDl:
                case Mode::HdUl:
                    break;
            }
            double* slot = row + l.util + 3 * i;
            double total = 0.0;
            if (has_dl(m)) {
                slot[1] = log_dl - dl_factor * dl_load;
                total += slot[1];
            }
            if (has_ul(m)) {
                slot[2] = log_ul - ul_factor * ul_load;
                total += slot[2];
            }
            slot[0] = total;
        }
    }
}

std::vector<double> run_all(const Scenario& s, const SimConfig& cfg, const SimRequest& req,
                            const Layout& l) {
    const std::size_t width = l.tags.size();
    const std::size_t reps = cfg.replications;
    std::vector<double> samples(reps * width, kNan);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        try {
            for (std::size_t rep = next++; rep < reps && !failed; rep = next++) {
                run_replication(s, cfg, req, l, rep, samples.data() + rep * width);
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(cfg.threads, reps));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return samples;
}

// Mean and standard error per column, reduced in replication order.
std::vector<SimEstimate> reduce(const std::vector<std::string>& tags,
                                const std::vector<double>& samples, std::size_t reps) {
    const std::size_t width = tags.size();
    std::vector<SimEstimate> out;
    for (std::size_t c = 0; c < width; ++c) {
        SimEstimate e;
        e.tag = tags[c];
        double sum = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            const double v = samples[r * width + c];
            if (std::isnan(v)) continue;
            sum += v;
            ++e.n_samples;
        }
        if (e.n_samples == 0) {
            e.mean = e.std_error = kNan;
            out.push_back(e);
            continue;
        }
        e.mean = sum / static_cast<double>(e.n_samples);
        double sq = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            const double v = samples[r * width + c];
            if (!std::isnan(v)) sq += (v - e.mean) * (v - e.mean);
        }
        e.std_error = e.n_samples > 1
                          ? std::sqrt(sq / static_cast<double>(e.n_samples - 1) /
                                      static_cast<double>(e.n_samples))
                          : 0.0;
        out.push_back(e);
    }
    return out;
}

}  // namespace

SimResult simulate(const Scenario& s, const SimConfig& cfg, const SimRequest& req) {
    check_config(s, cfg);
    std::vector<Mode> direct;
    bool coupled_pass = false;
    for (Mode m : req.modes) {
        if (m == Mode::FdCua) coupled_pass = true;
        else direct.push_back(m);
    }
    const Layout l = make_layout(s, req, direct);
    SimResult result;
    std::vector<double> samples = run_all(s, cfg, req, l);
    result.estimates = reduce(l.tags, samples, cfg.replications);
    if (req.keep_samples) {
        result.sample_tags = l.tags;
        result.samples = std::move(samples);
    }

    if (coupled_pass && (req.quantities & kUtility)) {
        // Coupled association is the decoupled network with U := D.
        Scenario coupled = s;
        for (TierParams& t : coupled.tiers) t.ul_weight = t.dl_weight;
        SimRequest sub;
        sub.quantities = kUtility;
        sub.modes = {Mode::FdDua};
        const Layout cl = make_layout(coupled, sub, sub.modes);
        const std::vector<double> cs = run_all(coupled, cfg, sub, cl);
        std::vector<std::string> tags;
        for (const std::string& t : cl.tags) tags.push_back("utility.FD_CUA" + t.substr(std::string("utility.FD_DUA").size()));
        std::vector<SimEstimate> rows = reduce(tags, cs, cfg.replications);
        result.estimates.insert(result.estimates.end(), rows.begin(), rows.end());
        if (req.keep_samples) {
            const std::size_t w = result.sample_tags.size();
            const std::size_t cw = tags.size();
            std::vector<double> merged;
            merged.reserve(cfg.replications * (w + cw));
            for (std::size_t r = 0; r < cfg.replications; ++r) {
                merged.insert(merged.end(), result.samples.begin() + r * w, result.samples.begin() + (r + 1) * w);
                merged.insert(merged.end(), cs.begin() + r * cw, cs.begin() + (r + 1) * cw);
            }
            result.samples = std::move(merged);
            result.sample_tags.insert(result.sample_tags.end(), tags.begin(), tags.end());
        }
    }
    return result;
}

SimEstimate estimate_rate_utility(const Scenario& s, const SimConfig& cfg, Mode mode) {
    SimRequest req;
    req.quantities = kUtility;
    req.modes = {mode};
    return find_estimate(simulate(s, cfg, req).estimates, "utility." + mode_name(mode));
}

std::vector<SimEstimate> estimate_distance_and_power_stats(const Scenario& s, const SimConfig& cfg) {
    SimRequest req;
    req.quantities = kDistances;
    return simulate(s, cfg, req).estimates;
}

const SimEstimate& find_estimate(const std::vector<SimEstimate>& rows, const std::string& tag) {
    for (const SimEstimate& e : rows) {
        if (e.tag == tag) return e;
    }
    throw ConfigError("no simulated quantity '" + tag + "'");
}

}  // namespace fdassoc::sim
