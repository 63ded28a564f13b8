#include "fdassoc/validate.hpp"

#include <cmath>
#include <limits>

#include "fdassoc/assoc.hpp"
#include "fdassoc/errors.hpp"
#include "fdassoc/interference.hpp"
#include "fdassoc/rate.hpp"

namespace fdassoc {

namespace {

std::vector<std::string> split(const std::string& tag) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = tag.find('.', start);
        parts.push_back(tag.substr(start, dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return parts;
}

// File tier label (1-based) to normalized index.
std::size_t tier_of(const Scenario& s, const std::string& label, const std::string& tag) {
    std::size_t pos = 0;
    unsigned long file = 0;
    try {
        file = std::stoul(label, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != label.size() || file < 1 || file > s.size()) throw ConfigError("bad tier in tag " + tag);
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (s.user_index[t] == file - 1) return t;
    }
    throw ConfigError("bad tier in tag " + tag);
}

double sum(const std::vector<double>& v) {
    double out = 0.0;
    for (double x : v) out += x;
    return out;
}

}  // namespace

double analytic_reference(const Scenario& s, const std::string& tag) {
    const std::vector<std::string> p = split(tag);
    const auto unknown = [&] { return ConfigError("no analytic counterpart for " + tag); };
    if (p[0] == "psi" && p.size() == 3) {
        return joint_association_matrix(s)(tier_of(s, p[1], tag), tier_of(s, p[2], tag));
    }
    if (p[0] == "dist" && (p.size() == 3 || (p.size() == 4 && p[3] == "m2"))) {
        const Link link = p[1] == "dl" ? Link::Dl : p[1] == "ul" ? Link::Ul : throw unknown();
        return marginal_distance_moment(s, tier_of(s, p[2], tag), link, p.size() == 4 ? 2 : 1);
    }
    if (p[0] == "power" && p.size() == 3 && p[1] == "ul") return tx_power_moment(s, tier_of(s, p[2], tag), 1);
    if (p[0] == "interference") {
        const TierProbabilities a = per_tier_probability(s);
        if (p.size() == 2 && p[1] == "dl_bs_scaled") {
            double out = 0.0;
            for (std::size_t j = 0; j < s.size(); ++j) out += a.dl[j] * a1(s, j);
            return out;
        }
        if (p.size() == 2 && p[1] == "dl_ue") return a2(s) - s.channel.noise;
        if (p.size() == 2 && p[1] == "dl_si") {
            double out = 0.0;
            for (std::size_t k = 0; k < s.size(); ++k) out += a.ul[k] * mean_dl_self_interference(s, k);
            return out;
        }
        if (p.size() == 3) {
            const std::size_t k = tier_of(s, p[2], tag);
            if (p[1] == "ul_bs") return sum(mean_ul_interference(s, k).per_tier_bs_part);
            if (p[1] == "ul_ue") return sum(mean_ul_interference(s, k).per_tier_ue_part);
            if (p[1] == "ul_si") return mean_ul_self_interference(s, k);
        }
        throw unknown();
    }
    if (p[0] == "utility" && (p.size() == 2 || p.size() == 3)) {
        const RateReport r = mean_rate_utility(s, parse_mode(p[1]));
        if (p.size() == 2) return r.total;
        if (p[2] == "dl") return r.has_dl ? r.dl_component : std::numeric_limits<double>::quiet_NaN();
        if (p[2] == "ul") return r.has_ul ? r.ul_component : std::numeric_limits<double>::quiet_NaN();
    }
    throw unknown();
}

std::vector<ValidationRow> compare_with_analysis(const Scenario& s, const std::vector<sim::SimEstimate>& estimates,
                                                 double z_limit) {
    std::vector<ValidationRow> rows;
    for (const sim::SimEstimate& e : estimates) {
        ValidationRow row{e.tag, analytic_reference(s, e.tag), e.mean, e.std_error, e.n_samples,
                          std::numeric_limits<double>::quiet_NaN(), true};
        if (e.n_samples == 0 || std::isnan(row.analytic)) {
            // Undefined on both sides (a link the mode does not have, or a
            // tier never observed) is not evidence either way.
            row.pass = e.n_samples == 0 || std::isnan(row.analytic) == std::isnan(e.mean);
        } else if (e.std_error > 0.0) {
            row.z = (e.mean - row.analytic) / e.std_error;
            row.pass = std::abs(row.z) <= z_limit;
        } else {
            const double scale = std::max(std::abs(row.analytic), std::abs(e.mean));
            row.z = row.analytic == e.mean ? 0.0 : std::copysign(INFINITY, e.mean - row.analytic);
            row.pass = std::abs(e.mean - row.analytic) <= 1e-12 * scale;
        }
        rows.push_back(row);
    }
    return rows;
}

double hd_network_utility(const Scenario& s) {
    return mean_rate_utility(s, Mode::HdDl).total + mean_rate_utility(s, Mode::HdUl).total - 2.0 * std::log(2.0);
}

}  // namespace fdassoc
