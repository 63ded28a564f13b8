#include "fdassoc/scenario_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fdassoc/errors.hpp"
#include "fdassoc/mathkit.hpp"

namespace fdassoc {

namespace {

using nlohmann::json;

const json& member(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw ValidationError(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(where + "." + key + ": missing field");
    return *it;
}

// Numbers may also be written as the strings "inf" / "-inf".
double number(const json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return math::kInf;
        if (s == "-inf") return -math::kInf;
    }
    throw ValidationError(field + ": expected a number or \"inf\"");
}

double get(const json& obj, const char* key, const std::string& where) {
    return number(member(obj, key, where), where + "." + key);
}

json encode(double v) {
    if (v == math::kInf) return "inf";
    if (v == -math::kInf) return "-inf";
    return v;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

}  // namespace

RawScenario raw_from_json(const json& doc) {
    RawScenario raw;
    const json& tiers = member(doc, "tiers", "scenario");
    if (!tiers.is_array()) throw ValidationError("scenario.tiers: expected an array");
    for (std::size_t k = 0; k < tiers.size(); ++k) {
        const std::string where = "tiers[" + std::to_string(k) + "]";
        const json& t = tiers[k];
        raw.tiers.push_back(RawTier{
            get(t, "density_per_km2", where),
            get(t, "bs_power_dbm", where),
            get(t, "sensitivity_dbm", where),
            get(t, "sic_bs_db", where),
            get(t, "ul_weight", where),
            get(t, "dl_weight", where),
        });
    }

    const json& ch = member(doc, "channel", "scenario");
    raw.alpha = get(ch, "alpha", "channel");
    raw.alpha_b = get(ch, "alpha_b", "channel");
    raw.alpha_u = get(ch, "alpha_u", "channel");
    raw.gain_db = get(ch, "gain_db", "channel");
    raw.gain_b_db = get(ch, "gain_b_db", "channel");
    raw.gain_u_db = get(ch, "gain_u_db", "channel");
    raw.noise_dbm = get(ch, "noise_dbm", "channel");

    const json& pc = member(doc, "power_control", "scenario");
    raw.epsilon = get(pc, "epsilon", "power_control");
    raw.p_max_dbm = get(pc, "p_max_dbm", "power_control");
    raw.sic_ue_db = get(pc, "sic_ue_db", "power_control");

    const json& pair = member(doc, "pair_corr", "scenario");
    raw.d_o_m = get(pair, "d_o_m", "pair_corr");
    raw.d_b_m = get(pair, "d_b_m", "pair_corr");
    raw.d_u_m = get(pair, "d_u_m", "pair_corr");
    raw.beta_b = get(pair, "beta_b", "pair_corr");
    if (auto it = pair.find("bs_repulsion"); it != pair.end()) {
        const std::string mode = it->is_string() ? it->get<std::string>() : "";
        if (mode == "beta_b") {
            raw.bs_repulsion = BsRepulsion::BetaB;
        } else if (mode == "effective_dl_density") {
            raw.bs_repulsion = BsRepulsion::EffectiveDlDensity;
        } else {
            throw ValidationError(
                "pair_corr.bs_repulsion: expected \"beta_b\" or \"effective_dl_density\"");
        }
    }

    const json& th = member(doc, "thresholds", "scenario");
    raw.tau_dl_db = get(th, "tau_dl_db", "thresholds");
    raw.tau_ul_db = get(th, "tau_ul_db", "thresholds");

    if (auto it = doc.find("si_fading"); it != doc.end()) {
        raw.si_fading_m_bs = get(*it, "m_bs", "si_fading");
        raw.si_fading_m_ue = get(*it, "m_ue", "si_fading");
    }
    return raw;
}

json raw_to_json(const RawScenario& raw) {
    json tiers = json::array();
    for (const RawTier& t : raw.tiers) {
        tiers.push_back(json{
            {"density_per_km2", encode(t.density_per_km2)},
            {"bs_power_dbm", encode(t.bs_power_dbm)},
            {"sensitivity_dbm", encode(t.sensitivity_dbm)},
            {"sic_bs_db", encode(t.sic_bs_db)},
            {"ul_weight", encode(t.ul_weight)},
            {"dl_weight", encode(t.dl_weight)},
        });
    }
    return json{
        {"tiers", tiers},
        {"channel",
         {{"alpha", encode(raw.alpha)},
          {"alpha_b", encode(raw.alpha_b)},
          {"alpha_u", encode(raw.alpha_u)},
          {"gain_db", encode(raw.gain_db)},
          {"gain_b_db", encode(raw.gain_b_db)},
          {"gain_u_db", encode(raw.gain_u_db)},
          {"noise_dbm", encode(raw.noise_dbm)}}},
        {"power_control",
         {{"epsilon", encode(raw.epsilon)},
          {"p_max_dbm", encode(raw.p_max_dbm)},
          {"sic_ue_db", encode(raw.sic_ue_db)}}},
        {"pair_corr",
         {{"d_o_m", encode(raw.d_o_m)},
          {"d_b_m", encode(raw.d_b_m)},
          {"d_u_m", encode(raw.d_u_m)},
          {"beta_b", encode(raw.beta_b)},
          {"bs_repulsion",
           raw.bs_repulsion == BsRepulsion::BetaB ? "beta_b" : "effective_dl_density"}}},
        {"thresholds", {{"tau_dl_db", encode(raw.tau_dl_db)}, {"tau_ul_db", encode(raw.tau_ul_db)}}},
        {"si_fading", {{"m_bs", encode(raw.si_fading_m_bs)}, {"m_ue", encode(raw.si_fading_m_ue)}}},
    };
}

RawScenario parse_scenario(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ":" + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    try {
        return raw_from_json(doc);
    } catch (const ValidationError& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

RawScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

std::string serialize_scenario(const Scenario& s) {
    return raw_to_json(s.source).dump(2);
}

std::string scenario_hash(const RawScenario& raw) {
    const std::string text = raw_to_json(raw).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace fdassoc
