#include "fdassoc/cli/sweep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fdassoc/errors.hpp"
#include "fdassoc/scenario_io.hpp"

namespace fdassoc::cli {

using nlohmann::json;

namespace {

struct Segment {
    std::string key;
    bool indexed = false;
    bool all = false;
    std::size_t index = 0;
};

std::vector<Segment> parse_path(const std::string& path) {
    std::vector<Segment> out;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.')) {
        Segment seg;
        const std::size_t open = part.find('[');
        seg.key = part.substr(0, open);
        if (open != std::string::npos) {
            const std::size_t close = part.find(']', open);
            if (close != part.size() - 1) throw ConfigError("malformed path " + path);
            const std::string inner = part.substr(open + 1, close - open - 1);
            seg.indexed = true;
            if (inner == "*") {
                seg.all = true;
            } else {
                std::size_t used = 0;
                try {
                    seg.index = std::stoul(inner, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (inner.empty() || used != inner.size()) throw ConfigError("malformed index in path " + path);
            }
        }
        if (seg.key.empty()) throw ConfigError("malformed path " + path);
        out.push_back(seg);
    }
    if (out.empty()) throw ConfigError("empty parameter path");
    return out;
}

template <typename Json, typename F>
void visit(Json& node, const std::vector<Segment>& segs, std::size_t at, const std::string& path, F&& leaf) {
    const Segment& seg = segs[at];
    if (!node.is_object() || !node.contains(seg.key)) throw ConfigError("path " + path + " does not resolve");
    auto& child = node[seg.key];
    auto step = [&](auto& next) {
        if (at + 1 == segs.size()) leaf(next);
        else visit(next, segs, at + 1, path, leaf);
    };
    if (!seg.indexed) {
        step(child);
        return;
    }
    if (!child.is_array()) throw ConfigError("path " + path + " indexes a non-array");
    if (seg.all) {
        for (auto& item : child) step(item);
        return;
    }
    if (seg.index >= child.size()) throw ConfigError("index out of range in path " + path);
    step(child[seg.index]);
}

bool numeric_leaf(const json& v) { return v.is_number() || (v.is_string() && (v == "inf" || v == "-inf")); }

double leaf_value(const json& v) {
    if (v.is_number()) return v.get<double>();
    return v == "inf" ? INFINITY : -INFINITY;
}

}  // namespace

void set_path(json& scenario, const std::string& path, double value) {
    visit(scenario, parse_path(path), 0, path, [&](json& leaf) {
        if (!numeric_leaf(leaf)) throw ConfigError("path " + path + " is not a numeric field");
        if (std::isinf(value)) leaf = value > 0 ? "inf" : "-inf";
        else leaf = value;
    });
}

double get_path(const json& scenario, const std::string& path) {
    std::optional<double> out;
    visit(scenario, parse_path(path), 0, path, [&](const json& leaf) {
        if (!numeric_leaf(leaf)) throw ConfigError("path " + path + " is not a numeric field");
        const double v = leaf_value(leaf);
        if (out && *out != v) throw ConfigError("path " + path + " resolves to differing values");
        out = v;
    });
    if (!out) throw ConfigError("path " + path + " resolves to nothing");
    return *out;
}

std::vector<double> Grid::values() const {
    if (points < 2) throw ConfigError("sweep grid needs at least 2 points");
    if (!(min < max)) throw ConfigError("sweep grid needs min < max");
    if (scale == GridScale::Log && !(min > 0.0)) throw ConfigError("log sweep grid needs min > 0");
    std::vector<double> out;
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        if (i == points - 1) out.push_back(max);
        else if (scale == GridScale::Linear) out.push_back(min + t * (max - min));
        else out.push_back(min * std::pow(max / min, t));
    }
    return out;
}

SweepSpec parse_sweep(const json& doc) {
    if (!doc.is_object()) throw ConfigError("sweep: expected an object");
    SweepSpec spec;
    auto text = [&](const json& obj, const char* key, const std::string& where) {
        if (!obj.contains(key) || !obj[key].is_string()) throw ConfigError(where + "." + key + ": expected a string");
        return obj[key].get<std::string>();
    };
    auto num = [&](const json& obj, const char* key, const std::string& where) {
        if (!obj.contains(key) || !obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
        return obj[key].get<double>();
    };
    spec.parameter = text(doc, "parameter", "sweep");
    parse_path(spec.parameter);
    if (doc.contains("relative_to")) spec.relative_to = text(doc, "relative_to", "sweep");

    if (!doc.contains("grid") || !doc["grid"].is_object()) throw ConfigError("sweep.grid: expected an object");
    const json& g = doc["grid"];
    const std::string scale = g.contains("scale") ? text(g, "scale", "sweep.grid") : "linear";
    if (scale == "linear") spec.grid.scale = GridScale::Linear;
    else if (scale == "log") spec.grid.scale = GridScale::Log;
    else throw ConfigError("sweep.grid.scale: expected \"linear\" or \"log\"");
    spec.grid.min = num(g, "min", "sweep.grid");
    spec.grid.max = num(g, "max", "sweep.grid");
    if (!g.contains("points") || !g["points"].is_number_integer()) {
        throw ConfigError("sweep.grid.points: expected an integer");
    }
    spec.grid.points = g["points"].get<int>();
    spec.grid.values();

    if (doc.contains("locks")) {
        if (!doc["locks"].is_array()) throw ConfigError("sweep.locks: expected an array");
        for (const json& l : doc["locks"]) {
            Lock lock;
            lock.path = text(l, "parameter", "sweep.locks[]");
            parse_path(lock.path);
            if (l.contains("factor")) lock.factor = num(l, "factor", "sweep.locks[]");
            if (l.contains("offset")) lock.offset = num(l, "offset", "sweep.locks[]");
            spec.locks.push_back(lock);
        }
    }

    spec.modes.clear();
    spec.quantities = 0;
    const json outputs = doc.value("outputs", json::object());
    if (outputs.contains("modes")) {
        for (const json& m : outputs["modes"]) spec.modes.push_back(parse_mode(m.get<std::string>()));
    } else {
        spec.modes = all_modes();
    }
    if (outputs.contains("quantities")) {
        for (const json& q : outputs["quantities"]) {
            const std::string name = q.get<std::string>();
            if (name == "utility") spec.quantities |= kSweepUtility;
            else if (name == "components") spec.quantities |= kSweepComponents;
            else if (name == "hd_network") spec.quantities |= kSweepHdNetwork;
            else if (name == "psi") spec.quantities |= kSweepPsi;
            else if (name == "interference") spec.quantities |= kSweepInterference;
            else if (name == "sim_interference") spec.quantities |= kSweepSimInterference;
            else if (name == "sim_utility") spec.quantities |= kSweepSimUtility;
            else throw ConfigError("sweep.outputs.quantities: unknown quantity " + name);
        }
    } else {
        spec.quantities = kSweepUtility;
    }
    return spec;
}

SweepSpec load_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open sweep file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    try {
        return parse_sweep(doc);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

RawScenario apply_sweep_point(const RawScenario& base, const SweepSpec& spec, double value) {
    json doc = raw_to_json(base);
    const double absolute = spec.relative_to ? value * get_path(doc, *spec.relative_to) : value;
    set_path(doc, spec.parameter, absolute);
    for (const Lock& l : spec.locks) set_path(doc, l.path, l.factor * absolute + l.offset);
    return raw_from_json(doc);
}

}  // namespace fdassoc::cli
