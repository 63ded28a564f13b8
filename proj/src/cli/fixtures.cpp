#include "fdassoc/cli/fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fdassoc/cli/app.hpp"
#include "fdassoc/errors.hpp"

namespace fdassoc::cli {

namespace fs = std::filesystem;

std::vector<Fixture> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open manifest");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
        std::vector<Fixture> out;
        for (const auto& e : doc.at("fixtures")) {
            Fixture f;
            f.name = e.at("name").get<std::string>();
            f.args = e.at("args").get<std::vector<std::string>>();
            f.golden = e.at("golden").get<std::string>();
            if (e.contains("tolerance")) {
                f.tolerance.rel = e["tolerance"].value("rel", 0.0);
                f.tolerance.abs = e["tolerance"].value("abs", 0.0);
            }
            out.push_back(std::move(f));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

namespace {

std::string cell_repr(const Cell& c) {
    if (const double* v = std::get_if<double>(&c)) return format_number(*v);
    return "\"" + std::get<std::string>(c) + "\"";
}

bool close_enough(double g, double a, const Tolerance& tol) {
    if (std::isnan(g) || std::isnan(a)) return std::isnan(g) && std::isnan(a);
    if (std::isinf(g) || std::isinf(a)) return g == a;
    return std::abs(g - a) <= tol.abs + tol.rel * std::abs(g);
}

}  // namespace

std::optional<std::string> compare_tables(const ResultTable& golden, const ResultTable& actual, const Tolerance& tol) {
    auto strip = [](const ResultTable& t) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& kv : t.provenance) {
            if (kv.first != "fdassoc") out.push_back(kv);
        }
        return out;
    };
    const auto gp = strip(golden);
    const auto ap = strip(actual);
    for (std::size_t i = 0; i < std::max(gp.size(), ap.size()); ++i) {
        if (i >= gp.size() || i >= ap.size() || gp[i] != ap[i]) {
            return "provenance line " + std::to_string(i + 1) + " differs";
        }
    }
    if (golden.columns != actual.columns) return std::string("column headers differ");
    if (golden.rows.size() != actual.rows.size()) {
        return "row count " + std::to_string(actual.rows.size()) + " != " + std::to_string(golden.rows.size());
    }
    for (std::size_t r = 0; r < golden.rows.size(); ++r) {
        for (std::size_t c = 0; c < golden.columns.size(); ++c) {
            const Cell& g = golden.rows[r][c];
            const Cell& a = actual.rows[r][c];
            const double* gv = std::get_if<double>(&g);
            const double* av = std::get_if<double>(&a);
            const bool same = (gv && av) ? close_enough(*gv, *av, tol) : (!gv && !av && g == a);
            if (!same) {
                return "row " + std::to_string(r + 1) + ", column " + golden.columns[c] + ": golden " + cell_repr(g) +
                       ", got " + cell_repr(a);
            }
        }
    }
    return std::nullopt;
}

ReplayOutcome replay_fixture(const Fixture& f, const std::string& root, bool regenerate, double tolerance_scale) {
    // Relative paths in the arguments are resolved against the manifest root.
    std::vector<std::string> args = f.args;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& flag = args[i - 1];
        if (flag == "--scenario" || flag == "--sweep") args[i] = (fs::path(root) / args[i]).string();
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    if (code != kExitOk && code != kExitValidationFailed) {
        return {false, "command failed (exit " + std::to_string(code) + "): " + err.str()};
    }
    const fs::path golden_path = fs::path(root) / f.golden;
    if (regenerate) {
        std::ofstream g(golden_path);
        if (!g) return {false, "cannot write " + golden_path.string()};
        g << out.str();
        return {true, "regenerated"};
    }
    std::ifstream g(golden_path);
    if (!g) return {false, "missing golden " + golden_path.string()};
    std::istringstream actual_text(out.str());
    const ResultTable golden = read_csv(g);
    const ResultTable actual = read_csv(actual_text);
    const Tolerance tol{f.tolerance.rel * tolerance_scale, f.tolerance.abs * tolerance_scale};
    if (auto diff = compare_tables(golden, actual, tol)) return {false, *diff};
    return {true, ""};
}

}  // namespace fdassoc::cli
