#include "fdassoc/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "fdassoc/assoc.hpp"
#include "fdassoc/cli/sweep.hpp"
#include "fdassoc/errors.hpp"
#include "fdassoc/scenario_io.hpp"
#include "fdassoc/validate.hpp"

namespace fdassoc::cli {

namespace {

std::vector<std::string> split_list(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::string label(std::size_t file_tier) { return std::to_string(file_tier + 1); }

std::vector<std::pair<std::string, std::string>> provenance(const std::string& command, const RawScenario& raw,
                                                            const std::string& seed) {
    return {{"fdassoc", version()}, {"command", command}, {"scenario_hash", scenario_hash(raw)}, {"seed", seed}};
}

void add_sim_provenance(ResultTable& t, const sim::SimConfig& c) {
    t.provenance.emplace_back("replications", std::to_string(c.replications));
    t.provenance.emplace_back("window_half_width_m", format_number(c.window_half_width));
    t.provenance.emplace_back("ue_density_multiplier", format_number(c.ue_density_multiplier));
}

// psi in file order, row-major.
std::vector<double> psi_file_order(const Scenario& s) {
    const Matrix psi = joint_association_matrix(s);
    const std::size_t n = s.size();
    std::vector<double> out(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) out[s.user_index[j] * n + s.user_index[k]] = psi(j, k);
    }
    return out;
}

std::vector<std::string> psi_columns(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) out.push_back("psi." + label(j) + "." + label(k));
    }
    return out;
}

// The analytic interference tags, in the simulator's order.
std::vector<std::string> interference_tags(std::size_t n) {
    std::vector<std::string> out{"interference.dl_bs_scaled", "interference.dl_ue", "interference.dl_si"};
    for (std::size_t f = 0; f < n; ++f) {
        out.push_back("interference.ul_bs." + label(f));
        out.push_back("interference.ul_ue." + label(f));
        out.push_back("interference.ul_si." + label(f));
    }
    return out;
}

template <typename F>
void parallel_for(std::size_t n, std::size_t threads, F&& body) {
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void write_samples(const std::string& path, const ResultTable& header_source, const sim::SimResult& r) {
    ResultTable t;
    t.provenance = header_source.provenance;
    t.columns.push_back("replication");
    for (const std::string& tag : r.sample_tags) t.columns.push_back(tag);
    const std::size_t width = r.sample_tags.size();
    const std::size_t reps = width ? r.samples.size() / width : 0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        std::vector<Cell> row{static_cast<double>(rep)};
        for (std::size_t c = 0; c < width; ++c) row.emplace_back(r.samples[rep * width + c]);
        t.add_row(std::move(row));
    }
    std::ofstream out(path);
    if (!out) throw ConfigError(path + ": cannot write samples");
    write_csv(out, t);
}

}  // namespace

std::vector<Mode> parse_mode_list(const std::string& list) {
    if (list == "all") return all_modes();
    std::vector<Mode> out;
    for (const std::string& name : split_list(list)) out.push_back(parse_mode(name));
    return out;
}

unsigned parse_quantity_list(const std::string& list) {
    if (list == "all") return sim::kAllQuantities;
    unsigned out = 0;
    for (const std::string& name : split_list(list)) {
        if (name == "association") out |= sim::kAssociation;
        else if (name == "distances") out |= sim::kDistances;
        else if (name == "interference") out |= sim::kInterference;
        else if (name == "utility") out |= sim::kUtility;
        else throw ConfigError("unknown quantity " + name);
    }
    return out;
}

ResultTable cmd_analyze(const std::string& scenario_path, const std::vector<Mode>& modes) {
    const RawScenario raw = load_scenario(scenario_path);
    const Scenario s = prepare(raw);
    const std::size_t n = s.size();
    ResultTable t;
    t.provenance = provenance("analyze", raw, "none");
    t.columns = {"mode", "total", "dl", "ul"};
    for (const std::string& c : psi_columns(n)) t.columns.push_back(c);
    for (std::size_t f = 0; f < n; ++f) t.columns.push_back("a_dl." + label(f));
    for (std::size_t f = 0; f < n; ++f) t.columns.push_back("a_ul." + label(f));

    const std::vector<double> psi = psi_file_order(s);
    const TierProbabilities a = per_tier_probability(s);
    const std::vector<double> a_dl = to_user_order(s, a.dl);
    const std::vector<double> a_ul = to_user_order(s, a.ul);
    for (Mode m : modes) {
        const RateReport r = mean_rate_utility(s, m);
        std::vector<Cell> row{mode_name(m), r.total, r.has_dl ? r.dl_component : NAN, r.has_ul ? r.ul_component : NAN};
        for (double v : psi) row.emplace_back(v);
        for (double v : a_dl) row.emplace_back(v);
        for (double v : a_ul) row.emplace_back(v);
        t.add_row(std::move(row));
    }
    return t;
}

ResultTable cmd_sweep(const std::string& scenario_path, const std::string& sweep_path, const SimOptions& sim) {
    const RawScenario base = load_scenario(scenario_path);
    const SweepSpec spec = load_sweep(sweep_path);
    const std::vector<double> grid = spec.grid.values();
    const bool simulated = spec.quantities & (kSweepSimInterference | kSweepSimUtility);

    ResultTable t;
    t.provenance = provenance("sweep", base, simulated ? std::to_string(sim.config.seed) : "none");
    t.provenance.emplace_back("parameter", spec.parameter);
    if (simulated) add_sim_provenance(t, sim.config);

    // Resolve every point up front so a bad value fails before any work.
    std::vector<RawScenario> raw_points;
    std::vector<Scenario> points;
    for (double v : grid) {
        raw_points.push_back(apply_sweep_point(base, spec, v));
        points.push_back(prepare(raw_points.back()));
    }
    const std::size_t n = base.tiers.size();

    if (spec.relative_to) t.columns.push_back(spec.parameter + "/" + *spec.relative_to);
    t.columns.push_back(spec.parameter);
    for (const Lock& l : spec.locks) t.columns.push_back(l.path);
    if (spec.quantities & kSweepUtility) {
        for (Mode m : spec.modes) t.columns.push_back(mode_name(m));
    }
    if (spec.quantities & kSweepComponents) {
        for (Mode m : spec.modes) {
            t.columns.push_back(mode_name(m) + ".dl");
            t.columns.push_back(mode_name(m) + ".ul");
        }
    }
    if (spec.quantities & kSweepHdNetwork) t.columns.push_back("HD_NETWORK");
    if (spec.quantities & kSweepPsi) {
        for (const std::string& c : psi_columns(n)) t.columns.push_back(c);
    }
    if (spec.quantities & kSweepInterference) {
        for (const std::string& c : interference_tags(n)) t.columns.push_back(c);
    }

    std::vector<std::vector<Cell>> rows(grid.size());
    parallel_for(grid.size(), simulated ? 1 : sim.config.threads, [&](std::size_t i) {
        const Scenario& s = points[i];
        const nlohmann::json doc = raw_to_json(raw_points[i]);
        std::vector<Cell>& row = rows[i];
        if (spec.relative_to) row.emplace_back(grid[i]);
        row.emplace_back(get_path(doc, spec.parameter));
        for (const Lock& l : spec.locks) row.emplace_back(get_path(doc, l.path));
        std::vector<RateReport> reports;
        if (spec.quantities & (kSweepUtility | kSweepComponents)) {
            for (Mode m : spec.modes) reports.push_back(mean_rate_utility(s, m));
        }
        if (spec.quantities & kSweepUtility) {
            for (const RateReport& r : reports) row.emplace_back(r.total);
        }
        if (spec.quantities & kSweepComponents) {
            for (const RateReport& r : reports) {
                row.emplace_back(r.has_dl ? r.dl_component : NAN);
                row.emplace_back(r.has_ul ? r.ul_component : NAN);
            }
        }
        if (spec.quantities & kSweepHdNetwork) row.emplace_back(hd_network_utility(s));
        if (spec.quantities & kSweepPsi) {
            for (double v : psi_file_order(s)) row.emplace_back(v);
        }
        if (spec.quantities & kSweepInterference) {
            for (const std::string& tag : interference_tags(n)) row.emplace_back(analytic_reference(s, tag));
        }
    });

    if (simulated) {
        sim::SimRequest req;
        req.quantities = 0;
        if (spec.quantities & kSweepSimInterference) req.quantities |= sim::kInterference;
        if (spec.quantities & kSweepSimUtility) req.quantities |= sim::kUtility;
        req.modes = spec.modes;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const sim::SimResult r = sim::simulate(points[i], sim.config, req);
            if (i == 0) {
                for (const sim::SimEstimate& e : r.estimates) {
                    t.columns.push_back("sim." + e.tag);
                    t.columns.push_back("sim." + e.tag + ".se");
                }
            }
            for (const sim::SimEstimate& e : r.estimates) {
                rows[i].emplace_back(e.mean);
                rows[i].emplace_back(e.std_error);
            }
        }
    }
    for (auto& row : rows) t.add_row(std::move(row));
    return t;
}

ResultTable cmd_simulate(const std::string& scenario_path, const SimOptions& sim) {
    const RawScenario raw = load_scenario(scenario_path);
    const Scenario s = prepare(raw);
    sim::SimRequest req;
    req.quantities = sim.quantities;
    req.modes = sim.modes;
    req.keep_samples = sim.samples_path.has_value();
    const sim::SimResult r = sim::simulate(s, sim.config, req);

    ResultTable t;
    t.provenance = provenance("simulate", raw, std::to_string(sim.config.seed));
    add_sim_provenance(t, sim.config);
    t.columns = {"quantity", "mean", "std_error", "n_samples"};
    for (const sim::SimEstimate& e : r.estimates) {
        t.add_row({e.tag, e.mean, e.std_error, static_cast<double>(e.n_samples)});
    }
    if (sim.samples_path) write_samples(*sim.samples_path, t, r);
    return t;
}

ValidationReport cmd_validate(const std::string& scenario_path, const SimOptions& sim, double z_limit) {
    const RawScenario raw = load_scenario(scenario_path);
    const Scenario s = prepare(raw);
    sim::SimRequest req;
    req.quantities = sim.quantities;
    req.modes = sim.modes;
    const sim::SimResult r = sim::simulate(s, sim.config, req);

    ValidationReport out;
    ResultTable& t = out.table;
    t.provenance = provenance("validate", raw, std::to_string(sim.config.seed));
    add_sim_provenance(t, sim.config);
    t.provenance.emplace_back("z_limit", format_number(z_limit));
    t.columns = {"quantity", "analytic", "simulated", "std_error", "n_samples", "z", "pass"};
    for (const ValidationRow& row : compare_with_analysis(s, r.estimates, z_limit)) {
        out.pass = out.pass && row.pass;
        t.add_row({row.tag, row.analytic, row.simulated, row.std_error, static_cast<double>(row.n_samples), row.z,
                   std::string(row.pass ? "yes" : "no")});
    }
    return out;
}

OptimizeMethod parse_optimize_method(const std::string& name) {
    if (name == "closed_form") return OptimizeMethod::ClosedForm;
    if (name == "grid") return OptimizeMethod::Grid;
    if (name == "both") return OptimizeMethod::Both;
    throw ConfigError("unknown optimization method " + name);
}

ResultTable cmd_optimize(const std::string& scenario_path, OptimizeMethod method, const GridSpec& grid) {
    const RawScenario raw = load_scenario(scenario_path);
    const Scenario s = prepare(raw);
    const std::size_t n = s.size();
    ResultTable t;
    t.provenance = provenance("optimize", raw, "none");
    t.columns = {"method", "association", "utility"};
    for (std::size_t f = 0; f < n; ++f) t.columns.push_back("dl_weight." + label(f));
    for (std::size_t f = 0; f < n; ++f) t.columns.push_back("ul_weight." + label(f));
    t.columns.insert(t.columns.end(), {"evaluations", "runner_up_gap", "note"});

    auto add = [&](const std::string& m, const std::string& assoc, double utility, const WeightAssignment& w,
                   double evals, double gap, const std::string& note) {
        std::vector<Cell> row{m, assoc, utility};
        for (double v : w.dl) row.emplace_back(v);
        for (double v : w.ul) row.emplace_back(v);
        row.insert(row.end(), {evals, gap, note});
        t.add_row(std::move(row));
    };
    if (method != OptimizeMethod::Grid) {
        const ClosedFormWeights cf = optimal_weights_closed_form(s);
        std::string note = cf.assumptions_hold ? "optimal" : "unverified:";
        for (const std::string& w : cf.warnings) note += " " + w + ";";
        if (!cf.assumptions_hold) note += " run the grid method";
        const double u = mean_rate_utility(with_weights(s, cf.weights), Mode::FdDua).total;
        add("closed_form", "DUA", u, cf.weights, 1, NAN, note);
    }
    if (method != OptimizeMethod::ClosedForm) {
        const GridSearchResult g = grid_search_weights(s, grid);
        const std::string dominance = g.dua_dominates ? "DUA >= CUA at every grid point" : "CUA beat DUA somewhere";
        add("grid_search", "DUA", g.dua.utility, g.dua.assignment, static_cast<double>(g.dua.evaluations),
            g.dua.runner_up_gap, dominance);
        add("grid_search", "CUA", g.cua.utility, g.cua.assignment, static_cast<double>(g.cua.evaluations),
            g.cua.runner_up_gap, "");
    }
    return t;
}

}  // namespace fdassoc::cli
