#include "fdassoc/cli/app.hpp"

#include <cstdint>
#include <fstream>

#include <CLI11.hpp>

#include "fdassoc/cli/commands.hpp"
#include "fdassoc/errors.hpp"

namespace fdassoc::cli {

namespace {

struct Common {
    std::string scenario;
    std::string out;
    std::string format = "csv";
};

struct SimFlags {
    std::size_t reps = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double window = 10000.0;
    double ue_multiplier = 20.0;
    std::string quantities = "all";
    std::string modes = "all";
    std::string samples;

    SimOptions options() const {
        SimOptions o;
        o.config.replications = reps;
        o.config.seed = seed;
        o.config.threads = threads;
        o.config.window_half_width = window;
        o.config.ue_density_multiplier = ue_multiplier;
        o.quantities = parse_quantity_list(quantities);
        o.modes = parse_mode_list(modes);
        if (!samples.empty()) o.samples_path = samples;
        return o;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--scenario", c.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "Output file (default: stdout)");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_sim(CLI::App* cmd, SimFlags& s, bool with_samples) {
    cmd->add_option("--reps", s.reps, "Monte Carlo replications")->capture_default_str();
    cmd->add_option("--seed", s.seed, "Master seed")->capture_default_str();
    cmd->add_option("--threads", s.threads, "Worker threads")->capture_default_str();
    cmd->add_option("--window", s.window, "Window half-width in meters")->capture_default_str();
    cmd->add_option("--ue-multiplier", s.ue_multiplier, "UE drop density over the total BS density")
        ->capture_default_str();
    cmd->add_option("--quantities", s.quantities, "association,distances,interference,utility or all")
        ->capture_default_str();
    cmd->add_option("--mode", s.modes, "Comma-separated modes or all")->capture_default_str();
    if (with_samples) cmd->add_option("--samples", s.samples, "Write per-replication samples to this CSV file");
}

void emit(std::ostream& stdout_stream, const Common& c, const ResultTable& t) {
    const Format f = parse_format(c.format);
    if (c.out.empty()) {
        write_table(stdout_stream, t, f);
        return;
    }
    std::ofstream out(c.out);
    if (!out) throw ConfigError(c.out + ": cannot open for writing");
    write_table(out, t, f);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decoupled UL/DL association in multi-tier full-duplex networks", "fdassoc"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    Common common;
    SimFlags simf;
    std::string modes = "all";
    std::string sweep_path;
    std::string method = "both";
    GridSpec grid;
    double z_limit = 3.0;

    CLI::App* analyze = app.add_subcommand("analyze", "Analytic utilities, association probabilities");
    add_common(analyze, common);
    analyze->add_option("--mode", modes, "Comma-separated modes or all")->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep one scenario parameter over a grid");
    add_common(sweep, common);
    sweep->add_option("--sweep", sweep_path, "Sweep JSON file")->required()->check(CLI::ExistingFile);
    add_sim(sweep, simf, false);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimates with standard errors");
    add_common(simulate, common);
    add_sim(simulate, simf, true);

    CLI::App* validate = app.add_subcommand("validate", "Analytic values against simulation, with z-scores");
    add_common(validate, common);
    add_sim(validate, simf, false);
    validate->add_option("--z-limit", z_limit, "Largest accepted |z|")->capture_default_str();

    CLI::App* optimize = app.add_subcommand("optimize", "Optimal association weights");
    add_common(optimize, common);
    optimize->add_option("--method", method, "closed_form, grid or both")
        ->check(CLI::IsMember({"closed_form", "grid", "both"}))
        ->capture_default_str();
    optimize->add_option("--span-db", grid.span_db, "Grid half-span around the closed form")->capture_default_str();
    optimize->add_option("--points", grid.points, "Grid points per free ratio")->capture_default_str();
    optimize->add_option("--threads", grid.threads, "Worker threads")->capture_default_str();

    try {
        // CLI11 consumes the arguments in reverse order.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*analyze) {
            emit(out, common, cmd_analyze(common.scenario, parse_mode_list(modes)));
        } else if (*sweep) {
            emit(out, common, cmd_sweep(common.scenario, sweep_path, simf.options()));
        } else if (*simulate) {
            emit(out, common, cmd_simulate(common.scenario, simf.options()));
        } else if (*validate) {
            const ValidationReport report = cmd_validate(common.scenario, simf.options(), z_limit);
            emit(out, common, report.table);
            if (!report.pass) {
                err << "validation failed: some |z| exceed " << z_limit << '\n';
                return kExitValidationFailed;
            }
        } else if (*optimize) {
            emit(out, common, cmd_optimize(common.scenario, parse_optimize_method(method), grid));
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace fdassoc::cli
