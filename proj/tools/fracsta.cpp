// fracsta command-line front end.
//
// Exit codes: 0 success, 1 verification failure or unexpected error,
// 2 invalid configuration or arguments, 3 propagation accuracy failure.

#include "fracsta/figures.hpp"
#include "fracsta/output.hpp"
#include "fracsta/run_config.hpp"
#include "fracsta/verification.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace fracsta;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_config = 2;
constexpr int exit_accuracy = 3;

unsigned default_threads()
{
    if (const char* env = std::getenv("FRACSTA_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0)
            return static_cast<unsigned>(n);
        throw ConfigError("FRACSTA_THREADS must be a positive integer, got '" + std::string(env) + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Writes to `path`, or stdout when the path is empty or "-".
template <typename Fn>
void emit(const std::string& path, Fn&& write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output file '" + path + "'");
    write(out);
    if (!out)
        throw ConfigError("failed writing output file '" + path + "'");
}

void report_warnings(const Diagnostics& d)
{
    for (const auto& w : d.warnings)
        std::cerr << "warning: " << w << '\n';
}

int cmd_simulate(const std::string& config_path, const std::string& output_override)
{
    RunConfig cfg = load_run_config(config_path);
    if (cfg.protocol == ProtocolSelection::Both)
        throw ConfigError("config field 'protocol': simulate needs \"f-sta\" or \"f-stirap\"");
    if (!output_override.empty())
        cfg.output_path = output_override;

    const RunResult run =
        simulate(cfg.system, expand(cfg.protocol).front(), cfg.drive, cfg.decay, cfg.uses_density(), cfg.grid);
    report_warnings(run.diagnostics);
    emit(cfg.output_path, [&](std::ostream& out) {
        if (cfg.format == OutputFormat::Json)
            write_trajectory_json(out, run);
        else
            write_trajectory_csv(out, run);
    });
    return exit_ok;
}

struct SweepArgs {
    std::string config;
    std::string param;
    double min = 0, max = 0;
    int points = 0;
    unsigned threads = 0;
    std::string output;
};

int cmd_sweep(const SweepArgs& a)
{
    RunConfig cfg = load_run_config(a.config);
    if (!a.output.empty())
        cfg.output_path = a.output;
    const auto swept = parse_swept_parameter(a.param);
    if (!swept)
        throw ConfigError("--param: unknown axis '" + a.param
                          + "'; expected omega0, tau, alpha, beta, chi or gamma");

    SweepSpec spec;
    spec.system = cfg.system;
    spec.protocol = cfg.protocol;
    spec.swept = *swept;
    spec.min = a.min;
    spec.max = a.max;
    spec.n_points = a.points;
    spec.fixed = cfg.drive;
    spec.decay = cfg.decay;
    spec.open_system = cfg.uses_density();
    spec.grid = cfg.grid;
    spec.threads = a.threads ? a.threads : default_threads();

    std::string note;
    if (spec.swept == SweptParameter::Omega0)
        note = "the omega0 axis range is a user choice; figure reproductions use omega0_T in [0.1, 10]";
    const auto metadata = sweep_metadata(spec, &cfg, note);
    const SweepResult result = run_sweep(spec);
    emit(cfg.output_path, [&](std::ostream& out) {
        if (cfg.format == OutputFormat::Json)
            write_sweep_json(out, spec, result, metadata);
        else
            write_sweep_csv(out, spec, result, metadata);
    });
    return exit_ok;
}

int cmd_verify(const std::string& system_name, int trials, std::uint64_t seed)
{
    SystemKind system;
    if (system_name == "lambda")
        system = SystemKind::Lambda;
    else if (system_name == "tripod")
        system = SystemKind::Tripod;
    else
        throw ConfigError("--system: expected lambda or tripod, got '" + system_name + "'");

    const VerifyReport report = verify(system, trials, seed);
    std::printf("verify %s: %d trials, seed %llu\n", system_name.c_str(), trials,
                static_cast<unsigned long long>(seed));
    for (const auto& c : report.checks)
        std::printf("  %-22s max defect %-12s tolerance %-8s %s\n", c.name.c_str(),
                    format_number(c.max_defect).c_str(), format_number(c.tolerance).c_str(),
                    c.passed() ? "ok" : "FAIL");
    if (const auto* f = report.first_failure()) {
        std::fprintf(stderr, "verify failed: %s (max defect %s > %s)\n", f->name.c_str(),
                     format_number(f->max_defect).c_str(), format_number(f->tolerance).c_str());
        return exit_failed;
    }
    return exit_ok;
}

int cmd_figure(const std::string& id, const std::string& outdir, unsigned threads)
{
    const FigureRegistryEntry& entry = registry_lookup(id);
    const FigureOutput fig = reproduce_figure(id, {}, threads ? threads : default_threads());

    const auto path = std::filesystem::path(outdir) / ("figure_" + entry.id + ".csv");
    emit(path.string(), [&](std::ostream& out) {
        if (fig.is_sweep()) {
            const SweepSpec spec = entry.sweep_spec();
            std::string note = "figure " + entry.id + ": " + entry.caption;
            if (!entry.note.empty())
                note += "; " + entry.note;
            write_sweep_csv(out, spec, fig.sweep(), sweep_metadata(spec, nullptr, note));
        } else {
            write_trajectory_csv(out, fig.trajectory());
        }
    });
    if (!fig.is_sweep())
        report_warnings(fig.trajectory().diagnostics);

    std::printf("%s: %s -> %s\n", entry.id.c_str(), entry.title.c_str(), path.string().c_str());
    for (const auto& o : evaluate_expectations(fig))
        std::printf("  [%s] %s %s (%s): %s\n", o.passed ? "pass" : "FAIL",
                    std::string(to_string(o.expectation->protocol)).c_str(),
                    o.expectation->check.c_str(), o.expectation->source.c_str(), o.detail.c_str());
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fractional STIRAP and f-STA simulations of Lambda and tripod systems"};
    app.set_version_flag("--version", std::string(version_string()));
    app.require_subcommand(1);

    std::string simulate_config, simulate_output;
    auto* simulate_cmd = app.add_subcommand("simulate", "Propagate one configuration and write the trajectory");
    simulate_cmd->add_option("config", simulate_config, "JSON run configuration")->required();
    simulate_cmd->add_option("-o,--output", simulate_output, "Output file (overrides output.path; '-' for stdout)");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Scan one parameter and write final populations");
    sweep_cmd->add_option("config", sweep.config, "JSON base configuration")->required();
    sweep_cmd->add_option("--param", sweep.param, "omega0, tau, alpha, beta, chi or gamma")->required();
    sweep_cmd->add_option("--min", sweep.min, "First swept value")->required();
    sweep_cmd->add_option("--max", sweep.max, "Last swept value")->required();
    sweep_cmd->add_option("--points", sweep.points, "Number of grid points (>= 2)")->required();
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (default: FRACSTA_THREADS or all cores)");
    sweep_cmd->add_option("-o,--output", sweep.output, "Output file (overrides output.path; '-' for stdout)");

    std::string verify_system;
    int verify_trials = 50;
    std::uint64_t verify_seed = 20240601;
    auto* verify_cmd = app.add_subcommand("verify", "Run the counterdiabatic and conservation oracles");
    verify_cmd->add_option("--system", verify_system, "lambda or tripod")->required();
    verify_cmd->add_option("--trials", verify_trials, "Random parameter draws")->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "Random seed")->capture_default_str();

    std::string figure_id, figure_outdir = ".";
    unsigned figure_threads = 0;
    auto* figure_cmd = app.add_subcommand("figure", "Reproduce a registered figure as figure_<id>.csv");
    figure_cmd->add_option("--id", figure_id, "Figure id, e.g. fig2a")->required();
    figure_cmd->add_option("--outdir", figure_outdir, "Output directory")->capture_default_str();
    figure_cmd->add_option("--threads", figure_threads, "Worker threads for sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*simulate_cmd)
            return cmd_simulate(simulate_config, simulate_output);
        if (*sweep_cmd)
            return cmd_sweep(sweep);
        if (*verify_cmd)
            return cmd_verify(verify_system, verify_trials, verify_seed);
        if (*figure_cmd)
            return cmd_figure(figure_id, figure_outdir, figure_threads);
    } catch (const SweepPointError& e) {
        std::cerr << "error: row " << e.index() << ": " << e.what() << '\n';
        return exit_accuracy;
    } catch (const AccuracyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_accuracy;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_failed;
}
