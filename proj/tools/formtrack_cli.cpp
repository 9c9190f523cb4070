#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "formtrack/engine.hpp"
#include "formtrack/errors.hpp"
#include "formtrack/fs_util.hpp"
#include "formtrack/report.hpp"
#include "formtrack/scenario_io.hpp"
#include "formtrack/svg_plot.hpp"
#include "formtrack/trace_io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace formtrack;

struct Options {
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> duration;
    std::string out_dir = "out";
    int seed_panel = 0;
    bool strict_bounds = false;
    bool no_plots = false;
};

void add_common_flags(CLI::App* cmd, Options& opt, bool with_panel) {
    cmd->add_option("--seed", opt.seed, "Override the noise seed");
    cmd->add_option("--dt", opt.dt, "Override the integration step [s]");
    cmd->add_option("--duration", opt.duration, "Override the run duration [s]");
    cmd->add_option("--out", opt.out_dir, "Output directory (default: out)");
    if (with_panel)
        cmd->add_option("--seed-panel", opt.seed_panel,
                        "Run N consecutive seeds and aggregate statistics")
            ->check(CLI::PositiveNumber);
    cmd->add_flag("--strict-bounds", opt.strict_bounds,
                  "Exit with code 3 if any bound violation or breach occurred");
    cmd->add_flag("--no-plots", opt.no_plots, "Skip SVG plot emission");
}

Scenario apply_overrides(Scenario sc, const Options& opt) {
    if (opt.seed) sc.noise.seed = *opt.seed;
    if (opt.dt) sc.integration.dt = *opt.dt;
    if (opt.duration) sc.duration = *opt.duration;
    sc.validate();
    return sc;
}

std::string stem_for(const Scenario& sc, const fs::path& source) {
    if (!sc.name.empty()) return sc.name;
    const std::string s = source.stem().string();
    return s.empty() ? "run" : s;
}

bool violated(const MetricsReport& m) {
    return m.bound_violation_samples > 0 || m.breach_events > 0;
}

int run_single(const Scenario& sc, const Options& opt, const std::string& stem) {
    const fs::path dir(opt.out_dir);

    if (opt.seed_panel > 0) {
        const auto panel = run_seed_panel(sc, opt.seed_panel);
        const std::string text = format_seed_panel(panel, sc);
        const fs::path report_path = dir / (stem + "_panel.txt");
        write_text_atomic(report_path, text);
        std::cout << text;
        std::cout << "wrote " << report_path.string() << "\n";
        if (opt.strict_bounds)
            for (const SeedOutcome& s : panel)
                if (violated(s.metrics)) return 3;
        return 0;
    }

    const Trace trace = run(sc);
    const MetricsReport metrics = summarize(trace, sc);
    const std::string text = format_metrics(metrics, sc);

    const fs::path csv_path = dir / (stem + "_trace.csv");
    const fs::path metrics_path = dir / (stem + "_metrics.txt");
    write_trace_csv(trace, sc, csv_path);
    write_text_atomic(metrics_path, text);
    std::cout << text;
    std::cout << "wrote " << csv_path.string() << "\n";
    std::cout << "wrote " << metrics_path.string() << "\n";
    if (!opt.no_plots) {
        const PlotPaths plots = emit_plots(trace, sc, dir, stem);
        std::cout << "wrote " << plots.distances.string() << "\n";
        std::cout << "wrote " << plots.trajectories.string() << "\n";
        std::cout << "wrote " << plots.controls.string() << "\n";
    }
    if (opt.strict_bounds && violated(metrics)) return 3;
    return 0;
}

int run_compare(const Scenario& sc, const Options& opt, const std::string& stem) {
    const fs::path dir(opt.out_dir);
    const Comparison c = compare_laws(sc);
    const std::string text = format_comparison(c);

    write_trace_csv(c.blf.trace, c.blf.scenario, dir / (stem + "_blf_trace.csv"));
    write_trace_csv(c.qlf.trace, c.qlf.scenario, dir / (stem + "_qlf_trace.csv"));
    write_text_atomic(dir / (stem + "_blf_metrics.txt"), format_metrics(c.blf.metrics, c.blf.scenario));
    write_text_atomic(dir / (stem + "_qlf_metrics.txt"), format_metrics(c.qlf.metrics, c.qlf.scenario));
    const fs::path cmp_path = dir / (stem + "_comparison.txt");
    write_text_atomic(cmp_path, text);
    std::cout << text;
    std::cout << "wrote " << cmp_path.string() << " (and per-law traces/metrics)\n";
    if (!opt.no_plots) {
        emit_plots(c.blf.trace, c.blf.scenario, dir, stem + "_blf");
        emit_plots(c.qlf.trace, c.qlf.scenario, dir, stem + "_qlf");
    }
    // Strict mode judges the guarded law; the quadratic baseline is expected
    // to violate.
    if (opt.strict_bounds && violated(c.blf.metrics)) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"formtrack: formation-preserving collaborative target tracking"};
    app.require_subcommand(1);

    Options opt;
    std::string scenario_path;
    std::string preset_name;

    CLI::App* cmd_run = app.add_subcommand("run", "Simulate a scenario file");
    cmd_run->add_option("scenario", scenario_path, "Scenario file")->required();
    add_common_flags(cmd_run, opt, true);

    CLI::App* cmd_compare =
        app.add_subcommand("compare", "Run a scenario under both control laws");
    cmd_compare->add_option("scenario", scenario_path, "Scenario file")->required();
    add_common_flags(cmd_compare, opt, false);

    CLI::App* cmd_preset = app.add_subcommand("preset", "Bundled scenarios");
    cmd_preset->require_subcommand(1);
    CLI::App* cmd_preset_list = cmd_preset->add_subcommand("list", "List bundled presets");
    CLI::App* cmd_preset_run = cmd_preset->add_subcommand("run", "Simulate a bundled preset");
    cmd_preset_run->add_option("name", preset_name, "Preset name")->required();
    add_common_flags(cmd_preset_run, opt, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_preset_list->parsed()) {
            for (const std::string& name : preset_names()) std::cout << name << "\n";
            return 0;
        }
        if (cmd_run->parsed()) {
            const Scenario sc = apply_overrides(load_scenario(scenario_path), opt);
            return run_single(sc, opt, stem_for(sc, scenario_path));
        }
        if (cmd_compare->parsed()) {
            const Scenario sc = apply_overrides(load_scenario(scenario_path), opt);
            return run_compare(sc, opt, stem_for(sc, scenario_path));
        }
        if (cmd_preset_run->parsed()) {
            const Scenario sc = apply_overrides(load_preset(preset_name), opt);
            return run_single(sc, opt, preset_name);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
