#include <cmath>
#include <cstdio>
#include <iostream>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "centi/config.hpp"
#include "centi/errors.hpp"
#include "centi/harness.hpp"
#include "centi/metrics.hpp"
#include "centi/plot.hpp"
#include "centi/report.hpp"

using namespace centi;

namespace {

enum Exit { kOk = 0, kValidation = 1, kDivergence = 2, kIo = 3 };

struct Common {
    std::string config;
    std::optional<unsigned long long> seed;
    std::optional<int> trials;
    int jobs = 1;
    std::string out;
    std::string format = "text";
};

struct Pick {
    std::string world = "land";
    std::string leg = "Normal";
    std::string mode = "antiphase";

    Condition condition() const { return {parse_world_kind(world), parse_leg_shape(leg), parse_lr_mode(mode)}; }
};

ExperimentConfig load(const Common& c) {
    ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config_file(c.config);
    if (c.seed) cfg.seed = *c.seed;
    if (c.trials) cfg.trials = *c.trials;
    validate(cfg);
    return cfg;
}

void add_common(CLI::App* app, Common& c, bool runs) {
    app->add_option("--config", c.config, "experiment config (INI)")->check(CLI::ExistingFile);
    app->add_option("--format", c.format, "report format")->check(CLI::IsMember({"text", "csv"}));
    if (!runs) return;
    app->add_option("--seed", c.seed, "base seed");
    app->add_option("--trials", c.trials, "trials per condition");
    app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "archive directory");
}

void add_pick(CLI::App* app, Pick& p) {
    app->add_option("--world", p.world, "land or water");
    app->add_option("--leg", p.leg, "Normal, Fin or Web");
    app->add_option("--mode", p.mode, "antiphase or in_phase");
}

int run(int argc, char** argv) {
    CLI::App app{"Segmented amphibious robot simulator and locomotion metrics"};
    app.require_subcommand(0, 1);
    bool print_defaults_flag = false;
    app.add_flag("--print-defaults", print_defaults_flag, "print the default config and exit");

    Common common;
    Pick pick;

    auto* simulate = app.add_subcommand("simulate", "run the trials of one condition");
    add_common(simulate, common, true);
    add_pick(simulate, pick);

    auto* grid = app.add_subcommand("grid", "run the full environment x leg x mode grid");
    add_common(grid, common, true);

    auto* sweep = app.add_subcommand("sweep", "sweep the front-to-rear phase offset");
    add_common(sweep, common, true);
    add_pick(sweep, pick);
    std::vector<double> offsets_deg;
    sweep->add_option("--offsets", offsets_deg, "offsets in degrees (default 0..180 step 15)")->delimiter(',');

    auto* analyze_cmd = app.add_subcommand("analyze", "metrics for recorded telemetry CSV files");
    add_common(analyze_cmd, common, false);
    std::string markers_path, motors_path;
    analyze_cmd->add_option("--markers", markers_path, "marker CSV")->required();
    analyze_cmd->add_option("--motors", motors_path, "motor CSV")->required();
    std::string world_name = "land", leg_name;
    analyze_cmd->add_option("--world", world_name, "environment of the recording (selects the leg radius)");
    analyze_cmd->add_option("--leg", leg_name, "leg shape (default: the config's)");

    auto* report = app.add_subcommand("report", "recompute the report of an archive");
    add_common(report, common, false);
    std::string archive;
    report->add_option("archive", archive, "archive directory")->required()->check(CLI::ExistingDirectory);

    auto* plot = app.add_subcommand("plot", "plot marker trajectories as SVG");
    std::string plot_markers, plot_out = "trajectories.svg", plane = "yz";
    std::vector<int> ids{1, 2};
    plot->add_option("--markers", plot_markers, "marker CSV")->required();
    plot->add_option("--ids", ids, "marker ids")->delimiter(',');
    plot->add_option("--plane", plane, "yz, xy or xz");
    plot->add_option("--out", plot_out, "output SVG");

    auto* defaults = app.add_subcommand("print-defaults", "print the default config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }

    if (print_defaults_flag || *defaults) {
        std::cout << serialize_config(ExperimentConfig{});
        return kOk;
    }
    const auto format = parse_report_format(common.format);

    if (*simulate || *grid) {
        const auto cfg = load(common);
        ConditionGrid g;
        g.trials = cfg.trials;
        if (*simulate) {
            const auto c = pick.condition();
            g.worlds = {c.world};
            g.legs = {c.leg};
            g.modes = {c.mode};
        }
        const auto result = run_grid(cfg, g, common.jobs);
        if (!common.out.empty()) write_archive(result, cfg, common.out);
        std::cout << render_report(result.rows, format);
        return kOk;
    }
    if (*sweep) {
        const auto cfg = load(common);
        SweepSpec spec;
        spec.condition = pick.condition();
        spec.trials = cfg.trials;
        if (offsets_deg.empty()) {
            spec.offsets = default_sweep_offsets();
        } else {
            for (double d : offsets_deg) spec.offsets.push_back(d * std::numbers::pi / 180.0);
        }
        const auto text = render_sweep(phase_sweep(cfg, spec, common.jobs), format);
        std::cout << text;
        if (!common.out.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(common.out, ec);
            std::ofstream f(std::filesystem::path(common.out) / (format == ReportFormat::Csv ? "sweep.csv" : "sweep.txt"));
            if (!f || !(f << text)) throw IoError("cannot write sweep report to " + common.out);
        }
        return kOk;
    }
    if (*analyze_cmd) {
        auto cfg = load(common);
        if (!leg_name.empty() && parse_leg_shape(leg_name) != cfg.robot.leg.shape)
            cfg.robot.leg = default_leg(parse_leg_shape(leg_name));
        const auto markers = import_marker_csv(markers_path);
        const auto motors = import_motor_csv(motors_path);
        const auto r = analyze(markers, motors, cfg.robot.leg, parse_world_kind(world_name),
                               cfg.gait.omega / (2.0 * std::numbers::pi));
        if (format == ReportFormat::Csv) {
            std::cout << "V_mm_s,V_f_mm_s,alpha,E,E_phys,roll_amp_rad,heave_amp_mm,frequency_hz\n"
                      << fixed(r.v, 1) << ',' << fixed(r.v_f, 1) << ',' << fixed(r.alpha, 1) << ','
                      << fixed(r.e, 1) << ',' << fixed(r.e_phys, 1) << ',' << fixed(r.roll_amp, 4) << ','
                      << fixed(r.heave_amp, 2) << ',' << fixed(r.frequency, 3) << '\n';
        } else {
            std::cout << "V         " << fixed(r.v, 1) << " mm/s\n"
                      << "V_f       " << fixed(r.v_f, 1) << " mm/s\n"
                      << "alpha     " << fixed(r.alpha, 1) << " %\n"
                      << "E         " << fixed(r.e, 1) << "\n"
                      << "E_phys    " << fixed(r.e_phys, 1) << " J\n"
                      << "roll amp  " << fixed(r.roll_amp, 4) << " rad\n"
                      << "heave amp " << fixed(r.heave_amp, 2) << " mm\n"
                      << "frequency " << fixed(r.frequency, 3) << " Hz\n";
        }
        return kOk;
    }
    if (*report) {
        std::cout << render_report(load_archive(archive).rows, format);
        return kOk;
    }
    if (*plot) {
        plot_trajectories(import_marker_csv(plot_markers), ids, parse_plot_plane(plane), plot_out);
        return kOk;
    }
    std::cout << app.help();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kDivergence;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
}
