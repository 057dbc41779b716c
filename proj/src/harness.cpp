#include "centi/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "centi/config.hpp"
#include "centi/errors.hpp"
#include "centi/report.hpp"

namespace centi {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform in [-1, 1).
double symmetric_unit(std::mt19937_64& rng) {
    return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

std::string trial_stem(int trial) { return "trial_" + std::to_string(trial); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double gait_frequency(const ExperimentConfig& c) { return c.gait.omega / (2.0 * std::numbers::pi); }

struct Task {
    Condition condition;
    int trial;
};

/// Runs `fn(i)` for i in [0, n) on up to `jobs` threads; rethrows the
/// exception of the lowest failing index.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto threads = static_cast<std::size_t>(std::max(1, jobs));
    if (threads == 1 || n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(threads, n); ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<TrialResult> run_tasks(const ExperimentConfig& base, const std::vector<Task>& tasks, int jobs) {
    std::vector<std::optional<TrialResult>> slots(tasks.size());
    parallel_for(tasks.size(), jobs,
                 [&](std::size_t i) { slots[i] = run_trial(base, tasks[i].condition, tasks[i].trial); });
    std::vector<TrialResult> out;
    out.reserve(tasks.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<AggregateRow> aggregate_by_condition(const std::vector<TrialResult>& trials) {
    std::vector<AggregateRow> rows;
    std::size_t i = 0;
    while (i < trials.size()) {
        std::vector<MetricsReport> group;
        const auto cond = trials[i].condition;
        for (; i < trials.size() && trials[i].condition == cond; ++i) group.push_back(trials[i].report);
        rows.push_back(aggregate(group));
    }
    return rows;
}

}  // namespace

std::vector<Condition> ConditionGrid::conditions() const {
    std::vector<Condition> out;
    for (auto w : worlds)
        for (auto l : legs)
            for (auto m : modes) out.push_back({w, l, m});
    return out;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t trial_seed(std::uint64_t base_seed, const Condition& condition, int trial) {
    return base_seed ^ splitmix64(fnv1a(condition.label()) + static_cast<std::uint64_t>(trial));
}

TrialPerturbation trial_perturbation(std::uint64_t seed, int n_joints) {
    std::mt19937_64 rng(seed);
    TrialPerturbation p;
    p.yaw = 2.0 * kDeg * symmetric_unit(rng);
    p.joint_rest.resize(static_cast<std::size_t>(std::max(0, n_joints)));
    for (auto& r : p.joint_rest)
        for (int a = 0; a < 3; ++a) r[a] = 1.0 * kDeg * symmetric_unit(rng);
    return p;
}

ExperimentConfig condition_config(const ExperimentConfig& base, const Condition& condition) {
    ExperimentConfig c = base;
    c.world.kind = condition.world;
    c.gait.lr_mode = condition.mode;
    if (c.robot.leg.shape != condition.leg) {
        const int nodes = c.robot.leg.blade_nodes;
        c.robot.leg = default_leg(condition.leg);
        c.robot.leg.blade_nodes = nodes;
    }
    validate(c);
    return c;
}

TrialResult run_trial(const ExperimentConfig& base, const Condition& condition, int trial) {
    const auto config = condition_config(base, condition);
    TrialResult r;
    r.condition = condition;
    r.trial = trial;
    r.seed = trial_seed(base.seed, condition, trial);
    const auto pert = trial_perturbation(r.seed, config.robot.n_segments - 1);
    try {
        const Simulator sim(config, {}, pert.joint_rest);
        auto state = sim.initial_state(pert.yaw);
        const auto settle = std::llround(config.settle_time / config.dt);
        for (long long i = 0; i < settle; ++i) sim.step(state);
        r.telemetry = record(sim, state, config.gait.duration, config.capture_rate, config.marker_noise,
                             splitmix64(r.seed));
    } catch (const DivergenceError& e) {
        throw DivergenceError(condition.label() + " trial " + std::to_string(trial) + ": " + e.what());
    }
    r.report = analyze(r.telemetry.markers, r.telemetry.motors, config.robot.leg, config.world.kind,
                       gait_frequency(config));
    r.report.condition = condition;
    r.report.trial = trial;
    return r;
}

GridResult run_grid(const ExperimentConfig& base, const ConditionGrid& grid, int jobs) {
    if (grid.trials < 1) throw ConfigError("trials must be at least 1");
    validate(base);
    std::vector<Task> tasks;
    for (const auto& c : grid.conditions())
        for (int k = 1; k <= grid.trials; ++k) tasks.push_back({c, k});
    GridResult out;
    out.trials = run_tasks(base, tasks, jobs);
    out.rows = aggregate_by_condition(out.trials);
    return out;
}

void write_archive(const GridResult& result, const ExperimentConfig& base, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    const auto config_text = serialize_config(base);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(config_text)));

    nlohmann::ordered_json manifest;
    manifest["format"] = "centi-archive v1";
    manifest["base_seed"] = base.seed;
    manifest["config"] = "config.ini";
    manifest["config_fnv1a"] = hash;
    auto& conditions = manifest["conditions"] = nlohmann::ordered_json::array();

    for (const auto& t : result.trials) {
        const auto sub = dir / t.condition.slug();
        std::filesystem::create_directories(sub, ec);
        if (ec) throw IoError("cannot create " + sub.string() + ": " + ec.message());
        const auto stem = trial_stem(t.trial);
        export_csv(t.telemetry.markers, sub / (stem + "_markers.csv"));
        export_csv(t.telemetry.motors, sub / (stem + "_motors.csv"));

        if (conditions.empty() || conditions.back()["label"] != t.condition.label()) {
            nlohmann::ordered_json c;
            c["label"] = t.condition.label();
            c["world"] = to_string(t.condition.world);
            c["leg"] = to_string(t.condition.leg);
            c["lr_mode"] = to_string(t.condition.mode);
            c["dir"] = t.condition.slug();
            c["trials"] = nlohmann::ordered_json::array();
            conditions.push_back(c);
        }
        nlohmann::ordered_json entry;
        entry["trial"] = t.trial;
        entry["seed"] = t.seed;
        entry["markers"] = stem + "_markers.csv";
        entry["motors"] = stem + "_motors.csv";
        conditions.back()["trials"].push_back(entry);
    }

    write_text(dir / "config.ini", config_text);
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    write_text(dir / "report.txt", render_report(result.rows, ReportFormat::Text));
    write_text(dir / "report.csv", render_report(result.rows, ReportFormat::Csv));
}

GridResult load_archive(const std::filesystem::path& dir) {
    const auto base = load_config_file(dir / "config.ini");
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_text(dir / "manifest.json"));
    } catch (const nlohmann::json::exception& e) {
        throw TelemetryError("manifest.json: " + std::string(e.what()));
    }
    GridResult out;
    try {
        for (const auto& c : manifest.at("conditions")) {
            const Condition cond{parse_world_kind(c.at("world").get<std::string>()),
                                 parse_leg_shape(c.at("leg").get<std::string>()),
                                 parse_lr_mode(c.at("lr_mode").get<std::string>())};
            const auto config = condition_config(base, cond);
            const auto sub = dir / c.at("dir").get<std::string>();
            for (const auto& t : c.at("trials")) {
                TrialResult r;
                r.condition = cond;
                r.trial = t.at("trial").get<int>();
                r.seed = t.at("seed").get<std::uint64_t>();
                r.telemetry.markers = import_marker_csv(sub / t.at("markers").get<std::string>());
                r.telemetry.motors = import_motor_csv(sub / t.at("motors").get<std::string>());
                r.report = analyze(r.telemetry.markers, r.telemetry.motors, config.robot.leg, config.world.kind,
                                   gait_frequency(config));
                r.report.condition = cond;
                r.report.trial = r.trial;
                out.trials.push_back(std::move(r));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw TelemetryError("manifest.json: " + std::string(e.what()));
    }
    out.rows = aggregate_by_condition(out.trials);
    return out;
}

std::vector<double> default_sweep_offsets() {
    std::vector<double> out;
    for (int deg = 0; deg <= 180; deg += 15) out.push_back(deg * kDeg);
    return out;
}

std::vector<SweepRow> phase_sweep(const ExperimentConfig& base, const SweepSpec& spec, int jobs) {
    if (spec.offsets.empty()) throw ConfigError("sweep needs at least one offset");
    if (spec.trials < 1) throw ConfigError("trials must be at least 1");
    for (double o : spec.offsets)
        if (!(o >= 0.0 && o < 2.0 * std::numbers::pi))
            throw ConfigError("sweep offset out of range [0, 2pi): " + std::to_string(o));

    std::vector<SweepRow> rows;
    for (double offset : spec.offsets) {
        ExperimentConfig c = base;
        c.gait.axial_offset = offset;
        std::vector<Task> tasks;
        for (int k = 1; k <= spec.trials; ++k) tasks.push_back({spec.condition, k});
        const auto trials = run_tasks(c, tasks, jobs);
        std::vector<MetricsReport> reports;
        for (const auto& t : trials) reports.push_back(t.report);
        rows.push_back({offset, aggregate(reports)});
    }
    return rows;
}

}  // namespace centi
