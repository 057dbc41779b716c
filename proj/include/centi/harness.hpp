#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "centi/dynamics.hpp"
#include "centi/metrics.hpp"
#include "centi/telemetry.hpp"

namespace centi {

struct ConditionGrid {
    std::vector<WorldKind> worlds{WorldKind::Land, WorldKind::Water};
    std::vector<LegShape> legs{LegShape::Normal, LegShape::Fin, LegShape::Web};
    std::vector<LrMode> modes{LrMode::Antiphase, LrMode::InPhase};
    int trials = 5;

    /// World-major, then leg, then mode.
    std::vector<Condition> conditions() const;
    std::size_t size() const { return worlds.size() * legs.size() * modes.size(); }
};

/// Seed of one trial: a function of the base seed, the condition label and
/// the trial index only, so it survives changes to the trial count and to
/// the parameter being swept.
std::uint64_t trial_seed(std::uint64_t base_seed, const Condition& condition, int trial);

/// Placement scatter of one trial: heading and joint rest offsets.
struct TrialPerturbation {
    double yaw = 0.0;               // rad, within +-2 deg
    std::vector<Vec3> joint_rest;   // rad per axis, within +-1 deg
};

TrialPerturbation trial_perturbation(std::uint64_t seed, int n_joints);

/// `base` with the condition's environment, left/right mode and leg shape.
/// A shape different from the base leg loads that shape's defaults, keeping
/// the base blade_nodes.
ExperimentConfig condition_config(const ExperimentConfig& base, const Condition& condition);

struct TrialResult {
    Condition condition;
    int trial = 0;  // 1-based
    std::uint64_t seed = 0;
    Telemetry telemetry;
    MetricsReport report;
};

/// Settles for config.settle_time, then records gait.duration seconds.
/// DivergenceError messages name the condition and trial.
TrialResult run_trial(const ExperimentConfig& base, const Condition& condition, int trial);

struct GridResult {
    std::vector<AggregateRow> rows;    // grid order
    std::vector<TrialResult> trials;   // grid order, then trial
};

/// Runs every condition x trial on up to `jobs` threads. Output order and
/// content do not depend on `jobs`.
GridResult run_grid(const ExperimentConfig& base, const ConditionGrid& grid, int jobs = 1);

/// Writes <dir>/<slug>/trial_<k>_{markers,motors}.csv, manifest.json,
/// config.ini, report.txt and report.csv. Byte-stable for a fixed input.
void write_archive(const GridResult& result, const ExperimentConfig& base, const std::filesystem::path& dir);

/// Re-derives per-trial metrics from an archive written by write_archive.
GridResult load_archive(const std::filesystem::path& dir);

struct SweepSpec {
    std::vector<double> offsets;  // rad, each in [0, 2pi)
    Condition condition;
    int trials = 5;
};

/// 0..180 deg in 15 deg steps.
std::vector<double> default_sweep_offsets();

struct SweepRow {
    double offset = 0.0;  // rad
    AggregateRow row;
};

/// One aggregate row per offset, in the order given. Throws ConfigError on an
/// empty or out-of-range offset list.
std::vector<SweepRow> phase_sweep(const ExperimentConfig& base, const SweepSpec& spec, int jobs = 1);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

}  // namespace centi
