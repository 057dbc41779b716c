#pragma once

#include <string>
#include <vector>

#include "centi/model.hpp"
#include "centi/telemetry.hpp"

namespace centi {

/// One cell of the experiment grid.
struct Condition {
    WorldKind world = WorldKind::Land;
    LegShape leg = LegShape::Normal;
    LrMode mode = LrMode::Antiphase;

    std::string label() const;  // "land/Normal/antiphase"
    std::string slug() const;   // "land_Normal_antiphase"

    bool operator==(const Condition&) const = default;
};

struct PlanarVelocity {
    double vx = 0.0;  // mm/s
    double vy = 0.0;
    double v = 0.0;   // planar norm
};

/// Time-averaged translational velocity from marker tracks, x and y only:
/// mean over markers of the mean finite-difference velocity.
/// Throws MetricsError unless all `expected_markers` ids are present, there
/// are at least 2 samples and the timestamps are uniform.
PlanarVelocity mean_velocity(const MarkerLog& markers, int expected_markers = kMarkerCount);

/// Leg-averaged circumferential velocity 2*pi*r*N (mm/s), r chosen by
/// environment and N the time-averaged speed of each leg.
double mean_circumferential_velocity(const MotorLog& motors, const LegSpec& leg, WorldKind world,
                                     int expected_legs = kMarkerCount);

/// 100 * v / vf. Throws MetricsError when vf <= 0.
double slip_ratio(double v, double vf);

struct EnergyResult {
    double literal = 0.0;   // leg average of the per-sample mean of current * voltage
    double physical = 0.0;  // sum over legs of the time integral, J
};

/// Throws MetricsError on a log with no legs or no samples.
EnergyResult energy(const MotorLog& motors);

struct BodyWave {
    double roll_amp = 0.0;   // rad
    double heave_amp = 0.0;  // mm
    double frequency = 0.0;  // Hz, 0 for a flat signal
};

/// Roll and heave of the segment carrying markers 1 and 2. Roll is the angle
/// of the 1->2 chord from horizontal, heave the mean height of the pair; both
/// are linearly detrended and reported as half peak-to-peak. The frequency is
/// the fundamental of the summed marker height spectra: the lowest peak with
/// at least a quarter of the largest peak's power. Throws MetricsError
/// when either marker is absent or the record spans fewer than two periods of
/// `gait_frequency`.
BodyWave body_wave_metrics(const MarkerLog& markers, double gait_frequency);

struct MetricsReport {
    Condition condition;
    int trial = 0;
    double v = 0.0;       // mm/s
    double v_f = 0.0;     // mm/s
    double alpha = 0.0;   // %
    double e = 0.0;       // literal form
    double e_phys = 0.0;  // J
    double roll_amp = 0.0;
    double heave_amp = 0.0;
    double frequency = 0.0;
};

/// All metrics for one trial.
MetricsReport analyze(const MarkerLog& markers, const MotorLog& motors, const LegSpec& leg, WorldKind world,
                      double gait_frequency);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample (n - 1) standard deviation, 0 for one value
};

MeanStd mean_std(const std::vector<double>& values);

struct AggregateRow {
    Condition condition;
    int trials = 0;
    MeanStd v;
    MeanStd v_f;
    MeanStd alpha;
    MeanStd e;
    MeanStd e_phys;
    MeanStd roll_amp;
    MeanStd heave_amp;
};

/// Throws MetricsError on an empty set.
AggregateRow aggregate(const std::vector<MetricsReport>& trials);

/// Fixed-point with `decimals` digits, never "-0.0".
std::string fixed(double value, int decimals);

/// "52.6±5.4"
std::string format_mean_std(const MeanStd& m, int decimals = 1);

}  // namespace centi
