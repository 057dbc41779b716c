#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "centi/dynamics.hpp"

namespace centi {

inline constexpr int kMarkerCount = 16;
inline constexpr std::string_view kMarkerHeader = "# centi-markers v1";
inline constexpr std::string_view kMotorHeader = "# centi-motors v1";

/// Marker positions in mm on a shared uniform time base (s).
struct MarkerLog {
    std::vector<double> time;
    std::vector<int> ids;                      // ascending
    std::vector<std::vector<Vec3>> positions;  // positions[i][j]: marker ids[i] at time[j]

    const std::vector<Vec3>* find(int id) const;
    std::size_t samples() const { return time.size(); }

    bool operator==(const MarkerLog&) const = default;
};

struct MotorSample {
    double phase = 0.0;    // rad, [0, 2pi)
    double speed = 0.0;    // rev/s
    double voltage = 0.0;  // V
    double current = 0.0;  // A

    bool operator==(const MotorSample&) const = default;
};

struct MotorLog {
    std::vector<double> time;
    std::vector<int> ids;
    std::vector<std::vector<MotorSample>> samples;  // samples[i][j]: leg ids[i] at time[j]

    const std::vector<MotorSample>* find(int id) const;

    bool operator==(const MotorLog&) const = default;
};

struct Telemetry {
    MarkerLog markers;
    MotorLog motors;

    bool operator==(const Telemetry&) const = default;
};

/// Simulation steps per capture interval. Throws TelemetryError when dt does
/// not divide 1/capture_rate to within 1 us.
int capture_stride(double dt, double capture_rate);

/// Steps `sim` from `state` and samples `round(duration * capture_rate)`
/// frames, the first at the current state. Timestamps start at 0. Markers are
/// perturbed by N(0, noise_mm) when noise_mm > 0. Observation only: the
/// trajectory is the same as stepping without recording.
Telemetry record(const Simulator& sim, RobotState& state, double duration, double capture_rate,
                 double noise_mm = 0.0, std::uint64_t noise_seed = 0);

// CSV layout, one row per frame, full round-trip precision:
//   markers: "# centi-markers v1", then t,x1,y1,z1,...,x16,y16,z16  (s, mm)
//   motors:  "# centi-motors v1",  then t,phase1,speed1,voltage1,current1,...  (s, rad, rev/s, V, A)
std::string marker_csv(const MarkerLog& log);
std::string motor_csv(const MotorLog& log);

/// Parse the documented layouts. Errors name the offending line, or list the
/// absent ids when any of 1..expected_count is missing.
MarkerLog parse_marker_csv(std::string_view text, int expected_count = kMarkerCount);
MotorLog parse_motor_csv(std::string_view text, int expected_count = kMarkerCount);

void export_csv(const MarkerLog& log, const std::filesystem::path& path);
void export_csv(const MotorLog& log, const std::filesystem::path& path);
MarkerLog import_marker_csv(const std::filesystem::path& path, int expected_count = kMarkerCount);
MotorLog import_motor_csv(const std::filesystem::path& path, int expected_count = kMarkerCount);

}  // namespace centi
