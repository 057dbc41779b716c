#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "centi/telemetry.hpp"

namespace centi {

enum class PlotPlane { YZ, XY, XZ };

/// "yz", "xy" or "xz"; ConfigError otherwise.
PlotPlane parse_plot_plane(std::string_view name);

/// Standalone SVG 1.1: framed axes in mm with end ticks, a legend and one
/// polyline per requested marker with one vertex per sample. Both axes share
/// one scale. Throws TelemetryError on an empty selection or an unknown id.
std::string trajectory_svg(const MarkerLog& markers, const std::vector<int>& ids, PlotPlane plane);

void plot_trajectories(const MarkerLog& markers, const std::vector<int>& ids, PlotPlane plane,
                       const std::filesystem::path& out);

}  // namespace centi
