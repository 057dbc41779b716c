#include "centi/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include "centi/errors.hpp"

namespace centi {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

PlotPlane parse_plot_plane(std::string_view name) {
    if (name == "yz") return PlotPlane::YZ;
    if (name == "xy") return PlotPlane::XY;
    if (name == "xz") return PlotPlane::XZ;
    throw ConfigError("unknown plot plane '" + std::string(name) + "' (expected yz, xy or xz)");
}

std::string trajectory_svg(const MarkerLog& markers, const std::vector<int>& ids, PlotPlane plane) {
    if (ids.empty()) throw TelemetryError("no markers selected for plotting");
    std::vector<const std::vector<Vec3>*> tracks;
    for (int id : ids) {
        const auto* t = markers.find(id);
        if (!t) throw TelemetryError("unknown marker id " + std::to_string(id));
        tracks.push_back(t);
    }

    const int ah = plane == PlotPlane::YZ ? 1 : 0;
    const int av = plane == PlotPlane::XY ? 1 : 2;
    const char* names = plane == PlotPlane::YZ ? "yz" : plane == PlotPlane::XY ? "xy" : "xz";

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto* t : tracks)
        for (const auto& p : *t) {
            x0 = std::min(x0, p[ah]);
            x1 = std::max(x1, p[ah]);
            y0 = std::min(y0, p[av]);
            y1 = std::max(y1, p[av]);
        }
    if (!(x1 >= x0)) x0 = x1 = y0 = y1 = 0.0;
    const double w = std::max(x1 - x0, 1e-6), hgt = std::max(y1 - y0, 1e-6);

    constexpr double W = 640, H = 480, left = 70, right = 150, top = 30, bottom = 50;
    const double scale = std::min((W - left - right) / w, (H - top - bottom) / hgt);
    auto sx = [&](double v) { return left + (v - x0) * scale; };
    auto sy = [&](double v) { return H - bottom - (v - y0) * scale; };
    const double fx1 = sx(x1), fy1 = sy(y1);

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"480\" viewBox=\"0 0 640 "
         "480\">\n";
    s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    s += "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(H - bottom) + "\" x2=\"" + num(fx1) + "\" y2=\"" +
         num(H - bottom) + "\"/>\n";
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(H - bottom) + "\" x2=\"" + num(left) + "\" y2=\"" + num(fy1) +
         "\"/>\n";
    s += "</g>\n";
    s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    s += "<text x=\"" + num(left) + "\" y=\"" + num(H - bottom + 15) + "\">" + num(x0) + "</text>\n";
    s += "<text x=\"" + num(fx1) + "\" y=\"" + num(H - bottom + 15) + "\" text-anchor=\"end\">" + num(x1) +
         "</text>\n";
    s += "<text x=\"" + num(left - 5) + "\" y=\"" + num(H - bottom) + "\" text-anchor=\"end\">" + num(y0) +
         "</text>\n";
    s += "<text x=\"" + num(left - 5) + "\" y=\"" + num(fy1 + 10) + "\" text-anchor=\"end\">" + num(y1) +
         "</text>\n";
    s += "<text x=\"" + num((left + fx1) / 2) + "\" y=\"" + num(H - 12) + "\" text-anchor=\"middle\">" +
         std::string(1, names[0]) + " [mm]</text>\n";
    s += "<text x=\"15\" y=\"" + num((H - bottom + fy1) / 2) + "\">" + std::string(1, names[1]) + " [mm]</text>\n";
    s += "</g>\n";

    for (std::size_t k = 0; k < tracks.size(); ++k) {
        const char* colour = kPalette[k % std::size(kPalette)];
        s += "<polyline id=\"marker-" + std::to_string(ids[k]) + "\" fill=\"none\" stroke=\"" + colour +
             "\" stroke-width=\"1\" points=\"";
        bool first = true;
        for (const auto& p : *tracks[k]) {
            if (!first) s += ' ';
            first = false;
            s += num(sx(p[ah])) + "," + num(sy(p[av]));
        }
        s += "\"/>\n";
    }

    s += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t k = 0; k < tracks.size(); ++k) {
        const double ly = top + 18.0 * static_cast<double>(k);
        const char* colour = kPalette[k % std::size(kPalette)];
        s += "<line x1=\"" + num(W - right + 20) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(W - right + 45) +
             "\" y2=\"" + num(ly) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + num(W - right + 50) + "\" y=\"" + num(ly + 4) + "\">marker " + std::to_string(ids[k]) +
             "</text>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

void plot_trajectories(const MarkerLog& markers, const std::vector<int>& ids, PlotPlane plane,
                       const std::filesystem::path& out) {
    const auto svg = trajectory_svg(markers, ids, plane);
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot write " + out.string());
    f << svg;
    if (!f) throw IoError("failed writing " + out.string());
}

}  // namespace centi
