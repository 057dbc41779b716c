#include "centi/telemetry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "centi/errors.hpp"
#include "numfmt.hpp"

namespace centi {

namespace {

template <class T>
const std::vector<T>* find_track(const std::vector<int>& ids, const std::vector<std::vector<T>>& data, int id) {
    const auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) return nullptr;
    return &data[static_cast<std::size_t>(it - ids.begin())];
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto p = line.find(sep, start);
        out.push_back(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

std::string list_ids(const std::vector<int>& ids) {
    std::string s = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
    return s + "]";
}

/// Splits a column name such as "current12" into ("current", 12).
bool split_column(std::string_view name, std::string_view& channel, int& id) {
    const auto digits = name.find_first_of("0123456789");
    if (digits == 0 || digits == std::string_view::npos) return false;
    channel = name.substr(0, digits);
    const auto tail = name.substr(digits);
    auto res = std::from_chars(tail.data(), tail.data() + tail.size(), id);
    return res.ec == std::errc() && res.ptr == tail.data() + tail.size();
}

struct Table {
    std::vector<int> ids;                  // ascending
    std::vector<std::vector<int>> column;  // column[i][c]: file column of channel c for ids[i]
    std::vector<std::vector<double>> rows;
};

/// Shared reader for both layouts: header check, column mapping, row parsing.
Table read_table(std::string_view text, std::string_view header, const std::vector<std::string_view>& channels,
                 int expected_count, const char* what) {
    const auto lines = lines_of(text);
    if (lines.empty() || lines[0] != header)
        throw TelemetryError(std::string(what) + " file must start with '" + std::string(header) + "'");
    if (lines.size() < 2) throw TelemetryError(std::string(what) + " file has no column header");

    const auto names = split(lines[1], ',');
    if (names.empty() || names[0] != "t") throw TelemetryError("line 2: first column must be 't'");

    std::vector<std::vector<int>> by_id(static_cast<std::size_t>(expected_count) + 1,
                                        std::vector<int>(channels.size(), -1));
    for (std::size_t c = 1; c < names.size(); ++c) {
        std::string_view channel;
        int id = 0;
        if (!split_column(names[c], channel, id))
            throw TelemetryError("line 2: unrecognized column '" + std::string(names[c]) + "'");
        const auto ch = std::find(channels.begin(), channels.end(), channel);
        if (ch == channels.end() || id < 1 || id > expected_count)
            throw TelemetryError("line 2: unrecognized column '" + std::string(names[c]) + "'");
        by_id[static_cast<std::size_t>(id)][static_cast<std::size_t>(ch - channels.begin())] = static_cast<int>(c);
    }

    Table t;
    std::vector<int> missing;
    for (int id = 1; id <= expected_count; ++id) {
        const auto& cols = by_id[static_cast<std::size_t>(id)];
        if (std::find(cols.begin(), cols.end(), -1) != cols.end()) {
            missing.push_back(id);
            continue;
        }
        t.ids.push_back(id);
        t.column.push_back(cols);
    }
    if (!missing.empty()) {
        const std::string kind = std::string(what) == "marker" ? "marker" : "leg";
        throw TelemetryError("missing " + kind + " ids: " + list_ids(missing));
    }

    for (std::size_t l = 2; l < lines.size(); ++l) {
        if (lines[l].empty()) continue;
        const auto fields = split(lines[l], ',');
        const auto row_no = std::to_string(l - 1);
        if (fields.size() != names.size())
            throw TelemetryError("row " + row_no + " (line " + std::to_string(l + 1) + "): expected " +
                                 std::to_string(names.size()) + " fields, got " + std::to_string(fields.size()));
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto v = detail::parse_double(fields[c]);
            if (!v || !std::isfinite(*v))
                throw TelemetryError("row " + row_no + " (line " + std::to_string(l + 1) + "): bad value '" +
                                     std::string(fields[c]) + "' in column " + std::string(names[c]));
            row[c] = *v;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

const std::vector<Vec3>* MarkerLog::find(int id) const { return find_track(ids, positions, id); }

const std::vector<MotorSample>* MotorLog::find(int id) const { return find_track(ids, samples, id); }

int capture_stride(double dt, double capture_rate) {
    const double interval = 1.0 / capture_rate;
    const double steps = std::round(interval / dt);
    if (steps < 1.0 || std::abs(steps * dt - interval) > 1e-6) {
        std::ostringstream os;
        os << "capture interval " << interval * 1e3 << " ms is not a multiple of dt = " << dt * 1e3 << " ms";
        throw TelemetryError(os.str());
    }
    return static_cast<int>(steps);
}

Telemetry record(const Simulator& sim, RobotState& state, double duration, double capture_rate, double noise_mm,
                 std::uint64_t noise_seed) {
    const int stride = capture_stride(sim.config().dt, capture_rate);
    const auto frames = static_cast<std::size_t>(std::llround(duration * capture_rate));
    const int n_markers = sim.config().robot.n_legs;

    std::mt19937_64 rng(noise_seed);
    std::normal_distribution<double> noise(0.0, noise_mm > 0.0 ? noise_mm : 1.0);

    Telemetry tel;
    auto& mk = tel.markers;
    auto& mo = tel.motors;
    for (int id = 1; id <= n_markers; ++id) {
        mk.ids.push_back(id);
        mo.ids.push_back(id);
    }
    mk.positions.assign(static_cast<std::size_t>(n_markers), {});
    mo.samples.assign(static_cast<std::size_t>(n_markers), {});
    for (auto& p : mk.positions) p.reserve(frames);
    for (auto& s : mo.samples) s.reserve(frames);

    for (std::size_t j = 0; j < frames; ++j) {
        if (j > 0)
            for (int s = 0; s < stride; ++s) sim.step(state);
        const double t = static_cast<double>(j) / capture_rate;
        mk.time.push_back(t);
        mo.time.push_back(t);
        for (int id = 1; id <= n_markers; ++id) {
            const auto i = static_cast<std::size_t>(id - 1);
            Vec3 p = 1000.0 * sim.marker_position(state, id);
            if (noise_mm > 0.0)
                for (int a = 0; a < 3; ++a) p[a] += noise(rng);
            mk.positions[i].push_back(p);

            const auto& m = state.legs[i].motor;
            mo.samples[i].push_back({wrap_angle(m.angle), m.speed / (2.0 * std::numbers::pi), m.voltage, m.current});
        }
    }
    return tel;
}

std::string marker_csv(const MarkerLog& log) {
    std::string out(kMarkerHeader);
    out += "\nt";
    for (int id : log.ids)
        for (const char* c : {"x", "y", "z"}) out += "," + std::string(c) + std::to_string(id);
    out += '\n';
    for (std::size_t j = 0; j < log.time.size(); ++j) {
        out += detail::format_double(log.time[j]);
        for (const auto& track : log.positions)
            for (int a = 0; a < 3; ++a) {
                out += ',';
                out += detail::format_double(track[j][a]);
            }
        out += '\n';
    }
    return out;
}

std::string motor_csv(const MotorLog& log) {
    std::string out(kMotorHeader);
    out += "\nt";
    for (int id : log.ids)
        for (const char* c : {"phase", "speed", "voltage", "current"}) out += "," + std::string(c) + std::to_string(id);
    out += '\n';
    for (std::size_t j = 0; j < log.time.size(); ++j) {
        out += detail::format_double(log.time[j]);
        for (const auto& track : log.samples) {
            const auto& s = track[j];
            for (double v : {s.phase, s.speed, s.voltage, s.current}) {
                out += ',';
                out += detail::format_double(v);
            }
        }
        out += '\n';
    }
    return out;
}

MarkerLog parse_marker_csv(std::string_view text, int expected_count) {
    const auto t = read_table(text, kMarkerHeader, {"x", "y", "z"}, expected_count, "marker");
    MarkerLog log;
    log.ids = t.ids;
    log.positions.assign(t.ids.size(), {});
    for (const auto& row : t.rows) {
        log.time.push_back(row[0]);
        for (std::size_t i = 0; i < t.ids.size(); ++i) {
            const auto& c = t.column[i];
            log.positions[i].emplace_back(row[static_cast<std::size_t>(c[0])], row[static_cast<std::size_t>(c[1])],
                                          row[static_cast<std::size_t>(c[2])]);
        }
    }
    return log;
}

MotorLog parse_motor_csv(std::string_view text, int expected_count) {
    const auto t = read_table(text, kMotorHeader, {"phase", "speed", "voltage", "current"}, expected_count, "motor");
    MotorLog log;
    log.ids = t.ids;
    log.samples.assign(t.ids.size(), {});
    for (const auto& row : t.rows) {
        log.time.push_back(row[0]);
        for (std::size_t i = 0; i < t.ids.size(); ++i) {
            const auto& c = t.column[i];
            auto at = [&](int k) { return row[static_cast<std::size_t>(c[static_cast<std::size_t>(k)])]; };
            if (at(3) < 0.0) throw TelemetryError("negative current for leg " + std::to_string(t.ids[i]));
            log.samples[i].push_back({at(0), at(1), at(2), at(3)});
        }
    }
    return log;
}

void export_csv(const MarkerLog& log, const std::filesystem::path& path) { write_file(path, marker_csv(log)); }

void export_csv(const MotorLog& log, const std::filesystem::path& path) { write_file(path, motor_csv(log)); }

MarkerLog import_marker_csv(const std::filesystem::path& path, int expected_count) {
    return parse_marker_csv(read_file(path), expected_count);
}

MotorLog import_motor_csv(const std::filesystem::path& path, int expected_count) {
    return parse_motor_csv(read_file(path), expected_count);
}

}  // namespace centi
