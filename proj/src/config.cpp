#include "centi/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "centi/errors.hpp"
#include "numfmt.hpp"

namespace centi {

namespace {

struct Field {
    std::string section;
    std::string key;
    std::function<void(std::string_view)> set;
    std::function<std::string()> get;
};

using detail::format_double;

double parse_double(std::string_view s) {
    if (auto v = detail::parse_double(s)) return *v;
    throw ConfigError("expected a number, got '" + std::string(s) + "'");
}

template <class Int>
Int parse_integer(std::string_view s) {
    Int v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("expected an integer, got '" + std::string(s) + "'");
    return v;
}

Field real(std::string section, std::string key, double& ref) {
    return {std::move(section), std::move(key), [&ref](std::string_view s) { ref = parse_double(s); },
            [&ref] { return format_double(ref); }};
}

template <class Int>
Field integer(std::string section, std::string key, Int& ref) {
    return {std::move(section), std::move(key), [&ref](std::string_view s) { ref = parse_integer<Int>(s); },
            [&ref] { return std::to_string(ref); }};
}

std::vector<Field> fields(ExperimentConfig& c) {
    auto& r = c.robot;
    auto& j = r.joint;
    auto& l = r.leg;
    auto& m = r.motor;
    auto& g = c.gait;
    auto& w = c.world;
    return {
        integer("robot", "n_segments", r.n_segments),
        integer("robot", "n_legs", r.n_legs),
        real("robot", "segment_length", r.segment_length),
        real("robot", "segment_width", r.segment_width),
        real("robot", "segment_height", r.segment_height),
        real("robot", "total_mass", r.total_mass),
        real("robot", "hub_lateral", r.hub_lateral),
        real("robot", "belly_offset", r.belly_offset),
        real("robot", "marker_lateral", r.marker_lateral),
        real("robot", "marker_height", r.marker_height),
        real("robot", "float_volume", r.float_volume),

        real("joint", "stiffness_yaw", j.stiffness_yaw),
        real("joint", "stiffness_pitch", j.stiffness_pitch),
        real("joint", "stiffness_roll", j.stiffness_roll),
        real("joint", "damping_yaw", j.damping_yaw),
        real("joint", "damping_pitch", j.damping_pitch),
        real("joint", "damping_roll", j.damping_roll),
        real("joint", "rest_angle", j.rest_angle),
        real("joint", "anchor_stiffness", j.anchor_stiffness),
        real("joint", "anchor_damping", j.anchor_damping),

        {"leg", "shape", [&l](std::string_view s) { l = default_leg(parse_leg_shape(s)); },
         [&l] { return std::string(to_string(l.shape)); }},
        real("leg", "r_land", l.r_land),
        real("leg", "r_water", l.r_water),
        real("leg", "blade_length", l.blade_length),
        real("leg", "blade_width", l.blade_width),
        integer("leg", "blade_nodes", l.blade_nodes),
        real("leg", "flex_stiffness", l.flex_stiffness),
        real("leg", "flex_damping", l.flex_damping),
        real("leg", "flex_taper", l.flex_taper),

        real("motor", "rotor_inertia", m.rotor_inertia),
        real("motor", "kp", m.kp),
        real("motor", "ki", m.ki),
        real("motor", "viscous_friction", m.viscous_friction),
        real("motor", "torque_limit", m.torque_limit),
        real("motor", "torque_constant", m.torque_constant),
        real("motor", "idle_current", m.idle_current),
        real("motor", "supply_voltage", m.supply_voltage),

        real("gait", "omega", g.omega),
        {"gait", "lr_mode", [&g](std::string_view s) { g.lr_mode = parse_lr_mode(s); },
         [&g] { return std::string(to_string(g.lr_mode)); }},
        real("gait", "axial_offset", g.axial_offset),
        real("gait", "duration", g.duration),

        {"world", "kind", [&w](std::string_view s) { w.kind = parse_world_kind(s); },
         [&w] { return std::string(to_string(w.kind)); }},
        real("world", "gravity", w.gravity),
        real("world", "contact_stiffness", w.contact_stiffness),
        real("world", "contact_damping", w.contact_damping),
        real("world", "friction_mu", w.friction_mu),
        real("world", "friction_slip_velocity", w.friction_slip_velocity),
        real("world", "fluid_density", w.fluid_density),
        real("world", "drag_coeff", w.drag_coeff),
        real("world", "hull_drag_coeff", w.hull_drag_coeff),
        real("world", "water_level", w.water_level),

        integer("experiment", "trials", c.trials),
        integer("experiment", "seed", c.seed),
        real("experiment", "capture_rate", c.capture_rate),
        real("experiment", "dt", c.dt),
        real("experiment", "settle_time", c.settle_time),
        real("experiment", "marker_noise", c.marker_noise),
    };
}

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line;
};

}  // namespace

ExperimentConfig load_config(std::string_view text) {
    ExperimentConfig config;
    auto table = fields(config);

    // section -> key -> entry
    std::map<std::string, std::map<std::string, Entry>> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto where = "line " + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            bool known = false;
            for (const auto& f : table) known = known || f.section == section;
            if (!known) throw ConfigError(where + "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        if (section.empty()) throw ConfigError(where + "key outside of any section");
        const auto key = std::string(trim(line.substr(0, eq)));
        const auto value = std::string(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(where + "empty key");
        bool known = false;
        for (const auto& f : table) known = known || (f.section == section && f.key == key);
        if (!known) throw ConfigError(where + "unknown key '" + key + "' in [" + section + "]");
        auto& slot = seen[section];
        if (slot.contains(key)) throw ConfigError(where + "duplicate key '" + key + "'");
        slot[key] = Entry{value, line_no};
    }

    auto apply = [&](const Field& f) {
        auto sit = seen.find(f.section);
        if (sit == seen.end()) return;
        auto kit = sit->second.find(f.key);
        if (kit == sit->second.end()) return;
        try {
            f.set(kit->second.value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(kit->second.line) + ": " + f.key + ": " + e.what());
        }
    };
    // the shape resets the leg geometry, so it goes first
    for (const auto& f : table)
        if (f.section == "leg" && f.key == "shape") apply(f);
    for (const auto& f : table)
        if (!(f.section == "leg" && f.key == "shape")) apply(f);

    validate(config);
    return config;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& config) {
    ExperimentConfig copy = config;
    const auto table = fields(copy);
    std::string out;
    std::string section;
    for (const auto& f : table) {
        if (f.section != section) {
            if (!section.empty()) out += '\n';
            section = f.section;
            out += "[" + section + "]\n";
        }
        out += f.key + " = " + f.get() + "\n";
    }
    return out;
}

}  // namespace centi
