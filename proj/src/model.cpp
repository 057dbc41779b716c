#include "centi/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "centi/errors.hpp"

namespace centi {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require_positive(double v, const char* name) {
    require(v > 0.0 && std::isfinite(v), std::string(name) + " must be positive (got " + num(v) + ")");
}

void require_nonnegative(double v, const char* name) {
    require(v >= 0.0 && std::isfinite(v), std::string(name) + " must be non-negative (got " + num(v) + ")");
}

}  // namespace

std::string_view to_string(LegShape s) {
    switch (s) {
        case LegShape::Normal: return "Normal";
        case LegShape::Fin: return "Fin";
        case LegShape::Web: return "Web";
    }
    return "?";
}

std::string_view to_string(WorldKind k) { return k == WorldKind::Land ? "land" : "water"; }

std::string_view to_string(LrMode m) { return m == LrMode::Antiphase ? "antiphase" : "in_phase"; }

LegShape parse_leg_shape(std::string_view s) {
    const auto v = lower(s);
    if (v == "normal") return LegShape::Normal;
    if (v == "fin") return LegShape::Fin;
    if (v == "web") return LegShape::Web;
    throw ConfigError("unknown leg shape '" + std::string(s) + "' (expected Normal, Fin or Web)");
}

WorldKind parse_world_kind(std::string_view s) {
    const auto v = lower(s);
    if (v == "land") return WorldKind::Land;
    if (v == "water") return WorldKind::Water;
    throw ConfigError("unknown world kind '" + std::string(s) + "' (expected land or water)");
}

LrMode parse_lr_mode(std::string_view s) {
    const auto v = lower(s);
    if (v == "antiphase" || v == "anti_phase" || v == "anti") return LrMode::Antiphase;
    if (v == "in_phase" || v == "inphase" || v == "in") return LrMode::InPhase;
    throw ConfigError("unknown lr_mode '" + std::string(s) + "' (expected antiphase or in_phase)");
}

LegSpec default_leg(LegShape shape) {
    LegSpec leg;
    leg.shape = shape;
    switch (shape) {
        case LegShape::Normal:
            leg.r_land = 0.050;
            leg.r_water = 0.067;
            leg.blade_width = 0.020;
            leg.flex_stiffness = 4.0;
            leg.flex_taper = 0.5;
            break;
        case LegShape::Fin:
            // thin fin: softest, widest blade
            leg.r_land = 0.053;
            leg.r_water = 0.086;
            leg.blade_width = 0.050;
            leg.flex_stiffness = 2.5;
            leg.flex_taper = 0.5;
            break;
        case LegShape::Web:
            // webbed paddle: stiffer than Fin, uniform along the blade
            leg.r_land = 0.083;
            leg.r_water = 0.086;
            leg.blade_width = 0.045;
            leg.flex_stiffness = 6.0;
            leg.flex_taper = 1.0;
            break;
    }
    leg.blade_length = leg.r_water;
    return leg;
}

double leg_radius(const LegSpec& spec, WorldKind kind) {
    return kind == WorldKind::Land ? spec.r_land : spec.r_water;
}

double RobotModel::inertia_xx() const {
    return segment_mass() * (segment_width * segment_width + segment_height * segment_height) / 12.0;
}

double RobotModel::inertia_yy() const {
    return segment_mass() * (segment_length * segment_length + segment_height * segment_height) / 12.0;
}

double RobotModel::inertia_zz() const {
    return segment_mass() * (segment_length * segment_length + segment_width * segment_width) / 12.0;
}

void validate(const ExperimentConfig& config) {
    const auto& r = config.robot;
    require(r.n_segments >= 1, "n_segments must be at least 1");
    require(r.n_legs == 2 * r.n_segments, "n_legs must equal 2 * n_segments");
    require_positive(r.total_mass, "total_mass");
    require_positive(r.segment_length, "segment_length");
    require_positive(r.segment_width, "segment_width");
    require_positive(r.segment_height, "segment_height");
    require_positive(r.float_volume, "float_volume");
    require_nonnegative(r.hub_lateral, "hub_lateral");
    require_nonnegative(r.belly_offset, "belly_offset");
    require_nonnegative(r.marker_lateral, "marker_lateral");
    require(std::isfinite(r.marker_height), "marker_height must be finite");

    const auto& j = r.joint;
    for (auto [v, n] : {std::pair{j.stiffness_yaw, "stiffness_yaw"}, {j.stiffness_pitch, "stiffness_pitch"},
                        {j.stiffness_roll, "stiffness_roll"}, {j.damping_yaw, "damping_yaw"},
                        {j.damping_pitch, "damping_pitch"}, {j.damping_roll, "damping_roll"},
                        {j.anchor_stiffness, "anchor_stiffness"}, {j.anchor_damping, "anchor_damping"}})
        require_nonnegative(v, n);
    require(std::isfinite(j.rest_angle), "rest_angle must be finite");

    const auto& l = r.leg;
    require_positive(l.r_land, "r_land");
    require_positive(l.r_water, "r_water");
    require(l.r_land <= l.r_water, "r_land must not exceed r_water");
    require_positive(l.blade_length, "blade_length");
    require_positive(l.blade_width, "blade_width");
    require(l.blade_nodes >= 1, "blade_nodes must be at least 1");
    require_nonnegative(l.flex_stiffness, "flex_stiffness");
    require_nonnegative(l.flex_damping, "flex_damping");
    require_positive(l.flex_taper, "flex_taper");

    const auto& m = r.motor;
    require_positive(m.rotor_inertia, "rotor_inertia");
    require_nonnegative(m.kp, "kp");
    require_nonnegative(m.ki, "ki");
    require_nonnegative(m.viscous_friction, "viscous_friction");
    require_positive(m.torque_limit, "torque_limit");
    require_positive(m.torque_constant, "torque_constant");
    require_nonnegative(m.idle_current, "idle_current");
    require_nonnegative(m.supply_voltage, "supply_voltage");

    const auto& g = config.gait;
    require_positive(g.omega, "omega");
    require(g.axial_offset >= 0.0 && g.axial_offset < 2.0 * std::numbers::pi,
            "axial_offset out of range [0, 2*pi)");
    require_positive(g.duration, "duration");

    const auto& w = config.world;
    require_nonnegative(w.gravity, "gravity");
    require_nonnegative(w.contact_stiffness, "contact_stiffness");
    require_nonnegative(w.contact_damping, "contact_damping");
    require(w.friction_mu >= 0.0 && w.friction_mu <= 2.0,
            "friction_mu out of range [0, 2] (got " + num(w.friction_mu) + ")");
    require_positive(w.friction_slip_velocity, "friction_slip_velocity");
    require_nonnegative(w.fluid_density, "fluid_density");
    require_nonnegative(w.drag_coeff, "drag_coeff");
    require_nonnegative(w.hull_drag_coeff, "hull_drag_coeff");
    require(std::isfinite(w.water_level), "water_level must be finite");

    require(config.trials >= 1, "trials must be at least 1");
    require_positive(config.capture_rate, "capture_rate");
    require(config.dt > 0.0 && config.dt <= 0.005, "dt out of range (0, 0.005]");
    require(config.capture_rate <= 1.0 / config.dt + 1e-9, "capture_rate must not exceed 1/dt");
    require_nonnegative(config.settle_time, "settle_time");
    require_nonnegative(config.marker_noise, "marker_noise");
}

}  // namespace centi
