#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace centi {

enum class LegShape { Normal, Fin, Web };
enum class WorldKind { Land, Water };
enum class LrMode { Antiphase, InPhase };

std::string_view to_string(LegShape s);
std::string_view to_string(WorldKind k);
std::string_view to_string(LrMode m);

// Case-insensitive; throw ConfigError on unknown names.
LegShape parse_leg_shape(std::string_view s);
WorldKind parse_world_kind(std::string_view s);
LrMode parse_lr_mode(std::string_view s);

/// Rotational spring-damper between adjacent segments, plus the stiff
/// translational anchor spring that keeps the segments attached.
struct JointSpec {
    double stiffness_yaw = 2.0;    // N*m/rad
    double stiffness_pitch = 2.0;
    double stiffness_roll = 2.0;
    double damping_yaw = 0.1;      // N*m*s/rad
    double damping_pitch = 0.1;
    double damping_roll = 0.1;
    double rest_angle = 0.0;       // rad, applied to all three axes
    double anchor_stiffness = 2.0e4;  // N/m
    double anchor_damping = 20.0;     // N*s/m

    bool operator==(const JointSpec&) const = default;
};

/// A rotating leg: a blade of `blade_nodes` pseudo-rigid links. The root
/// link is rigidly fixed to the motor shaft; hinges further out are
/// spring-dampers whose stiffness tapers by `flex_taper` per hinge.
struct LegSpec {
    LegShape shape = LegShape::Normal;
    double r_land = 0.050;   // m, hub height when the legs stand vertical
    double r_water = 0.067;  // m, unloaded maximum radius
    double blade_length = 0.067;
    double blade_width = 0.020;
    int blade_nodes = 3;
    double flex_stiffness = 4.0;  // N*m/rad, innermost compliant hinge
    double flex_damping = 0.02;   // N*m*s/rad
    double flex_taper = 0.5;      // stiffness ratio of hinge j+1 to hinge j

    bool operator==(const LegSpec&) const = default;

    double planform_area() const { return blade_length * blade_width; }
};

/// Default leg geometry for each of the three shapes. Radii are the measured
/// turning radii; blade planform and compliance are modeling assumptions.
LegSpec default_leg(LegShape shape);

/// Effective turning radius: hub height on land, blade reach on water.
double leg_radius(const LegSpec& spec, WorldKind kind);

/// Servo model used for every leg.
struct MotorSpec {
    double rotor_inertia = 0.01;   // kg*m^2, reflected through the gearbox
    double kp = 0.4;               // N*m*s/rad, speed-error gain
    double ki = 4.0;               // N*m/rad, integrated speed-error gain
    double viscous_friction = 0.01;  // N*m*s/rad
    double torque_limit = 1.86;    // N*m (19 kg*cm)
    double torque_constant = 1.86 / (2.0 - 0.15);  // N*m/A, rated torque at 2 A
    double idle_current = 0.15;    // A
    double supply_voltage = 7.4;   // V

    bool operator==(const MotorSpec&) const = default;
};

struct RobotModel {
    int n_segments = 8;
    int n_legs = 16;
    double segment_length = 1.01 / 8.0;  // m
    double segment_width = 0.42;
    double segment_height = 0.15;
    double total_mass = 5.2;             // kg
    double hub_lateral = 0.18;           // m, motor axis offset from the midline
    double belly_offset = 0.03;          // m, hull bottom below the motor axis
    double marker_lateral = 0.42 / 4.0;  // m, marker at the top-center of each half
    double marker_height = 0.075;
    double float_volume = 0.6 * (1.01 / 8.0) * 0.42 * 0.15;  // m^3 per segment
    JointSpec joint;
    LegSpec leg;
    MotorSpec motor;

    bool operator==(const RobotModel&) const = default;

    double segment_mass() const { return total_mass / n_segments; }
    /// Principal moments of a uniform box of the segment's bounding size.
    double inertia_xx() const;
    double inertia_yy() const;
    double inertia_zz() const;
    /// Height of the float slab implied by float_volume over the segment footprint.
    double float_height() const { return float_volume / (segment_length * segment_width); }
};

/// Commanded angular velocity shared by all legs: the mean of V_f / (2 pi r)
/// over the six leg/environment cells of the antiphase measurements.
inline constexpr double kDefaultOmega = 3.0655070908877;

struct GaitProgram {
    double omega = kDefaultOmega;  // rad/s
    LrMode lr_mode = LrMode::Antiphase;
    double axial_offset = std::numbers::pi / 4.0;  // rad, retrograde
    double duration = 7.0;                         // s measured per trial

    bool operator==(const GaitProgram&) const = default;
};

/// Holds the parameters of both environments; `kind` selects the active one.
struct WorldModel {
    WorldKind kind = WorldKind::Land;
    double gravity = 9.81;
    // land
    double contact_stiffness = 2.0e4;  // N/m
    double contact_damping = 50.0;     // N*s/m
    double friction_mu = 0.8;
    double friction_slip_velocity = 0.05;  // m/s, Coulomb regularization width
    // water
    double fluid_density = 1000.0;
    double drag_coeff = 1.2;       // blade plate
    double hull_drag_coeff = 1.0;  // hull faces
    double water_level = 0.0;

    bool operator==(const WorldModel&) const = default;
};

struct ExperimentConfig {
    RobotModel robot;
    GaitProgram gait;
    WorldModel world;
    int trials = 5;
    unsigned long long seed = 1;
    double capture_rate = 120.0;   // Hz
    double dt = 1.0 / 1200.0;      // s
    double settle_time = 2.0;      // s simulated before measurement starts
    double marker_noise = 0.0;     // mm, standard deviation

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError naming the first violated invariant.
void validate(const ExperimentConfig& config);

}  // namespace centi
