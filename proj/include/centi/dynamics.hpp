#pragma once

#include <vector>

#include "centi/blade.hpp"
#include "centi/forces.hpp"
#include "centi/gait.hpp"
#include "centi/model.hpp"
#include "centi/motor.hpp"

namespace centi {

struct SegmentState {
    Vec3 position = Vec3::Zero();  // center of mass, on the motor axis line
    Quat orientation = Quat::Identity();
    Vec3 velocity = Vec3::Zero();
    Vec3 angular_velocity = Vec3::Zero();  // world frame
};

struct LegState {
    MotorState motor;
    std::vector<double> deflection;       // blade_nodes entries, [0] stays 0
    std::vector<double> deflection_rate;
};

/// Segments are ordered front to rear; legs are indexed by flat id - 1.
struct RobotState {
    std::vector<SegmentState> segments;
    std::vector<LegState> legs;
    double time = 0.0;
};

/// Switches for isolating parts of the model in tests.
struct SimOptions {
    bool gravity = true;
    bool environment = true;  // ground contact / water forces
    bool motors = true;       // false: shafts free, no motor torque
};

struct EnergyBreakdown {
    double kinetic = 0.0;
    double gravity = 0.0;
    double elastic = 0.0;   // joints, anchors, blade hinges, contact penetration
    double buoyancy = 0.0;

    double total() const { return kinetic + gravity + elastic + buoyancy; }
};

/// State bounds beyond which step() throws DivergenceError.
struct DivergenceBounds {
    double position = 1.0e3;          // m
    double velocity = 1.0e2;          // m/s
    double angular_velocity = 1.0e3;  // rad/s, segments and rotors
    double deflection = 10.0;         // rad
};

/// Eight (n_segments) rigid boxes joined by compliant joints, each carrying
/// two servo-driven blade legs, advanced with a fixed-step symplectic scheme.
///
/// One Simulator per run: it holds only configuration, so step() is const and
/// independent runs can share nothing but the config.
class Simulator {
public:
    /// `joint_rest` holds one (roll, pitch, yaw) rest offset per joint, added
    /// to JointSpec::rest_angle; empty means no offsets.
    explicit Simulator(ExperimentConfig config, SimOptions options = {}, std::vector<Vec3> joint_rest = {});

    /// Straight chain along -x from the origin, rotated by `yaw` about z.
    /// Land: hub just above the reach of a vertical blade. Water: floating at
    /// the analytic draft. Shafts start at their gait phase.
    RobotState initial_state(double yaw = 0.0) const;

    /// Advances one dt with kick-drift-kick (velocity Verlet): symplectic,
    /// and exact for constant accelerations. Blade hinges take a linearly
    /// implicit step. Throws DivergenceError when bounds are exceeded.
    void step(RobotState& state) const;

    EnergyBreakdown mechanical_energy(const RobotState& state) const;
    Vec3 linear_momentum(const RobotState& state) const;
    Vec3 center_of_mass(const RobotState& state) const;

    /// World-frame blade nodes of leg `leg_id` (1-based).
    std::vector<ContactNode> blade_nodes(const RobotState& state, int leg_id) const;
    /// World position (m) of marker `marker_id` (1-based, same numbering as legs).
    Vec3 marker_position(const RobotState& state, int marker_id) const;
    /// Hub position in the segment frame for leg `leg_id`.
    Vec3 hub_offset(int leg_id) const;

    const ExperimentConfig& config() const { return config_; }
    const SimOptions& options() const { return options_; }
    const DivergenceBounds& bounds() const { return bounds_; }

    /// Largest squared natural frequency among the model's springs
    /// (contact, anchors, joints) acting on a segment or rotor; sets the scale
    /// of the per-step energy error of the integrator.
    double max_rate_squared() const;

private:
    struct Loads;

    Loads evaluate(const RobotState& state) const;
    void kick(RobotState& state, const Loads& loads, double h) const;
    void drift(RobotState& state, double dt) const;
    void check(const RobotState& state) const;

    ExperimentConfig config_;
    SimOptions options_;
    std::vector<Vec3> joint_rest_;
    PhaseAssignment phases_;
    DivergenceBounds bounds_;
    Vec3 inertia_;  // principal moments of a segment
};

/// Single-step convenience wrapper: runs `gait` under `config`.
RobotState step(const RobotState& state, const ExperimentConfig& config, const GaitProgram& gait);

}  // namespace centi
