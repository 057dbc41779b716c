#pragma once

#include "centi/model.hpp"

namespace centi {

/// Velocity-controlled servo. `integral` accumulates the speed error, which
/// equals the lag of the shaft behind its commanded angle.
struct MotorState {
    double angle = 0.0;     // rad, unwrapped, relative to the segment
    double speed = 0.0;     // rad/s
    double torque = 0.0;    // N*m applied by the motor
    double current = 0.0;   // A
    double voltage = 0.0;   // V
    double integral = 0.0;  // rad

    bool operator==(const MotorState&) const = default;
};

/// Saturated PI torque for the given speed target.
double control_torque(const MotorSpec& spec, const MotorState& motor, double target_speed);

/// Idle current plus the torque-producing current.
double motor_current(const MotorSpec& spec, double torque);

/// Integrator update with anti-windup: the error is not accumulated while the
/// output is saturated in the direction the error pushes.
double next_integral(const MotorSpec& spec, const MotorState& motor, double target_speed, double dt);

/// One semi-implicit Euler step of an isolated rotor:
///   J speed' = torque - load_torque - b speed.
/// `load_torque` opposes positive rotation.
MotorState motor_step(const MotorSpec& spec, const MotorState& motor, double load_torque, double target_speed,
                      double dt);

}  // namespace centi
