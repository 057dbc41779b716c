#include "centi/motor.hpp"

#include <algorithm>
#include <cmath>

namespace centi {

double control_torque(const MotorSpec& spec, const MotorState& motor, double target_speed) {
    const double raw = spec.kp * (target_speed - motor.speed) + spec.ki * motor.integral;
    return std::clamp(raw, -spec.torque_limit, spec.torque_limit);
}

double motor_current(const MotorSpec& spec, double torque) {
    return spec.idle_current + std::abs(torque) / spec.torque_constant;
}

double next_integral(const MotorSpec& spec, const MotorState& motor, double target_speed, double dt) {
    const double error = target_speed - motor.speed;
    const double raw = spec.kp * error + spec.ki * motor.integral;
    const bool saturated = std::abs(raw) >= spec.torque_limit;
    if (saturated && (error > 0.0) == (raw > 0.0)) return motor.integral;
    return motor.integral + dt * error;
}

MotorState motor_step(const MotorSpec& spec, const MotorState& motor, double load_torque, double target_speed,
                      double dt) {
    MotorState next = motor;
    next.torque = control_torque(spec, motor, target_speed);
    next.integral = next_integral(spec, motor, target_speed, dt);
    next.speed = motor.speed + dt * (next.torque - load_torque - spec.viscous_friction * motor.speed) / spec.rotor_inertia;
    next.angle = motor.angle + dt * next.speed;
    next.current = motor_current(spec, next.torque);
    next.voltage = spec.supply_voltage;
    return next;
}

}  // namespace centi
