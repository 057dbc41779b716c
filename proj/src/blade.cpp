#include "centi/blade.hpp"

#include <cmath>

namespace centi {

namespace {

Vec3 link_dir(double psi) { return {-std::sin(psi), 0.0, -std::cos(psi)}; }
Vec3 link_normal(double psi) { return {-std::cos(psi), 0.0, std::sin(psi)}; }

std::vector<double> link_angles(std::size_t n, double angle, std::span<const double> deflection) {
    std::vector<double> psi(n);
    double acc = angle;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) acc += deflection[i];
        psi[i] = acc;
    }
    return psi;
}

}  // namespace

double hinge_stiffness(const LegSpec& spec, int hinge) {
    if (hinge <= 0) return std::numeric_limits<double>::infinity();
    return spec.flex_stiffness * std::pow(spec.flex_taper, hinge - 1);
}

double hinge_damping(const LegSpec& spec, int hinge) {
    if (hinge <= 0) return std::numeric_limits<double>::infinity();
    return spec.flex_damping * std::pow(spec.flex_taper, hinge - 1);
}

double hinge_lever(const LegSpec& spec, int hinge, int node) {
    const double link = spec.blade_length / spec.blade_nodes;
    return node >= hinge ? (node - hinge + 1) * link : 0.0;
}

BladeKinematics blade_kinematics(const LegSpec& spec, double angle, double speed,
                                 std::span<const double> deflection, std::span<const double> rate) {
    const auto n = static_cast<std::size_t>(spec.blade_nodes);
    const double link = spec.blade_length / spec.blade_nodes;
    const auto psi = link_angles(n, angle, deflection);

    BladeKinematics k;
    k.position.resize(n);
    k.velocity.resize(n);
    k.normal.resize(n);
    k.node_area = spec.planform_area() / spec.blade_nodes;

    Vec3 p = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    double psi_rate = speed;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) psi_rate += rate[i];
        p += link * link_dir(psi[i]);
        v += link * psi_rate * link_normal(psi[i]);
        k.position[i] = p;
        k.velocity[i] = v;
        k.normal[i] = link_normal(psi[i]);
    }
    return k;
}

BladeLoads blade_forces(const LegSpec& spec, double angle, std::span<const double> deflection,
                        std::span<const double> rate, std::span<const Vec3> node_force) {
    const auto n = static_cast<std::size_t>(spec.blade_nodes);
    const double link = spec.blade_length / spec.blade_nodes;
    const auto psi = link_angles(n, angle, deflection);

    BladeLoads loads;
    loads.hinge_env.assign(n, 0.0);
    loads.hinge_spring.assign(n, 0.0);

    // Q_m = sum_{i>=m} l n(psi_i) . S_i, with S_i the force on nodes i..N-1
    Vec3 outboard = Vec3::Zero();
    double q = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        outboard += node_force[i];
        q += link * link_normal(psi[i]).dot(outboard);
        loads.hinge_env[i] = q;
    }
    loads.shaft_torque = loads.hinge_env[0];
    loads.root_force = outboard;

    for (std::size_t i = 1; i < n; ++i) {
        const int h = static_cast<int>(i);
        loads.hinge_spring[i] = -hinge_stiffness(spec, h) * deflection[i] - hinge_damping(spec, h) * rate[i];
    }
    return loads;
}

void advance_hinges(const LegSpec& spec, const BladeLoads& loads, std::span<const double> env_stiffness,
                    std::span<const double> env_damping, double dt, std::span<double> deflection,
                    std::span<double> rate) {
    const auto n = static_cast<std::size_t>(spec.blade_nodes);
    for (std::size_t i = 1; i < n; ++i) {
        const int h = static_cast<int>(i);
        const double k = hinge_stiffness(spec, h);
        const double c = hinge_damping(spec, h);
        // c r + k (d + dt r) = Q - K dt r - C (r - r_old)
        const double denom = c + env_damping[i] + dt * (k + env_stiffness[i]);
        const double next_rate =
            denom > 0.0 ? (loads.hinge_env[i] + env_damping[i] * rate[i] - k * deflection[i]) / denom : 0.0;
        rate[i] = next_rate;
        deflection[i] += dt * next_rate;
    }
}

}  // namespace centi
