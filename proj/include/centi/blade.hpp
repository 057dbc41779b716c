#pragma once

#include <limits>
#include <span>
#include <vector>

#include "centi/forces.hpp"

namespace centi {

// Pseudo-rigid-body leg blade, expressed in the segment frame relative to the
// motor hub. The blade has N = blade_nodes equal links and one node at the
// outer end of each link. Link i is inclined at psi_i = angle + sum_{m<=i} d_m
// where d_m is the deflection of hinge m at the inner end of link m. Hinge 0
// sits on the shaft and is rigid (d_0 == 0); hinges 1..N-1 are compliant.
// Direction of a link: u(psi) = (-sin psi, 0, -cos psi), so angle 0 points
// straight down and increasing angle sweeps the lowest point backwards (-x).

/// Stiffness of hinge `hinge`: infinite for the shaft hinge, otherwise
/// flex_stiffness * flex_taper^(hinge - 1).
double hinge_stiffness(const LegSpec& spec, int hinge);
double hinge_damping(const LegSpec& spec, int hinge);

struct BladeKinematics {
    std::vector<Vec3> position;  // node positions relative to the hub
    std::vector<Vec3> velocity;  // relative to the segment
    std::vector<Vec3> normal;    // plate normal at each node
    double node_area = 0.0;      // planform area / N
};

BladeKinematics blade_kinematics(const LegSpec& spec, double angle, double speed,
                                 std::span<const double> deflection, std::span<const double> rate);

struct BladeLoads {
    /// Generalized force of the environment on the shaft angle; for a single
    /// node this is (r x F) about the shaft axis.
    double shaft_torque = 0.0;
    /// Generalized environment force on each hinge (entry 0 equals shaft_torque).
    std::vector<double> hinge_env;
    /// Spring-damper torque -k d - c d' of each compliant hinge (entry 0 is 0).
    std::vector<double> hinge_spring;
    /// Net force the blade transmits to the hub.
    Vec3 root_force = Vec3::Zero();
};

/// Propagates node forces (segment frame) to the shaft and hinges.
BladeLoads blade_forces(const LegSpec& spec, double angle, std::span<const double> deflection,
                        std::span<const double> rate, std::span<const Vec3> node_force);

/// Advances the massless hinges one step with a linearly implicit update of
///   c d' + k d = Q_env,
/// where `env_stiffness[i]`/`env_damping[i]` are the environment's
/// linearized stiffness/damping at hinge i, keeping stiff contacts stable.
void advance_hinges(const LegSpec& spec, const BladeLoads& loads, std::span<const double> env_stiffness,
                    std::span<const double> env_damping, double dt, std::span<double> deflection,
                    std::span<double> rate);

/// Lever length from hinge `hinge` to node `node` along an undeflected blade.
double hinge_lever(const LegSpec& spec, int hinge, int node);

}  // namespace centi
