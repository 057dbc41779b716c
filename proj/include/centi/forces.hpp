#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "centi/model.hpp"

namespace centi {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;
using Mat3 = Eigen::Matrix3d;

/// A point of a leg blade (or of the hull) that interacts with the world.
struct ContactNode {
    Vec3 position = Vec3::Zero();  // world, m
    Vec3 velocity = Vec3::Zero();  // world, m/s
    Vec3 normal = Vec3::UnitX();   // unit normal of the blade plate (world)
    int leg = -1;                  // flat leg id, -1 for hull points
    int station = 0;               // node index along the blade
    double area = 0.0;             // m^2
};

/// Penalty contact with the plane z = 0. Normal: k*depth + c*max(0, -vz),
/// only while penetrating. Tangential: Coulomb friction opposing the slip
/// velocity, capped at mu*N; below `friction_slip_velocity` it scales
/// linearly with slip so the force stays continuous at rest.
Vec3 ground_contact_force(const ContactNode& node, const WorldModel& land);

/// Quadratic plate drag in still water: -1/2 rho Cd A |n.v| v, i.e. drag on
/// the area projected normal to the motion. Zero above the surface.
Vec3 hydro_force(const ContactNode& node, const WorldModel& water);

struct Buoyancy {
    Vec3 force = Vec3::Zero();
    Vec3 point = Vec3::Zero();  // centroid of the submerged volume (world)
    double submerged_volume = 0.0;
};

/// Buoyancy of one segment's float, modeled as a box slab of footprint
/// segment_length x segment_width and height float_height() whose bottom sits
/// belly_offset below the segment origin. The footprint is split into 3x3
/// columns so tilt produces restoring torques.
Buoyancy buoyancy_force(const Vec3& position, const Quat& orientation, const WorldModel& water,
                        const RobotModel& robot);

/// Potential energy of the buoyant force (zero when dry), consistent with
/// buoyancy_force: its negative z-gradient is the buoyant force.
double buoyancy_potential(const Vec3& position, const Quat& orientation, const WorldModel& water,
                          const RobotModel& robot);

struct Wrench {
    Vec3 force = Vec3::Zero();
    Vec3 torque = Vec3::Zero();  // about the segment origin
};

/// Quadratic drag on the submerged part of the hull, per body axis.
Wrench hull_drag(const Vec3& position, const Quat& orientation, const Vec3& velocity,
                 const Vec3& angular_velocity, const WorldModel& water, const RobotModel& robot);

/// Spring-damper law per axis (x = roll, y = pitch, z = yaw):
/// tau = -k (theta - rest) - c theta_dot.
Vec3 joint_torques(const Vec3& angle, const Vec3& rate, const JointSpec& joint, const Vec3& rest);

}  // namespace centi
