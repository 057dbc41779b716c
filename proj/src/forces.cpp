#include "centi/forces.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace centi {

Vec3 ground_contact_force(const ContactNode& node, const WorldModel& land) {
    const double depth = -node.position.z();
    if (depth <= 0.0) return Vec3::Zero();

    const double approach = std::max(0.0, -node.velocity.z());
    const double normal = land.contact_stiffness * depth + land.contact_damping * approach;

    const Vec3 slip(node.velocity.x(), node.velocity.y(), 0.0);
    const double speed = slip.norm();
    Vec3 tangential = Vec3::Zero();
    if (speed > 0.0) {
        const double scale = land.friction_mu * normal / std::max(speed, land.friction_slip_velocity);
        tangential = -scale * slip;
    }
    return tangential + Vec3(0.0, 0.0, normal);
}

Vec3 hydro_force(const ContactNode& node, const WorldModel& water) {
    if (node.position.z() > water.water_level) return Vec3::Zero();
    const double normal_speed = std::abs(node.normal.dot(node.velocity));
    return -0.5 * water.fluid_density * water.drag_coeff * node.area * normal_speed * node.velocity;
}

namespace {

struct Column {
    Vec3 bottom;  // world position of the column's bottom center
    double area;
};

std::array<Column, 9> float_columns(const Vec3& position, const Quat& orientation, const RobotModel& robot) {
    std::array<Column, 9> cols{};
    const double cell_l = robot.segment_length / 3.0;
    const double cell_w = robot.segment_width / 3.0;
    const Mat3 R = orientation.toRotationMatrix();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vec3 local((i - 1) * cell_l, (j - 1) * cell_w, -robot.belly_offset);
            cols[static_cast<std::size_t>(3 * i + j)] = {position + R * local, cell_l * cell_w};
        }
    return cols;
}

}  // namespace

Buoyancy buoyancy_force(const Vec3& position, const Quat& orientation, const WorldModel& water,
                        const RobotModel& robot) {
    Buoyancy b;
    const double h = robot.float_height();
    Vec3 moment = Vec3::Zero();
    for (const auto& c : float_columns(position, orientation, robot)) {
        const double d = std::clamp(water.water_level - c.bottom.z(), 0.0, h);
        if (d <= 0.0) continue;
        const double v = c.area * d;
        b.submerged_volume += v;
        moment += v * (c.bottom + Vec3(0.0, 0.0, 0.5 * d));
    }
    if (b.submerged_volume > 0.0) {
        b.point = moment / b.submerged_volume;
        b.force = Vec3(0.0, 0.0, water.fluid_density * water.gravity * b.submerged_volume);
    } else {
        b.point = position;
    }
    return b;
}

double buoyancy_potential(const Vec3& position, const Quat& orientation, const WorldModel& water,
                          const RobotModel& robot) {
    const double h = robot.float_height();
    double u = 0.0;
    for (const auto& c : float_columns(position, orientation, robot)) {
        const double d = water.water_level - c.bottom.z();
        double g = 0.0;
        if (d > h)
            g = 0.5 * h * h + h * (d - h);
        else if (d > 0.0)
            g = 0.5 * d * d;
        u += water.fluid_density * water.gravity * c.area * g;
    }
    return u;
}

Wrench hull_drag(const Vec3& position, const Quat& orientation, const Vec3& velocity,
                 const Vec3& angular_velocity, const WorldModel& water, const RobotModel& robot) {
    Wrench w;
    const double h = robot.float_height();
    const Mat3 R = orientation.toRotationMatrix();
    const double k = 0.5 * water.fluid_density * water.hull_drag_coeff;
    for (const auto& c : float_columns(position, orientation, robot)) {
        const double d = std::clamp(water.water_level - c.bottom.z(), 0.0, h);
        if (d <= 0.0) continue;
        const Vec3 point = c.bottom + Vec3(0.0, 0.0, 0.5 * d);
        const Vec3 r = point - position;
        const Vec3 v_body = R.transpose() * (velocity + angular_velocity.cross(r));
        // frontal, side and bottom faces of this column
        const Vec3 area(robot.segment_width / 3.0 * d, robot.segment_length / 3.0 * d, c.area);
        Vec3 f_body;
        for (int a = 0; a < 3; ++a) f_body[a] = -k * area[a] * std::abs(v_body[a]) * v_body[a];
        const Vec3 f = R * f_body;
        w.force += f;
        w.torque += r.cross(f);
    }
    return w;
}

Vec3 joint_torques(const Vec3& angle, const Vec3& rate, const JointSpec& joint, const Vec3& rest) {
    const Vec3 k(joint.stiffness_roll, joint.stiffness_pitch, joint.stiffness_yaw);
    const Vec3 c(joint.damping_roll, joint.damping_pitch, joint.damping_yaw);
    return -(k.cwiseProduct(angle - rest)) - c.cwiseProduct(rate);
}

}  // namespace centi
