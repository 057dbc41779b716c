#include "centi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "centi/errors.hpp"

namespace centi {

struct Simulator::Loads {
    std::vector<Vec3> force;   // per segment, world
    std::vector<Vec3> torque;  // per segment, world, about the segment origin
    std::vector<double> rotor;         // net torque on each rotor
    std::vector<double> motor_torque;  // motor share of it
    std::vector<BladeLoads> blade;
    std::vector<std::vector<double>> env_stiffness;  // per leg, per hinge
    std::vector<std::vector<double>> env_damping;
};

namespace {

Vec3 rotation_vector(const Quat& q) {
    const Eigen::AngleAxisd aa(q);
    return aa.angle() * aa.axis();
}

Quat integrate_orientation(const Quat& q, const Vec3& omega, double dt) {
    const double angle = omega.norm() * dt;
    if (angle == 0.0) return q;
    Quat next = Quat(Eigen::AngleAxisd(angle, omega.normalized())) * q;
    next.normalize();
    return next;
}

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

Simulator::Simulator(ExperimentConfig config, SimOptions options, std::vector<Vec3> joint_rest)
    : config_(std::move(config)), options_(options), joint_rest_(std::move(joint_rest)) {
    validate(config_);
    const auto& robot = config_.robot;
    joint_rest_.resize(static_cast<std::size_t>(robot.n_segments - 1), Vec3::Zero());
    for (auto& r : joint_rest_) r += Vec3::Constant(robot.joint.rest_angle);
    phases_ = initial_phases(config_.gait.lr_mode, config_.gait.axial_offset, robot.n_segments);
    inertia_ = Vec3(robot.inertia_xx(), robot.inertia_yy(), robot.inertia_zz());
}

Vec3 Simulator::hub_offset(int leg_id) const {
    const auto leg = LegIndex::from_flat(leg_id);
    const double y = leg.side == Side::Left ? config_.robot.hub_lateral : -config_.robot.hub_lateral;
    return {0.0, y, 0.0};
}

RobotState Simulator::initial_state(double yaw) const {
    const auto& robot = config_.robot;
    const auto& world = config_.world;

    double z = robot.leg.blade_length + 0.002;
    if (world.kind == WorldKind::Water && options_.environment) {
        const double footprint = robot.segment_length * robot.segment_width;
        const double draft = std::min(robot.float_height(),
                                      robot.total_mass / (world.fluid_density * robot.n_segments * footprint));
        z = world.water_level - draft + robot.belly_offset;
    }

    const Quat heading(Eigen::AngleAxisd(yaw, Vec3::UnitZ()));
    RobotState s;
    s.segments.resize(static_cast<std::size_t>(robot.n_segments));
    for (int k = 0; k < robot.n_segments; ++k) {
        auto& seg = s.segments[static_cast<std::size_t>(k)];
        seg.position = heading * Vec3(-k * robot.segment_length, 0.0, z);
        seg.orientation = heading;
    }
    s.legs.resize(static_cast<std::size_t>(robot.n_legs));
    for (int id = 1; id <= robot.n_legs; ++id) {
        auto& leg = s.legs[static_cast<std::size_t>(id - 1)];
        leg.motor.angle = phases_[static_cast<std::size_t>(id - 1)];
        leg.motor.speed = options_.motors ? config_.gait.omega : 0.0;
        leg.motor.voltage = robot.motor.supply_voltage;
        leg.motor.current = robot.motor.idle_current;
        leg.deflection.assign(static_cast<std::size_t>(robot.leg.blade_nodes), 0.0);
        leg.deflection_rate.assign(static_cast<std::size_t>(robot.leg.blade_nodes), 0.0);
    }
    return s;
}

std::vector<ContactNode> Simulator::blade_nodes(const RobotState& state, int leg_id) const {
    const auto& spec = config_.robot.leg;
    const auto& leg = state.legs[static_cast<std::size_t>(leg_id - 1)];
    const auto& seg = state.segments[static_cast<std::size_t>(LegIndex::from_flat(leg_id).segment)];
    const Mat3 R = seg.orientation.toRotationMatrix();
    const auto kin = blade_kinematics(spec, leg.motor.angle, leg.motor.speed, leg.deflection, leg.deflection_rate);
    const Vec3 hub = hub_offset(leg_id);

    std::vector<ContactNode> nodes(kin.position.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const Vec3 r = R * (hub + kin.position[j]);
        nodes[j].position = seg.position + r;
        nodes[j].velocity = seg.velocity + seg.angular_velocity.cross(r) + R * kin.velocity[j];
        nodes[j].normal = R * kin.normal[j];
        nodes[j].leg = leg_id;
        nodes[j].station = static_cast<int>(j);
        nodes[j].area = kin.node_area;
    }
    return nodes;
}

Vec3 Simulator::marker_position(const RobotState& state, int marker_id) const {
    const auto leg = LegIndex::from_flat(marker_id);
    const auto& seg = state.segments[static_cast<std::size_t>(leg.segment)];
    const double y = leg.side == Side::Left ? config_.robot.marker_lateral : -config_.robot.marker_lateral;
    return seg.position + seg.orientation * Vec3(0.0, y, config_.robot.marker_height);
}

Simulator::Loads Simulator::evaluate(const RobotState& state) const {
    const auto& robot = config_.robot;
    const auto& world = config_.world;
    const auto& spec = robot.leg;
    const auto n_seg = state.segments.size();
    const auto n_legs = state.legs.size();
    const auto n_nodes = static_cast<std::size_t>(spec.blade_nodes);
    const double mass = robot.segment_mass();
    const bool land = options_.environment && world.kind == WorldKind::Land;
    const bool water = options_.environment && world.kind == WorldKind::Water;

    Loads L;
    L.force.assign(n_seg, Vec3::Zero());
    L.torque.assign(n_seg, Vec3::Zero());
    L.rotor.assign(n_legs, 0.0);
    L.motor_torque.assign(n_legs, 0.0);
    L.blade.resize(n_legs);
    L.env_stiffness.assign(n_legs, std::vector<double>(n_nodes, 0.0));
    L.env_damping.assign(n_legs, std::vector<double>(n_nodes, 0.0));

    std::vector<Mat3> rot(n_seg);
    for (std::size_t k = 0; k < n_seg; ++k) rot[k] = state.segments[k].orientation.toRotationMatrix();

    // gravity, hull
    for (std::size_t k = 0; k < n_seg; ++k) {
        const auto& seg = state.segments[k];
        if (options_.gravity) L.force[k].z() -= mass * world.gravity;
        if (land) {
            for (double sx : {-0.5, 0.5})
                for (double sy : {-1.0, 1.0}) {
                    const Vec3 r = rot[k] * Vec3(sx * robot.segment_length, sy * robot.hub_lateral, -robot.belly_offset);
                    ContactNode node;
                    node.position = seg.position + r;
                    node.velocity = seg.velocity + seg.angular_velocity.cross(r);
                    const Vec3 f = ground_contact_force(node, world);
                    L.force[k] += f;
                    L.torque[k] += r.cross(f);
                }
        }
        if (water) {
            const auto b = buoyancy_force(seg.position, seg.orientation, world, robot);
            L.force[k] += b.force;
            L.torque[k] += (b.point - seg.position).cross(b.force);
            const auto d = hull_drag(seg.position, seg.orientation, seg.velocity, seg.angular_velocity, world, robot);
            L.force[k] += d.force;
            L.torque[k] += d.torque;
        }
    }

    // joints between segment k (front) and k + 1 (rear)
    const Vec3 front_anchor(-0.5 * robot.segment_length, 0.0, 0.0);
    const Vec3 rear_anchor(0.5 * robot.segment_length, 0.0, 0.0);
    for (std::size_t k = 0; k + 1 < n_seg; ++k) {
        const auto& a = state.segments[k];
        const auto& b = state.segments[k + 1];
        const Vec3 ra = rot[k] * front_anchor;
        const Vec3 rb = rot[k + 1] * rear_anchor;
        const Vec3 gap = (b.position + rb) - (a.position + ra);
        const Vec3 gap_rate = (b.velocity + b.angular_velocity.cross(rb)) - (a.velocity + a.angular_velocity.cross(ra));
        const Vec3 f = robot.joint.anchor_stiffness * gap + robot.joint.anchor_damping * gap_rate;
        L.force[k] += f;
        L.torque[k] += ra.cross(f);
        L.force[k + 1] -= f;
        L.torque[k + 1] -= rb.cross(f);

        const Vec3 angle = rotation_vector(a.orientation.conjugate() * b.orientation);
        const Vec3 rate = rot[k].transpose() * (b.angular_velocity - a.angular_velocity);
        const Vec3 tau = rot[k] * joint_torques(angle, rate, robot.joint, joint_rest_[k]);
        L.torque[k + 1] += tau;
        L.torque[k] -= tau;
    }

    // legs
    std::vector<Vec3> local_force(n_nodes);
    std::vector<double> node_k(n_nodes), node_c(n_nodes);
    for (std::size_t i = 0; i < n_legs; ++i) {
        const int id = static_cast<int>(i) + 1;
        const auto k = static_cast<std::size_t>(LegIndex::from_flat(id).segment);
        const auto& seg = state.segments[k];
        const auto& leg = state.legs[i];

        if (options_.environment) {
            const auto nodes = blade_nodes(state, id);
            for (std::size_t j = 0; j < n_nodes; ++j) {
                const auto& node = nodes[j];
                Vec3 f = Vec3::Zero();
                node_k[j] = 0.0;
                node_c[j] = 0.0;
                if (land && node.position.z() < 0.0) {
                    f = ground_contact_force(node, world);
                    const double slip = std::hypot(node.velocity.x(), node.velocity.y());
                    node_k[j] = world.contact_stiffness;
                    node_c[j] = (node.velocity.z() < 0.0 ? world.contact_damping : 0.0) +
                                world.friction_mu * f.z() / std::max(slip, world.friction_slip_velocity);
                } else if (water && node.position.z() <= world.water_level) {
                    f = hydro_force(node, world);
                    node_c[j] = world.fluid_density * world.drag_coeff * node.area *
                                std::abs(node.normal.dot(node.velocity));
                }
                L.force[k] += f;
                L.torque[k] += (node.position - seg.position).cross(f);
                local_force[j] = rot[k].transpose() * f;
            }
        } else {
            std::fill(local_force.begin(), local_force.end(), Vec3::Zero());
            std::fill(node_k.begin(), node_k.end(), 0.0);
            std::fill(node_c.begin(), node_c.end(), 0.0);
        }

        L.blade[i] = blade_forces(spec, leg.motor.angle, leg.deflection, leg.deflection_rate, local_force);
        for (std::size_t h = 1; h < n_nodes; ++h)
            for (std::size_t j = h; j < n_nodes; ++j) {
                const double lever = hinge_lever(spec, static_cast<int>(h), static_cast<int>(j));
                L.env_stiffness[i][h] += node_k[j] * lever * lever;
                L.env_damping[i][h] += node_c[j] * lever * lever;
            }

        const double motor = options_.motors ? control_torque(robot.motor, leg.motor, config_.gait.omega) : 0.0;
        L.motor_torque[i] = motor;
        L.rotor[i] = motor + L.blade[i].shaft_torque - robot.motor.viscous_friction * leg.motor.speed;
    }
    return L;
}

void Simulator::kick(RobotState& state, const Loads& loads, double h) const {
    const double mass = config_.robot.segment_mass();
    for (std::size_t k = 0; k < state.segments.size(); ++k) {
        auto& seg = state.segments[k];
        const Mat3 R = seg.orientation.toRotationMatrix();
        const Mat3 inertia = R * inertia_.asDiagonal() * R.transpose();
        const Mat3 inv_inertia = R * inertia_.cwiseInverse().asDiagonal() * R.transpose();
        seg.velocity += h * loads.force[k] / mass;
        const Vec3 gyro = seg.angular_velocity.cross(inertia * seg.angular_velocity);
        seg.angular_velocity += h * (inv_inertia * (loads.torque[k] - gyro));
    }
    for (std::size_t i = 0; i < state.legs.size(); ++i)
        state.legs[i].motor.speed += h * loads.rotor[i] / config_.robot.motor.rotor_inertia;
}

void Simulator::drift(RobotState& state, double dt) const {
    for (auto& seg : state.segments) {
        seg.position += dt * seg.velocity;
        seg.orientation = integrate_orientation(seg.orientation, seg.angular_velocity, dt);
    }
    for (auto& leg : state.legs) leg.motor.angle += dt * leg.motor.speed;
}

void Simulator::check(const RobotState& state) const {
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << "simulation diverged at t=" << state.time << " s: " << what;
        throw DivergenceError(os.str());
    };
    for (std::size_t k = 0; k < state.segments.size(); ++k) {
        const auto& seg = state.segments[k];
        const auto tag = " of segment " + std::to_string(k);
        if (!finite(seg.position) || seg.position.norm() > bounds_.position) fail("position" + tag);
        if (!finite(seg.velocity) || seg.velocity.norm() > bounds_.velocity) fail("velocity" + tag);
        if (!finite(seg.angular_velocity) || seg.angular_velocity.norm() > bounds_.angular_velocity)
            fail("angular velocity" + tag);
        if (!seg.orientation.coeffs().allFinite()) fail("orientation" + tag);
    }
    for (std::size_t i = 0; i < state.legs.size(); ++i) {
        const auto& leg = state.legs[i];
        const auto tag = " of leg " + std::to_string(i + 1);
        if (!std::isfinite(leg.motor.speed) || std::abs(leg.motor.speed) > bounds_.angular_velocity)
            fail("rotor speed" + tag);
        if (!std::isfinite(leg.motor.angle)) fail("rotor angle" + tag);
        for (double d : leg.deflection)
            if (!std::isfinite(d) || std::abs(d) > bounds_.deflection) fail("blade deflection" + tag);
    }
}

void Simulator::step(RobotState& state) const {
    const double dt = config_.dt;
    const auto& motor = config_.robot.motor;

    kick(state, evaluate(state), 0.5 * dt);
    drift(state, dt);
    if (options_.motors)
        for (auto& leg : state.legs) leg.motor.integral = next_integral(motor, leg.motor, config_.gait.omega, dt);

    const auto loads = evaluate(state);
    for (std::size_t i = 0; i < state.legs.size(); ++i) {
        auto& leg = state.legs[i];
        advance_hinges(config_.robot.leg, loads.blade[i], loads.env_stiffness[i], loads.env_damping[i], dt,
                       leg.deflection, leg.deflection_rate);
    }
    kick(state, loads, 0.5 * dt);

    for (std::size_t i = 0; i < state.legs.size(); ++i) {
        auto& m = state.legs[i].motor;
        m.torque = loads.motor_torque[i];
        m.current = options_.motors ? motor_current(motor, m.torque) : motor.idle_current;
        m.voltage = motor.supply_voltage;
    }
    state.time += dt;
    check(state);
}

EnergyBreakdown Simulator::mechanical_energy(const RobotState& state) const {
    const auto& robot = config_.robot;
    const auto& world = config_.world;
    const double mass = robot.segment_mass();
    EnergyBreakdown e;

    for (const auto& seg : state.segments) {
        const Mat3 R = seg.orientation.toRotationMatrix();
        const Mat3 inertia = R * inertia_.asDiagonal() * R.transpose();
        e.kinetic += 0.5 * mass * seg.velocity.squaredNorm();
        e.kinetic += 0.5 * seg.angular_velocity.dot(inertia * seg.angular_velocity);
        if (options_.gravity) e.gravity += mass * world.gravity * seg.position.z();
    }
    for (const auto& leg : state.legs) {
        e.kinetic += 0.5 * robot.motor.rotor_inertia * leg.motor.speed * leg.motor.speed;
        for (std::size_t h = 1; h < leg.deflection.size(); ++h)
            e.elastic += 0.5 * hinge_stiffness(robot.leg, static_cast<int>(h)) * leg.deflection[h] * leg.deflection[h];
    }

    const Vec3 front_anchor(-0.5 * robot.segment_length, 0.0, 0.0);
    const Vec3 rear_anchor(0.5 * robot.segment_length, 0.0, 0.0);
    const Vec3 k_rot(robot.joint.stiffness_roll, robot.joint.stiffness_pitch, robot.joint.stiffness_yaw);
    for (std::size_t k = 0; k + 1 < state.segments.size(); ++k) {
        const auto& a = state.segments[k];
        const auto& b = state.segments[k + 1];
        const Vec3 gap = (b.position + b.orientation * rear_anchor) - (a.position + a.orientation * front_anchor);
        e.elastic += 0.5 * robot.joint.anchor_stiffness * gap.squaredNorm();
        const Vec3 angle = rotation_vector(a.orientation.conjugate() * b.orientation) - joint_rest_[k];
        e.elastic += 0.5 * k_rot.dot(angle.cwiseProduct(angle));
    }

    if (options_.environment && world.kind == WorldKind::Land) {
        auto penetration = [&](double z) {
            if (z < 0.0) e.elastic += 0.5 * world.contact_stiffness * z * z;
        };
        for (int id = 1; id <= robot.n_legs; ++id)
            for (const auto& node : blade_nodes(state, id)) penetration(node.position.z());
        for (const auto& seg : state.segments)
            for (double sx : {-0.5, 0.5})
                for (double sy : {-1.0, 1.0})
                    penetration((seg.position + seg.orientation * Vec3(sx * robot.segment_length,
                                                                       sy * robot.hub_lateral, -robot.belly_offset))
                                    .z());
    }
    if (options_.environment && world.kind == WorldKind::Water)
        for (const auto& seg : state.segments)
            e.buoyancy += buoyancy_potential(seg.position, seg.orientation, world, robot);
    return e;
}

Vec3 Simulator::linear_momentum(const RobotState& state) const {
    Vec3 p = Vec3::Zero();
    for (const auto& seg : state.segments) p += config_.robot.segment_mass() * seg.velocity;
    return p;
}

Vec3 Simulator::center_of_mass(const RobotState& state) const {
    Vec3 c = Vec3::Zero();
    for (const auto& seg : state.segments) c += seg.position;
    return c / static_cast<double>(state.segments.size());
}

double Simulator::max_rate_squared() const {
    const auto& robot = config_.robot;
    const double mass = robot.segment_mass();
    const double min_inertia = inertia_.minCoeff();
    const double reach = std::hypot(robot.hub_lateral, robot.leg.blade_length) + 0.5 * robot.segment_length;
    const double k_contact = options_.environment ? config_.world.contact_stiffness : 0.0;
    const double k_anchor = robot.joint.anchor_stiffness;
    const double k_rot = std::max({robot.joint.stiffness_roll, robot.joint.stiffness_pitch, robot.joint.stiffness_yaw});
    const double lever = robot.leg.blade_length;
    return std::max({2.0 * k_anchor / mass, k_contact / mass,
                     (k_contact * reach * reach + 2.0 * k_anchor * 0.25 * robot.segment_length * robot.segment_length +
                      2.0 * k_rot) / min_inertia,
                     k_contact * lever * lever / robot.motor.rotor_inertia});
}

RobotState step(const RobotState& state, const ExperimentConfig& config, const GaitProgram& gait) {
    ExperimentConfig c = config;
    c.gait = gait;
    RobotState next = state;
    Simulator(std::move(c)).step(next);
    return next;
}

}  // namespace centi
