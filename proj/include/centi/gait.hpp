#pragma once

#include <vector>

#include "centi/model.hpp"

namespace centi {

enum class Side { Left, Right };

/// Leg address. Flat numbering runs 1..2n front to rear, left before right:
/// segment k holds legs 2k+1 (left) and 2k+2 (right). Markers use the same ids.
struct LegIndex {
    int segment = 0;
    Side side = Side::Left;

    int flat() const { return 2 * segment + (side == Side::Left ? 1 : 2); }
    static LegIndex from_flat(int id) { return {(id - 1) / 2, (id - 1) % 2 == 0 ? Side::Left : Side::Right}; }

    bool operator==(const LegIndex&) const = default;
};

/// Initial phase per leg, indexed by flat id - 1, every entry in [0, 2pi).
using PhaseAssignment = std::vector<double>;

/// Wraps an angle into [0, 2pi).
double wrap_angle(double a);

/// Retrograde wave: each segment lags the one in front of it by
/// `axial_offset`, so touchdown (angle 0) travels front to rear. Right legs
/// match their left partner (in-phase) or lead it by pi (antiphase).
PhaseAssignment initial_phases(LrMode mode, double axial_offset, int n_segments = 8);

/// Commanded shaft angle (omega * t + phi) mod 2pi. Angle 0 is the leg
/// pointing straight down. Never depends on the environment.
double commanded_angle(double t, LegIndex leg, const GaitProgram& gait, int n_segments = 8);

/// The commanded angular velocity, identical for every leg.
inline double commanded_speed(const GaitProgram& gait) { return gait.omega; }

}  // namespace centi
