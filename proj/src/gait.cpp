#include "centi/gait.hpp"

#include <cmath>
#include <numbers>

namespace centi {

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(a, two_pi);
    if (w < 0.0) w += two_pi;
    // fmod of a tiny negative value can round up to exactly 2pi
    if (w >= two_pi) w = 0.0;
    return w;
}

PhaseAssignment initial_phases(LrMode mode, double axial_offset, int n_segments) {
    PhaseAssignment phases(static_cast<std::size_t>(2 * n_segments));
    for (int k = 0; k < n_segments; ++k) {
        const double left = wrap_angle(-static_cast<double>(k) * axial_offset);
        const double right = mode == LrMode::InPhase ? left : wrap_angle(left + std::numbers::pi);
        phases[static_cast<std::size_t>(LegIndex{k, Side::Left}.flat() - 1)] = left;
        phases[static_cast<std::size_t>(LegIndex{k, Side::Right}.flat() - 1)] = right;
    }
    return phases;
}

double commanded_angle(double t, LegIndex leg, const GaitProgram& gait, int n_segments) {
    const auto phases = initial_phases(gait.lr_mode, gait.axial_offset, n_segments);
    return wrap_angle(gait.omega * t + phases[static_cast<std::size_t>(leg.flat() - 1)]);
}

}  // namespace centi
