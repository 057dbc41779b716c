#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "centi/gait.hpp"

using namespace centi;

namespace {
constexpr double kPi = std::numbers::pi;

double angular_gap(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}
}  // namespace

TEST(Gait, FlatIndexIsABijection) {
    for (int id = 1; id <= 16; ++id) EXPECT_EQ(LegIndex::from_flat(id).flat(), id);
    EXPECT_EQ((LegIndex{0, Side::Left}.flat()), 1);
    EXPECT_EQ((LegIndex{0, Side::Right}.flat()), 2);
    EXPECT_EQ((LegIndex{7, Side::Right}.flat()), 16);
}

TEST(Gait, InPhaseQuarterOffset) {
    const auto p = initial_phases(LrMode::InPhase, kPi / 4);
    ASSERT_EQ(p.size(), 16u);
    EXPECT_EQ(p[0], p[1]);
    EXPECT_NEAR(angular_gap(p[0] - p[2], kPi / 4), 0.0, 1e-12);  // segment 1 lags segment 0
}

TEST(Gait, AntiphasePartnersDifferByPi) {
    const auto p = initial_phases(LrMode::Antiphase, kPi / 4);
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(angular_gap(p[2 * k + 1] - p[2 * k], kPi), 0.0, 1e-12);
}

TEST(Gait, ZeroOffsetInPhaseIsUniform) {
    for (double v : initial_phases(LrMode::InPhase, 0.0)) EXPECT_EQ(v, 0.0);
}

TEST(Gait, PhasesStayInRangeAndLagRearward) {
    for (double offset = 0.0; offset < 2.0 * kPi; offset += 0.37)
        for (auto mode : {LrMode::InPhase, LrMode::Antiphase}) {
            const auto p = initial_phases(mode, offset);
            for (double v : p) {
                EXPECT_GE(v, 0.0);
                EXPECT_LT(v, 2.0 * kPi);
            }
            for (int k = 0; k + 1 < 8; ++k) EXPECT_NEAR(angular_gap(p[2 * k] - p[2 * k + 2], offset), 0.0, 1e-9);
        }
}

TEST(Gait, CommandedAngleExamples) {
    GaitProgram g;
    g.omega = 3.063;
    const auto phases = initial_phases(g.lr_mode, g.axial_offset);
    for (int id = 1; id <= 16; ++id) {
        const auto leg = LegIndex::from_flat(id);
        const double phi = phases[static_cast<std::size_t>(id - 1)];
        EXPECT_NEAR(commanded_angle(0.0, leg, g), phi, 1e-12);
        EXPECT_NEAR(angular_gap(commanded_angle(2.0 * kPi / g.omega, leg, g), phi), 0.0, 1e-9);
        // 3.063 * 7 = 21.441; 21.441 mod 2pi = 2.5914440784612403
        EXPECT_NEAR(angular_gap(commanded_angle(7.0, leg, g), 2.5914440784612403 + phi), 0.0, 1e-9);
    }
    EXPECT_EQ(commanded_speed(g), g.omega);
}

TEST(Gait, WrapAngleRange) {
    EXPECT_EQ(wrap_angle(0.0), 0.0);
    EXPECT_NEAR(wrap_angle(-0.5), 2.0 * kPi - 0.5, 1e-15);
    EXPECT_LT(wrap_angle(2.0 * kPi), 2.0 * kPi);
    EXPECT_GE(wrap_angle(-1e-300), 0.0);
    EXPECT_LT(wrap_angle(-1e-300), 2.0 * kPi);
}
