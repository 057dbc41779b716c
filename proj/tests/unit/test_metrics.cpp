#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "centi/errors.hpp"
#include "centi/metrics.hpp"

using namespace centi;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
MarkerLog make_markers(std::size_t n, double rate, F position) {
    MarkerLog log;
    for (std::size_t j = 0; j < n; ++j) log.time.push_back(static_cast<double>(j) / rate);
    for (int id = 1; id <= 16; ++id) {
        log.ids.push_back(id);
        log.positions.emplace_back();
        for (std::size_t j = 0; j < n; ++j) log.positions.back().push_back(position(id, log.time[j]));
    }
    return log;
}

MotorLog make_motors(std::size_t n, double rate, const std::vector<MotorSample>& per_leg) {
    MotorLog log;
    for (std::size_t j = 0; j < n; ++j) log.time.push_back(static_cast<double>(j) / rate);
    for (int id = 1; id <= 16; ++id) {
        log.ids.push_back(id);
        log.samples.emplace_back(n, per_leg[static_cast<std::size_t>(id - 1)]);
    }
    return log;
}

Vec3 rest_point(int id) { return {-126.0 * ((id - 1) / 2), id % 2 ? 105.0 : -105.0, 75.0}; }

}  // namespace

TEST(Velocity, StaticMarkersGiveZero) {
    const auto log = make_markers(840, 120.0, [](int id, double) { return rest_point(id); });
    const auto v = mean_velocity(log);
    EXPECT_EQ(v.v, 0.0);
}

TEST(Velocity, ThreeFourFive) {
    const auto log = make_markers(840, 120.0, [](int id, double t) -> Vec3 { return rest_point(id) + Vec3(60, 80, 3) * t; });
    const auto v = mean_velocity(log);
    EXPECT_NEAR(v.vx, 60.0, 1e-9);
    EXPECT_NEAR(v.vy, 80.0, 1e-9);
    EXPECT_NEAR(v.v, 100.0, 1e-9);
}

TEST(Velocity, OscillationWithoutDriftTelescopesAway) {
    // whole number of cycles over the record so the endpoints coincide
    const double f = 120.0 / 839.0 * 3.0;
    const auto log = make_markers(840, 120.0, [&](int id, double t) -> Vec3 {
        return rest_point(id) + Vec3(30 * std::sin(2 * kPi * f * t), 20 * std::sin(2 * kPi * f * t + id), 0);
    });
    EXPECT_NEAR(mean_velocity(log).v, 0.0, 1e-9);
}

TEST(Velocity, OnlyEndpointsMatter) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> noise(0.0, 5.0);
    auto log = make_markers(200, 120.0, [](int id, double t) -> Vec3 { return rest_point(id) + Vec3(40, -10, 0) * t; });
    const auto before = mean_velocity(log);
    for (auto& track : log.positions)
        for (std::size_t j = 1; j + 1 < track.size(); ++j) track[j] += Vec3(noise(rng), noise(rng), noise(rng));
    const auto after = mean_velocity(log);
    EXPECT_NEAR(after.vx, before.vx, 1e-9);
    EXPECT_NEAR(after.vy, before.vy, 1e-9);
}

TEST(Velocity, ScaleAndRotationProperties) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-50, 50);
    std::vector<Vec3> drift(17);
    for (auto& d : drift) d = Vec3(u(rng), u(rng), u(rng));
    auto base = make_markers(100, 120.0, [&](int id, double t) -> Vec3 { return rest_point(id) + drift[id] * t; });
    const double v = mean_velocity(base).v;

    auto scaled = base;
    for (auto& track : scaled.positions)
        for (auto& p : track) p *= 2.5;
    EXPECT_NEAR(mean_velocity(scaled).v, 2.5 * v, 1e-9);

    auto turned = base;
    const Eigen::AngleAxisd yaw(0.7, Vec3::UnitZ());
    for (auto& track : turned.positions)
        for (auto& p : track) p = yaw * p;
    EXPECT_NEAR(mean_velocity(turned).v, v, 1e-9);
}

TEST(Velocity, RejectsBadInput) {
    auto log = make_markers(10, 120.0, [](int id, double) { return rest_point(id); });
    auto missing = log;
    missing.ids.erase(missing.ids.begin() + 4);
    missing.positions.erase(missing.positions.begin() + 4);
    EXPECT_THROW(mean_velocity(missing), MetricsError);
    auto jitter = log;
    jitter.time[5] += 1e-3;
    EXPECT_THROW(mean_velocity(jitter), MetricsError);
    auto single = make_markers(1, 120.0, [](int id, double) { return rest_point(id); });
    EXPECT_THROW(mean_velocity(single), MetricsError);
}

TEST(Circumferential, NormalLandExample) {
    const auto leg = default_leg(LegShape::Normal);
    const auto log = make_motors(840, 120.0, std::vector<MotorSample>(16, {0.0, 0.4877, 7.4, 0.3}));
    EXPECT_NEAR(mean_circumferential_velocity(log, leg, WorldKind::Land), 2 * kPi * 50 * 0.4877, 1e-9);
    EXPECT_NEAR(mean_circumferential_velocity(log, leg, WorldKind::Land), 153.2, 0.05);
}

TEST(Circumferential, ZeroAndSingleLeg) {
    const auto leg = default_leg(LegShape::Normal);
    std::vector<MotorSample> legs(16, {0.0, 0.0, 7.4, 0.15});
    EXPECT_EQ(mean_circumferential_velocity(make_motors(10, 120.0, legs), leg, WorldKind::Land), 0.0);
    legs[0].speed = 1.0;
    EXPECT_NEAR(mean_circumferential_velocity(make_motors(10, 120.0, legs), leg, WorldKind::Land), 2 * kPi * 50 / 16,
                1e-12);
    EXPECT_NEAR(2 * kPi * 50 / 16, 19.63, 0.005);
}

TEST(Circumferential, UsesEnvironmentRadius) {
    const auto leg = default_leg(LegShape::Web);
    const auto log = make_motors(10, 120.0, std::vector<MotorSample>(16, {0.0, 0.5, 7.4, 0.15}));
    EXPECT_NEAR(mean_circumferential_velocity(log, leg, WorldKind::Land), 2 * kPi * 83 * 0.5, 1e-9);
    EXPECT_NEAR(mean_circumferential_velocity(log, leg, WorldKind::Water), 2 * kPi * 86 * 0.5, 1e-9);
    auto missing = log;
    missing.ids.pop_back();
    missing.samples.pop_back();
    EXPECT_THROW(mean_circumferential_velocity(missing, leg, WorldKind::Land), MetricsError);
}

TEST(SlipRatio, PublishedCells) {
    EXPECT_NEAR(slip_ratio(63.4, 153.2), 41.4, 0.05);
    EXPECT_NEAR(slip_ratio(120.0, 263.3), 45.6, 0.05);
    EXPECT_DOUBLE_EQ(slip_ratio(88.0, 88.0), 100.0);
    EXPECT_EQ(slip_ratio(0.0, 10.0), 0.0);
    EXPECT_THROW(slip_ratio(10.0, 0.0), MetricsError);
    EXPECT_THROW(slip_ratio(0.0, 0.0), MetricsError);
}

TEST(Energy, ConstantSignal) {
    const auto e = energy(make_motors(840, 120.0, std::vector<MotorSample>(16, {0.0, 0.5, 7.4, 0.5})));
    EXPECT_NEAR(e.literal, 3.7, 1e-12);
    EXPECT_NEAR(e.physical, 16 * 3.7 * 840 / 120.0, 1e-9);
}

TEST(Energy, ZeroCurrentAndTwoLegs) {
    std::vector<MotorSample> legs(16, {0.0, 0.5, 7.4, 0.0});
    EXPECT_EQ(energy(make_motors(50, 120.0, legs)).literal, 0.0);
    legs[0] = {0.0, 0.5, 4.0, 0.5};  // e = 2
    legs[1] = {0.0, 0.5, 8.0, 0.5};  // e = 4
    EXPECT_NEAR(energy(make_motors(50, 120.0, legs)).literal, 0.375, 1e-15);
}

TEST(Energy, PermutationInvariantAndAdditive) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    MotorLog log = make_motors(30, 120.0, std::vector<MotorSample>(16, {0.0, 0.5, 7.4, 0.2}));
    for (auto& track : log.samples)
        for (auto& s : track) s.current = u(rng);
    const auto e = energy(log);
    auto shuffled = log;
    std::shuffle(shuffled.samples.begin(), shuffled.samples.end(), rng);
    EXPECT_NEAR(energy(shuffled).literal, e.literal, 1e-12);
    double sum_means = 0.0;
    for (const auto& track : log.samples) {
        double s = 0.0;
        for (const auto& m : track) s += m.current * m.voltage;
        sum_means += s / track.size();
    }
    EXPECT_NEAR(e.literal, sum_means / 16.0, 1e-12);
}

TEST(Energy, EmptyLogIsAnError) {
    EXPECT_THROW(energy(MotorLog{}), MetricsError);
}

TEST(BodyWave, PureRoll) {
    const double A = 8.0, width = 210.0, f = 0.5;
    const auto log = make_markers(840, 120.0, [&](int id, double t) -> Vec3 {
        Vec3 p = rest_point(id) + Vec3(40.0 * t, 0, 0);
        if (id <= 2) p.z() += (id == 1 ? 1.0 : -1.0) * A * std::sin(2 * kPi * f * t);
        return p;
    });
    const auto w = body_wave_metrics(log, f);
    EXPECT_NEAR(w.roll_amp, std::atan(2 * A / width), 1e-3);
    EXPECT_NEAR(w.heave_amp, 0.0, 1e-9);
    EXPECT_NEAR(w.frequency, f, 0.005 * f);
}

TEST(BodyWave, PureHeave) {
    const double A = 6.0, f = 0.4877;
    const auto log = make_markers(840, 120.0, [&](int id, double t) -> Vec3 {
        Vec3 p = rest_point(id) + Vec3(30.0 * t, 0, 0.5 * t);
        p.z() += A * std::sin(2 * kPi * f * t + 0.3);
        return p;
    });
    const auto w = body_wave_metrics(log, f);
    EXPECT_NEAR(w.heave_amp, A, 0.05 * A);
    EXPECT_NEAR(w.roll_amp, 0.0, 1e-12);
    EXPECT_NEAR(w.frequency, f, 0.005 * f);
}

TEST(BodyWave, FundamentalBeatsStrongerHarmonic) {
    // roll at f under a larger heave bounce at 2f: the body wave repeats at f
    const double f = 0.4877;
    const auto log = make_markers(840, 120.0, [&](int id, double t) -> Vec3 {
        Vec3 p = rest_point(id) + Vec3(50.0 * t, 0, 0);
        if (id <= 2) p.z() += (id == 1 ? 1.0 : -1.0) * 7.0 * std::sin(2 * kPi * f * t);
        p.z() += 10.0 * std::sin(2 * kPi * 2.0 * f * t + 1.0);
        return p;
    });
    EXPECT_NEAR(body_wave_metrics(log, f).frequency, f, 0.005 * f);
}

TEST(BodyWave, WeakSubharmonicIsIgnored) {
    const double f = 0.4877;
    const auto log = make_markers(840, 120.0, [&](int id, double t) -> Vec3 {
        Vec3 p = rest_point(id);
        p.z() += 10.0 * std::sin(2 * kPi * f * t) + 3.0 * std::sin(2 * kPi * 0.5 * f * t + 0.4);
        return p;
    });
    // leakage from the partial subharmonic cycle pulls the peak slightly
    EXPECT_NEAR(body_wave_metrics(log, f).frequency, f, 0.02 * f);
}

TEST(BodyWave, StaticInput) {
    const auto log = make_markers(840, 120.0, [](int id, double) { return rest_point(id); });
    const auto w = body_wave_metrics(log, 0.5);
    EXPECT_EQ(w.roll_amp, 0.0);
    EXPECT_EQ(w.heave_amp, 0.0);
    EXPECT_EQ(w.frequency, 0.0);
}

TEST(BodyWave, NeedsTwoPeriodsAndBothMarkers) {
    const auto log = make_markers(240, 120.0, [](int id, double) { return rest_point(id); });
    EXPECT_THROW(body_wave_metrics(log, 0.5), MetricsError);  // 2 s is one period
    EXPECT_NO_THROW(body_wave_metrics(log, 1.0));
    auto missing = log;
    missing.ids.erase(missing.ids.begin() + 1);
    missing.positions.erase(missing.positions.begin() + 1);
    EXPECT_THROW(body_wave_metrics(missing, 1.0), MetricsError);
}

TEST(Aggregate, IdenticalTrialsHaveZeroSpread) {
    MetricsReport r;
    r.alpha = 41.4;
    r.e = 3.7;
    const auto row = aggregate(std::vector<MetricsReport>(5, r));
    EXPECT_EQ(row.trials, 5);
    EXPECT_DOUBLE_EQ(row.alpha.mean, 41.4);
    EXPECT_EQ(row.alpha.std, 0.0);
    EXPECT_EQ(row.e.std, 0.0);
}

TEST(Aggregate, SampleStandardDeviation) {
    std::vector<MetricsReport> trials(3);
    trials[0].alpha = 40;
    trials[1].alpha = 42;
    trials[2].alpha = 44;
    const auto row = aggregate(trials);
    EXPECT_DOUBLE_EQ(row.alpha.mean, 42.0);
    EXPECT_DOUBLE_EQ(row.alpha.std, 2.0);
    EXPECT_EQ(aggregate({trials[0]}).alpha.std, 0.0);
    EXPECT_THROW(aggregate({}), MetricsError);
}

TEST(Aggregate, MeanLiesWithinTrialRange) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0, 100);
    for (int k = 0; k < 100; ++k) {
        std::vector<MetricsReport> trials(1 + k % 6);
        double lo = 1e9, hi = -1e9;
        for (auto& t : trials) {
            t.alpha = u(rng);
            lo = std::min(lo, t.alpha);
            hi = std::max(hi, t.alpha);
        }
        const auto row = aggregate(trials);
        EXPECT_GE(row.alpha.mean, lo - 1e-12);
        EXPECT_LE(row.alpha.mean, hi + 1e-12);
        EXPECT_GE(row.alpha.std, 0.0);
    }
}

TEST(Aggregate, PublishedFormatting) {
    // five trials with mean 52.6 and sample std 5.4
    const double d = 5.4 * std::sqrt(4.0 / 2.0);
    std::vector<MetricsReport> trials(5);
    const double alphas[] = {52.6 - d, 52.6, 52.6, 52.6, 52.6 + d};
    for (int i = 0; i < 5; ++i) trials[static_cast<std::size_t>(i)].alpha = alphas[i];
    EXPECT_EQ(format_mean_std(aggregate(trials).alpha), "52.6±5.4");
    EXPECT_EQ(format_mean_std({-0.01, 0.0}), "0.0±0.0");
}

TEST(Condition, LabelsAndSlugs) {
    const Condition c{WorldKind::Water, LegShape::Fin, LrMode::InPhase};
    EXPECT_EQ(c.label(), "water/Fin/in_phase");
    EXPECT_EQ(c.slug(), "water_Fin_in_phase");
}
