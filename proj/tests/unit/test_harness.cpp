#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "centi/errors.hpp"
#include "centi/harness.hpp"
#include "centi/plot.hpp"
#include "centi/report.hpp"

using namespace centi;

namespace {

// Shorter runs than the default protocol; still over two gait periods.
ExperimentConfig quick_config() {
    ExperimentConfig c;
    c.settle_time = 0.5;
    c.gait.duration = 4.2;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

ConditionGrid single(const Condition& c, int trials) {
    ConditionGrid g;
    g.worlds = {c.world};
    g.legs = {c.leg};
    g.modes = {c.mode};
    g.trials = trials;
    return g;
}

bool same_reports(const MetricsReport& a, const MetricsReport& b) {
    return a.v == b.v && a.v_f == b.v_f && a.alpha == b.alpha && a.e == b.e && a.e_phys == b.e_phys &&
           a.roll_amp == b.roll_amp && a.heave_amp == b.heave_amp && a.condition == b.condition && a.trial == b.trial;
}

}  // namespace

TEST(Grid, DefaultGridHasTwelveDistinctConditions) {
    const ConditionGrid g;
    const auto cs = g.conditions();
    ASSERT_EQ(cs.size(), 12u);
    EXPECT_EQ(g.size(), 12u);
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) EXPECT_FALSE(cs[i] == cs[j]);
    EXPECT_EQ(cs.front().label(), "land/Normal/antiphase");
    EXPECT_EQ(cs.back().label(), "water/Web/in_phase");
}

TEST(Grid, FullGridWithOneTrialEach) {
    auto c = quick_config();
    ConditionGrid g;
    g.trials = 1;
    const auto result = run_grid(c, g, 2);
    ASSERT_EQ(result.rows.size(), 12u);
    ASSERT_EQ(result.trials.size(), 12u);
    const auto cs = g.conditions();
    for (std::size_t i = 0; i < 12; ++i) {
        EXPECT_EQ(result.rows[i].condition, cs[i]);
        EXPECT_EQ(result.rows[i].alpha.std, 0.0);
        EXPECT_EQ(result.rows[i].e.std, 0.0);
        EXPECT_TRUE(std::isfinite(result.rows[i].alpha.mean));
    }
}

TEST(Grid, SeedsDependOnlyOnConditionAndTrial) {
    const Condition a{WorldKind::Land, LegShape::Fin, LrMode::Antiphase};
    const Condition b{WorldKind::Water, LegShape::Fin, LrMode::Antiphase};
    EXPECT_EQ(trial_seed(1, a, 2), trial_seed(1, a, 2));
    EXPECT_NE(trial_seed(1, a, 2), trial_seed(1, a, 3));
    EXPECT_NE(trial_seed(1, a, 2), trial_seed(1, b, 2));
    EXPECT_NE(trial_seed(1, a, 2), trial_seed(2, a, 2));
}

TEST(Grid, PerturbationsStayWithinBounds) {
    const double deg = std::numbers::pi / 180.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto p = trial_perturbation(s, 7);
        ASSERT_LE(std::abs(p.yaw), 2.0 * deg);
        ASSERT_EQ(p.joint_rest.size(), 7u);
        for (const auto& r : p.joint_rest) ASSERT_LE(r.cwiseAbs().maxCoeff(), 1.0 * deg);
    }
}

TEST(Grid, TrialCountDoesNotChangeEarlierTrials) {
    const auto c = quick_config();
    const Condition cond{WorldKind::Land, LegShape::Normal, LrMode::InPhase};
    const auto five = run_grid(c, single(cond, 5), 1);
    const auto three = run_grid(c, single(cond, 3), 1);
    ASSERT_EQ(three.trials.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(three.trials[k].seed, five.trials[k].seed);
        EXPECT_EQ(three.trials[k].telemetry, five.trials[k].telemetry);
        EXPECT_TRUE(same_reports(three.trials[k].report, five.trials[k].report));
    }
    EXPECT_GT(five.rows[0].alpha.std, 0.0);  // trials do differ from one another
}

TEST(Grid, ThreadCountDoesNotChangeResults) {
    const auto c = quick_config();
    ConditionGrid g;
    g.worlds = {WorldKind::Water};
    g.legs = {LegShape::Normal, LegShape::Web};
    g.trials = 2;
    const auto serial = run_grid(c, g, 1);
    const auto parallel = run_grid(c, g, 4);
    ASSERT_EQ(serial.trials.size(), parallel.trials.size());
    for (std::size_t i = 0; i < serial.trials.size(); ++i) {
        EXPECT_EQ(serial.trials[i].telemetry, parallel.trials[i].telemetry);
        EXPECT_TRUE(same_reports(serial.trials[i].report, parallel.trials[i].report));
    }
    EXPECT_EQ(render_report(serial.rows, ReportFormat::Csv), render_report(parallel.rows, ReportFormat::Csv));
}

TEST(Grid, ConditionConfigKeepsDiscretization) {
    auto base = quick_config();
    base.robot.leg.blade_nodes = 1;
    const auto c = condition_config(base, {WorldKind::Water, LegShape::Web, LrMode::InPhase});
    EXPECT_EQ(c.robot.leg.shape, LegShape::Web);
    EXPECT_EQ(c.robot.leg.blade_nodes, 1);
    EXPECT_DOUBLE_EQ(c.robot.leg.r_land, 0.083);
    EXPECT_EQ(c.world.kind, WorldKind::Water);
    EXPECT_EQ(c.gait.lr_mode, LrMode::InPhase);
    base.robot.leg.flex_stiffness = 9.0;
    EXPECT_EQ(condition_config(base, {WorldKind::Land, LegShape::Normal, LrMode::Antiphase}).robot.leg.flex_stiffness,
              9.0);
}

TEST(Grid, DivergenceNamesTheCondition) {
    auto c = quick_config();
    c.robot.joint.anchor_stiffness = 1e9;
    try {
        run_trial(c, {WorldKind::Land, LegShape::Normal, LrMode::Antiphase}, 1);
        FAIL() << "expected DivergenceError";
    } catch (const DivergenceError& e) {
        EXPECT_NE(std::string(e.what()).find("land/Normal/antiphase trial 1"), std::string::npos) << e.what();
    }
}

TEST(Archive, SameSeedGivesIdenticalBytes) {
    const auto c = quick_config();
    ConditionGrid g;
    g.legs = {LegShape::Fin};
    g.trials = 2;
    const auto dir = std::filesystem::temp_directory_path() / "centi_test_archive";
    std::filesystem::remove_all(dir);
    write_archive(run_grid(c, g, 2), c, dir / "a");
    write_archive(run_grid(c, g, 1), c, dir / "b");

    std::size_t files = 0;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir / "a")) {
        if (!entry.is_regular_file()) continue;
        ++files;
        const auto rel = std::filesystem::relative(entry.path(), dir / "a");
        EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / rel)) << rel;
    }
    EXPECT_EQ(files, 4u * 2u * 2u + 4u);  // csv pairs plus manifest, config, two reports
    EXPECT_TRUE(std::filesystem::exists(dir / "a" / "land_Fin_in_phase" / "trial_2_motors.csv"));

    const auto reloaded = load_archive(dir / "a");
    ASSERT_EQ(reloaded.rows.size(), 4u);
    EXPECT_EQ(render_report(reloaded.rows, ReportFormat::Text), slurp(dir / "a" / "report.txt"));
    std::filesystem::remove_all(dir);
}

TEST(Sweep, DefaultOffsetsIncludeQuarterCycle) {
    const auto offsets = default_sweep_offsets();
    EXPECT_EQ(offsets.size(), 13u);
    bool quarter = false;
    for (double o : offsets) {
        EXPECT_GE(o, 0.0);
        EXPECT_LT(o, 2.0 * std::numbers::pi);
        quarter = quarter || std::abs(o - std::numbers::pi / 2) < 1e-12;
    }
    EXPECT_TRUE(quarter);
}

TEST(Sweep, OneRowPerOffset) {
    const auto c = quick_config();
    SweepSpec spec;
    spec.condition = {WorldKind::Water, LegShape::Normal, LrMode::Antiphase};
    spec.trials = 2;
    spec.offsets = {0.0, std::numbers::pi / 4, std::numbers::pi / 2};
    const auto rows = phase_sweep(c, spec, 2);
    ASSERT_EQ(rows.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(rows[i].offset, spec.offsets[i]);
        EXPECT_EQ(rows[i].row.trials, 2);
    }
    const auto csv = read_csv(render_sweep(rows, ReportFormat::Csv));
    EXPECT_EQ(csv.size(), 4u);
    const auto text = render_sweep(rows, ReportFormat::Text);
    EXPECT_NE(text.find("ranked by alpha"), std::string::npos);
    EXPECT_NE(text.find("ranked by E"), std::string::npos);
}

TEST(Sweep, SingleOffsetEqualsGridCell) {
    const auto c = quick_config();  // default offset is 45 deg
    const Condition cond{WorldKind::Land, LegShape::Web, LrMode::Antiphase};
    SweepSpec spec;
    spec.condition = cond;
    spec.trials = 2;
    spec.offsets = {std::numbers::pi / 4};
    const auto sweep = phase_sweep(c, spec);
    const auto grid = run_grid(c, single(cond, 2));
    EXPECT_EQ(sweep[0].row.alpha.mean, grid.rows[0].alpha.mean);
    EXPECT_EQ(sweep[0].row.e.mean, grid.rows[0].e.mean);
}

TEST(Sweep, RejectsBadOffsets) {
    SweepSpec spec;
    EXPECT_THROW(phase_sweep(quick_config(), spec), ConfigError);
    spec.offsets = {7.0};
    EXPECT_THROW(phase_sweep(quick_config(), spec), ConfigError);
}

TEST(Report, OneRowIsHeaderPlusLine) {
    AggregateRow row;
    row.trials = 5;
    row.alpha = {52.6, 5.4};
    row.e = {64.8, 6.0};
    const auto csv = read_csv(render_report({row}, ReportFormat::Csv));
    ASSERT_EQ(csv.size(), 2u);
    EXPECT_EQ(csv[0].size(), csv[1].size());
    EXPECT_EQ(csv[0][0], "environment");
    EXPECT_EQ(csv[1][0], "land");
    EXPECT_EQ(csv[1][6], "52.6");
    EXPECT_EQ(csv[1][7], "5.4");
    const auto text = render_report({row}, ReportFormat::Text);
    EXPECT_NE(text.find("52.6±5.4"), std::string::npos);
    EXPECT_NE(text.find("64.8±6.0"), std::string::npos);
}

TEST(Report, TwelveRowsFormLandWaterTables) {
    std::vector<AggregateRow> rows;
    double a = 10.0;
    for (const auto& c : ConditionGrid{}.conditions()) {
        AggregateRow r;
        r.condition = c;
        r.trials = 5;
        r.alpha = {a, 1.0};
        a += 1.0;
        rows.push_back(r);
    }
    std::reverse(rows.begin(), rows.end());  // order must not matter
    const auto text = render_report(rows, ReportFormat::Text);
    EXPECT_NE(text.find("lr_mode: antiphase"), std::string::npos);
    EXPECT_NE(text.find("lr_mode: in_phase"), std::string::npos);
    EXPECT_LT(text.find("lr_mode: antiphase"), text.find("lr_mode: in_phase"));
    const auto first_table = text.substr(0, text.find("lr_mode: in_phase"));
    EXPECT_NE(first_table.find("Land"), std::string::npos);
    EXPECT_NE(first_table.find("Water"), std::string::npos);
    // Normal antiphase row: land 10.0, water 16.0
    const auto normal = first_table.substr(first_table.find("\nNormal"));
    EXPECT_LT(normal.find("10.0±1.0"), normal.find("16.0±1.0"));

    const auto csv = read_csv(render_report(rows, ReportFormat::Csv));
    ASSERT_EQ(csv.size(), 13u);
    EXPECT_EQ(csv[1][0] + csv[1][1] + csv[1][2], "landNormalantiphase");
    EXPECT_EQ(csv[12][0] + csv[12][1] + csv[12][2], "waterWebin_phase");
    for (const auto& r : csv) EXPECT_EQ(r.size(), csv[0].size());
    EXPECT_EQ(render_report(rows, ReportFormat::Csv), render_report(rows, ReportFormat::Csv));
}

TEST(Report, FormatNames) {
    EXPECT_EQ(parse_report_format("csv"), ReportFormat::Csv);
    EXPECT_THROW(parse_report_format("xml"), ConfigError);
}

TEST(Plot, OnePolylinePerMarker) {
    MarkerLog log;
    for (int j = 0; j < 840; ++j) log.time.push_back(j / 120.0);
    for (int id = 1; id <= 16; ++id) {
        log.ids.push_back(id);
        log.positions.emplace_back();
        for (int j = 0; j < 840; ++j) log.positions.back().emplace_back(j * 0.1, id * 10.0, std::sin(j * 0.05) * id);
    }
    const auto svg = trajectory_svg(log, {1, 2}, PlotPlane::YZ);
    std::size_t polylines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
        ++polylines;
        const auto start = svg.find("points=\"", pos) + 8;
        const auto end = svg.find('"', start);
        const auto pts = svg.substr(start, end - start);
        EXPECT_EQ(std::count(pts.begin(), pts.end(), ',') , 840);
    }
    EXPECT_EQ(polylines, 2u);
    EXPECT_NE(svg.find("marker 1"), std::string::npos);
    EXPECT_NE(svg.find("marker 2"), std::string::npos);
    EXPECT_EQ(svg, trajectory_svg(log, {1, 2}, PlotPlane::YZ));
    EXPECT_THROW(trajectory_svg(log, {}, PlotPlane::XY), TelemetryError);
    EXPECT_THROW(trajectory_svg(log, {17}, PlotPlane::XY), TelemetryError);
    EXPECT_THROW(parse_plot_plane("zz"), ConfigError);
}
