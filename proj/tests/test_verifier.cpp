#include "charts.hpp"

#include <rmap/error.hpp>
#include <rmap/gallery.hpp>
#include <rmap/report.hpp>
#include <rmap/verifier.hpp>

#include <gtest/gtest.h>

using namespace testing_charts;
using rmap::Outcome;
using rmap::Vector;

namespace {

rmap::CheckSettings settings_for(const rmap::Scenario& s) {
    rmap::CheckSettings cs;
    cs.normal_fields = s.normal_fields;
    return cs;
}

TEST(Aggregate, OutcomeRules) {
    rmap::CheckResult pass;
    pass.residual = 1e-12;
    pass.scale = 3.0;
    rmap::CheckResult fail;
    fail.residual = 2.0;
    fail.passed = false;
    rmap::CheckResult skip;
    skip.skipped = true;
    skip.passed = false;
    skip.details = "hypothesis failed: x";

    auto a = rmap::aggregate("c", {pass, skip, skip});
    EXPECT_EQ(a.outcome, Outcome::Pass);
    EXPECT_EQ(a.skipped, 2u);
    EXPECT_EQ(a.skip_reasons.size(), 1u);
    EXPECT_EQ(a.max_scale, 3.0);

    a = rmap::aggregate("c", {pass, fail, skip});
    EXPECT_EQ(a.outcome, Outcome::Fail);
    EXPECT_EQ(a.max_residual, 2.0);
    EXPECT_DOUBLE_EQ(a.mean_residual, (2.0 + 1e-12) / 2);
    ASSERT_EQ(a.failures.size(), 1u);

    EXPECT_EQ(rmap::aggregate("c", {skip}).outcome, Outcome::Skipped);
}

TEST(Checks, NamesAreKnownAndOrdered) {
    const auto& names = rmap::check_names();
    EXPECT_EQ(names.size(), 15u);
    EXPECT_EQ(names.front(), "rank_constancy");
    for (const auto& n : names) EXPECT_TRUE(rmap::is_known_check(n));
    EXPECT_FALSE(rmap::is_known_check("lemma_9_9"));
}

TEST(Checks, GaussEquationClosesAtOriginOfGraphWithKernel) {
    const auto s = rmap::build_scenario(rmap::builtin_scenario("graph_with_kernel"));
    const std::vector<Vector> origin = {Vector::Zero(4)};
    const auto r = rmap::check_gauss_equation(s.map, origin, settings_for(s));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_FALSE(r[0].skipped);
    EXPECT_LT(r[0].residual, 1e-10);
    EXPECT_NEAR(r[0].scale, 8.0, 1e-10);  // the |R1| = 8 term dominates
    const auto h = rmap::check_holomorphic_curvature_identity(s.map, origin, settings_for(s));
    EXPECT_LT(h[0].residual, 1e-10);
    EXPECT_NEAR(h[0].scale, 8.0, 1e-10);
}

TEST(Checks, GatedChecksSkipWithTheViolatedHypothesis) {
    const auto s = rmap::build_scenario(rmap::builtin_scenario("non_riemannian"));
    for (auto* check : {&rmap::check_sff_range_orthogonality, &rmap::check_gauss_equation,
                        &rmap::check_kahler_sff_commutation, &rmap::check_holomorphic_curvature_identity,
                        &rmap::check_harmonicity_minimality, &rmap::check_space_form_criterion}) {
        for (const auto& r : check(s.map, s.points, settings_for(s))) {
            EXPECT_TRUE(r.skipped);
            EXPECT_NE(r.details.find("Riemannian map"), std::string::npos) << r.details;
        }
    }
    for (const auto& r : rmap::check_complex_invariance(s.map, s.points, settings_for(s))) {
        EXPECT_FALSE(r.skipped);
        EXPECT_TRUE(r.passed);
    }
}

TEST(Checks, ShapeOperatorDualitySkipsWithoutFields) {
    const auto s = rmap::build_scenario(rmap::builtin_scenario("kahler_graph"));
    for (const auto& r : rmap::check_shape_operator_duality(s.map, s.points, rmap::CheckSettings{})) {
        EXPECT_TRUE(r.skipped);
    }
    rmap::CheckSettings bad;
    bad.normal_fields.emplace_back(s.map.target(), std::vector<std::string>{"1", "0", "0", "0"});
    const auto r = rmap::check_shape_operator_duality(s.map, s.points, bad);
    EXPECT_TRUE(r[0].skipped);
    EXPECT_NE(r[0].details.find("not normal"), std::string::npos);
}

TEST(Checks, DiagnosticModeRunsParabolaHarmonicity) {
    const auto s = rmap::build_scenario(rmap::builtin_scenario("real_parabola"));
    rmap::CheckSettings cs = settings_for(s);
    cs.hypothesis_gating = false;
    const std::vector<Vector> vertex = {vec({0, 0.3})};
    const auto r = rmap::check_harmonicity_minimality(s.map, vertex, cs);
    ASSERT_FALSE(r[0].skipped);
    EXPECT_TRUE(r[0].passed);
    EXPECT_NE(r[0].details.find("|tau| 2.000e+00"), std::string::npos) << r[0].details;
    EXPECT_NE(r[0].details.find("harmonic no, minimal no"), std::string::npos) << r[0].details;
    cs.hypothesis_gating = true;
    EXPECT_TRUE(rmap::check_harmonicity_minimality(s.map, vertex, cs)[0].skipped);
}

TEST(Checks, RankConstancyComparesAgainstFirstPoint) {
    const rmap::SmoothMap fold(rmap::ChartManifold(spec({"x", "y"}, diag({"1", "1"}))),
                               rmap::ChartManifold(spec({"a"}, diag({"1"}))), {"x^2"});
    const std::vector<Vector> pts = {vec({0.5, 0}), vec({0, 0}), vec({-0.5, 0})};
    const auto r = rmap::check_rank_constancy(fold, pts, rmap::CheckSettings{});
    EXPECT_TRUE(r[0].passed);
    EXPECT_FALSE(r[1].passed);
    EXPECT_EQ(r[1].residual, 1.0);
    EXPECT_TRUE(r[2].passed);
}

TEST(Suite, EveryGalleryEntryMeetsItsExpectations) {
    for (const auto& name : rmap::gallery_names()) {
        const auto m = rmap::builtin_scenario(name);
        const auto report = rmap::run_suite(rmap::build_scenario(m), rmap::suite_options(m));
        EXPECT_TRUE(report.expectations_met) << name << "\n" << rmap::summary_table(report);
        EXPECT_EQ(report.checks.size(), rmap::check_names().size());
    }
}

TEST(Suite, EveryGalleryEntryMeetsItsExpectationsWithFiniteDifferences) {
    for (const auto& name : rmap::gallery_names()) {
        auto m = rmap::builtin_scenario(name);
        m.mode = rmap::DerivativeMode::FiniteDifferences;
        const auto report = rmap::run_suite(rmap::build_scenario(m), rmap::suite_options(m));
        EXPECT_TRUE(report.expectations_met) << name << "\n" << rmap::summary_table(report);
    }
}

TEST(Suite, PaperExampleRunsCleanWithoutSkips) {
    auto m = rmap::builtin_scenario("paper_example");
    const auto report = rmap::run_suite(rmap::build_scenario(m), rmap::suite_options(m));
    EXPECT_EQ(report.outcome, rmap::SuiteOutcome::Pass);
    for (const auto& c : report.checks) {
        EXPECT_EQ(c.skipped, 0u) << c.check_id;
        EXPECT_EQ(c.passed, 100u) << c.check_id;
    }
}

TEST(Suite, KahlerChecksOnNonKahlerSourceGiveSkips) {
    auto m = rmap::builtin_scenario("non_kahler_source");
    m.checks = {"harmonicity_minimality", "kahler_sff_commutation"};
    const auto report = rmap::run_suite(rmap::build_scenario(m), rmap::suite_options(m));
    EXPECT_EQ(report.outcome, rmap::SuiteOutcome::PassWithSkips);
    ASSERT_EQ(report.checks.size(), 2u);
    EXPECT_EQ(report.checks[0].check_id, "kahler_sff_commutation");  // report order
    EXPECT_EQ(report.find("harmonicity_minimality")->outcome, Outcome::Skipped);
    EXPECT_NE(report.find("harmonicity_minimality")->skip_reasons[0].find("source Kaehler"), std::string::npos);
}

TEST(Suite, ParallelEvaluationGivesIdenticalReport) {
    const auto m = rmap::builtin_scenario("graph_with_kernel");
    const auto s = rmap::build_scenario(m);
    auto options = rmap::suite_options(m);
    const auto serial = rmap::report_json(rmap::run_suite(s, options));
    options.jobs = 3;
    EXPECT_EQ(rmap::report_json(rmap::run_suite(s, options)), serial);
}

TEST(Suite, ScenarioErrorsSurfaceBeforeChecks) {
    auto m = rmap::builtin_scenario("paper_example");
    auto options = rmap::suite_options(m);
    options.checks = {"gauss_equation", "lemma_9_9"};
    EXPECT_THROW(rmap::run_suite(rmap::build_scenario(m), options), rmap::Error);

    // metric degenerates inside the sampling box
    m.source.metric[0][0] = "x1";
    m.source.domain[0] = {-1, 1};
    EXPECT_THROW(rmap::run_suite(rmap::build_scenario(m), rmap::suite_options(m)), rmap::StructuralError);
}

TEST(Suite, ImagesOutsideTargetBoxWarn) {
    auto m = rmap::builtin_scenario("kahler_graph");
    m.target.domain.assign(4, rmap::Interval{-0.1, 0.1});
    const auto report = rmap::run_suite(rmap::build_scenario(m), rmap::suite_options(m));
    EXPECT_FALSE(report.warnings.empty());
    EXPECT_TRUE(report.expectations_met);
}

}  // namespace
