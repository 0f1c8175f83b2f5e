#include "charts.hpp"
#include "oracle.hpp"

#include <rmap/error.hpp>
#include <rmap/gallery.hpp>
#include <rmap/map_calculus.hpp>
#include <rmap/sampling.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace testing_charts;
using rmap::DerivativeMode;
using rmap::Matrix;
using rmap::Vector;

namespace {

rmap::Scenario gallery_scenario(const char* name) { return rmap::build_scenario(rmap::builtin_scenario(name)); }

double lambda(const oracle::Vec& p) { return 1 + 4 * (p(0) * p(0) + p(1) * p(1)); }

oracle::Mat graph_source_metric(const oracle::Vec& p) {
    oracle::Mat g = oracle::Mat::Identity(4, 4);
    g(0, 0) = g(1, 1) = lambda(p);
    return g;
}

oracle::Vec graph_map(const oracle::Vec& p) {
    oracle::Vec f(4);
    f << p(0), p(1), p(0) * p(0) - p(1) * p(1), 2 * p(0) * p(1);
    return f;
}

oracle::Mat flat4(const oracle::Vec&) { return oracle::Mat::Identity(4, 4); }

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

TEST(TangentSplit, PaperExampleFrames) {
    const auto s = gallery_scenario("paper_example");
    rmap::SplitMix64 rng(1);
    for (const auto& p : s.points) {
        const auto mp = rmap::evaluate_map_point(s.map, p);
        const auto& sp = mp.split;
        ASSERT_EQ(sp.rank, 2u);
        const Matrix& g1 = mp.source.metric.g;
        const Matrix& g2 = mp.target.metric.g;
        const Matrix& a = mp.differential.jacobian;
        EXPECT_LT(max_abs(sp.ker_frame.transpose() * g1 * sp.ker_frame - Matrix::Identity(2, 2)), 1e-14);
        EXPECT_LT(max_abs(sp.hor_frame.transpose() * g1 * sp.hor_frame - Matrix::Identity(2, 2)), 1e-14);
        EXPECT_LT(max_abs(sp.ker_frame.transpose() * g1 * sp.hor_frame), 1e-14);
        EXPECT_LT(max_abs(a * sp.ker_frame), 1e-14);
        EXPECT_LT(max_abs(sp.range_frame.transpose() * g2 * sp.normal_frame), 1e-14);
        EXPECT_LT(max_abs(sp.range_frame.transpose() * g2 * sp.range_frame - Matrix::Identity(2, 2)), 1e-14);
        EXPECT_LT(rmap::riemannian_defect(mp), 1e-12);
        EXPECT_LT(rmap::holomorphy_defect(mp), 1e-12);
    }
}

TEST(TangentSplit, RankAmbiguityIsReported) {
    EXPECT_EQ(rmap::numeric_rank(vec({3, 1, 0}), 1e-8), 2u);
    EXPECT_EQ(rmap::numeric_rank(vec({0, 0}), 1e-8), 0u);
    EXPECT_THROW(rmap::numeric_rank(vec({1, 5e-8}), 1e-8), rmap::RankAmbiguityError);
    EXPECT_THROW(rmap::numeric_rank(vec({1, 2e-9}), 1e-8), rmap::RankAmbiguityError);
    EXPECT_EQ(rmap::numeric_rank(vec({1, 5e-10}), 1e-8), 1u);
}

TEST(SecondFundamentalForm, GraphWithKernelAtOrigin) {
    const auto s = gallery_scenario("graph_with_kernel");
    const Vector o = Vector::Zero(4);
    const Vector dx = vec({1, 0, 0, 0}), dy = vec({0, 1, 0, 0}), du = vec({0, 0, 1, 0});
    const auto b = [&](const Vector& x, const Vector& y) { return rmap::second_fund_form_at(s.map, o, x, y); };
    EXPECT_LT((b(dx, dx) - vec({0, 0, 2, 0})).norm(), 1e-14);
    EXPECT_LT((b(dx, dy) - vec({0, 0, 0, 2})).norm(), 1e-14);
    EXPECT_LT((b(dy, dy) - vec({0, 0, -2, 0})).norm(), 1e-14);
    EXPECT_LT(b(du, du).norm(), 1e-14);
    EXPECT_EQ(b(dx, dy), b(dy, dx));
}

TEST(SecondFundamentalForm, MatchesNumericOracle) {
    const auto s = gallery_scenario("graph_with_kernel");
    rmap::SplitMix64 rng(9);
    for (const auto& p : rmap::sample_box(std::vector<rmap::Interval>(4, {-0.9, 0.9}), 6, 4)) {
        Vector x(4), y(4);
        for (int i = 0; i < 4; ++i) {
            x(i) = rng.uniform(-1, 1);
            y(i) = rng.uniform(-1, 1);
        }
        const Vector got = rmap::second_fund_form_at(s.map, p, x, y);
        const Vector ref = oracle::second_fundamental_form(graph_map, graph_source_metric, flat4, p, x, y);
        EXPECT_LT((got - ref).cwiseAbs().maxCoeff(), 1e-7) << p.transpose();
    }
}

TEST(Defects, NegativeControls) {
    const auto anti = gallery_scenario("anti_holomorphic");
    EXPECT_NEAR(rmap::holomorphy_defect_at(anti.map, vec({0.2, 0.3})), 2.0, 1e-15);
    EXPECT_LT(rmap::riemannian_defect_at(anti.map, vec({0.2, 0.3})), 1e-15);

    const auto sq = gallery_scenario("non_riemannian");
    for (const auto& p : sq.points) {
        EXPECT_GE(rmap::riemannian_defect_at(sq.map, p), 1.0);
        EXPECT_LT(rmap::holomorphy_defect_at(sq.map, p), 1e-12);
    }
    const auto real = gallery_scenario("real_parabola");
    EXPECT_THROW(rmap::holomorphy_defect_at(real.map, vec({0, 0})), rmap::PreconditionError);
}

TEST(Tension, GraphWithKernelIsHarmonic) {
    const auto s = gallery_scenario("graph_with_kernel");
    for (const auto& p : s.points) {
        const auto t = rmap::tension_at(s.map, p);
        EXPECT_LT(t.tau.norm(), 1e-9);
        EXPECT_LT(t.tau1.norm(), 1e-9);
        EXPECT_LT(rmap::mean_curvature_range_at(s.map, p).norm(), 1e-9);
    }
}

TEST(Tension, ParabolaHasCurvatureTwoAtVertex) {
    const auto s = gallery_scenario("real_parabola");
    const Vector o = vec({0, 0});
    const auto t = rmap::tension_at(s.map, o);
    EXPECT_LT((t.tau - vec({0, 2, 0})).norm(), 1e-13);
    EXPECT_LT(t.tau1.norm(), 1e-15);
    const Vector h = rmap::mean_curvature_range_at(s.map, o);
    EXPECT_NEAR(h.norm(), 2.0, 1e-13);
    // classical curvature of y = x^2 at x = t: 2 / (1 + 4t^2)^(3/2)
    const double x = 0.4;
    const double kappa = 2.0 / std::pow(1 + 4 * x * x, 1.5);
    EXPECT_NEAR(rmap::mean_curvature_range_at(s.map, vec({x, 0.1})).norm(), kappa, 1e-12);
}

TEST(Tension, RankZeroHasNoMeanCurvature) {
    const rmap::SmoothMap constant(rmap::ChartManifold(spec({"x", "y"}, diag({"1", "1"}))),
                                   rmap::ChartManifold(spec({"a", "b"}, diag({"1", "1"}))), {"1", "2"});
    EXPECT_THROW(rmap::mean_curvature_range_at(constant, vec({0, 0})), rmap::PreconditionError);
    EXPECT_EQ(rmap::tension_at(constant, vec({0.1, 0.2})).tau.norm(), 0.0);
}

TEST(ShapeOperator, DualityAtOriginOfGraphWithKernel) {
    const auto s = gallery_scenario("graph_with_kernel");
    const Vector o = Vector::Zero(4);
    // equals (0,0,1,0) at the origin and stays normal to range F* nearby
    const rmap::TargetVectorField v(s.map.target(), {"-2*a", "2*b", "1", "0"});
    const auto mp = rmap::evaluate_map_point(s.map, o);
    const auto so = rmap::shape_operator(mp, v);
    // quadratic form of S_V on dx, expressed in the horizontal frame
    const Vector dx = vec({1, 0, 0, 0});
    const Vector c = mp.split.hor_frame.transpose() * mp.source.metric.g * dx;
    EXPECT_NEAR(c.dot(so.matrix * c), 2.0, 1e-13);
    EXPECT_LT(max_abs(so.matrix - so.matrix.transpose()), 1e-14);
}

TEST(ShapeOperator, ConstantExtensionThatLeavesTheNormalBundleGivesZero) {
    // (0,0,1,0) is normal only at the origin; its derivative along F vanishes
    const auto s = gallery_scenario("graph_with_kernel");
    const rmap::TargetVectorField v(s.map.target(), {"0", "0", "1", "0"});
    const auto so = rmap::shape_operator(rmap::evaluate_map_point(s.map, Vector::Zero(4)), v);
    EXPECT_LT(max_abs(so.matrix), 1e-14);
}

TEST(ShapeOperator, SymmetricAndDualAtRandomPoints) {
    const auto s = gallery_scenario("kahler_graph");
    for (const auto& field : s.normal_fields) {
        for (const auto& p : s.points) {
            const auto mp = rmap::evaluate_map_point(s.map, p);
            const auto so = rmap::shape_operator(mp, field);
            const Matrix& e = mp.split.hor_frame;
            for (Eigen::Index a = 0; a < e.cols(); ++a) {
                for (Eigen::Index b = 0; b < e.cols(); ++b) {
                    const double rhs = rmap::inner(mp.target.metric.g, so.field_value, mp.sff(e.col(a), e.col(b)));
                    EXPECT_NEAR(so.matrix(a, b), rhs, 1e-8);
                    EXPECT_NEAR(so.matrix(a, b), so.matrix(b, a), 1e-8);
                }
            }
        }
    }
}

TEST(ShapeOperator, RejectsTangentialField) {
    const auto s = gallery_scenario("graph_with_kernel");
    const rmap::TargetVectorField tangent(s.map.target(), {"1", "0", "0", "0"});
    try {
        rmap::shape_operator_at(s.map, Vector::Zero(4), tangent);
        FAIL();
    } catch (const rmap::PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("not normal"), std::string::npos);
    }
}

TEST(Involutivity, KernelAndHorizontalDistributions) {
    const auto g = gallery_scenario("graph_with_kernel");
    for (const auto& p : rmap::sample_box(std::vector<rmap::Interval>(4, {-0.9, 0.9}), 50, 21)) {
        EXPECT_LT(rmap::kernel_involutivity_defect_at(g.map, p), 1e-6);
    }
    const auto id = gallery_scenario("identity_c2");
    EXPECT_EQ(rmap::kernel_involutivity_defect_at(id.map, vec({0.1, 0.2, 0.3, 0.4})), 0.0);

    // horizontal space of (x,y,z) -> (x,y) under a twisted metric is spanned by
    // d_x - y d_z and d_y, whose bracket d_z is vertical
    rmap::TextGrid twisted = {{"1 + y^2", "0", "y"}, {"0", "1", "0"}, {"y", "0", "1"}};
    const rmap::SmoothMap proj(rmap::ChartManifold(spec({"x", "y", "z"}, twisted)),
                               rmap::ChartManifold(spec({"a", "b"}, diag({"1 + a^2", "1"}))), {"x", "y"});
    const Vector p = vec({0.1, 0.3, -0.2});
    EXPECT_LT(rmap::kernel_involutivity_defect_at(proj, p), 1e-8);
    EXPECT_GT(rmap::horizontal_involutivity_defect_at(proj, p), 0.5);
}

TEST(Involutivity, RankChangeAcrossStencilIsReported) {
    const rmap::SmoothMap fold(rmap::ChartManifold(spec({"x", "y"}, diag({"1", "1"}))),
                               rmap::ChartManifold(spec({"a"}, diag({"1"}))), {"x^2"});
    EXPECT_THROW(rmap::kernel_involutivity_defect_at(fold, vec({0, 0.2})), rmap::StructuralError);
}

}  // namespace
