#include "oracle.hpp"

#include <rmap/expr.hpp>
#include <rmap/gallery.hpp>
#include <rmap/map_calculus.hpp>
#include <rmap/sampling.hpp>
#include <rmap/verifier.hpp>

#include <gtest/gtest.h>

#include <cmath>

using rmap::Matrix;
using rmap::Vector;

namespace {

const std::vector<std::string> kCoords = {"x", "y", "u"};

// Random expression over x, y, u that stays finite on [-1, 1]^3.
std::string random_expr(rmap::SplitMix64& rng, int depth) {
    const auto pick = [&](int n) { return static_cast<int>(rng.next() % static_cast<std::uint64_t>(n)); };
    if (depth == 0 || pick(4) == 0) {
        switch (pick(3)) {
            case 0: return kCoords[static_cast<std::size_t>(pick(3))];
            case 1: return std::to_string(pick(9) + 1);
            default: return "0.5";
        }
    }
    const std::string a = random_expr(rng, depth - 1);
    const std::string b = random_expr(rng, depth - 1);
    switch (pick(10)) {
        case 0: return a + " + " + b;
        case 1: return a + " - " + b;
        case 2: return "(" + a + ")*(" + b + ")";
        case 3: return "(" + a + ")/(2 + sin(" + b + "))";
        case 4: return "sin(" + a + ")";
        case 5: return "cos(" + a + ")";
        case 6: return "exp(" + a + "/10)";
        case 7: return "(" + a + ")^2";
        case 8: return "-(" + a + ")^3";
        default: return "sqrt(1 + (" + a + ")^2)";
    }
}

TEST(Properties, JetsMatchCentralDifferences) {
    rmap::SplitMix64 rng(2024);
    const auto points = rmap::sample_box(std::vector<rmap::Interval>(3, {-1, 1}), 100, 99);
    for (int k = 0; k < 20; ++k) {
        const std::string text = random_expr(rng, 4);
        const auto e = rmap::expr::parse(text, kCoords);
        const oracle::Scalar f = [&](const oracle::Vec& p) { return e.value(rmap::as_span(p)); };
        for (const auto& p : points) {
            const auto j = e.jet(rmap::as_span(p));
            const Vector g = oracle::gradient(f, p);
            const Matrix h = oracle::hessian(f, p);
            const double gs = std::max(1.0, g.cwiseAbs().maxCoeff());
            const double hs = std::max(1.0, h.cwiseAbs().maxCoeff());
            ASSERT_LT((j.gradient() - g).cwiseAbs().maxCoeff(), 1e-6 * gs) << text;
            ASSERT_LT((j.hessian() - h).cwiseAbs().maxCoeff(), 1e-4 * hs) << text;
        }
    }
}

TEST(Properties, PrintedExpressionsParseBack) {
    rmap::SplitMix64 rng(77);
    const std::vector<double> p = {0.3, -0.7, 0.2};
    for (int k = 0; k < 200; ++k) {
        const auto e = rmap::expr::parse(random_expr(rng, 5), kCoords);
        const auto again = rmap::expr::parse(e.to_string(), kCoords);
        ASSERT_EQ(again.to_string(), e.to_string());
        ASSERT_EQ(again.value(p), e.value(p));
    }
}

class GalleryProperty : public ::testing::TestWithParam<std::string> {};

TEST_P(GalleryProperty, SecondFundamentalFormIsSymmetricBilinear) {
    const auto s = rmap::build_scenario(rmap::builtin_scenario(GetParam()));
    const auto n = static_cast<Eigen::Index>(s.map.source().dim());
    rmap::SplitMix64 rng(3);
    for (std::size_t i = 0; i < 10; ++i) {
        const auto mp = rmap::evaluate_map_point(s.map, s.points[i]);
        Vector x(n), y(n), z(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            x(k) = rng.uniform(-1, 1);
            y(k) = rng.uniform(-1, 1);
            z(k) = rng.uniform(-1, 1);
        }
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        const Vector lhs = mp.sff(a * x + b * y, z);
        const Vector rhs = a * mp.sff(x, z) + b * mp.sff(y, z);
        const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
        EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-13 * scale);
        EXPECT_EQ(mp.sff(x, z), mp.sff(z, x));
    }
}

TEST_P(GalleryProperty, TensionIsFrameIndependent) {
    const auto s = rmap::build_scenario(rmap::builtin_scenario(GetParam()));
    rmap::SplitMix64 rng(8);
    const auto random_rotation = [&](Eigen::Index k) {
        Matrix m(k, k);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-1, 1);
        return Matrix(Eigen::HouseholderQR<Matrix>(m).householderQ());
    };
    for (std::size_t i = 0; i < 10; ++i) {
        const auto mp = rmap::evaluate_map_point(s.map, s.points[i]);
        const auto& sp = mp.split;
        const auto base = rmap::tension(mp);
        const Matrix ker = sp.ker_frame * random_rotation(sp.ker_frame.cols());
        const Matrix hor = sp.hor_frame * random_rotation(sp.hor_frame.cols());
        const auto turned = rmap::tension(mp.sff, ker, hor);
        EXPECT_LT((turned.tau - base.tau).norm(), 1e-10);
        EXPECT_LT((turned.tau1 - base.tau1).norm(), 1e-10);
        EXPECT_LT((turned.tau2 - base.tau2).norm(), 1e-10);
        if (sp.rank > 0) {
            const Vector h = turned.tau2 / static_cast<double>(sp.rank);
            EXPECT_LT((h - rmap::mean_curvature_range(mp)).norm(), 1e-10);
        }
    }
}

TEST_P(GalleryProperty, SecondFundamentalFormAgreesAcrossModes) {
    const auto s = rmap::build_scenario(rmap::builtin_scenario(GetParam()));
    for (std::size_t i = 0; i < 20; ++i) {
        const auto jets = rmap::evaluate_map_point(s.map, s.points[i]);
        const auto fd = rmap::evaluate_map_point(s.map, s.points[i], {rmap::DerivativeMode::FiniteDifferences});
        const auto& a = jets.sff.components().data();
        const auto& b = fd.sff.components().data();
        for (std::size_t k = 0; k < a.size(); ++k) ASSERT_NEAR(a[k], b[k], 1e-5);
    }
}

TEST_P(GalleryProperty, ResidualsAgreeAcrossModes) {
    auto m = rmap::builtin_scenario(GetParam());
    const auto jets = rmap::run_suite(rmap::build_scenario(m), rmap::suite_options(m));
    m.mode = rmap::DerivativeMode::FiniteDifferences;
    const auto fd = rmap::run_suite(rmap::build_scenario(m), rmap::suite_options(m));
    ASSERT_EQ(jets.checks.size(), fd.checks.size());
    for (std::size_t i = 0; i < jets.checks.size(); ++i) {
        EXPECT_EQ(jets.checks[i].outcome, fd.checks[i].outcome) << jets.checks[i].check_id;
        EXPECT_LT(std::abs(jets.checks[i].max_residual - fd.checks[i].max_residual), 1e-4)
            << jets.checks[i].check_id;
    }
}

INSTANTIATE_TEST_SUITE_P(Gallery, GalleryProperty, ::testing::ValuesIn(rmap::gallery_names()),
                         [](const auto& info) { return info.param; });

}  // namespace
