#include <rmap/error.hpp>
#include <rmap/gallery.hpp>
#include <rmap/manifest.hpp>

#include <gtest/gtest.h>

#include <string>

namespace {

const char* kMinimal = R"({
  "name": "line",
  "source": {"coords": ["x"], "metric": [[1]], "domain": [[-1, 1]]},
  "target": {"coords": ["a", "b"], "metric": [["1", 0], [0, "1"]], "domain": [[-2, 2], [-2, 2]]},
  "map": ["x", "x^2"],
  "sampling": {"mode": "explicit", "points": [[0.5], [-0.25]]},
  "derivative_mode": "finite_differences",
  "tolerances": {"relative": 1e-6},
  "expect": {"riemannian_map": "fail"}
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return text.replace(pos, from.size(), to);
}

std::vector<std::string> problems_of(const std::string& text) {
    try {
        rmap::parse_manifest(text);
    } catch (const rmap::ManifestError& e) {
        return e.problems();
    }
    ADD_FAILURE() << "manifest was accepted";
    return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
    for (const auto& p : problems) {
        if (p.find(needle) != std::string::npos) return true;
    }
    return false;
}

TEST(Manifest, ParsesMinimalDocument) {
    const auto m = rmap::parse_manifest(kMinimal);
    EXPECT_EQ(m.name, "line");
    EXPECT_EQ(m.target.metric[0][1], "0");
    EXPECT_EQ(m.sampling.mode, rmap::SamplingSpec::Mode::Explicit);
    EXPECT_EQ(m.mode, rmap::DerivativeMode::FiniteDifferences);
    EXPECT_TRUE(m.checks.empty());
    EXPECT_EQ(m.expectations.at("riemannian_map"), rmap::Outcome::Fail);

    const auto tol = m.tolerances.resolve(m.mode);
    EXPECT_EQ(tol.residual, 1e-5);
    EXPECT_EQ(tol.relative, 1e-6);

    const auto pts = rmap::manifest_points(m);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[1](0), -0.25);
}

TEST(Manifest, CollectsEveryProblem) {
    std::string text = replace(kMinimal, R"("map": ["x", "x^2"])", R"("map": ["x", "z^2", "1"])");
    text = replace(text, R"("derivative_mode")", R"("checks": ["gauss_equation", "lemma_9_9"], "derivative_mode")");
    text = replace(text, "[-0.25]", "[3.5]");
    const auto problems = problems_of(text);
    EXPECT_TRUE(mentions(problems, "dimension mismatch")) << problems.size();
    EXPECT_TRUE(mentions(problems, "unknown coordinate 'z'"));
    EXPECT_TRUE(mentions(problems, "unknown check 'lemma_9_9'"));
    EXPECT_TRUE(mentions(problems, "valid checks: rank_constancy, riemannian_map"));
    EXPECT_TRUE(mentions(problems, "outside the source domain box"));
    EXPECT_GE(problems.size(), 4u);
}

TEST(Manifest, MapIntoTargetOfWrongDimension) {
    auto m = rmap::builtin_scenario("paper_example");
    m.map.pop_back();
    const auto problems = problems_of(rmap::serialize_manifest(m));
    ASSERT_EQ(problems.size(), 1u);
    EXPECT_NE(problems[0].find("3 components for a target of dimension 4"), std::string::npos) << problems[0];
}

TEST(Manifest, StructuralProblems) {
    EXPECT_TRUE(mentions(problems_of(replace(kMinimal, R"("coords": ["x"], "metric")",
                                             R"("dim": 2, "coords": ["x"], "metric")")),
                         "dimension mismatch"));
    EXPECT_TRUE(mentions(problems_of(replace(kMinimal, "[[-1, 1]]", "[[1, -1]]")), "empty interval"));
    EXPECT_TRUE(mentions(problems_of(replace(kMinimal, R"([["1", 0], [0, "1"]])", R"([["1", "a"], [0, "1"]])")),
                         "not symmetric"));
    EXPECT_TRUE(mentions(problems_of(replace(kMinimal, R"("riemannian_map": "fail")", R"("riemannian_map": "maybe")")),
                         "expected \"pass\", \"fail\" or \"skip\""));
    EXPECT_TRUE(mentions(problems_of(R"({"name": "x"})"), "missing 'source'"));
}

TEST(Manifest, MalformedJsonIsParseError) {
    EXPECT_THROW(rmap::parse_manifest("{\"name\": "), rmap::ParseError);
}

TEST(Manifest, MissingFile) {
    try {
        rmap::load_manifest("definitely/missing.json");
        FAIL();
    } catch (const rmap::Error& e) {
        EXPECT_NE(std::string(e.what()).find("file not found"), std::string::npos);
    }
}

TEST(Manifest, RoundTripIsLossless) {
    for (const auto& name : rmap::gallery_names()) {
        const auto m = rmap::builtin_scenario(name);
        const auto text = rmap::serialize_manifest(m);
        const auto again = rmap::parse_manifest(text);
        EXPECT_EQ(again, m) << name;
        EXPECT_EQ(rmap::serialize_manifest(again), text) << name;
    }
    const auto m = rmap::parse_manifest(kMinimal);
    EXPECT_EQ(rmap::parse_manifest(rmap::serialize_manifest(m)), m);
}

TEST(Manifest, ShippedPaperExampleMatchesGallery) {
    const auto shipped = rmap::load_manifest(std::string(RMAP_SCENARIO_DIR) + "/paper_example.json");
    EXPECT_EQ(shipped, rmap::builtin_scenario("paper_example"));
}

TEST(Gallery, UnknownNameListsEntries) {
    try {
        rmap::builtin_scenario("nope");
        FAIL();
    } catch (const rmap::Error& e) {
        EXPECT_NE(std::string(e.what()).find("paper_example, kahler_graph"), std::string::npos);
    }
    EXPECT_EQ(rmap::gallery().size(), rmap::gallery_names().size());
}

TEST(Gallery, RequiredEntriesExist) {
    for (const char* n : {"paper_example", "kahler_graph", "graph_with_kernel", "flat_submersion",
                          "anti_holomorphic", "non_riemannian", "non_kahler_source"}) {
        EXPECT_NO_THROW(rmap::builtin_scenario(n)) << n;
    }
}

}  // namespace
