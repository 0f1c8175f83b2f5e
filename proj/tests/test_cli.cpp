#include <rmap/cli.hpp>
#include <rmap/gallery.hpp>
#include <rmap/manifest.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = rmap::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("rmap_cli_test_" + name);
}

TEST(Cli, PaperExampleExitsZeroWithTable) {
    const auto r = cli({"check", "gallery:paper_example", "--points", "100", "--seed", "42"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("gauss_equation"), std::string::npos);
    EXPECT_NE(r.out.find("suite: pass, expectations met"), std::string::npos) << r.out;
}

TEST(Cli, NegativeControlsMatchTheirExpectations) {
    for (const char* name : {"anti_holomorphic", "non_riemannian", "non_kahler_source"}) {
        const auto r = cli({"check", std::string("gallery:") + name});
        EXPECT_EQ(r.code, 0) << name << r.out << r.err;
        EXPECT_NE(r.out.find("suite: fail, expectations met"), std::string::npos) << r.out;
    }
}

TEST(Cli, UnmetExpectationExitsOne) {
    auto m = rmap::builtin_scenario("anti_holomorphic");
    m.expectations["holomorphic"] = rmap::Outcome::Pass;
    const auto path = temp_path("unmet.json");
    std::ofstream(path) << rmap::serialize_manifest(m);
    const auto r = cli({"check", path.string(), "--points", "5"});
    EXPECT_EQ(r.code, 1) << r.err;
    EXPECT_NE(r.out.find("UNEXPECTED"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, ScenarioAndUsageErrorsExitTwo) {
    auto r = cli({"check", "missing.json"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("file not found"), std::string::npos) << r.err;
    EXPECT_EQ(cli({"check", "gallery:nope"}).code, 2);
    EXPECT_EQ(cli({"check", "gallery:paper_example", "--mode", "symbolic"}).code, 2);
    EXPECT_EQ(cli({"check", "gallery:paper_example", "--checks", "lemma_9_9"}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
}

TEST(Cli, ReportsAreByteIdentical) {
    const auto a = temp_path("a.json"), b = temp_path("b.json");
    for (const auto& p : {a, b}) {
        const auto r = cli({"check", "gallery:graph_with_kernel", "--points", "30", "--seed", "7", "--report",
                            p.string(), "--mode", "fd", "--tol", "2e-5"});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    const auto text = slurp(a);
    EXPECT_EQ(text, slurp(b));
    EXPECT_NE(text.find("\"derivative_mode\": \"finite_differences\""), std::string::npos);
    EXPECT_NE(text.find("\"residual\": 2.0000000000000002e-05"), std::string::npos);
    EXPECT_EQ(text.find("generated_at"), std::string::npos);

    ASSERT_EQ(cli({"check", "gallery:graph_with_kernel", "--points", "30", "--seed", "7", "--report", b.string(),
                   "--mode", "fd", "--tol", "2e-5", "--timestamp"})
                  .code,
              0);
    EXPECT_NE(slurp(b).find("generated_at"), std::string::npos);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST(Cli, CheckSubsetAndJobs) {
    const auto r = cli({"check", "gallery:kahler_graph", "--checks", "gauss_equation,holomorphic", "--jobs", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("gauss_equation"), std::string::npos);
    EXPECT_EQ(r.out.find("kernel_involutivity"), std::string::npos);
}

TEST(Cli, GalleryListAndShow) {
    const auto list = cli({"gallery", "list"});
    EXPECT_EQ(list.code, 0);
    for (const auto& n : rmap::gallery_names()) EXPECT_NE(list.out.find(n), std::string::npos) << n;
    EXPECT_NE(list.out.find("holomorphic=fail"), std::string::npos);

    const auto show = cli({"gallery", "show", "kahler_graph"});
    EXPECT_EQ(show.code, 0);
    EXPECT_EQ(rmap::parse_manifest(show.out), rmap::builtin_scenario("kahler_graph"));
}

}  // namespace
