#include "rmap/cli.hpp"

#include "rmap/error.hpp"
#include "rmap/gallery.hpp"
#include "rmap/manifest.hpp"
#include "rmap/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>

namespace rmap {
namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

struct CheckArgs {
    std::string scenario;
    std::optional<std::size_t> points;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<double> rel_tol;
    std::string mode;
    std::string report_path;
    std::vector<std::string> checks;
    bool timestamp = false;
    unsigned jobs = 1;
};

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ScenarioManifest resolve_scenario(const std::string& ref) {
    constexpr std::string_view prefix = "gallery:";
    if (ref.rfind(prefix, 0) == 0) {
        return builtin_scenario(ref.substr(prefix.size()));
    }
    return load_manifest(ref);
}

int run_check_command(const CheckArgs& a, std::ostream& out, std::ostream& err) {
    ScenarioManifest m = resolve_scenario(a.scenario);
    if (a.points) {
        m.sampling.mode = SamplingSpec::Mode::Random;
        m.sampling.count = *a.points;
        m.sampling.points.clear();
    }
    if (a.seed) {
        m.sampling.seed = *a.seed;
    }
    if (a.mode == "ad") {
        m.mode = DerivativeMode::Jets;
    } else if (a.mode == "fd") {
        m.mode = DerivativeMode::FiniteDifferences;
    }
    if (a.tol) {
        m.tolerances.residual = *a.tol;
    }
    if (a.rel_tol) {
        m.tolerances.relative = *a.rel_tol;
    }
    if (!a.checks.empty() && !(a.checks.size() == 1 && a.checks[0] == "all")) {
        m.checks = a.checks;
    }

    const Scenario scenario = build_scenario(m);
    SuiteOptions options = suite_options(m);
    options.jobs = std::max(1u, a.jobs);
    CheckReport report = run_suite(scenario, options);
    if (a.timestamp) {
        report.generated_at = utc_now();
    }

    out << summary_table(report);
    if (!a.report_path.empty()) {
        std::ofstream file(a.report_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write report to " << a.report_path << '\n';
            return kExitError;
        }
        file << report_json(report);
    }
    return report.expectations_met ? 0 : kExitMismatch;
}

void print_gallery(std::ostream& out) {
    for (const auto& e : gallery()) {
        out << e.name << "\n  " << e.description << "\n  note: " << e.literature_note << "\n  expects: ";
        std::vector<std::string> parts;
        for (const auto& name : check_names()) {
            const auto it = e.expectations.find(name);
            if (it != e.expectations.end() && it->second != Outcome::Pass) {
                parts.push_back(name + "=" + std::string(to_string(it->second)));
            }
        }
        if (parts.empty()) {
            out << "all pass";
        } else {
            for (std::size_t i = 0; i < parts.size(); ++i) {
                out << (i ? ", " : "") << parts[i];
            }
            out << ", others pass";
        }
        out << '\n';
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks for holomorphic Riemannian maps", "rmap"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Run the check suite on a manifest or gallery:<name>");
    check_cmd->add_option("scenario", check.scenario, "Manifest path or gallery:<name>")->required();
    check_cmd->add_option("--points", check.points, "Number of random sample points")->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", check.seed, "Sampling seed");
    check_cmd->add_option("--tol", check.tol, "Absolute residual tolerance")->check(CLI::PositiveNumber);
    check_cmd->add_option("--rel-tol", check.rel_tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
    check_cmd->add_option("--mode", check.mode, "Derivative mode")->check(CLI::IsMember({"ad", "fd"}));
    check_cmd->add_option("--report", check.report_path, "Write the JSON report to this path");
    check_cmd->add_option("--checks", check.checks, "Comma separated subset of checks")->delimiter(',');
    check_cmd->add_flag("--timestamp", check.timestamp, "Add generated_at to the report");
    check_cmd->add_option("--jobs", check.jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* gallery_cmd = app.add_subcommand("gallery", "Built-in scenarios");
    gallery_cmd->require_subcommand(1);
    gallery_cmd->add_subcommand("list", "List scenarios and their expected outcomes");
    std::string show_name;
    auto* show_cmd = gallery_cmd->add_subcommand("show", "Print a scenario manifest");
    show_cmd->add_option("name", show_name, "Scenario name")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (check_cmd->parsed()) {
            return run_check_command(check, out, err);
        }
        if (show_cmd->parsed()) {
            out << serialize_manifest(builtin_scenario(show_name));
            return 0;
        }
        print_gallery(out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace rmap
