#include "rmap/report.hpp"

#include "json_text.hpp"

#include <algorithm>
#include <cstdio>

namespace rmap {
namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

void write_tolerances(detail::JsonWriter& w, const Tolerances& t) {
    w.begin_object();
    w.key("residual");
    w.value(t.residual);
    w.key("relative");
    w.value(t.relative);
    w.key("rank");
    w.value(t.rank);
    w.key("involutivity");
    w.value(t.involutivity);
    w.end_object();
}

}  // namespace

std::string report_json(const CheckReport& report) {
    detail::JsonWriter w;
    w.begin_object();
    w.key("scenario");
    w.value(report.scenario);
    w.key("derivative_mode");
    w.value(to_string(report.mode));
    w.key("seed");
    w.value(report.seed);
    w.key("points");
    w.value(static_cast<std::uint64_t>(report.point_count));
    w.key("hypothesis_gating");
    w.value(report.hypothesis_gating);
    w.key("tolerances");
    write_tolerances(w, report.tolerances);
    w.key("outcome");
    w.value(to_string(report.outcome));
    w.key("expectation_matched");
    w.value(report.expectations_met);
    w.key("warnings");
    w.inline_array(report.warnings);
    w.key("checks");
    w.begin_array();
    for (const auto& c : report.checks) {
        w.begin_object();
        w.key("id");
        w.value(c.check_id);
        w.key("outcome");
        w.value(to_string(c.outcome));
        w.key("expected");
        if (c.expected) {
            w.value(to_string(*c.expected));
        } else {
            w.null();
        }
        w.key("matches_expectation");
        w.value(c.matches_expectation);
        w.key("evaluated");
        w.value(static_cast<std::uint64_t>(c.passed + c.failed));
        w.key("passed");
        w.value(static_cast<std::uint64_t>(c.passed));
        w.key("failed");
        w.value(static_cast<std::uint64_t>(c.failed));
        w.key("skipped");
        w.value(static_cast<std::uint64_t>(c.skipped));
        w.key("max_residual");
        w.value(c.max_residual);
        w.key("mean_residual");
        w.value(c.mean_residual);
        w.key("max_scale");
        w.value(c.max_scale);
        w.key("skip_reasons");
        w.inline_array(c.skip_reasons);
        w.key("failures");
        w.begin_array();
        for (const auto& f : c.failures) {
            w.begin_object();
            w.key("point_index");
            w.value(static_cast<std::uint64_t>(f.point_index));
            w.key("point");
            w.inline_array(to_std(f.point));
            w.key("residual");
            w.value(f.residual);
            w.key("scale");
            w.value(f.scale);
            w.key("tolerance");
            w.value(f.tolerance);
            w.key("details");
            w.value(f.details);
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    if (report.generated_at) {
        w.key("generated_at");
        w.value(*report.generated_at);
    }
    w.end_object();
    return w.take();
}

std::string summary_table(const CheckReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "scenario %s  mode %s  seed %llu  points %zu%s\n", report.scenario.c_str(),
                  std::string(to_string(report.mode)).c_str(), static_cast<unsigned long long>(report.seed),
                  report.point_count, report.hypothesis_gating ? "" : "  (diagnostic: hypothesis gating off)");
    out += line;

    std::size_t width = 5;
    for (const auto& c : report.checks) {
        width = std::max(width, c.check_id.size());
    }
    std::snprintf(line, sizeof line, "%-*s  %-7s %-8s %7s %7s %7s  %-12s %s\n", static_cast<int>(width), "check",
                  "outcome", "expected", "pass", "fail", "skip", "max_resid", "note");
    out += line;
    for (const auto& c : report.checks) {
        const std::string expected = c.expected ? std::string(to_string(*c.expected)) : "-";
        const bool evaluated = c.passed + c.failed > 0;
        char resid[32] = "-";
        if (evaluated) {
            std::snprintf(resid, sizeof resid, "%.3e", c.max_residual);
        }
        std::string note = c.matches_expectation ? "" : "UNEXPECTED";
        if (c.outcome == Outcome::Skipped && !c.skip_reasons.empty()) {
            note += (note.empty() ? "" : "; ") + c.skip_reasons.front();
        }
        std::snprintf(line, sizeof line, "%-*s  %-7s %-8s %7zu %7zu %7zu  %-12s ", static_cast<int>(width),
                      c.check_id.c_str(), std::string(to_string(c.outcome)).c_str(), expected.c_str(), c.passed,
                      c.failed, c.skipped, resid);
        out += line;
        out += note;
        out += '\n';
    }
    for (const auto& warning : report.warnings) {
        out += "warning: " + warning + '\n';
    }
    out += "suite: " + std::string(to_string(report.outcome)) + ", expectations " +
           (report.expectations_met ? "met" : "NOT met") + '\n';
    return out;
}

}  // namespace rmap
