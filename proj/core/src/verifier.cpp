#include "rmap/verifier.hpp"

#include "point_context.hpp"
#include "rmap/error.hpp"

#include <algorithm>
#include <cstdio>

namespace rmap {

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Skipped: return "skip";
    }
    return "unknown";
}

std::optional<Outcome> parse_outcome(std::string_view text) {
    if (text == "pass") return Outcome::Pass;
    if (text == "fail") return Outcome::Fail;
    if (text == "skip" || text == "skipped") return Outcome::Skipped;
    return std::nullopt;
}

std::string_view to_string(SuiteOutcome outcome) {
    switch (outcome) {
        case SuiteOutcome::Pass: return "pass";
        case SuiteOutcome::PassWithSkips: return "pass_with_skips";
        case SuiteOutcome::Fail: return "fail";
    }
    return "unknown";
}

Tolerances Tolerances::defaults_for(DerivativeMode mode) {
    Tolerances t;
    if (mode == DerivativeMode::FiniteDifferences) {
        t.residual = 1e-5;
    }
    return t;
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "rank_constancy",
        "riemannian_map",
        "holomorphic",
        "almost_hermitian",
        "kahler_source",
        "kahler_target",
        "sff_range_orthogonality",
        "gauss_equation",
        "shape_operator_duality",
        "complex_invariance",
        "kahler_sff_commutation",
        "holomorphic_curvature_identity",
        "harmonicity_minimality",
        "space_form_criterion",
        "kernel_involutivity",
    };
    return names;
}

bool is_known_check(std::string_view name) {
    const auto& names = check_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

std::vector<CheckResult> run_on_contexts(std::string_view name, const SmoothMap& f,
                                         const std::vector<detail::PointContext>& contexts, const CheckSettings& s) {
    if (name == "rank_constancy") {
        return detail::rank_constancy(contexts);
    }
    const auto fn = detail::point_check(name);
    if (fn == nullptr) {
        throw Error("unknown check '" + std::string(name) + "'");
    }
    std::vector<CheckResult> out;
    out.reserve(contexts.size());
    for (const auto& ctx : contexts) {
        out.push_back(fn(f, ctx, s));
    }
    return out;
}

}  // namespace

std::vector<CheckResult> run_check(std::string_view name, const SmoothMap& f, PointSet points, const CheckSettings& s) {
    if (!is_known_check(name)) {
        throw Error("unknown check '" + std::string(name) + "'");
    }
    const auto contexts = detail::make_contexts(f, points, s, 1);
    return run_on_contexts(name, f, contexts, s);
}

#define RMAP_CHECK_WRAPPER(id)                                                                         \
    std::vector<CheckResult> check_##id(const SmoothMap& f, PointSet points, const CheckSettings& s) { \
        return run_check(#id, f, points, s);                                                           \
    }

RMAP_CHECK_WRAPPER(rank_constancy)
RMAP_CHECK_WRAPPER(riemannian_map)
RMAP_CHECK_WRAPPER(holomorphic)
RMAP_CHECK_WRAPPER(almost_hermitian)
RMAP_CHECK_WRAPPER(kahler_source)
RMAP_CHECK_WRAPPER(kahler_target)
RMAP_CHECK_WRAPPER(kernel_involutivity)
RMAP_CHECK_WRAPPER(sff_range_orthogonality)
RMAP_CHECK_WRAPPER(gauss_equation)
RMAP_CHECK_WRAPPER(shape_operator_duality)
RMAP_CHECK_WRAPPER(complex_invariance)
RMAP_CHECK_WRAPPER(kahler_sff_commutation)
RMAP_CHECK_WRAPPER(holomorphic_curvature_identity)
RMAP_CHECK_WRAPPER(harmonicity_minimality)
RMAP_CHECK_WRAPPER(space_form_criterion)

#undef RMAP_CHECK_WRAPPER

CheckAggregate aggregate(std::string check_id, const std::vector<CheckResult>& results) {
    CheckAggregate agg;
    agg.check_id = std::move(check_id);
    agg.total = results.size();
    double sum = 0.0;
    for (const auto& r : results) {
        if (r.skipped) {
            ++agg.skipped;
            if (std::find(agg.skip_reasons.begin(), agg.skip_reasons.end(), r.details) == agg.skip_reasons.end()) {
                agg.skip_reasons.push_back(r.details);
            }
            continue;
        }
        sum += r.residual;
        agg.max_residual = std::max(agg.max_residual, r.residual);
        agg.max_scale = std::max(agg.max_scale, r.scale);
        if (r.passed) {
            ++agg.passed;
        } else {
            ++agg.failed;
            agg.failures.push_back(r);
        }
    }
    const std::size_t evaluated = agg.passed + agg.failed;
    agg.mean_residual = evaluated > 0 ? sum / static_cast<double>(evaluated) : 0.0;
    if (agg.failed > 0) {
        agg.outcome = Outcome::Fail;
    } else if (agg.total > 0 && agg.skipped == agg.total) {
        agg.outcome = Outcome::Skipped;
    } else {
        agg.outcome = Outcome::Pass;
    }
    return agg;
}

const CheckAggregate* CheckReport::find(std::string_view check_id) const {
    for (const auto& c : checks) {
        if (c.check_id == check_id) {
            return &c;
        }
    }
    return nullptr;
}

CheckReport run_suite(const Scenario& scenario, const SuiteOptions& options) {
    std::vector<std::string> selected;
    if (options.checks.empty()) {
        selected = check_names();
    } else {
        std::vector<std::string> unknown;
        for (const auto& name : options.checks) {
            if (!is_known_check(name)) {
                unknown.push_back(name);
            }
        }
        if (!unknown.empty()) {
            std::string msg = "unknown check";
            msg += unknown.size() > 1 ? "s: " : ": ";
            for (std::size_t i = 0; i < unknown.size(); ++i) {
                msg += (i ? ", " : "") + unknown[i];
            }
            throw Error(msg);
        }
        // report order, not request order
        for (const auto& name : check_names()) {
            if (std::find(options.checks.begin(), options.checks.end(), name) != options.checks.end()) {
                selected.push_back(name);
            }
        }
    }

    CheckSettings settings;
    settings.mode = options.mode;
    settings.tolerances = options.tolerances;
    settings.hypothesis_gating = options.hypothesis_gating;
    settings.seed = options.seed;
    settings.normal_fields = scenario.normal_fields;

    const auto contexts = detail::make_contexts(scenario.map, scenario.points, settings, options.jobs);

    CheckReport report;
    report.scenario = scenario.name;
    report.mode = options.mode;
    report.seed = options.seed;
    report.point_count = scenario.points.size();
    report.tolerances = options.tolerances;
    report.hypothesis_gating = options.hypothesis_gating;

    for (const auto& ctx : contexts) {
        if (!ctx.mp.image_in_target_domain) {
            report.warnings.push_back("point " + std::to_string(ctx.index) + " " + format_point(ctx.mp.point) +
                                      " maps outside the target domain box");
        }
    }

    bool any_fail = false;
    bool any_skip = false;
    for (const auto& name : selected) {
        auto agg = aggregate(name, run_on_contexts(name, scenario.map, contexts, settings));
        if (const auto it = scenario.expectations.find(name); it != scenario.expectations.end()) {
            agg.expected = it->second;
            agg.matches_expectation = agg.outcome == it->second;
        } else {
            agg.matches_expectation = agg.outcome != Outcome::Fail;
        }
        any_fail = any_fail || agg.outcome == Outcome::Fail;
        any_skip = any_skip || agg.skipped > 0;
        report.expectations_met = report.expectations_met && agg.matches_expectation;
        report.checks.push_back(std::move(agg));
    }
    report.outcome = any_fail ? SuiteOutcome::Fail : any_skip ? SuiteOutcome::PassWithSkips : SuiteOutcome::Pass;
    return report;
}

}  // namespace rmap
