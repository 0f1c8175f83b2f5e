#pragma once

#include "rmap/map_calculus.hpp"
#include "rmap/smooth_map.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rmap {

enum class Outcome { Pass, Fail, Skipped };

std::string_view to_string(Outcome outcome);
std::optional<Outcome> parse_outcome(std::string_view text);

struct Tolerances {
    double residual = 1e-8;      // absolute
    double relative = 1e-7;      // times the identity's term scale
    double rank = kDefaultRankTolerance;
    double involutivity = 1e-6;  // bracket defects use finite differences

    // residual defaults to 1e-8 with jets and 1e-5 with finite differences
    static Tolerances defaults_for(DerivativeMode mode);

    double threshold(double scale) const { return std::max(residual, relative * scale); }
};

// One check at one point. For evaluated results passed == (residual <= tolerance).
struct CheckResult {
    std::string check_id;
    std::size_t point_index = 0;
    Vector point;
    double residual = 0.0;
    double scale = 0.0;
    double tolerance = 0.0;
    bool passed = true;
    bool skipped = false;
    std::string details;  // diagnostics, or the violated hypothesis when skipped
};

struct CheckSettings {
    DerivativeMode mode = DerivativeMode::Jets;
    Tolerances tolerances{};
    bool hypothesis_gating = true;  // false: diagnostic mode, run identities regardless
    std::uint64_t seed = 0;         // seeds the per-point direction samples
    std::size_t random_directions = 3;
    std::vector<TargetVectorField> normal_fields;  // for the shape-operator check
};

// Registered check identifiers, in report order.
const std::vector<std::string>& check_names();
bool is_known_check(std::string_view name);

using PointSet = std::span<const Vector>;

// Structural checks
std::vector<CheckResult> check_rank_constancy(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_riemannian_map(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_holomorphic(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_almost_hermitian(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_kahler_source(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_kahler_target(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_kernel_involutivity(const SmoothMap& f, PointSet points, const CheckSettings& s);

// Identities, each gated on its hypotheses
std::vector<CheckResult> check_sff_range_orthogonality(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_gauss_equation(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_shape_operator_duality(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_complex_invariance(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_kahler_sff_commutation(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_holomorphic_curvature_identity(const SmoothMap& f, PointSet points,
                                                              const CheckSettings& s);
std::vector<CheckResult> check_harmonicity_minimality(const SmoothMap& f, PointSet points, const CheckSettings& s);
std::vector<CheckResult> check_space_form_criterion(const SmoothMap& f, PointSet points, const CheckSettings& s);

// Runs one registered check by name.
std::vector<CheckResult> run_check(std::string_view name, const SmoothMap& f, PointSet points, const CheckSettings& s);

// -- suites -------------------------------------------------------------------

struct CheckAggregate {
    std::string check_id;
    Outcome outcome = Outcome::Pass;
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    double max_residual = 0.0;   // over evaluated points
    double mean_residual = 0.0;  // over evaluated points
    double max_scale = 0.0;
    std::vector<std::string> skip_reasons;  // distinct, in first-seen order
    std::vector<CheckResult> failures;
    std::optional<Outcome> expected;
    bool matches_expectation = true;
};

enum class SuiteOutcome { Pass, PassWithSkips, Fail };
std::string_view to_string(SuiteOutcome outcome);

struct CheckReport {
    std::string scenario;
    DerivativeMode mode = DerivativeMode::Jets;
    std::uint64_t seed = 0;
    std::size_t point_count = 0;
    Tolerances tolerances{};
    bool hypothesis_gating = true;
    std::vector<CheckAggregate> checks;
    std::vector<std::string> warnings;
    SuiteOutcome outcome = SuiteOutcome::Pass;
    bool expectations_met = true;
    std::optional<std::string> generated_at;  // excluded from determinism

    const CheckAggregate* find(std::string_view check_id) const;
};

struct Scenario {
    std::string name;
    SmoothMap map;
    std::vector<TargetVectorField> normal_fields;
    std::vector<Vector> points;
    // Checks not listed are expected to pass or skip.
    std::map<std::string, Outcome> expectations;
};

struct SuiteOptions {
    DerivativeMode mode = DerivativeMode::Jets;
    Tolerances tolerances{};
    bool hypothesis_gating = true;
    std::uint64_t seed = 0;
    std::vector<std::string> checks;  // empty: every registered check
    unsigned jobs = 1;                // worker threads for per-point evaluation
};

// Scenario problems (unknown check, non-SPD metric, rank ambiguity, ...)
// throw before any check result is produced.
CheckReport run_suite(const Scenario& scenario, const SuiteOptions& options);

CheckAggregate aggregate(std::string check_id, const std::vector<CheckResult>& results);

}  // namespace rmap
