#pragma once

#include "rmap/verifier.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace rmap::detail {

// Per-point data shared by every check, computed once per sampled point.
struct PointContext {
    std::size_t index = 0;
    MapPoint mp;
    Matrix pushed_hor;                        // F_* e_a as columns
    std::vector<std::vector<Vector>> sff_hor; // (nabla F_*)(e_a, e_b)

    double riemannian_defect = 0.0;
    double riemannian_scale = 0.0;
    std::optional<double> holomorphy_defect;
    double holomorphy_scale = 0.0;
    std::optional<AlmostHermitianDefects> source_hermitian;
    std::optional<AlmostHermitianDefects> target_hermitian;
    std::optional<double> source_kahler;
    double source_kahler_scale = 0.0;
    std::optional<double> target_kahler;
    double target_kahler_scale = 0.0;
    double target_curvature_max = 0.0;

    std::vector<Vector> horizontal_samples;  // g1-unit horizontal vectors
};

PointContext make_context(const SmoothMap& f, const Vector& p, std::size_t index, const CheckSettings& s);

enum class Hypothesis {
    Riemannian,
    Holomorphic,
    SourceAlmostHermitian,
    TargetAlmostHermitian,
    SourceKahler,
    TargetKahler,
    TargetFlat,
    HorizontalInvolutive,
};

// Name of the first violated hypothesis, or nullopt. Presence of complex
// structures is required even when gating is off.
std::optional<std::string> violated(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s,
                                    std::initializer_list<Hypothesis> hypotheses);

using PointCheck = CheckResult (*)(const SmoothMap&, const PointContext&, const CheckSettings&);

// nullptr for rank_constancy, which compares points against each other.
PointCheck point_check(std::string_view name);

std::vector<CheckResult> rank_constancy(const std::vector<PointContext>& contexts);

std::vector<PointContext> make_contexts(const SmoothMap& f, PointSet points, const CheckSettings& s, unsigned jobs);

}  // namespace rmap::detail
