#pragma once

#include "rmap/manifold.hpp"
#include "rmap/smooth_map.hpp"

#include <vector>

namespace rmap {

/// Metric-orthonormal frames for ker F_*, its g1-complement (the horizontal
/// space), range F_* and its g2-complement at one point. Frames are stored as
/// matrix columns; an empty frame has zero columns.
struct TangentSplit {
    Vector point;
    std::size_t rank = 0;
    Vector singular_values;  // of the coordinate jacobian, descending
    Matrix ker_frame;        // m1 x (m1 - r)
    Matrix hor_frame;        // m1 x r
    Matrix range_frame;      // m2 x r, at F(p)
    Matrix normal_frame;     // m2 x (m2 - r), at F(p)
};

inline constexpr double kDefaultRankTolerance = 1e-8;

// Numeric rank: singular values above rank_tol * sigma_max. Throws
// RankAmbiguityError when some singular value lies within a factor 10 of
// that threshold.
std::size_t numeric_rank(const Vector& singular_values, double rank_tol);

// Builds the split from precomputed data. g1 at p, g2 at F(p).
TangentSplit tangent_split(const Vector& p, const Matrix& jacobian, const Matrix& g1, const Matrix& g2,
                           double rank_tol = kDefaultRankTolerance);

TangentSplit tangent_split_at(const SmoothMap& f, const Vector& p, double rank_tol = kDefaultRankTolerance,
                              DerivativeMode mode = DerivativeMode::Jets);

// Gram-Schmidt under the inner product g, picking the remaining candidate of
// largest g-norm first. Returns `count` orthonormal columns or throws
// StructuralError if the candidates do not span that many dimensions.
Matrix orthonormalize(const Matrix& g, const Matrix& candidates, std::size_t count);

/// Second fundamental form of the map, nabla F_*, at one point, stored by
/// coordinate components
///
///     B^a_ij = d_i d_j F^a + G2^a_bc(F(p)) d_i F^b d_j F^c - G1^k_ij d_k F^a.
class SecondFundamentalForm {
public:
    SecondFundamentalForm() = default;
    explicit SecondFundamentalForm(Tensor3 components) : components_(std::move(components)) {}

    // (nabla F_*)(X, Y); bit-symmetric in X and Y.
    Vector operator()(const Vector& x, const Vector& y) const;
    const Tensor3& components() const { return components_; }

private:
    Vector bilinear(const Vector& x, const Vector& y) const;

    Tensor3 components_;  // (alpha, i, j)
};

SecondFundamentalForm second_fundamental_form(const MapHessianData& d, const ConnectionData& source,
                                              const ConnectionData& target);

struct EvalOptions {
    DerivativeMode mode = DerivativeMode::Jets;
    double rank_tol = kDefaultRankTolerance;
};

// Everything map-calculus needs at one source point, computed once.
struct MapPoint {
    Vector point;
    MapHessianData differential;
    PointGeometry source;  // at p
    PointGeometry target;  // at F(p)
    TangentSplit split;
    SecondFundamentalForm sff;
    bool image_in_target_domain = true;
};

MapPoint evaluate_map_point(const SmoothMap& f, const Vector& p, const EvalOptions& options = {});

Vector second_fund_form_at(const SmoothMap& f, const Vector& p, const Vector& x, const Vector& y,
                           const EvalOptions& options = {});

// max_ab |g2(F_* e_a, F_* e_b) - g1(e_a, e_b)| over the horizontal frame.
double riemannian_defect(const MapPoint& mp);
double riemannian_defect_at(const SmoothMap& f, const Vector& p, const EvalOptions& options = {});

// max |J2(F(p)) A - A J1(p)|. Throws PreconditionError if either side lacks J.
double holomorphy_defect(const MapPoint& mp);
double holomorphy_defect_at(const SmoothMap& f, const Vector& p, const EvalOptions& options = {});

struct Tension {
    Vector tau;   // full tension field
    Vector tau1;  // trace over ker F_*
    Vector tau2;  // trace over the horizontal space
};

Tension tension(const SecondFundamentalForm& sff, const Matrix& ker_frame, const Matrix& hor_frame);
Tension tension(const MapPoint& mp);
Tension tension_at(const SmoothMap& f, const Vector& p, const EvalOptions& options = {});

/// Shape operator S_V of a normal field V along F, restricted to the
/// horizontal frame {e_a}.
struct ShapeOperatorResult {
    Matrix matrix;                         // (a, b) = g2(S_V F_* e_a, F_* e_b)
    std::vector<Vector> tangential;        // S_V F_* e_a
    std::vector<Vector> normal_derivative; // nabla^perp_{e_a} V
    Vector field_value;                    // V(F(p))
    double tangency = 0.0;                 // |range-projection of V(F(p))|_g2
};

// Throws PreconditionError when V(F(p)) has a range component above 1e-8
// (relative to |V|).
ShapeOperatorResult shape_operator(const MapPoint& mp, const TargetVectorField& v,
                                   DerivativeMode mode = DerivativeMode::Jets);
ShapeOperatorResult shape_operator_at(const SmoothMap& f, const Vector& p, const TargetVectorField& v,
                                      const EvalOptions& options = {});

// H = (1/r) sum_a (nabla F_*)(e_a, e_a). Throws PreconditionError for r = 0.
Vector mean_curvature_range(const MapPoint& mp);
Vector mean_curvature_range_at(const SmoothMap& f, const Vector& p, const EvalOptions& options = {});

// g1-orthogonal projector onto ker F_* at p (P v = sum_i g1(v, k_i) k_i).
Matrix kernel_projector_at(const SmoothMap& f, const Vector& p, std::size_t expected_rank,
                           const EvalOptions& options = {});

inline constexpr double kBracketStep = 1e-5;

// Lie-bracket defect of the kernel distribution, max over coordinate pairs
// of |(I - P)[P d_i, P d_j]|_g1, with derivatives of P by central differences.
// Throws StructuralError if the rank changes across the stencil.
double kernel_involutivity_defect_at(const SmoothMap& f, const Vector& p, const EvalOptions& options = {});

// Same for the horizontal distribution (projector I - P).
double horizontal_involutivity_defect_at(const SmoothMap& f, const Vector& p, const EvalOptions& options = {});

}  // namespace rmap
