#pragma once

#include "rmap/expr.hpp"
#include "rmap/tensor.hpp"
#include "rmap/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rmap {

using TextGrid = std::vector<std::vector<std::string>>;

// Textual description of a chart, as it appears in scenario manifests.
struct ChartSpec {
    std::vector<std::string> coords;
    TextGrid metric;                            // g_ij, n x n
    std::optional<TextGrid> complex_structure;  // J^i_j (row i, column j), n x n
    std::vector<Interval> domain;               // sampling box, one interval per coordinate

    bool operator==(const ChartSpec&) const = default;
};

/// A single coordinate chart carrying a Riemannian metric and optionally an
/// almost complex structure, both as parsed expressions in the chart
/// coordinates. Immutable after construction.
///
/// Only the upper triangle of the metric grid is kept; g_ji reads g_ij.
class ChartManifold {
public:
    // Parses every entry. Throws ParseError/UnknownIdentifierError for bad
    // expressions and StructuralError for shape problems (non-square grids,
    // odd dimension with a complex structure, asymmetric metric text).
    explicit ChartManifold(ChartSpec spec);

    std::size_t dim() const { return spec_.coords.size(); }
    const std::vector<std::string>& coords() const { return spec_.coords; }
    const std::vector<Interval>& domain() const { return spec_.domain; }
    const ChartSpec& spec() const { return spec_; }

    const expr::Expr& metric(std::size_t i, std::size_t j) const;
    bool has_complex_structure() const { return !complex_structure_.empty(); }
    const expr::Expr& complex_structure(std::size_t i, std::size_t j) const;

    bool in_domain(const Vector& p) const;

private:
    ChartSpec spec_;
    std::vector<expr::Expr> metric_upper_;        // packed upper triangle
    std::vector<expr::Expr> complex_structure_;  // row-major, empty when absent
};

// g, g^-1 and the first and second partial derivatives of g at a point.
struct MetricJet {
    Matrix g;
    Matrix g_inv;
    std::vector<Matrix> dg;   // dg[k](i, j) = d_k g_ij
    std::vector<Matrix> ddg;  // ddg[k * n + l](i, j) = d_k d_l g_ij
};

struct ConnectionData {
    Vector point;
    Tensor3 gamma;  // gamma(k, i, j) = Gamma^k_ij

    // Gamma(X, Y)^k = Gamma^k_ij X^i Y^j
    Vector contract(const Vector& x, const Vector& y) const;
};

// Convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
// with R(d_i, d_j) d_k = R^l_ijk d_l and R_ijkl = g_lm R^m_ijk. Sectional
// curvature g(R(X,Y)Y,X)/|X^Y|^2 is positive on round spheres.
struct CurvatureData {
    Vector point;
    Tensor4 riem_up;    // riem_up(l, i, j, k) = R^l_ijk
    Tensor4 riem_down;  // riem_down(i, j, k, l) = R_ijkl

    // g(R(X,Y)Z, T)
    double evaluate(const Vector& x, const Vector& y, const Vector& z, const Vector& t) const;
};

// Everything geometry-core computes at one point, evaluated in one pass.
struct PointGeometry {
    Vector point;
    MetricJet metric;
    ConnectionData connection;
    CurvatureData curvature;
    std::optional<Matrix> complex_structure;   // J^i_j
    std::vector<Matrix> complex_structure_d;   // [k](i, j) = d_k J^i_j
};

PointGeometry geometry_at(const ChartManifold& m, const Vector& p, DerivativeMode mode = DerivativeMode::Jets);

// Throws StructuralError naming p when g(p) is not positive definite
// (smallest eigenvalue <= 1e-12 * largest).
Matrix metric_at(const ChartManifold& m, const Vector& p);
Matrix inverse_metric_at(const ChartManifold& m, const Vector& p);
MetricJet metric_jet_at(const ChartManifold& m, const Vector& p, DerivativeMode mode = DerivativeMode::Jets);

ConnectionData christoffel_at(const ChartManifold& m, const Vector& p, DerivativeMode mode = DerivativeMode::Jets);
CurvatureData curvature_at(const ChartManifold& m, const Vector& p, DerivativeMode mode = DerivativeMode::Jets);

double sectional_curvature(const PointGeometry& geo, const Vector& x, const Vector& y);
double sectional_curvature(const ChartManifold& m, const Vector& p, const Vector& x, const Vector& y,
                           DerivativeMode mode = DerivativeMode::Jets);

// H(X) = g(R(X,JX)JX, X) / |X|^4. Throws PreconditionError without J or for X = 0.
double holomorphic_sectional_curvature(const PointGeometry& geo, const Vector& x);
double holomorphic_sectional_curvature(const ChartManifold& m, const Vector& p, const Vector& x,
                                       DerivativeMode mode = DerivativeMode::Jets);

struct AlmostHermitianDefects {
    double j_squared = 0.0;      // max |J^2 + I|
    double compatibility = 0.0;  // max |J^T g J - g|
};

AlmostHermitianDefects validate_almost_hermitian(const PointGeometry& geo);
AlmostHermitianDefects validate_almost_hermitian(const ChartManifold& m, const Vector& p);

// max over i,j,k of |(nabla_i J)^k_j|; zero exactly on Kaehler charts.
double kahler_defect(const PointGeometry& geo);
double kahler_defect(const ChartManifold& m, const Vector& p, DerivativeMode mode = DerivativeMode::Jets);

Matrix complex_structure_at(const ChartManifold& m, const Vector& p);

// g-inner product and norm
inline double inner(const Matrix& g, const Vector& a, const Vector& b) { return a.dot(g * b); }
inline double norm(const Matrix& g, const Vector& a) { return std::sqrt(std::max(0.0, inner(g, a, a))); }

std::string format_point(const Vector& p);

}  // namespace rmap
