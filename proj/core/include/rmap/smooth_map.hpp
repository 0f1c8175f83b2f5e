#pragma once

#include "rmap/manifold.hpp"

#include <string>
#include <vector>

namespace rmap {

/// A smooth map F between two charts, given by one expression per target
/// coordinate, each written in the source coordinates.
class SmoothMap {
public:
    // Throws StructuralError when the component count does not match the
    // target dimension; parse errors propagate.
    SmoothMap(ChartManifold source, ChartManifold target, std::vector<std::string> components);

    const ChartManifold& source() const { return source_; }
    const ChartManifold& target() const { return target_; }
    const std::vector<expr::Expr>& components() const { return components_; }
    const std::vector<std::string>& component_text() const { return text_; }

    Vector value_at(const Vector& p) const;

private:
    ChartManifold source_;
    ChartManifold target_;
    std::vector<std::string> text_;
    std::vector<expr::Expr> components_;
};

// Raw jets of F at a point.
struct MapHessianData {
    Vector value;                 // F(p)
    Matrix jacobian;              // (alpha, i) = d_i F^alpha
    std::vector<Matrix> hessians; // [alpha](i, j) = d_i d_j F^alpha
};

MapHessianData differential_at(const SmoothMap& f, const Vector& p, DerivativeMode mode = DerivativeMode::Jets);

// A vector field on the target chart, one expression per target coordinate.
class TargetVectorField {
public:
    TargetVectorField(const ChartManifold& target, std::vector<std::string> components);

    const std::vector<std::string>& component_text() const { return text_; }
    Vector value_at(const Vector& q) const;
    // (alpha, beta) = d_beta V^alpha
    Matrix jacobian_at(const Vector& q, DerivativeMode mode = DerivativeMode::Jets) const;

private:
    std::vector<std::string> text_;
    std::vector<expr::Expr> components_;
};

}  // namespace rmap
