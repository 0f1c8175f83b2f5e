#include "rmap/smooth_map.hpp"

#include "rmap/error.hpp"

namespace rmap {

SmoothMap::SmoothMap(ChartManifold source, ChartManifold target, std::vector<std::string> components)
    : source_(std::move(source)), target_(std::move(target)), text_(std::move(components)) {
    if (text_.size() != target_.dim()) {
        throw StructuralError("map has " + std::to_string(text_.size()) + " components but the target has dimension " +
                              std::to_string(target_.dim()));
    }
    components_.reserve(text_.size());
    for (const auto& c : text_) {
        components_.push_back(expr::parse(c, source_.coords()));
    }
}

Vector SmoothMap::value_at(const Vector& p) const {
    Vector out(static_cast<Eigen::Index>(components_.size()));
    for (std::size_t a = 0; a < components_.size(); ++a) {
        out(static_cast<Eigen::Index>(a)) = components_[a].value(as_span(p));
    }
    return out;
}

MapHessianData differential_at(const SmoothMap& f, const Vector& p, DerivativeMode mode) {
    if (static_cast<std::size_t>(p.size()) != f.source().dim()) {
        throw PreconditionError("point dimension does not match the source chart");
    }
    const auto m1 = static_cast<Eigen::Index>(f.source().dim());
    const auto m2 = static_cast<Eigen::Index>(f.target().dim());
    MapHessianData out;
    out.value.resize(m2);
    out.jacobian.resize(m2, m1);
    out.hessians.reserve(static_cast<std::size_t>(m2));
    for (Eigen::Index a = 0; a < m2; ++a) {
        const auto jet = f.components()[static_cast<std::size_t>(a)].jet(as_span(p), mode);
        out.value(a) = jet.value();
        out.jacobian.row(a) = jet.gradient().transpose();
        out.hessians.push_back(jet.hessian());
    }
    return out;
}

TargetVectorField::TargetVectorField(const ChartManifold& target, std::vector<std::string> components)
    : text_(std::move(components)) {
    if (text_.size() != target.dim()) {
        throw StructuralError("vector field has " + std::to_string(text_.size()) +
                              " components but the target has dimension " + std::to_string(target.dim()));
    }
    for (const auto& c : text_) {
        components_.push_back(expr::parse(c, target.coords()));
    }
}

Vector TargetVectorField::value_at(const Vector& q) const {
    Vector out(static_cast<Eigen::Index>(components_.size()));
    for (std::size_t a = 0; a < components_.size(); ++a) {
        out(static_cast<Eigen::Index>(a)) = components_[a].value(as_span(q));
    }
    return out;
}

Matrix TargetVectorField::jacobian_at(const Vector& q, DerivativeMode mode) const {
    const auto n = static_cast<Eigen::Index>(components_.size());
    Matrix out(n, q.size());
    for (Eigen::Index a = 0; a < n; ++a) {
        out.row(a) = components_[static_cast<std::size_t>(a)].jet(as_span(q), mode).gradient().transpose();
    }
    return out;
}

}  // namespace rmap
