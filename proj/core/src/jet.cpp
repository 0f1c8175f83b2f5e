#include "rmap/jet.hpp"

namespace rmap {

std::string_view to_string(DerivativeMode mode) {
    return mode == DerivativeMode::Jets ? "jets" : "finite_differences";
}

ScalarJet2 ScalarJet2::constant(double value, std::size_t n) {
    const auto size = static_cast<Eigen::Index>(n);
    return {value, Vector::Zero(size), Matrix::Zero(size, size)};
}

ScalarJet2 ScalarJet2::variable(double value, std::size_t index, std::size_t n) {
    auto jet = constant(value, n);
    jet.gradient_(static_cast<Eigen::Index>(index)) = 1.0;
    return jet;
}

ScalarJet2 ScalarJet2::from_parts(double value, Vector gradient, Matrix hessian) {
    hessian.triangularView<Eigen::StrictlyLower>() = hessian.transpose().triangularView<Eigen::StrictlyLower>();
    return {value, std::move(gradient), std::move(hessian)};
}

ScalarJet2 ScalarJet2::chain(double f, double df, double d2f) const {
    // Parenthesised so the outer product is formed before scaling; keeps (i,j)
    // and (j,i) bitwise identical.
    Matrix h = d2f * (gradient_ * gradient_.transpose()) + df * hessian_;
    return {f, df * gradient_, std::move(h)};
}

ScalarJet2 ScalarJet2::operator-() const {
    return {-value_, -gradient_, -hessian_};
}

ScalarJet2 operator+(const ScalarJet2& a, const ScalarJet2& b) {
    return {a.value_ + b.value_, a.gradient_ + b.gradient_, a.hessian_ + b.hessian_};
}

ScalarJet2 operator-(const ScalarJet2& a, const ScalarJet2& b) {
    return {a.value_ - b.value_, a.gradient_ - b.gradient_, a.hessian_ - b.hessian_};
}

ScalarJet2 operator*(const ScalarJet2& a, const ScalarJet2& b) {
    const Matrix cross = a.gradient_ * b.gradient_.transpose() + b.gradient_ * a.gradient_.transpose();
    Matrix h = (b.value_ * a.hessian_ + a.value_ * b.hessian_) + cross;
    Vector g = b.value_ * a.gradient_ + a.value_ * b.gradient_;
    return {a.value_ * b.value_, std::move(g), std::move(h)};
}

ScalarJet2 operator*(double a, const ScalarJet2& b) {
    return {a * b.value_, a * b.gradient_, a * b.hessian_};
}

}  // namespace rmap
