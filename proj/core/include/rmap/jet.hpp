#pragma once

#include "rmap/types.hpp"

#include <cstddef>

namespace rmap {

/// A scalar together with its gradient and Hessian with respect to n
/// coordinates. Arithmetic propagates all three exactly (up to rounding).
///
/// Every operation keeps the Hessian bit-symmetric: each update is built from
/// terms of the form a_i b_j + b_i a_j or c * u_i u_j, both of which are
/// invariant under swapping i and j in floating point.
class ScalarJet2 {
public:
    ScalarJet2() = default;

    static ScalarJet2 constant(double value, std::size_t n);
    static ScalarJet2 variable(double value, std::size_t index, std::size_t n);
    // The Hessian is mirrored from its upper triangle.
    static ScalarJet2 from_parts(double value, Vector gradient, Matrix hessian);

    double value() const { return value_; }
    const Vector& gradient() const { return gradient_; }
    const Matrix& hessian() const { return hessian_; }
    std::size_t size() const { return static_cast<std::size_t>(gradient_.size()); }

    // Applies a smooth scalar function given f(u), f'(u), f''(u) at u = value().
    ScalarJet2 chain(double f, double df, double d2f) const;

    ScalarJet2 operator-() const;

    friend ScalarJet2 operator+(const ScalarJet2& a, const ScalarJet2& b);
    friend ScalarJet2 operator-(const ScalarJet2& a, const ScalarJet2& b);
    friend ScalarJet2 operator*(const ScalarJet2& a, const ScalarJet2& b);
    friend ScalarJet2 operator*(double a, const ScalarJet2& b);

private:
    ScalarJet2(double value, Vector gradient, Matrix hessian)
        : value_(value), gradient_(std::move(gradient)), hessian_(std::move(hessian)) {}

    double value_ = 0.0;
    Vector gradient_;
    Matrix hessian_;
};

}  // namespace rmap
