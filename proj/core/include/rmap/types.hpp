#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>

namespace rmap {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// How derivatives of coordinate expressions are obtained.
enum class DerivativeMode {
    Jets,              // second-order forward propagation, exact to rounding
    FiniteDifferences  // central differences of values; independent oracle
};

std::string_view to_string(DerivativeMode mode);

inline std::span<const double> as_span(const Vector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

// Closed coordinate interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double center() const { return 0.5 * (lo + hi); }
    double half_width() const { return 0.5 * (hi - lo); }

    bool operator==(const Interval&) const = default;
};

}  // namespace rmap
