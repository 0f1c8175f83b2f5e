#pragma once

// Reference computations for tests. Nothing here calls into the library's
// differentiation or geometry code: inputs are plain C++ callables and all
// derivatives are Richardson-extrapolated central differences.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Scalar = std::function<double(const Vec&)>;
using MatrixField = std::function<Mat(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;

// d/dt f(x + t e_i) at t = 0, fourth-order accurate.
template <class F>
auto partial(const F& f, const Vec& x, int i, double h = 1e-3) {
    using R = std::decay_t<decltype(f(x))>;
    auto shifted = [&](double t) -> R {
        Vec y = x;
        y(i) += t;
        return f(y);
    };
    auto central = [&](double s) -> R { return (shifted(s) - shifted(-s)) / (2.0 * s); };
    R out = (4.0 * central(h / 2) - central(h)) / 3.0;
    return out;
}

inline Vec gradient(const Scalar& f, const Vec& x) {
    Vec g(x.size());
    for (int i = 0; i < x.size(); ++i) {
        g(i) = partial(f, x, i);
    }
    return g;
}

inline Mat hessian(const Scalar& f, const Vec& x) {
    Mat h(x.size(), x.size());
    for (int i = 0; i < x.size(); ++i) {
        for (int j = 0; j < x.size(); ++j) {
            h(i, j) = partial([&](const Vec& y) { return partial(f, y, j); }, x, i);
        }
    }
    return 0.5 * (h + h.transpose());
}

// Columns d_i F.
inline Mat jacobian(const VectorField& f, const Vec& x) {
    const Vec f0 = f(x);
    Mat j(f0.size(), x.size());
    for (int i = 0; i < x.size(); ++i) {
        j.col(i) = partial(f, x, i);
    }
    return j;
}

// gamma[k](i, j) = Gamma^k_ij
inline std::vector<Mat> christoffel(const MatrixField& g, const Vec& x) {
    const int n = static_cast<int>(x.size());
    std::vector<Mat> dg(n);
    for (int l = 0; l < n; ++l) {
        dg[l] = partial(g, x, l);
    }
    const Mat ginv = g(x).inverse();
    std::vector<Mat> gamma(n, Mat::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    gamma[k](i, j) += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
    return gamma;
}

// g(R(X,Y)Z, T) with R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
inline double curvature(const MatrixField& g, const Vec& x, const Vec& X, const Vec& Y, const Vec& Z,
                        const Vec& T) {
    const int n = static_cast<int>(x.size());
    const auto gamma = christoffel(g, x);
    std::vector<std::vector<Mat>> dgamma(n);  // dgamma[m][k](i,j) = d_m Gamma^k_ij
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            dgamma[m].push_back(partial([&](const Vec& y) { return christoffel(g, y)[k]; }, x, m));
        }
    }
    // R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik
    Vec rz = Vec::Zero(n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double r = dgamma[i][l](j, k) - dgamma[j][l](i, k);
                    for (int m = 0; m < n; ++m) {
                        r += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
                    }
                    rz(l) += r * X(i) * Y(j) * Z(k);
                }
    return rz.dot(g(x) * T);
}

inline double sectional(const MatrixField& g, const Vec& x, const Vec& X, const Vec& Y) {
    const Mat G = g(x);
    const double area2 = X.dot(G * X) * Y.dot(G * Y) - std::pow(X.dot(G * Y), 2);
    return curvature(g, x, X, Y, Y, X) / area2;
}

// Gaussian curvature of lambda(x,y) (dx^2 + dy^2): -Laplacian(log lambda) / (2 lambda).
inline double conformal_gaussian_curvature(const Scalar& lambda, const Vec& x) {
    const Scalar log_lambda = [&](const Vec& y) { return std::log(lambda(y)); };
    const Mat h = hessian(log_lambda, x);
    return -(h(0, 0) + h(1, 1)) / (2.0 * lambda(x));
}

// (nabla F_*)(X, Y) for a map between charts, from the coordinate formula
// with every derivative taken numerically.
inline Vec second_fundamental_form(const VectorField& f, const MatrixField& g1, const MatrixField& g2, const Vec& x,
                                   const Vec& X, const Vec& Y) {
    const Vec fx = f(x);
    const Mat a = jacobian(f, x);
    const auto gamma1 = christoffel(g1, x);
    const auto gamma2 = christoffel(g2, fx);
    const int m = static_cast<int>(fx.size());
    const int n = static_cast<int>(x.size());
    Vec out(m);
    for (int alpha = 0; alpha < m; ++alpha) {
        const Scalar comp = [&](const Vec& y) { return f(y)(alpha); };
        double v = X.dot(hessian(comp, x) * Y);
        v += (a * X).dot(gamma2[alpha] * (a * Y));
        for (int k = 0; k < n; ++k) {
            v -= X.dot(gamma1[k] * Y) * a(alpha, k);
        }
        out(alpha) = v;
    }
    return out;
}

}  // namespace oracle
