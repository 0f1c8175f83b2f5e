#include "rmap/manifold.hpp"

#include "rmap/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>

namespace rmap {
namespace {

std::size_t packed_index(std::size_t i, std::size_t j, std::size_t n) {
    if (i > j) {
        std::swap(i, j);
    }
    return i * n - i * (i + 1) / 2 + j;
}

void require_square(const TextGrid& grid, std::size_t n, const char* what) {
    if (grid.size() != n) {
        throw StructuralError(std::string(what) + " grid has " + std::to_string(grid.size()) + " rows, expected " +
                              std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (grid[i].size() != n) {
            throw StructuralError(std::string(what) + " grid row " + std::to_string(i) + " has " +
                                  std::to_string(grid[i].size()) + " entries, expected " + std::to_string(n));
        }
    }
}

void check_positive_definite(const Matrix& g, const Vector& p) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(hi > 0.0) || lo <= 1e-12 * hi) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", lo);
        throw StructuralError("metric is not positive definite at p = " + format_point(p) +
                              " (smallest eigenvalue " + buf + ")");
    }
}

void check_point(const ChartManifold& m, const Vector& p) {
    if (static_cast<std::size_t>(p.size()) != m.dim()) {
        throw PreconditionError("point has " + std::to_string(p.size()) + " entries, chart dimension is " +
                                std::to_string(m.dim()));
    }
}

}  // namespace

std::string format_point(const Vector& p) {
    std::string out = "(";
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", p(i));
        out += (i ? ", " : "");
        out += buf;
    }
    return out + ")";
}

// -- ChartManifold ------------------------------------------------------------

ChartManifold::ChartManifold(ChartSpec spec) : spec_(std::move(spec)) {
    const std::size_t n = dim();
    if (n == 0) {
        throw StructuralError("chart needs at least one coordinate");
    }
    require_square(spec_.metric, n, "metric");
    if (spec_.domain.size() != n) {
        throw StructuralError("domain box has " + std::to_string(spec_.domain.size()) + " intervals, expected " +
                              std::to_string(n));
    }
    for (const auto& iv : spec_.domain) {
        if (!(iv.lo < iv.hi)) {
            throw StructuralError("domain interval must satisfy lo < hi");
        }
    }

    metric_upper_.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            metric_upper_.push_back(expr::parse(spec_.metric[i][j], spec_.coords));
        }
    }
    // Lower-triangle text is only allowed to restate the upper triangle;
    // compared at the box center and two fixed off-center probes.
    std::vector<Vector> probes;
    for (const double t : {0.0, 0.37, -0.61}) {
        Vector q(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const double sign = i % 2 == 0 ? 1.0 : -1.0;
            q(static_cast<Eigen::Index>(i)) = spec_.domain[i].center() + sign * t * spec_.domain[i].half_width();
        }
        probes.push_back(std::move(q));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (spec_.metric[i][j] == spec_.metric[j][i]) {
                continue;
            }
            const auto lower = expr::parse(spec_.metric[i][j], spec_.coords);
            for (const auto& q : probes) {
                double a = 0.0;
                double b = 0.0;
                try {
                    a = lower.value(as_span(q));
                    b = metric(i, j).value(as_span(q));
                } catch (const DomainError&) {
                    continue;
                }
                if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(b))) {
                    throw StructuralError("metric grid is not symmetric: g[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "] differs from its transpose");
                }
            }
        }
    }

    if (spec_.complex_structure) {
        if (n % 2 != 0) {
            throw StructuralError("complex structure needs an even dimension, chart has " + std::to_string(n));
        }
        require_square(*spec_.complex_structure, n, "complex structure");
        complex_structure_.reserve(n * n);
        for (const auto& row : *spec_.complex_structure) {
            for (const auto& entry : row) {
                complex_structure_.push_back(expr::parse(entry, spec_.coords));
            }
        }
    }
}

const expr::Expr& ChartManifold::metric(std::size_t i, std::size_t j) const {
    return metric_upper_.at(packed_index(i, j, dim()));
}

const expr::Expr& ChartManifold::complex_structure(std::size_t i, std::size_t j) const {
    if (!has_complex_structure()) {
        throw PreconditionError("chart has no complex structure");
    }
    return complex_structure_.at(i * dim() + j);
}

bool ChartManifold::in_domain(const Vector& p) const {
    if (static_cast<std::size_t>(p.size()) != dim()) {
        return false;
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!spec_.domain[i].contains(p(static_cast<Eigen::Index>(i)))) {
            return false;
        }
    }
    return true;
}

// -- metric -------------------------------------------------------------------

Matrix metric_at(const ChartManifold& m, const Vector& p) {
    check_point(m, p);
    const auto n = static_cast<Eigen::Index>(m.dim());
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            g(i, j) = g(j, i) = m.metric(i, j).value(as_span(p));
        }
    }
    check_positive_definite(g, p);
    return g;
}

Matrix inverse_metric_at(const ChartManifold& m, const Vector& p) {
    const Matrix g = metric_at(m, p);
    return g.llt().solve(Matrix::Identity(g.rows(), g.cols()));
}

MetricJet metric_jet_at(const ChartManifold& m, const Vector& p, DerivativeMode mode) {
    check_point(m, p);
    const std::size_t n = m.dim();
    const auto ni = static_cast<Eigen::Index>(n);
    MetricJet out;
    out.g = Matrix(ni, ni);
    out.dg.assign(n, Matrix(ni, ni));
    out.ddg.assign(n * n, Matrix(ni, ni));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const auto jet = m.metric(i, j).jet(as_span(p), mode);
            const auto a = static_cast<Eigen::Index>(i);
            const auto b = static_cast<Eigen::Index>(j);
            out.g(a, b) = out.g(b, a) = jet.value();
            for (std::size_t k = 0; k < n; ++k) {
                const auto kk = static_cast<Eigen::Index>(k);
                out.dg[k](a, b) = out.dg[k](b, a) = jet.gradient()(kk);
                for (std::size_t l = 0; l < n; ++l) {
                    out.ddg[k * n + l](a, b) = out.ddg[k * n + l](b, a) =
                        jet.hessian()(kk, static_cast<Eigen::Index>(l));
                }
            }
        }
    }
    check_positive_definite(out.g, p);
    out.g_inv = out.g.llt().solve(Matrix::Identity(ni, ni));
    // exact symmetry of the inverse
    out.g_inv = (0.5 * (out.g_inv + out.g_inv.transpose())).eval();
    return out;
}

// -- connection and curvature -------------------------------------------------

namespace {

// Gamma^k_ij and d_m Gamma^k_ij from a metric jet.
void connection_from_jet(const MetricJet& mj, Tensor3& gamma, Tensor4* dgamma) {
    const std::size_t n = static_cast<std::size_t>(mj.g.rows());
    // first-kind symbols S(l, i, j) = d_i g_jl + d_j g_il - d_l g_ij
    Tensor3 first({n, n, n});
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double s = mj.dg[i](j, l) + mj.dg[j](i, l) - mj.dg[l](i, j);
                first(l, i, j) = first(l, j, i) = s;
            }
        }
    }
    gamma = Tensor3({n, n, n});
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) {
                    acc += mj.g_inv(k, l) * first(l, i, j);
                }
                gamma(k, i, j) = gamma(k, j, i) = 0.5 * acc;
            }
        }
    }
    if (!dgamma) {
        return;
    }
    // d_m g^{-1} = -g^{-1} (d_m g) g^{-1}
    *dgamma = Tensor4({n, n, n, n});  // (m, k, i, j)
    for (std::size_t m = 0; m < n; ++m) {
        const Matrix dinv = -mj.g_inv * mj.dg[m] * mj.g_inv;
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i; j < n; ++j) {
                    double acc = 0.0;
                    for (std::size_t l = 0; l < n; ++l) {
                        const double ds = mj.ddg[m * n + i](j, l) + mj.ddg[m * n + j](i, l) - mj.ddg[m * n + l](i, j);
                        acc += dinv(k, l) * first(l, i, j) + mj.g_inv(k, l) * ds;
                    }
                    (*dgamma)(m, k, i, j) = (*dgamma)(m, k, j, i) = 0.5 * acc;
                }
            }
        }
    }
}

CurvatureData curvature_from(const MetricJet& mj, const Tensor3& gamma, const Tensor4& dgamma, const Vector& p) {
    const std::size_t n = static_cast<std::size_t>(mj.g.rows());
    CurvatureData out;
    out.point = p;
    out.riem_up = Tensor4({n, n, n, n});
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    double quad = 0.0;
                    for (std::size_t m = 0; m < n; ++m) {
                        quad += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
                    }
                    const double r = (dgamma(i, l, j, k) - dgamma(j, l, i, k)) + quad;
                    out.riem_up(l, i, j, k) = r;
                    out.riem_up(l, j, i, k) = -r;
                }
            }
        }
    }
    out.riem_down = Tensor4({n, n, n, n});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    double acc = 0.0;
                    for (std::size_t m = 0; m < n; ++m) {
                        acc += mj.g(l, m) * out.riem_up(m, i, j, k);
                    }
                    out.riem_down(i, j, k, l) = acc;
                    out.riem_down(j, i, k, l) = -acc;
                }
            }
        }
    }
    return out;
}

}  // namespace

Vector ConnectionData::contract(const Vector& x, const Vector& y) const {
    const std::size_t n = gamma.extent(0);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                acc += gamma(k, i, j) * x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j));
            }
        }
        out(static_cast<Eigen::Index>(k)) = acc;
    }
    return out;
}

double CurvatureData::evaluate(const Vector& x, const Vector& y, const Vector& z, const Vector& t) const {
    const std::size_t n = riem_down.extent(0);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double xy = x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j));
            if (xy == 0.0) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    acc += riem_down(i, j, k, l) * xy * z(static_cast<Eigen::Index>(k)) *
                           t(static_cast<Eigen::Index>(l));
                }
            }
        }
    }
    return acc;
}

ConnectionData christoffel_at(const ChartManifold& m, const Vector& p, DerivativeMode mode) {
    const auto mj = metric_jet_at(m, p, mode);
    ConnectionData out;
    out.point = p;
    connection_from_jet(mj, out.gamma, nullptr);
    return out;
}

CurvatureData curvature_at(const ChartManifold& m, const Vector& p, DerivativeMode mode) {
    return geometry_at(m, p, mode).curvature;
}

PointGeometry geometry_at(const ChartManifold& m, const Vector& p, DerivativeMode mode) {
    PointGeometry out;
    out.point = p;
    out.metric = metric_jet_at(m, p, mode);
    out.connection.point = p;
    Tensor4 dgamma;
    connection_from_jet(out.metric, out.connection.gamma, &dgamma);
    out.curvature = curvature_from(out.metric, out.connection.gamma, dgamma, p);

    if (m.has_complex_structure()) {
        const std::size_t n = m.dim();
        const auto ni = static_cast<Eigen::Index>(n);
        Matrix j(ni, ni);
        out.complex_structure_d.assign(n, Matrix(ni, ni));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const auto& e = m.complex_structure(a, b);
                const auto ai = static_cast<Eigen::Index>(a);
                const auto bi = static_cast<Eigen::Index>(b);
                if (e.is_constant()) {
                    j(ai, bi) = e.value(as_span(p));
                    for (std::size_t k = 0; k < n; ++k) {
                        out.complex_structure_d[k](ai, bi) = 0.0;
                    }
                    continue;
                }
                const auto jet = e.jet(as_span(p), mode);
                j(ai, bi) = jet.value();
                for (std::size_t k = 0; k < n; ++k) {
                    out.complex_structure_d[k](ai, bi) = jet.gradient()(static_cast<Eigen::Index>(k));
                }
            }
        }
        out.complex_structure = std::move(j);
    }
    return out;
}

double sectional_curvature(const PointGeometry& geo, const Vector& x, const Vector& y) {
    const Matrix& g = geo.metric.g;
    const double area2 = inner(g, x, x) * inner(g, y, y) - inner(g, x, y) * inner(g, x, y);
    if (!(area2 > 0.0)) {
        throw PreconditionError("sectional curvature needs linearly independent vectors");
    }
    return geo.curvature.evaluate(x, y, y, x) / area2;
}

double sectional_curvature(const ChartManifold& m, const Vector& p, const Vector& x, const Vector& y,
                           DerivativeMode mode) {
    return sectional_curvature(geometry_at(m, p, mode), x, y);
}

double holomorphic_sectional_curvature(const PointGeometry& geo, const Vector& x) {
    if (!geo.complex_structure) {
        throw PreconditionError("holomorphic sectional curvature needs a complex structure");
    }
    const double n2 = inner(geo.metric.g, x, x);
    if (!(n2 > 0.0)) {
        throw PreconditionError("holomorphic sectional curvature of the zero vector");
    }
    const Vector jx = *geo.complex_structure * x;
    return geo.curvature.evaluate(x, jx, jx, x) / (n2 * n2);
}

double holomorphic_sectional_curvature(const ChartManifold& m, const Vector& p, const Vector& x,
                                       DerivativeMode mode) {
    if (!m.has_complex_structure()) {
        throw PreconditionError("holomorphic sectional curvature needs a complex structure");
    }
    return holomorphic_sectional_curvature(geometry_at(m, p, mode), x);
}

AlmostHermitianDefects validate_almost_hermitian(const PointGeometry& geo) {
    if (!geo.complex_structure) {
        throw PreconditionError("chart has no complex structure");
    }
    const Matrix& j = *geo.complex_structure;
    const Matrix& g = geo.metric.g;
    AlmostHermitianDefects out;
    out.j_squared = (j * j + Matrix::Identity(j.rows(), j.cols())).cwiseAbs().maxCoeff();
    out.compatibility = (j.transpose() * g * j - g).cwiseAbs().maxCoeff();
    return out;
}

AlmostHermitianDefects validate_almost_hermitian(const ChartManifold& m, const Vector& p) {
    if (!m.has_complex_structure()) {
        throw PreconditionError("chart has no complex structure");
    }
    PointGeometry geo;
    geo.point = p;
    geo.metric.g = metric_at(m, p);
    geo.complex_structure = complex_structure_at(m, p);
    return validate_almost_hermitian(geo);
}

double kahler_defect(const PointGeometry& geo) {
    if (!geo.complex_structure) {
        throw PreconditionError("chart has no complex structure");
    }
    const Matrix& j = *geo.complex_structure;
    const Tensor3& gamma = geo.connection.gamma;
    const auto n = static_cast<std::size_t>(j.rows());
    double worst = 0.0;
    // (nabla_i J)^k_j = d_i J^k_j + Gamma^k_il J^l_j - Gamma^l_ij J^k_l
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t jj = 0; jj < n; ++jj) {
                double v = geo.complex_structure_d[i](k, jj);
                for (std::size_t l = 0; l < n; ++l) {
                    v += gamma(k, i, l) * j(l, jj) - gamma(l, i, jj) * j(k, l);
                }
                worst = std::max(worst, std::abs(v));
            }
        }
    }
    return worst;
}

double kahler_defect(const ChartManifold& m, const Vector& p, DerivativeMode mode) {
    if (!m.has_complex_structure()) {
        throw PreconditionError("chart has no complex structure");
    }
    return kahler_defect(geometry_at(m, p, mode));
}

Matrix complex_structure_at(const ChartManifold& m, const Vector& p) {
    check_point(m, p);
    const auto n = static_cast<Eigen::Index>(m.dim());
    Matrix j(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            j(a, b) = m.complex_structure(a, b).value(as_span(p));
        }
    }
    return j;
}

}  // namespace rmap
