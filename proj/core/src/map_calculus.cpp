#include "rmap/map_calculus.hpp"

#include "rmap/error.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>

namespace rmap {
namespace {

using Index = Eigen::Index;

Eigen::JacobiSVD<Matrix> full_svd(const Matrix& a) {
    return Eigen::JacobiSVD<Matrix>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

Matrix project_onto(const Matrix& g, const Matrix& frame, const Vector& v) {
    // columns of `frame` are g-orthonormal
    Vector out = Vector::Zero(v.size());
    for (Index c = 0; c < frame.cols(); ++c) {
        out += inner(g, v, frame.col(c)) * frame.col(c);
    }
    return out;
}

std::string describe(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

// -- splitting ----------------------------------------------------------------

std::size_t numeric_rank(const Vector& singular_values, double rank_tol) {
    if (singular_values.size() == 0) {
        return 0;
    }
    const double sigma_max = singular_values.maxCoeff();
    if (!(sigma_max > 0.0)) {
        return 0;
    }
    const double threshold = rank_tol * sigma_max;
    std::size_t rank = 0;
    for (Index i = 0; i < singular_values.size(); ++i) {
        const double s = singular_values(i);
        if (s > threshold / 10.0 && s < threshold * 10.0) {
            throw RankAmbiguityError("singular value " + describe(s) + " lies within a factor 10 of the rank threshold " +
                                     describe(threshold) + "; choose a different rank tolerance");
        }
        if (s > threshold) {
            ++rank;
        }
    }
    return rank;
}

Matrix orthonormalize(const Matrix& g, const Matrix& candidates, std::size_t count) {
    std::vector<Vector> remaining;
    remaining.reserve(static_cast<std::size_t>(candidates.cols()));
    double scale = 0.0;
    for (Index c = 0; c < candidates.cols(); ++c) {
        remaining.emplace_back(candidates.col(c));
        scale = std::max(scale, norm(g, remaining.back()));
    }
    Matrix out(g.rows(), static_cast<Index>(count));
    for (std::size_t step = 0; step < count; ++step) {
        std::size_t best = remaining.size();
        double best_norm = -1.0;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const double n = norm(g, remaining[i]);
            if (n > best_norm) {
                best_norm = n;
                best = i;
            }
        }
        if (best == remaining.size() || !(best_norm > 1e-13 * scale) || !(best_norm > 0.0)) {
            throw StructuralError("frame candidates are linearly dependent");
        }
        Vector v = remaining[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < step; ++k) {
                const Vector q = out.col(static_cast<Index>(k));
                v -= inner(g, v, q) * q;
            }
        }
        const Vector q = v / norm(g, v);
        out.col(static_cast<Index>(step)) = q;
        for (auto& r : remaining) {
            r -= inner(g, r, q) * q;
        }
    }
    return out;
}

TangentSplit tangent_split(const Vector& p, const Matrix& jacobian, const Matrix& g1, const Matrix& g2,
                           double rank_tol) {
    const Index m1 = jacobian.cols();
    const Index m2 = jacobian.rows();
    const auto svd = full_svd(jacobian);

    TangentSplit out;
    out.point = p;
    out.singular_values = svd.singularValues();
    out.rank = numeric_rank(out.singular_values, rank_tol);
    const auto r = static_cast<Index>(out.rank);

    const Matrix& v = svd.matrixV();
    const Matrix& u = svd.matrixU();

    out.ker_frame = orthonormalize(g1, v.rightCols(m1 - r), static_cast<std::size_t>(m1 - r));
    // g1^{-1} maps the Euclidean row space onto the g1-complement of the kernel.
    const Matrix g1_inv = g1.llt().solve(Matrix::Identity(m1, m1));
    out.hor_frame = orthonormalize(g1, g1_inv * v.leftCols(r), out.rank);
    out.range_frame = orthonormalize(g2, jacobian * out.hor_frame, out.rank);
    const Matrix g2_inv = g2.llt().solve(Matrix::Identity(m2, m2));
    out.normal_frame = orthonormalize(g2, g2_inv * u.rightCols(m2 - r), static_cast<std::size_t>(m2 - r));
    return out;
}

TangentSplit tangent_split_at(const SmoothMap& f, const Vector& p, double rank_tol, DerivativeMode mode) {
    const auto d = differential_at(f, p, mode);
    return tangent_split(p, d.jacobian, metric_at(f.source(), p), metric_at(f.target(), d.value), rank_tol);
}

// -- second fundamental form --------------------------------------------------

Vector SecondFundamentalForm::bilinear(const Vector& x, const Vector& y) const {
    const std::size_t m2 = components_.extent(0);
    const std::size_t m1 = components_.extent(1);
    Vector out = Vector::Zero(static_cast<Index>(m2));
    for (std::size_t a = 0; a < m2; ++a) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m1; ++i) {
            for (std::size_t j = 0; j < m1; ++j) {
                acc += components_(a, i, j) * x(static_cast<Index>(i)) * y(static_cast<Index>(j));
            }
        }
        out(static_cast<Index>(a)) = acc;
    }
    return out;
}

Vector SecondFundamentalForm::operator()(const Vector& x, const Vector& y) const {
    // a + b == b + a in floating point, so swapping x and y is exact.
    return 0.5 * (bilinear(x, y) + bilinear(y, x));
}

SecondFundamentalForm second_fundamental_form(const MapHessianData& d, const ConnectionData& source,
                                              const ConnectionData& target) {
    const auto m2 = static_cast<std::size_t>(d.jacobian.rows());
    const auto m1 = static_cast<std::size_t>(d.jacobian.cols());
    const Matrix& jac = d.jacobian;
    Tensor3 b({m2, m1, m1});
    for (std::size_t a = 0; a < m2; ++a) {
        for (std::size_t i = 0; i < m1; ++i) {
            for (std::size_t j = i; j < m1; ++j) {
                double pull = 0.0;
                for (std::size_t beta = 0; beta < m2; ++beta) {
                    for (std::size_t gam = 0; gam < m2; ++gam) {
                        pull += target.gamma(a, beta, gam) * jac(static_cast<Index>(beta), static_cast<Index>(i)) *
                                jac(static_cast<Index>(gam), static_cast<Index>(j));
                    }
                }
                double push = 0.0;
                for (std::size_t k = 0; k < m1; ++k) {
                    push += source.gamma(k, i, j) * jac(static_cast<Index>(a), static_cast<Index>(k));
                }
                const double v = d.hessians[a](static_cast<Index>(i), static_cast<Index>(j)) + pull - push;
                b(a, i, j) = v;
                b(a, j, i) = v;
            }
        }
    }
    return SecondFundamentalForm(std::move(b));
}

MapPoint evaluate_map_point(const SmoothMap& f, const Vector& p, const EvalOptions& options) {
    MapPoint mp;
    mp.point = p;
    mp.differential = differential_at(f, p, options.mode);
    mp.source = geometry_at(f.source(), p, options.mode);
    mp.target = geometry_at(f.target(), mp.differential.value, options.mode);
    mp.image_in_target_domain = f.target().in_domain(mp.differential.value);
    mp.split = tangent_split(p, mp.differential.jacobian, mp.source.metric.g, mp.target.metric.g, options.rank_tol);
    mp.sff = second_fundamental_form(mp.differential, mp.source.connection, mp.target.connection);
    return mp;
}

Vector second_fund_form_at(const SmoothMap& f, const Vector& p, const Vector& x, const Vector& y,
                           const EvalOptions& options) {
    const auto d = differential_at(f, p, options.mode);
    const auto src = christoffel_at(f.source(), p, options.mode);
    const auto tgt = christoffel_at(f.target(), d.value, options.mode);
    return second_fundamental_form(d, src, tgt)(x, y);
}

// -- defects ------------------------------------------------------------------

double riemannian_defect(const MapPoint& mp) {
    const Matrix& e = mp.split.hor_frame;
    const Matrix pushed = mp.differential.jacobian * e;
    const Matrix lhs = pushed.transpose() * mp.target.metric.g * pushed;
    const Matrix rhs = e.transpose() * mp.source.metric.g * e;
    return e.cols() == 0 ? 0.0 : (lhs - rhs).cwiseAbs().maxCoeff();
}

double riemannian_defect_at(const SmoothMap& f, const Vector& p, const EvalOptions& options) {
    return riemannian_defect(evaluate_map_point(f, p, options));
}

double holomorphy_defect(const MapPoint& mp) {
    if (!mp.source.complex_structure || !mp.target.complex_structure) {
        throw PreconditionError("holomorphy needs complex structures on both charts");
    }
    const Matrix& a = mp.differential.jacobian;
    return (*mp.target.complex_structure * a - a * *mp.source.complex_structure).cwiseAbs().maxCoeff();
}

double holomorphy_defect_at(const SmoothMap& f, const Vector& p, const EvalOptions& options) {
    if (!f.source().has_complex_structure() || !f.target().has_complex_structure()) {
        throw PreconditionError("holomorphy needs complex structures on both charts");
    }
    return holomorphy_defect(evaluate_map_point(f, p, options));
}

// -- tension ------------------------------------------------------------------

Tension tension(const SecondFundamentalForm& sff, const Matrix& ker_frame, const Matrix& hor_frame) {
    const auto m2 = static_cast<Index>(sff.components().extent(0));
    Tension t{Vector::Zero(m2), Vector::Zero(m2), Vector::Zero(m2)};
    for (Index i = 0; i < ker_frame.cols(); ++i) {
        t.tau1 += sff(ker_frame.col(i), ker_frame.col(i));
    }
    for (Index a = 0; a < hor_frame.cols(); ++a) {
        t.tau2 += sff(hor_frame.col(a), hor_frame.col(a));
    }
    t.tau = t.tau1 + t.tau2;
    return t;
}

Tension tension(const MapPoint& mp) { return tension(mp.sff, mp.split.ker_frame, mp.split.hor_frame); }

Tension tension_at(const SmoothMap& f, const Vector& p, const EvalOptions& options) {
    return tension(evaluate_map_point(f, p, options));
}

// -- shape operator -----------------------------------------------------------

ShapeOperatorResult shape_operator(const MapPoint& mp, const TargetVectorField& field, DerivativeMode mode) {
    const Matrix& g2 = mp.target.metric.g;
    const Vector& q = mp.differential.value;
    const auto& split = mp.split;

    ShapeOperatorResult out;
    out.field_value = field.value_at(q);
    out.tangency = norm(g2, project_onto(g2, split.range_frame, out.field_value));
    const double allowed = 1e-8 * std::max(1.0, norm(g2, out.field_value));
    if (out.tangency > allowed) {
        throw PreconditionError("vector field is not normal to range F_* at F(p) = " + format_point(q) +
                                " (tangential component " + describe(out.tangency) + ")");
    }

    const Matrix dv = field.jacobian_at(q, mode);
    const auto r = split.hor_frame.cols();
    std::vector<Vector> pushed;
    pushed.reserve(static_cast<std::size_t>(r));
    for (Index a = 0; a < r; ++a) {
        pushed.emplace_back(mp.differential.jacobian * split.hor_frame.col(a));
    }
    out.matrix = Matrix::Zero(r, r);
    for (Index a = 0; a < r; ++a) {
        // covariant derivative of V along F_* e_a
        const Vector d = dv * pushed[static_cast<std::size_t>(a)] +
                         mp.target.connection.contract(pushed[static_cast<std::size_t>(a)], out.field_value);
        out.tangential.push_back(-project_onto(g2, split.range_frame, d));
        out.normal_derivative.push_back(project_onto(g2, split.normal_frame, d));
    }
    for (Index a = 0; a < r; ++a) {
        for (Index b = 0; b < r; ++b) {
            out.matrix(a, b) = inner(g2, out.tangential[static_cast<std::size_t>(a)], pushed[static_cast<std::size_t>(b)]);
        }
    }
    return out;
}

ShapeOperatorResult shape_operator_at(const SmoothMap& f, const Vector& p, const TargetVectorField& v,
                                      const EvalOptions& options) {
    return shape_operator(evaluate_map_point(f, p, options), v, options.mode);
}

Vector mean_curvature_range(const MapPoint& mp) {
    const auto r = mp.split.hor_frame.cols();
    if (r == 0) {
        throw PreconditionError("mean curvature of range F_* needs rank >= 1");
    }
    Vector sum = Vector::Zero(mp.differential.value.size());
    for (Index a = 0; a < r; ++a) {
        sum += mp.sff(mp.split.hor_frame.col(a), mp.split.hor_frame.col(a));
    }
    return sum / static_cast<double>(r);
}

Vector mean_curvature_range_at(const SmoothMap& f, const Vector& p, const EvalOptions& options) {
    return mean_curvature_range(evaluate_map_point(f, p, options));
}

// -- involutivity -------------------------------------------------------------

Matrix kernel_projector_at(const SmoothMap& f, const Vector& p, std::size_t expected_rank, const EvalOptions& options) {
    const auto d = differential_at(f, p, options.mode);
    const Matrix g1 = metric_at(f.source(), p);
    const auto svd = full_svd(d.jacobian);
    const std::size_t rank = numeric_rank(svd.singularValues(), options.rank_tol);
    if (rank != expected_rank) {
        throw StructuralError("rank changes from " + std::to_string(expected_rank) + " to " + std::to_string(rank) +
                              " near p = " + format_point(p));
    }
    const Index m1 = d.jacobian.cols();
    const auto r = static_cast<Index>(rank);
    const Matrix k = orthonormalize(g1, svd.matrixV().rightCols(m1 - r), static_cast<std::size_t>(m1 - r));
    return k * k.transpose() * g1;
}

namespace {

// max_{i<j} |(I - P)[P d_i, P d_j]|_g for the distribution with projector P.
double involutivity_defect(const SmoothMap& f, const Vector& p, const EvalOptions& options, bool horizontal) {
    const Matrix g1 = metric_at(f.source(), p);
    const auto d = differential_at(f, p, options.mode);
    const std::size_t rank = numeric_rank(Eigen::JacobiSVD<Matrix>(d.jacobian).singularValues(), options.rank_tol);
    const Index m = p.size();

    auto projector = [&](const Vector& x) {
        Matrix pk = kernel_projector_at(f, x, rank, options);
        return horizontal ? Matrix(Matrix::Identity(m, m) - pk) : pk;
    };

    const Matrix proj = projector(p);
    std::vector<Matrix> dproj;
    dproj.reserve(static_cast<std::size_t>(m));
    for (Index l = 0; l < m; ++l) {
        Vector xp = p;
        Vector xm = p;
        xp(l) += kBracketStep;
        xm(l) -= kBracketStep;
        dproj.emplace_back((projector(xp) - projector(xm)) / (2.0 * kBracketStep));
    }

    const Matrix complement = Matrix::Identity(m, m) - proj;
    double worst = 0.0;
    for (Index i = 0; i < m; ++i) {
        for (Index j = i + 1; j < m; ++j) {
            // [U_i, U_j] = U_i^l d_l U_j - U_j^l d_l U_i with U_i = P d_i
            Vector bracket = Vector::Zero(m);
            for (Index l = 0; l < m; ++l) {
                bracket += proj(l, i) * dproj[static_cast<std::size_t>(l)].col(j) -
                           proj(l, j) * dproj[static_cast<std::size_t>(l)].col(i);
            }
            worst = std::max(worst, norm(g1, complement * bracket));
        }
    }
    return worst;
}

}  // namespace

double kernel_involutivity_defect_at(const SmoothMap& f, const Vector& p, const EvalOptions& options) {
    return involutivity_defect(f, p, options, false);
}

double horizontal_involutivity_defect_at(const SmoothMap& f, const Vector& p, const EvalOptions& options) {
    return involutivity_defect(f, p, options, true);
}

}  // namespace rmap
