#include "point_context.hpp"

#include "rmap/error.hpp"
#include "rmap/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>

namespace rmap::detail {
namespace {

using Index = Eigen::Index;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

CheckResult evaluated(std::string_view id, const PointContext& ctx, double residual, double scale, double tolerance,
                      std::string details = {}) {
    CheckResult r;
    r.check_id = std::string(id);
    r.point_index = ctx.index;
    r.point = ctx.mp.point;
    r.residual = residual;
    r.scale = scale;
    r.tolerance = tolerance;
    r.passed = residual <= tolerance;
    r.details = std::move(details);
    return r;
}

CheckResult skipped(std::string_view id, const PointContext& ctx, std::string reason) {
    CheckResult r;
    r.check_id = std::string(id);
    r.point_index = ctx.index;
    r.point = ctx.mp.point;
    r.passed = false;
    r.skipped = true;
    r.details = std::move(reason);
    return r;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// g2 applied to target vectors at F(p)
double inner2(const PointContext& ctx, const Vector& a, const Vector& b) { return inner(ctx.mp.target.metric.g, a, b); }
double norm2(const PointContext& ctx, const Vector& a) { return norm(ctx.mp.target.metric.g, a); }

Vector project(const Matrix& g, const Matrix& frame, const Vector& v) {
    Vector out = Vector::Zero(v.size());
    for (Index c = 0; c < frame.cols(); ++c) {
        out += inner(g, v, frame.col(c)) * frame.col(c);
    }
    return out;
}

// -- structural checks --------------------------------------------------------

CheckResult riemannian_map(const SmoothMap&, const PointContext& ctx, const CheckSettings& s) {
    const double tol = s.tolerances.threshold(ctx.riemannian_scale);
    return evaluated("riemannian_map", ctx, ctx.riemannian_defect, ctx.riemannian_scale, tol,
                     "rank " + std::to_string(ctx.mp.split.rank));
}

CheckResult holomorphic(const SmoothMap&, const PointContext& ctx, const CheckSettings& s) {
    if (!ctx.holomorphy_defect) {
        return skipped("holomorphic", ctx, "needs complex structures on source and target");
    }
    return evaluated("holomorphic", ctx, *ctx.holomorphy_defect, ctx.holomorphy_scale,
                     s.tolerances.threshold(ctx.holomorphy_scale));
}

CheckResult almost_hermitian(const SmoothMap&, const PointContext& ctx, const CheckSettings& s) {
    if (!ctx.source_hermitian && !ctx.target_hermitian) {
        return skipped("almost_hermitian", ctx, "no complex structure on either chart");
    }
    double residual = 0.0;
    std::string details;
    if (ctx.source_hermitian) {
        residual = std::max({residual, ctx.source_hermitian->j_squared, ctx.source_hermitian->compatibility});
        details += "source J^2+I " + fmt(ctx.source_hermitian->j_squared) + ", compat " +
                   fmt(ctx.source_hermitian->compatibility);
    }
    if (ctx.target_hermitian) {
        residual = std::max({residual, ctx.target_hermitian->j_squared, ctx.target_hermitian->compatibility});
        details += std::string(details.empty() ? "" : "; ") + "target J^2+I " + fmt(ctx.target_hermitian->j_squared) +
                   ", compat " + fmt(ctx.target_hermitian->compatibility);
    }
    const double scale = std::max(1.0, std::max(max_abs(ctx.mp.source.metric.g), max_abs(ctx.mp.target.metric.g)));
    return evaluated("almost_hermitian", ctx, residual, scale, s.tolerances.threshold(scale), details);
}

CheckResult kahler_source(const SmoothMap&, const PointContext& ctx, const CheckSettings& s) {
    if (!ctx.source_kahler) {
        return skipped("kahler_source", ctx, "source has no complex structure");
    }
    return evaluated("kahler_source", ctx, *ctx.source_kahler, ctx.source_kahler_scale,
                     s.tolerances.threshold(ctx.source_kahler_scale));
}

CheckResult kahler_target(const SmoothMap&, const PointContext& ctx, const CheckSettings& s) {
    if (!ctx.target_kahler) {
        return skipped("kahler_target", ctx, "target has no complex structure");
    }
    return evaluated("kahler_target", ctx, *ctx.target_kahler, ctx.target_kahler_scale,
                     s.tolerances.threshold(ctx.target_kahler_scale));
}

CheckResult kernel_involutivity(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s) {
    const EvalOptions opts{s.mode, s.tolerances.rank};
    const double defect = kernel_involutivity_defect_at(f, ctx.mp.point, opts);
    const auto kdim = ctx.mp.split.ker_frame.cols();
    return evaluated("kernel_involutivity", ctx, defect, 0.0, s.tolerances.involutivity,
                     "kernel dimension " + std::to_string(kdim));
}

// -- identities ---------------------------------------------------------------

// g2((nabla F_*)(X,Y), F_* Z) = 0 for horizontal X, Y, Z
CheckResult sff_range_orthogonality(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s) {
    constexpr std::string_view id = "sff_range_orthogonality";
    if (auto why = violated(f, ctx, s, {Hypothesis::Riemannian})) {
        return skipped(id, ctx, *why);
    }
    const auto r = static_cast<std::size_t>(ctx.pushed_hor.cols());
    double residual = 0.0;
    double scale = 0.0;
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < r; ++b) {
            const Vector& bab = ctx.sff_hor[a][b];
            for (std::size_t c = 0; c < r; ++c) {
                const Vector fc = ctx.pushed_hor.col(static_cast<Index>(c));
                residual = std::max(residual, std::abs(inner2(ctx, bab, fc)));
                scale = std::max(scale, norm2(ctx, bab) * norm2(ctx, fc));
            }
        }
    }
    return evaluated(id, ctx, residual, scale, s.tolerances.threshold(scale));
}

// g2(R2(F*X,F*Y)F*Z,F*T) = g1(R1(X,Y)Z,T) + g2(B(X,Z),B(Y,T)) - g2(B(Y,Z),B(X,T))
CheckResult gauss_equation(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s) {
    constexpr std::string_view id = "gauss_equation";
    if (auto why = violated(f, ctx, s, {Hypothesis::Riemannian})) {
        return skipped(id, ctx, *why);
    }
    const auto r = static_cast<std::size_t>(ctx.pushed_hor.cols());
    const Matrix& e = ctx.mp.split.hor_frame;

    std::vector<std::array<std::size_t, 4>> quads;
    if (r <= 4) {
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                for (std::size_t c = 0; c < r; ++c)
                    for (std::size_t d = 0; d < r; ++d) quads.push_back({a, b, c, d});
    } else {
        auto rng = point_stream(s.seed ^ 0x6A09E667F3BCC908ULL, ctx.index);
        for (int k = 0; k < 200; ++k) {
            std::array<std::size_t, 4> q{};
            for (auto& v : q) {
                v = static_cast<std::size_t>(rng.next() % r);
            }
            quads.push_back(q);
        }
    }

    double residual = 0.0;
    double scale = 0.0;
    for (const auto& [a, b, c, d] : quads) {
        auto col = [&](std::size_t i) { return Vector(e.col(static_cast<Index>(i))); };
        auto pcol = [&](std::size_t i) { return Vector(ctx.pushed_hor.col(static_cast<Index>(i))); };
        const double target_term = ctx.mp.target.curvature.evaluate(pcol(a), pcol(b), pcol(c), pcol(d));
        const double source_term = ctx.mp.source.curvature.evaluate(col(a), col(b), col(c), col(d));
        const double plus = inner2(ctx, ctx.sff_hor[a][c], ctx.sff_hor[b][d]);
        const double minus = inner2(ctx, ctx.sff_hor[b][c], ctx.sff_hor[a][d]);
        residual = std::max(residual, std::abs(target_term - source_term - plus + minus));
        scale = std::max({scale, std::abs(target_term), std::abs(source_term), std::abs(plus), std::abs(minus)});
    }
    return evaluated(id, ctx, residual, scale, s.tolerances.threshold(scale),
                     std::to_string(quads.size()) + " frame quadruples");
}

// g2(S_V F*X, F*Y) = g2(V, B(X,Y)) and symmetry of S_V
CheckResult shape_operator_duality(const SmoothMap&, const PointContext& ctx, const CheckSettings& s) {
    constexpr std::string_view id = "shape_operator_duality";
    if (ctx.mp.split.normal_frame.cols() == 0) {
        return evaluated(id, ctx, 0.0, 0.0, s.tolerances.residual, "normal space is trivial");
    }
    if (s.normal_fields.empty()) {
        return skipped(id, ctx, "no normal vector field supplied");
    }
    const auto r = static_cast<std::size_t>(ctx.pushed_hor.cols());
    double residual = 0.0;
    double scale = 0.0;
    for (const auto& field : s.normal_fields) {
        ShapeOperatorResult so;
        try {
            so = shape_operator(ctx.mp, field, s.mode);
        } catch (const PreconditionError& err) {
            return skipped(id, ctx, err.what());
        }
        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t b = 0; b < r; ++b) {
                const double lhs = so.matrix(static_cast<Index>(a), static_cast<Index>(b));
                const double rhs = inner2(ctx, so.field_value, ctx.sff_hor[a][b]);
                const double sym = so.matrix(static_cast<Index>(b), static_cast<Index>(a));
                residual = std::max({residual, std::abs(lhs - rhs), std::abs(lhs - sym)});
                scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
            }
        }
    }
    return evaluated(id, ctx, residual, scale, s.tolerances.threshold(scale),
                     std::to_string(s.normal_fields.size()) + " normal fields");
}

// ker F_* and its complement are J1-invariant; range and normal spaces J2-invariant
CheckResult complex_invariance(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s) {
    constexpr std::string_view id = "complex_invariance";
    if (auto why = violated(f, ctx, s,
                            {Hypothesis::Holomorphic, Hypothesis::SourceAlmostHermitian,
                             Hypothesis::TargetAlmostHermitian})) {
        return skipped(id, ctx, *why);
    }
    const auto& split = ctx.mp.split;
    const Matrix& g1 = ctx.mp.source.metric.g;
    const Matrix& g2 = ctx.mp.target.metric.g;
    const Matrix& j1 = *ctx.mp.source.complex_structure;
    const Matrix& j2 = *ctx.mp.target.complex_structure;

    double ker_leak = 0.0;
    double hor_leak = 0.0;
    double range_leak = 0.0;
    double normal_leak = 0.0;
    for (Index i = 0; i < split.ker_frame.cols(); ++i) {
        ker_leak = std::max(ker_leak, norm(g1, project(g1, split.hor_frame, j1 * split.ker_frame.col(i))));
    }
    for (Index a = 0; a < split.hor_frame.cols(); ++a) {
        hor_leak = std::max(hor_leak, norm(g1, project(g1, split.ker_frame, j1 * split.hor_frame.col(a))));
    }
    for (Index a = 0; a < split.range_frame.cols(); ++a) {
        range_leak = std::max(range_leak, norm(g2, project(g2, split.normal_frame, j2 * split.range_frame.col(a))));
    }
    for (Index t = 0; t < split.normal_frame.cols(); ++t) {
        normal_leak = std::max(normal_leak, norm(g2, project(g2, split.range_frame, j2 * split.normal_frame.col(t))));
    }
    const double residual = std::max({ker_leak, hor_leak, range_leak, normal_leak});
    return evaluated(id, ctx, residual, 1.0, s.tolerances.threshold(1.0),
                     "J1 ker->hor " + fmt(ker_leak) + ", J1 hor->ker " + fmt(hor_leak) + ", J2 range->normal " +
                         fmt(range_leak) + ", J2 normal->range " + fmt(normal_leak));
}

// B(X, J1 Y) = B(Y, J1 X) = J2 B(X, Y) for horizontal X, Y
CheckResult kahler_sff_commutation(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s) {
    constexpr std::string_view id = "kahler_sff_commutation";
    if (auto why = violated(f, ctx, s,
                            {Hypothesis::Riemannian, Hypothesis::Holomorphic, Hypothesis::SourceAlmostHermitian,
                             Hypothesis::TargetAlmostHermitian, Hypothesis::TargetKahler})) {
        return skipped(id, ctx, *why);
    }
    const Matrix& e = ctx.mp.split.hor_frame;
    const Matrix& j1 = *ctx.mp.source.complex_structure;
    const Matrix& j2 = *ctx.mp.target.complex_structure;
    double residual = 0.0;
    double scale = 0.0;
    for (Index a = 0; a < e.cols(); ++a) {
        for (Index b = 0; b < e.cols(); ++b) {
            const Vector xa = e.col(a);
            const Vector xb = e.col(b);
            const Vector b_x_jy = ctx.mp.sff(xa, j1 * xb);
            const Vector b_y_jx = ctx.mp.sff(xb, j1 * xa);
            const Vector j_bxy = j2 * ctx.sff_hor[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            residual = std::max({residual, norm2(ctx, b_x_jy - j_bxy), norm2(ctx, b_x_jy - b_y_jx)});
            scale = std::max({scale, norm2(ctx, b_x_jy), norm2(ctx, b_y_jx), norm2(ctx, j_bxy)});
        }
    }
    return evaluated(id, ctx, residual, scale, s.tolerances.threshold(scale));
}

// g1(R1(X,J1X)J1X,X) = g2(R2(F*X,J2F*X)J2F*X,F*X) - 2|B(X,X)|^2
CheckResult holomorphic_curvature_identity(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s) {
    constexpr std::string_view id = "holomorphic_curvature_identity";
    if (auto why = violated(f, ctx, s,
                            {Hypothesis::Riemannian, Hypothesis::Holomorphic, Hypothesis::SourceAlmostHermitian,
                             Hypothesis::TargetAlmostHermitian, Hypothesis::TargetKahler})) {
        return skipped(id, ctx, *why);
    }
    const Matrix& j1 = *ctx.mp.source.complex_structure;
    const Matrix& j2 = *ctx.mp.target.complex_structure;
    const Matrix& a = ctx.mp.differential.jacobian;
    double residual = 0.0;
    double scale = 0.0;
    for (const Vector& x : ctx.horizontal_samples) {
        const Vector jx = j1 * x;
        const Vector fx = a * x;
        const Vector jfx = j2 * fx;
        const double source_term = ctx.mp.source.curvature.evaluate(x, jx, jx, x);
        const double target_term = ctx.mp.target.curvature.evaluate(fx, jfx, jfx, fx);
        const Vector bxx = ctx.mp.sff(x, x);
        const double sff_term = 2.0 * inner2(ctx, bxx, bxx);
        residual = std::max(residual, std::abs(source_term - target_term + sff_term));
        scale = std::max({scale, std::abs(source_term), std::abs(target_term), sff_term});
    }
    return evaluated(id, ctx, residual, scale, s.tolerances.threshold(scale),
                     std::to_string(ctx.horizontal_samples.size()) + " horizontal directions");
}

// harmonic <=> range distribution minimal; tau1 = 0 and |tau| = r |H|
CheckResult harmonicity_minimality(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s) {
    constexpr std::string_view id = "harmonicity_minimality";
    // Nothing below uses J, so diagnostic mode runs it on real maps too.
    if (s.hypothesis_gating) {
        if (auto why = violated(f, ctx, s,
                                {Hypothesis::Riemannian, Hypothesis::Holomorphic, Hypothesis::SourceAlmostHermitian,
                                 Hypothesis::TargetAlmostHermitian, Hypothesis::SourceKahler})) {
            return skipped(id, ctx, *why);
        }
    }
    const std::size_t r = ctx.mp.split.rank;
    if (r == 0) {
        return skipped(id, ctx, "rank 0: no range distribution");
    }
    const Tension t = tension(ctx.mp);
    const Vector h = mean_curvature_range(ctx.mp);
    const double tau1 = norm2(ctx, t.tau1);
    const double tau = norm2(ctx, t.tau);
    const double mean = norm2(ctx, h);
    const double link = std::abs(tau - static_cast<double>(r) * mean);

    double scale = 0.0;
    for (Index i = 0; i < ctx.mp.split.ker_frame.cols(); ++i) {
        const Vector k = ctx.mp.split.ker_frame.col(i);
        scale = std::max(scale, norm2(ctx, ctx.mp.sff(k, k)));
    }
    for (std::size_t a = 0; a < r; ++a) {
        scale = std::max(scale, norm2(ctx, ctx.sff_hor[a][a]));
    }
    const double tol = s.tolerances.threshold(scale);
    const bool harmonic = tau <= tol;
    const bool minimal = mean <= tol;
    const double mismatch = harmonic == minimal ? 0.0 : std::max(tau, mean);
    const double residual = std::max({tau1, link, mismatch});
    return evaluated(id, ctx, residual, scale, tol,
                     "|tau1| " + fmt(tau1) + ", |tau| " + fmt(tau) + ", |H| " + fmt(mean) + ", harmonic " +
                         (harmonic ? "yes" : "no") + ", minimal " + (minimal ? "yes" : "no"));
}

// Flat Kaehler target (c = 0): B(X,X) = 0 on horizontal X forces vanishing
// holomorphic sectional curvature of the source along horizontal planes.
CheckResult space_form_criterion(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s) {
    constexpr std::string_view id = "space_form_criterion";
    if (auto why = violated(f, ctx, s,
                            {Hypothesis::Riemannian, Hypothesis::Holomorphic, Hypothesis::SourceAlmostHermitian,
                             Hypothesis::TargetAlmostHermitian, Hypothesis::TargetKahler, Hypothesis::TargetFlat,
                             Hypothesis::HorizontalInvolutive})) {
        return skipped(id, ctx, *why);
    }
    double sff_max = 0.0;
    double curvature_spread = 0.0;
    for (const Vector& x : ctx.horizontal_samples) {
        sff_max = std::max(sff_max, norm2(ctx, ctx.mp.sff(x, x)));
        curvature_spread = std::max(curvature_spread, std::abs(holomorphic_sectional_curvature(ctx.mp.source, x)));
    }
    const double tol = s.tolerances.threshold(sff_max);
    const std::string details = "max |B(X,X)| " + fmt(sff_max) + ", max |H_source(X) - c| " + fmt(curvature_spread);
    if (sff_max > tol) {
        return evaluated(id, ctx, 0.0, sff_max, tol, "vacuous; " + details);
    }
    return evaluated(id, ctx, curvature_spread, sff_max, tol, details);
}

}  // namespace

// -- context ------------------------------------------------------------------

PointContext make_context(const SmoothMap& f, const Vector& p, std::size_t index, const CheckSettings& s) {
    PointContext ctx;
    ctx.index = index;
    ctx.mp = evaluate_map_point(f, p, EvalOptions{s.mode, s.tolerances.rank});
    const auto& mp = ctx.mp;
    const auto r = static_cast<std::size_t>(mp.split.hor_frame.cols());

    ctx.pushed_hor = mp.differential.jacobian * mp.split.hor_frame;
    ctx.sff_hor.assign(r, std::vector<Vector>(r));
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < r; ++b) {
            ctx.sff_hor[a][b] = mp.sff(mp.split.hor_frame.col(static_cast<Index>(a)),
                                       mp.split.hor_frame.col(static_cast<Index>(b)));
        }
    }

    ctx.riemannian_defect = riemannian_defect(mp);
    {
        const Matrix lhs = ctx.pushed_hor.transpose() * mp.target.metric.g * ctx.pushed_hor;
        const Matrix rhs = mp.split.hor_frame.transpose() * mp.source.metric.g * mp.split.hor_frame;
        ctx.riemannian_scale = std::max(max_abs(lhs), max_abs(rhs));
    }

    const bool j1 = mp.source.complex_structure.has_value();
    const bool j2 = mp.target.complex_structure.has_value();
    if (j1 && j2) {
        ctx.holomorphy_defect = holomorphy_defect(mp);
        const Matrix& a = mp.differential.jacobian;
        ctx.holomorphy_scale = std::max(max_abs(*mp.target.complex_structure * a), max_abs(a * *mp.source.complex_structure));
    }
    auto kahler_scale = [](const PointGeometry& geo) {
        double gmax = 0.0;
        for (const auto& v : geo.connection.gamma.data()) {
            gmax = std::max(gmax, std::abs(v));
        }
        double djmax = 0.0;
        for (const auto& d : geo.complex_structure_d) {
            djmax = std::max(djmax, max_abs(d));
        }
        const auto n = static_cast<double>(geo.metric.g.rows());
        return std::max(djmax, n * gmax * max_abs(*geo.complex_structure));
    };
    if (j1) {
        ctx.source_hermitian = validate_almost_hermitian(mp.source);
        ctx.source_kahler = kahler_defect(mp.source);
        ctx.source_kahler_scale = kahler_scale(mp.source);
    }
    if (j2) {
        ctx.target_hermitian = validate_almost_hermitian(mp.target);
        ctx.target_kahler = kahler_defect(mp.target);
        ctx.target_kahler_scale = kahler_scale(mp.target);
    }
    for (const auto& v : mp.target.curvature.riem_down.data()) {
        ctx.target_curvature_max = std::max(ctx.target_curvature_max, std::abs(v));
    }

    // frame vectors, then seeded random unit combinations
    for (std::size_t a = 0; a < r; ++a) {
        ctx.horizontal_samples.emplace_back(mp.split.hor_frame.col(static_cast<Index>(a)));
    }
    if (r > 1) {
        auto rng = point_stream(s.seed, index);
        for (std::size_t k = 0; k < s.random_directions; ++k) {
            Vector c(static_cast<Index>(r));
            double len = 0.0;
            do {
                for (Index a = 0; a < c.size(); ++a) {
                    c(a) = rng.uniform(-1.0, 1.0);
                }
                len = c.norm();
            } while (len < 1e-3);
            ctx.horizontal_samples.emplace_back(mp.split.hor_frame * (c / len));
        }
    }
    return ctx;
}

std::vector<PointContext> make_contexts(const SmoothMap& f, PointSet points, const CheckSettings& s, unsigned jobs) {
    std::vector<PointContext> out(points.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, points.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            out[i] = make_context(f, points[i], i, s);
        }
        return out;
    }
    // strided partition; each slot written by exactly one worker
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < points.size(); i += workers) {
                out[i] = make_context(f, points[i], i, s);
            }
        }));
    }
    for (auto& t : tasks) {
        t.get();
    }
    return out;
}

std::optional<std::string> violated(const SmoothMap& f, const PointContext& ctx, const CheckSettings& s,
                                    std::initializer_list<Hypothesis> hypotheses) {
    const bool gate = s.hypothesis_gating;
    const auto& tol = s.tolerances;
    for (const auto h : hypotheses) {
        switch (h) {
            case Hypothesis::Riemannian:
                if (gate && ctx.riemannian_defect > tol.threshold(ctx.riemannian_scale)) {
                    return "hypothesis failed: Riemannian map (defect " + fmt(ctx.riemannian_defect) + ")";
                }
                break;
            case Hypothesis::Holomorphic:
                if (!ctx.holomorphy_defect) {
                    return std::string("hypothesis failed: holomorphic (complex structure missing)");
                }
                if (gate && *ctx.holomorphy_defect > tol.threshold(ctx.holomorphy_scale)) {
                    return "hypothesis failed: holomorphic (defect " + fmt(*ctx.holomorphy_defect) + ")";
                }
                break;
            case Hypothesis::SourceAlmostHermitian:
            case Hypothesis::TargetAlmostHermitian: {
                const bool source = h == Hypothesis::SourceAlmostHermitian;
                const auto& defects = source ? ctx.source_hermitian : ctx.target_hermitian;
                const char* side = source ? "source" : "target";
                if (!defects) {
                    return std::string("hypothesis failed: ") + side + " almost Hermitian (no complex structure)";
                }
                const double worst = std::max(defects->j_squared, defects->compatibility);
                if (gate && worst > tol.threshold(1.0)) {
                    return std::string("hypothesis failed: ") + side + " almost Hermitian (defect " + fmt(worst) + ")";
                }
                break;
            }
            case Hypothesis::SourceKahler:
            case Hypothesis::TargetKahler: {
                const bool source = h == Hypothesis::SourceKahler;
                const auto& defect = source ? ctx.source_kahler : ctx.target_kahler;
                const double scale = source ? ctx.source_kahler_scale : ctx.target_kahler_scale;
                const char* side = source ? "source" : "target";
                if (!defect) {
                    return std::string("hypothesis failed: ") + side + " Kaehler (no complex structure)";
                }
                if (gate && *defect > tol.threshold(scale)) {
                    return std::string("hypothesis failed: ") + side + " Kaehler (defect " + fmt(*defect) + ")";
                }
                break;
            }
            case Hypothesis::TargetFlat:
                if (gate && ctx.target_curvature_max > tol.threshold(1.0)) {
                    return "hypothesis failed: flat target (max |R| " + fmt(ctx.target_curvature_max) + ")";
                }
                break;
            case Hypothesis::HorizontalInvolutive:
                if (gate) {
                    const double d =
                        horizontal_involutivity_defect_at(f, ctx.mp.point, EvalOptions{s.mode, tol.rank});
                    if (d > tol.involutivity) {
                        return "hypothesis failed: horizontal distribution integrable (defect " + fmt(d) + ")";
                    }
                }
                break;
        }
    }
    return std::nullopt;
}

PointCheck point_check(std::string_view name) {
    static const std::pair<std::string_view, PointCheck> table[] = {
        {"riemannian_map", &riemannian_map},
        {"holomorphic", &holomorphic},
        {"almost_hermitian", &almost_hermitian},
        {"kahler_source", &kahler_source},
        {"kahler_target", &kahler_target},
        {"sff_range_orthogonality", &sff_range_orthogonality},
        {"gauss_equation", &gauss_equation},
        {"shape_operator_duality", &shape_operator_duality},
        {"complex_invariance", &complex_invariance},
        {"kahler_sff_commutation", &kahler_sff_commutation},
        {"holomorphic_curvature_identity", &holomorphic_curvature_identity},
        {"harmonicity_minimality", &harmonicity_minimality},
        {"space_form_criterion", &space_form_criterion},
        {"kernel_involutivity", &kernel_involutivity},
    };
    for (const auto& [key, fn] : table) {
        if (key == name) {
            return fn;
        }
    }
    return nullptr;
}

std::vector<CheckResult> rank_constancy(const std::vector<PointContext>& contexts) {
    std::vector<CheckResult> out;
    if (contexts.empty()) {
        return out;
    }
    const std::size_t reference = contexts.front().mp.split.rank;
    for (const auto& ctx : contexts) {
        const std::size_t r = ctx.mp.split.rank;
        const double diff = static_cast<double>(r > reference ? r - reference : reference - r);
        out.push_back(evaluated("rank_constancy", ctx, diff, 0.0, 0.0,
                                "rank " + std::to_string(r) + ", reference " + std::to_string(reference)));
    }
    return out;
}

}  // namespace rmap::detail
