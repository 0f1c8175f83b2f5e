#include "rmap/gallery.hpp"

#include "rmap/error.hpp"

#include <map>

namespace rmap {
namespace {

TextGrid diagonal(const std::vector<std::string>& entries) {
    const std::size_t n = entries.size();
    TextGrid g(n, std::vector<std::string>(n, "0"));
    for (std::size_t i = 0; i < n; ++i) {
        g[i][i] = entries[i];
    }
    return g;
}

// J(a1, a2, ..., a2m-1, a2m) = (-a2, a1, ..., -a2m, a2m-1)
TextGrid standard_j(std::size_t n) {
    TextGrid j(n, std::vector<std::string>(n, "0"));
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        j[k][k + 1] = "-1";
        j[k + 1][k] = "1";
    }
    return j;
}

ChartSpec chart(std::vector<std::string> coords, std::vector<std::string> metric_diag, bool complex,
                std::vector<Interval> box) {
    ChartSpec c;
    const std::size_t n = coords.size();
    c.coords = std::move(coords);
    c.metric = diagonal(metric_diag);
    if (complex) {
        c.complex_structure = standard_j(n);
    }
    c.domain = std::move(box);
    return c;
}

ChartSpec flat(std::vector<std::string> coords, bool complex, Interval side) {
    const std::size_t n = coords.size();
    return chart(std::move(coords), std::vector<std::string>(n, "1"), complex, std::vector<Interval>(n, side));
}

std::map<std::string, Outcome> all_pass() {
    std::map<std::string, Outcome> out;
    for (const auto& name : check_names()) {
        out[name] = Outcome::Pass;
    }
    return out;
}

const std::string kConformal = "1 + 4*(x^2 + y^2)";

ScenarioManifest paper_example() {
    ScenarioManifest m;
    m.name = "paper_example";
    m.description = "(x1,x2,x3,x4) -> ((x1+x3)/sqrt(2), (x2+x4)/sqrt(2), 0, 0) between flat R^4 with the standard "
                    "complex structure; rank 2 with both a kernel and a normal part";
    m.literature_note = "holomorphic Riemannian map that is neither a submersion nor an immersion";
    m.source = flat({"x1", "x2", "x3", "x4"}, true, {-1.0, 1.0});
    m.target = flat({"y1", "y2", "y3", "y4"}, true, {-2.0, 2.0});
    m.map = {"(x1 + x3)/sqrt(2)", "(x2 + x4)/sqrt(2)", "0", "0"};
    m.normal_fields = {{"0", "0", "1", "0"}, {"0", "0", "0", "1"}};
    m.expectations = all_pass();
    return m;
}

ScenarioManifest kahler_graph() {
    ScenarioManifest m;
    m.name = "kahler_graph";
    m.description = "z -> (z, z^2) from C with the induced metric into flat C^2";
    m.literature_note = "Kaehler submanifold of a Kaehler manifold: holomorphic Riemannian map with trivial kernel";
    m.source = chart({"x", "y"}, {kConformal, kConformal}, true, {{-1.0, 1.0}, {-1.0, 1.0}});
    m.target = flat({"a", "b", "c", "d"}, true, {-2.0, 2.0});
    m.map = {"x", "y", "x^2 - y^2", "2*x*y"};
    m.normal_fields = {{"-2*a", "2*b", "1", "0"}, {"-2*b", "-2*a", "0", "1"}};
    m.expectations = all_pass();
    return m;
}

ScenarioManifest graph_with_kernel() {
    ScenarioManifest m;
    m.name = "graph_with_kernel";
    m.description = "(x,y,u,v) -> (x, y, x^2 - y^2, 2*x*y) with source metric diag(l, l, 1, 1), "
                    "l = 1 + 4*(x^2 + y^2); curved source, kernel (u,v) and a two-dimensional normal bundle";
    m.literature_note = "holomorphic Riemannian map with nontrivial kernel, curvature and normal bundle";
    m.source = chart({"x", "y", "u", "v"}, {kConformal, kConformal, "1", "1"}, true,
                     std::vector<Interval>(4, Interval{-1.0, 1.0}));
    m.target = flat({"a", "b", "c", "d"}, true, {-2.0, 2.0});
    m.map = {"x", "y", "x^2 - y^2", "2*x*y"};
    m.normal_fields = {{"-2*a", "2*b", "1", "0"}, {"-2*b", "-2*a", "0", "1"}};
    m.expectations = all_pass();
    return m;
}

ScenarioManifest flat_submersion() {
    ScenarioManifest m;
    m.name = "flat_submersion";
    m.description = "(x1,x2,x3,x4) -> ((x1+x3)/sqrt(2), (x2+x4)/sqrt(2)) from flat R^4 onto flat R^2";
    m.literature_note = "holomorphic submersion between almost Hermitian manifolds: the normal space is {0}";
    m.source = flat({"x1", "x2", "x3", "x4"}, true, {-1.0, 1.0});
    m.target = flat({"y1", "y2"}, true, {-2.0, 2.0});
    m.map = {"(x1 + x3)/sqrt(2)", "(x2 + x4)/sqrt(2)"};
    m.expectations = all_pass();
    return m;
}

ScenarioManifest identity_c2() {
    ScenarioManifest m;
    m.name = "identity_c2";
    m.description = "identity map of flat C^2";
    m.literature_note = "isometry: empty kernel and empty normal space";
    m.source = flat({"x1", "x2", "x3", "x4"}, true, {-1.0, 1.0});
    m.target = flat({"y1", "y2", "y3", "y4"}, true, {-1.0, 1.0});
    m.map = {"x1", "x2", "x3", "x4"};
    m.expectations = all_pass();
    return m;
}

ScenarioManifest anti_holomorphic() {
    ScenarioManifest m;
    m.name = "anti_holomorphic";
    m.description = "complex conjugation z -> conj(z) on flat C (control)";
    m.literature_note = "an isometry that anticommutes with J: Riemannian but not holomorphic";
    m.source = flat({"x", "y"}, true, {-1.0, 1.0});
    m.target = flat({"a", "b"}, true, {-1.0, 1.0});
    m.map = {"x", "-y"};
    m.expectations = {
        {"holomorphic", Outcome::Fail},
        {"complex_invariance", Outcome::Skipped},
        {"kahler_sff_commutation", Outcome::Skipped},
        {"holomorphic_curvature_identity", Outcome::Skipped},
        {"harmonicity_minimality", Outcome::Skipped},
        {"space_form_criterion", Outcome::Skipped},
    };
    return m;
}

ScenarioManifest non_riemannian() {
    ScenarioManifest m;
    m.name = "non_riemannian";
    m.description = "z -> z^2 on flat C away from the origin (control); |F_*| = 2|z| >= 2";
    m.literature_note = "holomorphic and conformal but not isometric on horizontal vectors";
    m.source = chart({"x", "y"}, {"1", "1"}, true, {{1.0, 2.0}, {-1.0, 1.0}});
    m.target = flat({"a", "b"}, true, {-5.0, 5.0});
    m.map = {"x^2 - y^2", "2*x*y"};
    m.expectations = {
        {"riemannian_map", Outcome::Fail},
        {"complex_invariance", Outcome::Pass},
        {"sff_range_orthogonality", Outcome::Skipped},
        {"gauss_equation", Outcome::Skipped},
        {"kahler_sff_commutation", Outcome::Skipped},
        {"holomorphic_curvature_identity", Outcome::Skipped},
        {"harmonicity_minimality", Outcome::Skipped},
        {"space_form_criterion", Outcome::Skipped},
    };
    return m;
}

ScenarioManifest non_kahler_source() {
    ScenarioManifest m;
    m.name = "non_kahler_source";
    m.description = "(x,y,u,v) -> (u, v) with source metric diag(1+u^2, 1+u^2, 1, 1) (control)";
    m.literature_note = "almost Hermitian but not Kaehler source: the (x,y) conformal factor varies with u";
    m.source = chart({"x", "y", "u", "v"}, {"1 + u^2", "1 + u^2", "1", "1"}, true,
                     std::vector<Interval>(4, Interval{-1.0, 1.0}));
    m.target = flat({"a", "b"}, true, {-1.0, 1.0});
    m.map = {"u", "v"};
    m.expectations = {
        {"kahler_source", Outcome::Fail},
        {"harmonicity_minimality", Outcome::Skipped},
    };
    return m;
}

ScenarioManifest real_parabola() {
    ScenarioManifest m;
    m.name = "real_parabola";
    m.description = "(x,u) -> (x, x^2, 0) with source metric diag(1 + 4*x^2, 1), no complex structure "
                    "(control, diagnostic mode)";
    m.literature_note = "Riemannian map onto a parabola: not minimal and not harmonic, |tau| = r |H|";
    m.source = chart({"x", "u"}, {"1 + 4*x^2", "1"}, false, {{-1.0, 1.0}, {-1.0, 1.0}});
    m.target = flat({"a", "b", "c"}, false, {-2.0, 2.0});
    m.map = {"x", "x^2", "0"};
    m.normal_fields = {{"-2*a", "1", "0"}, {"0", "0", "1"}};
    m.hypothesis_gating = false;
    m.expectations = all_pass();
    for (const char* id : {"holomorphic", "almost_hermitian", "kahler_source", "kahler_target", "complex_invariance",
                           "kahler_sff_commutation", "holomorphic_curvature_identity", "space_form_criterion"}) {
        m.expectations[id] = Outcome::Skipped;
    }
    return m;
}

struct Builder {
    const char* name;
    ScenarioManifest (*make)();
};

constexpr Builder kBuilders[] = {
    {"paper_example", &paper_example},
    {"kahler_graph", &kahler_graph},
    {"graph_with_kernel", &graph_with_kernel},
    {"flat_submersion", &flat_submersion},
    {"identity_c2", &identity_c2},
    {"anti_holomorphic", &anti_holomorphic},
    {"non_riemannian", &non_riemannian},
    {"non_kahler_source", &non_kahler_source},
    {"real_parabola", &real_parabola},
};

}  // namespace

const std::vector<std::string>& gallery_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& b : kBuilders) {
            out.emplace_back(b.name);
        }
        return out;
    }();
    return names;
}

std::vector<GalleryEntry> gallery() {
    std::vector<GalleryEntry> out;
    for (const auto& b : kBuilders) {
        auto m = b.make();
        out.push_back({m.name, m.description, m.literature_note, m.expectations});
    }
    return out;
}

ScenarioManifest builtin_scenario(std::string_view name) {
    for (const auto& b : kBuilders) {
        if (name == b.name) {
            return b.make();
        }
    }
    std::string list;
    for (const auto& n : gallery_names()) {
        list += (list.empty() ? "" : ", ") + n;
    }
    throw Error("unknown gallery scenario '" + std::string(name) + "'; available: " + list);
}

}  // namespace rmap
