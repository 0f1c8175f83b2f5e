#include "rmap/manifest.hpp"

#include "json_text.hpp"
#include "rmap/error.hpp"
#include "rmap/sampling.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace rmap {

using nlohmann::json;

Tolerances ToleranceOverrides::resolve(DerivativeMode mode) const {
    Tolerances t = Tolerances::defaults_for(mode);
    if (residual) t.residual = *residual;
    if (relative) t.relative = *relative;
    if (rank) t.rank = *rank;
    if (involutivity) t.involutivity = *involutivity;
    return t;
}

namespace {

class Reader {
public:
    std::vector<std::string> problems;

    void problem(const std::string& where, const std::string& what) { problems.push_back(where + ": " + what); }

    std::string text(const json& j, const std::string& where) {
        if (j.is_string()) {
            return j.get<std::string>();
        }
        if (j.is_number()) {
            return detail::format_number(j.get<double>());
        }
        problem(where, "expected an expression string or a number");
        return "0";
    }

    std::optional<double> number(const json& j, const std::string& where) {
        if (!j.is_number()) {
            problem(where, "expected a number");
            return std::nullopt;
        }
        return j.get<double>();
    }

    std::vector<std::string> strings(const json& j, const std::string& where) {
        std::vector<std::string> out;
        if (!j.is_array()) {
            problem(where, "expected an array");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.push_back(text(j[i], where + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    std::optional<TextGrid> grid(const json& j, std::size_t n, const std::string& where) {
        if (!j.is_array() || j.size() != n) {
            problem(where, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " grid");
            return std::nullopt;
        }
        TextGrid out;
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string row_where = where + "[" + std::to_string(i) + "]";
            if (!j[i].is_array() || j[i].size() != n) {
                problem(row_where, "dimension mismatch: expected " + std::to_string(n) + " entries");
                ok = false;
                continue;
            }
            out.push_back(strings(j[i], row_where));
        }
        if (!ok) {
            return std::nullopt;
        }
        return out;
    }

    std::vector<Interval> box(const json& j, std::size_t n, const std::string& where) {
        std::vector<Interval> out;
        if (!j.is_array() || j.size() != n) {
            problem(where, "dimension mismatch: expected " + std::to_string(n) + " intervals");
            return out;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::string w = where + "[" + std::to_string(i) + "]";
            if (!j[i].is_array() || j[i].size() != 2 || !j[i][0].is_number() || !j[i][1].is_number()) {
                problem(w, "expected [lo, hi]");
                continue;
            }
            Interval iv{j[i][0].get<double>(), j[i][1].get<double>()};
            if (!(iv.lo < iv.hi)) {
                problem(w, "empty interval");
            }
            out.push_back(iv);
        }
        return out;
    }

    ChartSpec chart(const json& j, const std::string& where) {
        ChartSpec spec;
        if (!j.is_object()) {
            problem(where, "expected an object");
            return spec;
        }
        if (!j.contains("coords")) {
            problem(where, "missing 'coords'");
            return spec;
        }
        spec.coords = strings(j["coords"], where + ".coords");
        const std::size_t n = spec.coords.size();
        if (j.contains("dim")) {
            const auto d = number(j["dim"], where + ".dim");
            if (d && *d != static_cast<double>(n)) {
                problem(where + ".dim", "dimension mismatch: dim " + detail::format_number(*d) + " but " +
                                            std::to_string(n) + " coordinates");
            }
        }
        if (j.contains("metric")) {
            if (auto g = grid(j["metric"], n, where + ".metric")) spec.metric = *g;
        } else {
            problem(where, "missing 'metric'");
        }
        if (j.contains("complex_structure") && !j["complex_structure"].is_null()) {
            if (auto g = grid(j["complex_structure"], n, where + ".complex_structure")) spec.complex_structure = *g;
        }
        if (j.contains("domain")) {
            spec.domain = box(j["domain"], n, where + ".domain");
        } else {
            problem(where, "missing 'domain'");
        }
        return spec;
    }

    void expressions(const std::vector<std::string>& items, const std::vector<std::string>& coords,
                     const std::string& where) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            try {
                (void)expr::parse(items[i], coords);
            } catch (const UnknownIdentifierError& e) {
                problem(where + "[" + std::to_string(i) + "]",
                        "unknown coordinate '" + e.name() + "' in \"" + items[i] + "\"");
            } catch (const ParseError& e) {
                problem(where + "[" + std::to_string(i) + "]", std::string(e.what()) + " in \"" + items[i] + "\"");
            }
        }
    }

    void chart_expressions(const ChartSpec& spec, const std::string& where) {
        for (std::size_t i = 0; i < spec.metric.size(); ++i) {
            expressions(spec.metric[i], spec.coords, where + ".metric[" + std::to_string(i) + "]");
        }
        if (spec.complex_structure) {
            for (std::size_t i = 0; i < spec.complex_structure->size(); ++i) {
                expressions((*spec.complex_structure)[i], spec.coords,
                            where + ".complex_structure[" + std::to_string(i) + "]");
            }
        }
    }
};

std::string valid_check_list() {
    std::string out;
    for (const auto& name : check_names()) {
        out += (out.empty() ? "" : ", ") + name;
    }
    return out;
}

}  // namespace

ScenarioManifest parse_manifest(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) {
        throw ManifestError({"manifest: expected a JSON object"});
    }

    Reader rd;
    ScenarioManifest m;
    auto str_field = [&](const char* key, std::string& out, bool required) {
        if (!doc.contains(key)) {
            if (required) rd.problem("manifest", std::string("missing '") + key + "'");
            return;
        }
        if (!doc[key].is_string()) {
            rd.problem(key, "expected a string");
            return;
        }
        out = doc[key].get<std::string>();
    };
    str_field("name", m.name, true);
    str_field("description", m.description, false);
    str_field("literature_note", m.literature_note, false);

    const bool have_source = doc.contains("source");
    const bool have_target = doc.contains("target");
    if (have_source) m.source = rd.chart(doc["source"], "source");
    else rd.problem("manifest", "missing 'source'");
    if (have_target) m.target = rd.chart(doc["target"], "target");
    else rd.problem("manifest", "missing 'target'");

    rd.chart_expressions(m.source, "source");
    rd.chart_expressions(m.target, "target");

    if (doc.contains("map")) {
        m.map = rd.strings(doc["map"], "map");
        if (have_target && m.map.size() != m.target.coords.size()) {
            rd.problem("map", "dimension mismatch: " + std::to_string(m.map.size()) +
                                  " components for a target of dimension " + std::to_string(m.target.coords.size()));
        }
        rd.expressions(m.map, m.source.coords, "map");
    } else {
        rd.problem("manifest", "missing 'map'");
    }

    if (doc.contains("normal_fields")) {
        const json& nf = doc["normal_fields"];
        if (!nf.is_array()) {
            rd.problem("normal_fields", "expected an array");
        } else {
            for (std::size_t k = 0; k < nf.size(); ++k) {
                const std::string w = "normal_fields[" + std::to_string(k) + "]";
                auto field = rd.strings(nf[k], w);
                if (field.size() != m.target.coords.size()) {
                    rd.problem(w, "dimension mismatch: " + std::to_string(field.size()) +
                                      " components for a target of dimension " +
                                      std::to_string(m.target.coords.size()));
                }
                rd.expressions(field, m.target.coords, w);
                m.normal_fields.push_back(std::move(field));
            }
        }
    }

    if (doc.contains("derivative_mode")) {
        const json& dm = doc["derivative_mode"];
        const std::string v = dm.is_string() ? dm.get<std::string>() : "";
        if (v == "jets") m.mode = DerivativeMode::Jets;
        else if (v == "finite_differences") m.mode = DerivativeMode::FiniteDifferences;
        else rd.problem("derivative_mode", "expected \"jets\" or \"finite_differences\"");
    }

    if (doc.contains("sampling")) {
        const json& sj = doc["sampling"];
        const std::string mode = sj.is_object() && sj.contains("mode") && sj["mode"].is_string()
                                     ? sj["mode"].get<std::string>()
                                     : "random";
        if (!sj.is_object()) {
            rd.problem("sampling", "expected an object");
        } else if (mode == "random") {
            m.sampling.mode = SamplingSpec::Mode::Random;
            if (sj.contains("count")) {
                if (!sj["count"].is_number_unsigned() || sj["count"].get<std::uint64_t>() == 0) {
                    rd.problem("sampling.count", "expected a positive integer");
                } else {
                    m.sampling.count = sj["count"].get<std::size_t>();
                }
            }
            if (sj.contains("seed")) {
                if (!sj["seed"].is_number_unsigned()) rd.problem("sampling.seed", "expected a non-negative integer");
                else m.sampling.seed = sj["seed"].get<std::uint64_t>();
            }
            if (sj.contains("box")) {
                m.sampling.box = rd.box(sj["box"], m.source.coords.size(), "sampling.box");
            }
        } else if (mode == "explicit") {
            m.sampling.mode = SamplingSpec::Mode::Explicit;
            if (!sj.contains("points") || !sj["points"].is_array() || sj["points"].empty()) {
                rd.problem("sampling.points", "explicit sampling needs a non-empty point list");
            } else {
                const json& pts = sj["points"];
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    const std::string w = "sampling.points[" + std::to_string(i) + "]";
                    std::vector<double> p;
                    if (!pts[i].is_array()) {
                        rd.problem(w, "expected an array of numbers");
                        continue;
                    }
                    for (const auto& x : pts[i]) {
                        p.push_back(x.is_number() ? x.get<double>() : 0.0);
                        if (!x.is_number()) rd.problem(w, "expected an array of numbers");
                    }
                    if (p.size() != m.source.coords.size()) {
                        rd.problem(w, "dimension mismatch: " + std::to_string(p.size()) +
                                          " entries for a source of dimension " +
                                          std::to_string(m.source.coords.size()));
                    } else if (m.source.domain.size() == p.size()) {
                        for (std::size_t k = 0; k < p.size(); ++k) {
                            if (!m.source.domain[k].contains(p[k])) {
                                rd.problem(w, "outside the source domain box in coordinate '" + m.source.coords[k] +
                                                  "'");
                                break;
                            }
                        }
                    }
                    m.sampling.points.push_back(std::move(p));
                }
            }
        } else {
            rd.problem("sampling.mode", "expected \"random\" or \"explicit\"");
        }
    }

    if (doc.contains("checks")) {
        auto names = rd.strings(doc["checks"], "checks");
        if (!(names.size() == 1 && names[0] == "all")) {
            for (const auto& n : names) {
                if (!is_known_check(n)) {
                    rd.problem("checks", "unknown check '" + n + "'; valid checks: " + valid_check_list());
                }
            }
            m.checks = std::move(names);
        }
    }

    if (doc.contains("tolerances")) {
        const json& tj = doc["tolerances"];
        if (!tj.is_object()) {
            rd.problem("tolerances", "expected an object");
        } else {
            for (const auto& [k, v] : tj.items()) {
                const auto value = rd.number(v, "tolerances." + k);
                if (value && !(*value > 0.0)) rd.problem("tolerances." + k, "must be positive");
                if (k == "residual") m.tolerances.residual = value;
                else if (k == "relative") m.tolerances.relative = value;
                else if (k == "rank") m.tolerances.rank = value;
                else if (k == "involutivity") m.tolerances.involutivity = value;
                else rd.problem("tolerances." + k, "unknown tolerance");
            }
        }
    }

    if (doc.contains("hypothesis_gating")) {
        if (!doc["hypothesis_gating"].is_boolean()) rd.problem("hypothesis_gating", "expected true or false");
        else m.hypothesis_gating = doc["hypothesis_gating"].get<bool>();
    }

    if (doc.contains("expect")) {
        const json& ej = doc["expect"];
        if (!ej.is_object()) {
            rd.problem("expect", "expected an object");
        } else {
            for (const auto& [k, v] : ej.items()) {
                if (!is_known_check(k)) {
                    rd.problem("expect", "unknown check '" + k + "'; valid checks: " + valid_check_list());
                    continue;
                }
                const auto o = v.is_string() ? parse_outcome(v.get<std::string>()) : std::nullopt;
                if (!o) rd.problem("expect." + k, "expected \"pass\", \"fail\" or \"skip\"");
                else m.expectations[k] = *o;
            }
        }
    }

    // Structural checks the text-level pass cannot see (odd dimension with J,
    // asymmetric metric text).
    if (rd.problems.empty()) {
        for (const auto& [where, spec] : {std::pair{"source", &m.source}, std::pair{"target", &m.target}}) {
            try {
                ChartManifold chart(*spec);
            } catch (const Error& e) {
                rd.problem(where, e.what());
            }
        }
    }

    if (!rd.problems.empty()) {
        throw ManifestError(std::move(rd.problems));
    }
    return m;
}

ScenarioManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("file not found: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

namespace {

void write_grid(detail::JsonWriter& w, const TextGrid& g) {
    w.begin_array();
    for (const auto& row : g) {
        w.inline_array(row);
    }
    w.end_array();
}

void write_box(detail::JsonWriter& w, const std::vector<Interval>& box) {
    w.begin_array();
    for (const auto& iv : box) {
        w.inline_array(std::vector<double>{iv.lo, iv.hi});
    }
    w.end_array();
}

void write_chart(detail::JsonWriter& w, const ChartSpec& c) {
    w.begin_object();
    w.key("dim");
    w.value(static_cast<std::uint64_t>(c.coords.size()));
    w.key("coords");
    w.inline_array(c.coords);
    w.key("metric");
    write_grid(w, c.metric);
    if (c.complex_structure) {
        w.key("complex_structure");
        write_grid(w, *c.complex_structure);
    }
    w.key("domain");
    write_box(w, c.domain);
    w.end_object();
}

}  // namespace

std::string serialize_manifest(const ScenarioManifest& m) {
    detail::JsonWriter w;
    w.begin_object();
    w.key("name");
    w.value(m.name);
    if (!m.description.empty()) {
        w.key("description");
        w.value(m.description);
    }
    if (!m.literature_note.empty()) {
        w.key("literature_note");
        w.value(m.literature_note);
    }
    w.key("source");
    write_chart(w, m.source);
    w.key("target");
    write_chart(w, m.target);
    w.key("map");
    w.inline_array(m.map);
    if (!m.normal_fields.empty()) {
        w.key("normal_fields");
        w.begin_array();
        for (const auto& f : m.normal_fields) {
            w.inline_array(f);
        }
        w.end_array();
    }
    w.key("sampling");
    w.begin_object();
    if (m.sampling.mode == SamplingSpec::Mode::Random) {
        w.key("mode");
        w.value("random");
        w.key("count");
        w.value(static_cast<std::uint64_t>(m.sampling.count));
        w.key("seed");
        w.value(m.sampling.seed);
        if (m.sampling.box) {
            w.key("box");
            write_box(w, *m.sampling.box);
        }
    } else {
        w.key("mode");
        w.value("explicit");
        w.key("points");
        w.begin_array();
        for (const auto& p : m.sampling.points) {
            w.inline_array(p);
        }
        w.end_array();
    }
    w.end_object();
    w.key("checks");
    w.inline_array(m.checks.empty() ? std::vector<std::string>{"all"} : m.checks);
    const auto& t = m.tolerances;
    if (t.residual || t.relative || t.rank || t.involutivity) {
        w.key("tolerances");
        w.begin_object();
        const std::pair<const char*, const std::optional<double>*> items[] = {
            {"residual", &t.residual}, {"relative", &t.relative}, {"rank", &t.rank}, {"involutivity", &t.involutivity}};
        for (const auto& [k, v] : items) {
            if (*v) {
                w.key(k);
                w.value(**v);
            }
        }
        w.end_object();
    }
    w.key("derivative_mode");
    w.value(to_string(m.mode));
    w.key("hypothesis_gating");
    w.value(m.hypothesis_gating);
    if (!m.expectations.empty()) {
        w.key("expect");
        w.begin_object();
        for (const auto& name : check_names()) {
            if (auto it = m.expectations.find(name); it != m.expectations.end()) {
                w.key(name);
                w.value(to_string(it->second));
            }
        }
        w.end_object();
    }
    w.end_object();
    return w.take();
}

std::vector<Vector> manifest_points(const ScenarioManifest& m) {
    if (m.sampling.mode == SamplingSpec::Mode::Explicit) {
        std::vector<Vector> out;
        for (const auto& p : m.sampling.points) {
            out.push_back(Eigen::Map<const Vector>(p.data(), static_cast<Eigen::Index>(p.size())));
        }
        return out;
    }
    const auto box = m.sampling.box ? *m.sampling.box : shrink_box(m.source.domain);
    return sample_box(box, m.sampling.count, m.sampling.seed);
}

Scenario build_scenario(const ScenarioManifest& m) {
    ChartManifold source(m.source);
    ChartManifold target(m.target);
    Scenario s{m.name, SmoothMap(std::move(source), target, m.map), {}, manifest_points(m), m.expectations};
    for (const auto& f : m.normal_fields) {
        s.normal_fields.emplace_back(target, f);
    }
    return s;
}

SuiteOptions suite_options(const ScenarioManifest& m) {
    SuiteOptions o;
    o.mode = m.mode;
    o.tolerances = m.tolerances.resolve(m.mode);
    o.hypothesis_gating = m.hypothesis_gating;
    o.seed = m.sampling.seed;
    o.checks = m.checks;
    return o;
}

}  // namespace rmap
