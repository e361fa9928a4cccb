#pragma once

#include <orbk/chart.hpp>
#include <orbk/errors.hpp>
#include <orbk/gkm.hpp>
#include <orbk/polyhedra.hpp>
#include <orbk/toric.hpp>
#include <orbk/types.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <climits>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

// Input documents are validated strictly: unknown fields are errors, and
// rationals are either JSON integers or strings "p", "-p/q". Output uses
// ordered_json so key order, and therefore bytes, are fixed. Supports and
// coordinates are 1-based in every document.

namespace orbk::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline void fail(const std::string& path, const std::string& what) { throw InvalidInput(path + ": " + what); }

inline bool is_integer_text(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

inline void require_keys(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional) {
    if (!j.is_object()) fail(path, "expected an object");
    std::set<std::string> allowed;
    for (auto k : required) {
        allowed.insert(k);
        if (!j.contains(k)) fail(path, std::string("missing field \"") + k + "\"");
    }
    for (auto k : optional) allowed.insert(k);
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) fail(path, "unknown field \"" + key + "\"");
}

}  // namespace detail

inline Rational parse_rational_text(const std::string& text, const std::string& path = "rational") {
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    if (!detail::is_integer_text(num)) detail::fail(path, "malformed rational \"" + text + "\"");
    Integer p(num[0] == '+' ? num.substr(1) : num);
    Integer q = 1;
    if (slash != std::string::npos) {
        const std::string den = text.substr(slash + 1);
        if (den.empty() || !std::all_of(den.begin(), den.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            detail::fail(path, "malformed rational \"" + text + "\"");
        q = Integer(den);
        if (q == 0) detail::fail(path, "zero denominator in \"" + text + "\"");
    }
    return make_rational(p, q);
}

inline Rational parse_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
    if (j.is_string()) return parse_rational_text(j.get<std::string>(), path);
    detail::fail(path, "expected a rational (integer or \"p/q\" string)");
    return {};
}

inline Integer parse_integer(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Integer(j.dump());
    if (j.is_string() && detail::is_integer_text(j.get<std::string>())) {
        const auto s = j.get<std::string>();
        return Integer(s[0] == '+' ? s.substr(1) : s);
    }
    detail::fail(path, "expected an integer");
    return {};
}

inline RatVec parse_rational_list(const Json& j, const std::string& path) {
    if (!j.is_array()) detail::fail(path, "expected an array");
    RatVec out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rational(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline IntVec parse_integer_list(const Json& j, const std::string& path) {
    if (!j.is_array()) detail::fail(path, "expected an array");
    IntVec out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_integer(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<IntVec> parse_integer_rows(const Json& j, const std::string& path) {
    if (!j.is_array()) detail::fail(path, "expected an array of integer arrays");
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(parse_integer_list(j[i], path + "[" + std::to_string(i) + "]"));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) detail::fail(path, "rows have different lengths");
    return rows;
}

inline std::size_t parse_count(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned()) detail::fail(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

// Comma-separated rationals, as given to --xi.
inline RatVec parse_rational_csv(const std::string& text, const std::string& what) {
    RatVec out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        out.push_back(parse_rational_text(item, what));
    }
    if (out.empty()) throw InvalidInput(what + ": empty list");
    return out;
}

inline IntVec parse_integer_csv(const std::string& text, const std::string& what) {
    IntVec out;
    for (const auto& q : parse_rational_csv(text, what)) {
        if (q.get_den() != 1) throw InvalidInput(what + ": expected integers");
        out.push_back(q.get_num());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Documents

inline Json parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidInput("document must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string()) throw InvalidInput("document: missing string field \"kind\"");
    if (j.contains("format") && !(j["format"].is_number_unsigned() && j["format"].get<unsigned>() == 1))
        throw InvalidInput("document: unsupported format (expected 1)");
    return j;
}

inline Json read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read input file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

inline std::string kind_of(const Json& doc) { return doc.at("kind").get<std::string>(); }

struct ToricInput {
    ToricModel model;
    std::optional<RatVec> xi;
};

inline ToricInput parse_toric(const Json& j) {
    detail::require_keys(j, "toric", {"kind", "weights", "level"}, {"format", "xi"});
    if (kind_of(j) != "toric") detail::fail("toric", "kind must be \"toric\"");
    const auto rows = parse_integer_rows(j["weights"], "weights");
    if (rows.empty() || rows.front().empty()) detail::fail("weights", "need at least one row and one column");
    ToricInput in{ToricModel(IntMatrix::from_rows(rows), parse_rational_list(j["level"], "level")), std::nullopt};
    if (j.contains("xi")) {
        in.xi = parse_rational_list(j["xi"], "xi");
        if (in.xi->size() != in.model.num_coordinates()) detail::fail("xi", "length must equal the number of columns");
    }
    return in;
}

inline GkmGraph parse_gkm(const Json& j) {
    detail::require_keys(j, "gkm", {"kind", "dimension", "vertices", "edges"}, {"format"});
    if (kind_of(j) != "gkm") detail::fail("gkm", "kind must be \"gkm\"");
    GkmGraph g;
    g.dimension = parse_count(j["dimension"], "dimension");
    if (g.dimension == 0) detail::fail("dimension", "must be positive");
    if (!j["vertices"].is_array()) detail::fail("vertices", "expected an array");
    if (!j["edges"].is_array()) detail::fail("edges", "expected an array");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
        const auto& v = j["vertices"][i];
        const std::string path = "vertices[" + std::to_string(i) + "]";
        detail::require_keys(v, path, {"id", "mu"}, {});
        if (!v["id"].is_string()) detail::fail(path + ".id", "expected a string");
        const std::string id = v["id"].get<std::string>();
        if (index.count(id)) detail::fail(path + ".id", "duplicate vertex id \"" + id + "\"");
        RatVec mu = parse_rational_list(v["mu"], path + ".mu");
        if (mu.size() != g.dimension) detail::fail(path + ".mu", "length must equal dimension");
        index[id] = g.vertices.size();
        g.vertices.push_back({id, std::move(mu)});
    }
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const auto& e = j["edges"][i];
        const std::string path = "edges[" + std::to_string(i) + "]";
        detail::require_keys(e, path, {"v", "w", "alpha"}, {});
        auto endpoint = [&](const char* key) {
            if (!e[key].is_string() || !index.count(e[key].get<std::string>()))
                detail::fail(path + "." + key, "must name a vertex id");
            return index.at(e[key].get<std::string>());
        };
        IntVec alpha = parse_integer_list(e["alpha"], path + ".alpha");
        if (alpha.size() != g.dimension) detail::fail(path + ".alpha", "length must equal dimension");
        g.edges.push_back({endpoint("v"), endpoint("w"), std::move(alpha)});
    }
    return g;
}

inline RootSystemSpec parse_rootsystem(const Json& j) {
    detail::require_keys(j, "rootsystem", {"kind", "cartan_type", "rank", "lambda"}, {"format"});
    if (kind_of(j) != "rootsystem") detail::fail("rootsystem", "kind must be \"rootsystem\"");
    if (!j["cartan_type"].is_string()) detail::fail("cartan_type", "expected \"A\" or \"B\"");
    const auto t = j["cartan_type"].get<std::string>();
    if (t != "A" && t != "B") detail::fail("cartan_type", "expected \"A\" or \"B\"");
    RootSystemSpec s{t[0], parse_count(j["rank"], "rank"), parse_rational_list(j["lambda"], "lambda")};
    if (s.lambda.size() != s.rank) detail::fail("lambda", "length must equal rank");
    return s;
}

inline ChartModel parse_chart(const Json& j) {
    detail::require_keys(j, "chart", {"kind", "ambient_dim", "weights", "subtorus", "level"}, {"format"});
    if (kind_of(j) != "chart") detail::fail("chart", "kind must be \"chart\"");
    const std::size_t d = parse_count(j["ambient_dim"], "ambient_dim");
    const auto weights = parse_integer_rows(j["weights"], "weights");
    const auto sub = parse_integer_rows(j["subtorus"], "subtorus");
    if (sub.size() != d) detail::fail("subtorus", "must have ambient_dim rows (d x k)");
    return ChartModel(d, weights, IntMatrix::from_rows(sub), parse_rational_list(j["level"], "level"));
}

// ---------------------------------------------------------------------------
// Canonical output

inline Json rational_json(const Rational& q) { return q.get_str(); }

// JSON integer when it fits in 64 bits, decimal string otherwise.
inline Json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
    return z.get_str();
}

inline Json rationals_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

inline Json integers_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(integer_json(x));
    return a;
}

inline Json support_json(const Support& s) {
    Json a = Json::array();
    for (auto j : s) a.push_back(j + 1);
    return a;
}

inline Json matrix_rows_json(const IntMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(integers_json(m.row(i)));
    return a;
}

inline Json group_json(const FiniteAbelianGroup& g) { return integers_json(g.invariant_factors()); }

inline Json component_json(const CriticalComponent& c) {
    Json o;
    o["support"] = support_json(c.support);
    o["r"] = rationals_json(c.r);
    o["group"] = group_json(c.group);
    o["rank"] = integer_json(c.group.representation_rank());
    Json elems = Json::array();
    for (const auto& t : c.elements) elems.push_back(rationals_json(t.coords()));
    o["elements"] = std::move(elems);
    o["critical_value"] = rational_json(c.critical_value);
    o["morse_index"] = c.morse_index;
    Json lam = Json::array();
    for (const auto& [j, v] : c.lambda) lam.push_back(Json{{"coordinate", j + 1}, {"value", rational_json(v)}});
    o["lambda"] = std::move(lam);
    return o;
}

inline Json crossing_json(const GkmGraph& g, const CrossingEdge& x) {
    Json o;
    o["edge"] = x.edge + 1;
    o["lower"] = g.vertices[x.lower].id;
    o["upper"] = g.vertices[x.upper].id;
    o["m"] = integer_json(x.m);
    o["group"] = group_json(x.group);
    o["rank"] = integer_json(x.group.representation_rank());
    o["interval"] = Json::array({rational_json(x.lower_value), rational_json(x.upper_value)});
    return o;
}

template <class C, class F>
Json report_tail(Json doc, const KorbReport<C>& r, F&& component, const std::function<Json(const TorusElement&)>& extra) {
    Json sectors = Json::array();
    for (const auto& s : r.sectors) {
        Json o;
        o["element"] = rationals_json(s.element.coords());
        if (extra) o["fixed"] = extra(s.element);
        o["rank"] = integer_json(s.rank);
        Json comps = Json::array();
        for (const auto& c : s.components) comps.push_back(component(c));
        o["components"] = std::move(comps);
        sectors.push_back(std::move(o));
    }
    doc["sectors"] = std::move(sectors);
    doc["untwisted_rank"] = integer_json(r.untwisted_rank());
    doc["twisted_rank"] = integer_json(r.twisted_rank());
    doc["total_rank"] = integer_json(r.total_rank);
    doc["torsion_free"] = r.torsion_free;
    Json w = Json::array();
    for (const auto& s : r.warnings) w.push_back(s);
    doc["warnings"] = std::move(w);
    return doc;
}

inline Json toric_model_json(const ToricModel& m, const RatVec& xi) {
    Json o;
    o["weights"] = matrix_rows_json(m.weights());
    o["level"] = rationals_json(m.level());
    o["xi"] = rationals_json(xi);
    return o;
}

inline Json toric_report_json(const ToricModel& m, const RatVec& xi, const ToricReport& r) {
    Json doc;
    doc["format"] = 1;
    doc["kind"] = "toric_report";
    doc["model"] = toric_model_json(m, xi);
    return report_tail(std::move(doc), r, component_json,
                       [&](const TorusElement& t) { return support_json(fixed_coordinates(m, t)); });
}

inline Json gkm_graph_json(const GkmGraph& g) {
    Json doc;
    doc["format"] = 1;
    doc["kind"] = "gkm";
    doc["dimension"] = g.dimension;
    Json vs = Json::array();
    for (const auto& v : g.vertices) vs.push_back(Json{{"id", v.id}, {"mu", rationals_json(v.mu)}});
    doc["vertices"] = std::move(vs);
    Json es = Json::array();
    for (const auto& e : g.edges)
        es.push_back(Json{{"v", g.vertices[e.v].id}, {"w", g.vertices[e.w].id}, {"alpha", integers_json(e.alpha)}});
    doc["edges"] = std::move(es);
    return doc;
}

inline Json gkm_report_json(const GkmGraph& g, const CircleSubgroup& c, const Rational& eta, const GkmReport& r) {
    Json doc;
    doc["format"] = 1;
    doc["kind"] = "gkm_report";
    Json model;
    model["dimension"] = g.dimension;
    model["vertex_count"] = g.vertices.size();
    model["edge_count"] = g.edges.size();
    model["circle"] = integers_json(c.b());
    model["level"] = rational_json(eta);
    Json values = Json::array();
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        values.push_back(Json{{"id", g.vertices[v].id}, {"value", rational_json(vertex_value(g, v, c))}});
    model["vertex_values"] = std::move(values);
    doc["model"] = std::move(model);
    Json crossings = Json::array();
    for (const auto& x : crossing_edges(g, c, eta)) crossings.push_back(crossing_json(g, x));
    doc["crossings"] = std::move(crossings);
    return report_tail(std::move(doc), r, [&](const CrossingEdge& x) { return crossing_json(g, x); }, {});
}

inline Json certificate_json(const PropernessCertificate& c) {
    if (c.y) return Json{{"y", rationals_json(*c.y)}};
    return Json{{"counterexample_ray", integers_json(*c.counterexample_ray)}};
}

inline Json chart_model_json(const ChartModel& chart) {
    Json o;
    o["ambient_dim"] = chart.ambient_dim();
    Json w = Json::array();
    for (const auto& v : chart.weights()) w.push_back(integers_json(v));
    o["weights"] = std::move(w);
    o["subtorus"] = matrix_rows_json(chart.subtorus());
    o["level"] = rationals_json(chart.level());
    return o;
}

inline Json chart_check_json(const ChartModel& chart, const DelzantVerdict& v) {
    Json doc;
    doc["format"] = 1;
    doc["kind"] = "chart_check";
    doc["model"] = chart_model_json(chart);
    doc["restricted_weights"] = matrix_rows_json(restrict_weights(chart).weights());
    doc["regular"] = v.regular();
    doc["regularity_witness"] = v.regular() ? Json(nullptr) : support_json(*v.regularity.witness);
    doc["xi"] = rationals_json(v.xi);
    doc["xi_supplied"] = v.xi_supplied;
    doc["proper"] = v.proper();
    doc["properness_certificate"] = certificate_json(v.properness);
    doc["passes"] = v.passes();
    return doc;
}

inline Json chart_report_json(const ChartModel& chart, const ChartReport& r) {
    Json doc;
    doc["format"] = 1;
    doc["kind"] = "chart_report";
    doc["model"] = chart_model_json(chart);
    doc["restricted_weights"] = matrix_rows_json(r.model.weights());
    doc["xi"] = rationals_json(r.xi);
    Json notes = Json::array();
    for (const auto& c : r.coincidences) {
        Json sups = Json::array();
        for (const auto& s : c.supports) sups.push_back(support_json(s));
        notes.push_back(Json{{"ambient_image", rationals_json(c.image)}, {"supports", std::move(sups)}});
    }
    doc["coincident_images"] = std::move(notes);
    return report_tail(std::move(doc), r.report, component_json,
                       [&](const TorusElement& t) { return support_json(fixed_coordinates(r.model, t)); });
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace orbk::io
