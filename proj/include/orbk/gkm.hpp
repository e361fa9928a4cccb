#pragma once

#include <orbk/errors.hpp>
#include <orbk/exact_linalg.hpp>
#include <orbk/parallel.hpp>
#include <orbk/report.hpp>
#include <orbk/types.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

// GKM moment graphs and their quotients by a circle subgroup S^1 -> T.
// When M^{S^1} = M^T, the critical set of a generic component of the moment
// map on Z = Phi_{S^1}^{-1}(eta) is Z intersected with the 1-skeleton: one
// free-up-to-Z/|m| orbit per edge whose endpoint values straddle eta.

namespace orbk {

struct GkmVertex {
    std::string id;
    RatVec mu;

    friend bool operator==(const GkmVertex&, const GkmVertex&) = default;
};

// alpha points from v to w: mu(w) - mu(v) is a positive multiple of alpha.
struct GkmEdge {
    std::size_t v = 0;
    std::size_t w = 0;
    IntVec alpha;

    friend bool operator==(const GkmEdge&, const GkmEdge&) = default;
};

struct GkmGraph {
    std::size_t dimension = 0;
    std::vector<GkmVertex> vertices;
    std::vector<GkmEdge> edges;

    friend bool operator==(const GkmGraph&, const GkmGraph&) = default;
};

struct GkmViolation {
    enum class Kind { Structure, ZeroWeight, NotPrimitive, MomentMismatch, DependentWeights };
    Kind kind;
    std::string message;
    std::vector<std::size_t> edges;
    std::optional<std::size_t> vertex;
};

inline const char* to_string(GkmViolation::Kind k) {
    switch (k) {
        case GkmViolation::Kind::Structure: return "structure";
        case GkmViolation::Kind::ZeroWeight: return "zero_weight";
        case GkmViolation::Kind::NotPrimitive: return "not_primitive";
        case GkmViolation::Kind::MomentMismatch: return "moment_mismatch";
        case GkmViolation::Kind::DependentWeights: return "dependent_weights";
    }
    return "unknown";
}

namespace detail {

inline bool parallel_vectors(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

// c > 0 with d = c * alpha, if any.
inline std::optional<Rational> positive_multiple(const RatVec& d, const IntVec& alpha) {
    std::optional<Rational> c;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (alpha[i] == 0) {
            if (d[i] != 0) return std::nullopt;
            continue;
        }
        const Rational ci = d[i] / Rational(alpha[i]);
        if (c && *c != ci) return std::nullopt;
        c = ci;
    }
    if (!c || *c <= 0) return std::nullopt;
    return c;
}

}  // namespace detail

// Every invariant violation with its location; empty means valid.
inline std::vector<GkmViolation> validate_gkm(const GkmGraph& g) {
    using K = GkmViolation::Kind;
    std::vector<GkmViolation> out;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        if (!ids.insert(v.id).second) out.push_back({K::Structure, "duplicate vertex id " + v.id, {}, i});
        if (v.mu.size() != g.dimension) out.push_back({K::Structure, "vertex " + v.id + " has wrong dimension", {}, i});
    }
    std::vector<bool> usable(g.edges.size(), false);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& E = g.edges[e];
        const std::string where = "edge " + std::to_string(e + 1);
        if (E.v >= g.vertices.size() || E.w >= g.vertices.size() || E.v == E.w) {
            out.push_back({K::Structure, where + " has invalid endpoints", {e}, std::nullopt});
            continue;
        }
        if (E.alpha.size() != g.dimension) {
            out.push_back({K::Structure, where + " weight has wrong dimension", {e}, std::nullopt});
            continue;
        }
        if (gcd_of(E.alpha) == 0) {
            out.push_back({K::ZeroWeight, where + " has zero weight", {e}, std::nullopt});
            continue;
        }
        if (gcd_of(E.alpha) != 1) out.push_back({K::NotPrimitive, where + " weight is not primitive", {e}, std::nullopt});
        const auto& a = g.vertices[E.v].mu;
        const auto& b = g.vertices[E.w].mu;
        if (a.size() != g.dimension || b.size() != g.dimension) continue;
        RatVec d(g.dimension);
        for (std::size_t i = 0; i < g.dimension; ++i) d[i] = b[i] - a[i];
        if (!detail::positive_multiple(d, E.alpha))
            out.push_back({K::MomentMismatch, where + ": mu(w) - mu(v) is not a positive multiple of alpha", {e},
                           std::nullopt});
        usable[e] = true;
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        std::vector<std::size_t> inc;
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (usable[e] && (g.edges[e].v == v || g.edges[e].w == v)) inc.push_back(e);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j)
                if (detail::parallel_vectors(g.edges[inc[i]].alpha, g.edges[inc[j]].alpha))
                    out.push_back({K::DependentWeights,
                                   "vertex " + g.vertices[v].id + ": weights of edges " + std::to_string(inc[i] + 1) +
                                       " and " + std::to_string(inc[j] + 1) + " are linearly dependent",
                                   {inc[i], inc[j]}, v});
    }
    return out;
}

// Cocharacter b of an effective circle S^1 -> T.
class CircleSubgroup {
public:
    explicit CircleSubgroup(IntVec b) : b_(std::move(b)) {
        if (gcd_of(b_) != 1) throw InvalidInput("circle cocharacter must be primitive (gcd of entries 1)");
    }

    const IntVec& b() const { return b_; }

private:
    IntVec b_;
};

inline Rational vertex_value(const GkmGraph& g, std::size_t v, const CircleSubgroup& c) {
    return dot(c.b(), g.vertices[v].mu);
}

// Edges whose weight pairs to zero with b; empty means M^{S^1} = M^T.
inline std::vector<std::size_t> inadmissible_edges(const GkmGraph& g, const CircleSubgroup& c) {
    if (c.b().size() != g.dimension) throw InvalidInput("circle cocharacter length must equal the graph dimension");
    std::vector<std::size_t> bad;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (dot(g.edges[e].alpha, c.b()) == 0) bad.push_back(e);
    return bad;
}

inline bool admissible_circle(const GkmGraph& g, const CircleSubgroup& c) { return inadmissible_edges(g, c).empty(); }

struct CrossingEdge {
    std::size_t edge = 0;
    std::size_t lower = 0;  // endpoint below the level
    std::size_t upper = 0;
    Integer m;  // <alpha, b> with alpha oriented from lower to upper, so m > 0
    FiniteAbelianGroup group;
    Rational lower_value;
    Rational upper_value;

    friend bool operator==(const CrossingEdge&, const CrossingEdge&) = default;
};

using GkmReport = KorbReport<CrossingEdge>;

// Edges straddling eta, in edge order.
inline std::vector<CrossingEdge> crossing_edges(const GkmGraph& g, const CircleSubgroup& c, const Rational& eta) {
    if (auto bad = inadmissible_edges(g, c); !bad.empty())
        throw InadmissibleCircle("circle is not admissible: some edge weights pair to zero with b", std::move(bad));
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (vertex_value(g, v, c) == eta)
            throw NonRegularLevel("level equals the value at vertex " + g.vertices[v].id, {}, g.vertices[v].id);
    std::vector<CrossingEdge> out;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& E = g.edges[e];
        Rational a = vertex_value(g, E.v, c), b = vertex_value(g, E.w, c);
        Integer m = dot(E.alpha, c.b());
        std::size_t lo = E.v, hi = E.w;
        if (a > b) {
            std::swap(a, b);
            std::swap(lo, hi);
            m = -m;
        }
        if (!(a < eta && eta < b)) continue;
        out.push_back({e, lo, hi, m, FiniteAbelianGroup::from_cyclic_orders({abs(m)}), a, b});
    }
    return out;
}

// Sectors are the union of the cyclic groups mu_{|m_e|} in Q/Z.
inline GkmReport gkm_korb_report(const GkmGraph& g, const CircleSubgroup& c, const Rational& eta) {
    const auto crossings = crossing_edges(g, c, eta);
    std::set<Rational> elems;
    for (const auto& x : crossings)
        for (Integer j = 0; j < abs(x.m); ++j) elems.insert(make_rational(j, abs(x.m)));
    const std::vector<Rational> sectors(elems.begin(), elems.end());
    std::vector<SectorEntry<CrossingEdge>> entries(sectors.size());
    parallel_for(sectors.size(), [&](std::size_t i) {
        std::vector<CrossingEdge> fixed;
        for (const auto& x : crossings)
            if (Rational(sectors[i] * x.m).get_den() == 1) fixed.push_back(x);
        entries[i] = make_sector(TorusElement(RatVec{sectors[i]}), std::move(fixed));
    });
    return assemble_report(std::move(entries), {});
}

// ---------------------------------------------------------------------------
// Coadjoint orbit graphs from root data

struct RootSystemSpec {
    char cartan_type = 'A';
    std::size_t rank = 0;
    RatVec lambda;  // fundamental-weight coordinates
};

namespace detail {

// Simple roots in an orthonormal basis L_1, ..., L_m.
inline std::vector<IntVec> simple_roots(const RootSystemSpec& s) {
    const std::size_t r = s.rank;
    std::vector<IntVec> roots;
    if (s.cartan_type == 'A') {
        if (r < 1 || r > 3) throw InvalidInput("type A is supported for rank 1 to 3");
        for (std::size_t i = 0; i < r; ++i) {
            IntVec a(r + 1, 0);
            a[i] = 1;
            a[i + 1] = -1;
            roots.push_back(std::move(a));
        }
    } else if (s.cartan_type == 'B') {
        // alpha_1 short in rank 2; in rank 3 the labels follow alpha_1 = L_1 - L_2,
        // alpha_2 = L_3, alpha_3 = L_2 - L_3.
        if (r == 2) roots = {{0, 1}, {1, -1}};
        else if (r == 3) roots = {{1, -1, 0}, {0, 0, 1}, {0, 1, -1}};
        else throw InvalidInput("type B is supported for rank 2 and 3");
    } else {
        throw InvalidInput("cartan type must be A or B");
    }
    return roots;
}

struct RootData {
    std::vector<std::vector<Integer>> gram;  // alpha_i . alpha_j
    IntMatrix cartan;                        // cartan(i, j) = <alpha_i, alpha_j^vee>
    std::vector<IntVec> positive;            // simple-root coefficients
};

inline RootData root_data(const RootSystemSpec& s) {
    const auto simple = simple_roots(s);
    const std::size_t r = simple.size();
    RootData d;
    d.gram.assign(r, std::vector<Integer>(r));
    d.cartan = IntMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) d.gram[i][j] = dot(simple[i], simple[j]);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) d.cartan(i, j) = 2 * d.gram[i][j] / d.gram[j][j];

    // Closure of the simple roots under simple reflections, in coefficients.
    std::set<IntVec> seen;
    std::deque<IntVec> queue;
    for (std::size_t i = 0; i < r; ++i) {
        IntVec c(r, 0);
        c[i] = 1;
        if (seen.insert(c).second) queue.push_back(c);
    }
    while (!queue.empty()) {
        IntVec c = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < r; ++i) {
            Integer pair = 0;
            for (std::size_t l = 0; l < r; ++l) pair += c[l] * d.cartan(l, i);
            IntVec next = c;
            next[i] -= pair;
            if (seen.insert(next).second) queue.push_back(std::move(next));
        }
    }
    for (const auto& c : seen)
        if (std::all_of(c.begin(), c.end(), [](const Integer& x) { return x >= 0; })) d.positive.push_back(c);
    std::sort(d.positive.begin(), d.positive.end(), [](const IntVec& a, const IntVec& b) {
        Integer ha = 0, hb = 0;
        for (const auto& x : a) ha += x;
        for (const auto& x : b) hb += x;
        if (ha != hb) return ha < hb;
        return a > b;
    });
    return d;
}

// Root with simple coefficients c, expressed in fundamental-weight coordinates.
inline IntVec root_fundamental(const RootData& d, const IntVec& c) {
    const std::size_t r = c.size();
    IntVec f(r, 0);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) f[j] += c[i] * d.cartan(i, j);
    return f;
}

// <mu, beta^vee> for beta with simple coefficients c.
inline Rational coroot_pairing(const RootData& d, const IntVec& c, const RatVec& mu) {
    const std::size_t r = c.size();
    Integer len = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) len += c[i] * c[j] * d.gram[i][j];
    Rational p = 0;
    for (std::size_t i = 0; i < r; ++i) p += Rational(c[i] * d.gram[i][i]) / Rational(len) * mu[i];
    return p;
}

inline RatVec reflect(const RootData& d, const IntVec& c, const RatVec& mu) {
    const Rational p = coroot_pairing(d, c, mu);
    const IntVec f = root_fundamental(d, c);
    RatVec out = mu;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= p * f[i];
    return out;
}

inline std::string format_point(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace detail

// Positive roots in fundamental-weight coordinates, by increasing height.
inline std::vector<IntVec> positive_roots(const RootSystemSpec& s) {
    const auto d = detail::root_data(s);
    std::vector<IntVec> out;
    for (const auto& c : d.positive) out.push_back(detail::root_fundamental(d, c));
    return out;
}

// Weyl orbit of lambda (breadth-first under simple reflections) with one
// edge {mu, s_beta mu} per positive root beta moving mu.
inline GkmGraph from_root_system(const RootSystemSpec& s) {
    const auto d = detail::root_data(s);
    const std::size_t r = s.rank;
    if (s.lambda.size() != r) throw InvalidInput("lambda length must equal the rank");
    if (std::all_of(s.lambda.begin(), s.lambda.end(), [](const Rational& x) { return x == 0; }))
        throw InvalidInput("lambda must be nonzero");

    GkmGraph g;
    g.dimension = r;
    std::map<RatVec, std::size_t> index;
    std::deque<RatVec> queue{s.lambda};
    index[s.lambda] = 0;
    g.vertices.push_back({detail::format_point(s.lambda), s.lambda});
    while (!queue.empty()) {
        const RatVec mu = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < r; ++i) {
            IntVec c(r, 0);
            c[i] = 1;
            RatVec next = detail::reflect(d, c, mu);
            if (index.count(next)) continue;
            index[next] = g.vertices.size();
            g.vertices.push_back({detail::format_point(next), next});
            queue.push_back(std::move(next));
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& c : d.positive)
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            const RatVec image = detail::reflect(d, c, g.vertices[v].mu);
            const std::size_t w = index.at(image);
            if (w == v) continue;
            const auto key = std::minmax(v, w);
            if (!seen.insert(key).second) continue;
            RatVec diff(r);
            for (std::size_t i = 0; i < r; ++i) diff[i] = g.vertices[key.second].mu[i] - g.vertices[key.first].mu[i];
            g.edges.push_back({key.first, key.second, primitive_integer_direction(diff)});
        }
    return g;
}

}  // namespace orbk
