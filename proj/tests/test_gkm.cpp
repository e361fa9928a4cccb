#include "test_support.hpp"

#include <orbk/gkm.hpp>
#include <orbk/oracle.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

using namespace orbk;
using orbk::testing::Rng;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

// Independent construction: orbit points in orthonormal L coordinates,
// converted to fundamental-weight coordinates by pairing with simple coroots.
// Two points are joined when a reflection s_beta swaps them, i.e. when
// x - y is parallel to a root.
struct LModel {
    std::vector<IntVec> points;
    std::vector<IntVec> coroots;  // simple coroots in L coordinates
    std::function<bool(const IntVec&)> is_root_direction;
};

IntVec to_fundamental(const LModel& m, const IntVec& x) {
    IntVec f;
    for (const auto& c : m.coroots) f.push_back(dot(c, x));
    return f;
}

struct Expected {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::vector<Integer> m;  // |<alpha, b>| over crossing edges
};

Expected expected_counts(const LModel& L, const IntVec& b, const Rational& eta) {
    Expected e;
    e.vertices = L.points.size();
    for (std::size_t i = 0; i < L.points.size(); ++i)
        for (std::size_t j = i + 1; j < L.points.size(); ++j) {
            IntVec d(L.points[i].size());
            for (std::size_t k = 0; k < d.size(); ++k) d[k] = L.points[j][k] - L.points[i][k];
            if (!L.is_root_direction(d)) continue;
            ++e.edges;
            const IntVec fi = to_fundamental(L, L.points[i]), fj = to_fundamental(L, L.points[j]);
            IntVec df(fi.size());
            for (std::size_t k = 0; k < df.size(); ++k) df[k] = fj[k] - fi[k];
            const Integer g = gcd_of(df);
            Integer m = 0;
            for (std::size_t k = 0; k < df.size(); ++k) m += df[k] / g * b[k];
            const Rational a = Rational(dot(b, fi)), c = Rational(dot(b, fj));
            if ((a < eta && eta < c) || (c < eta && eta < a)) e.m.push_back(abs(m));
        }
    std::sort(e.m.begin(), e.m.end());
    return e;
}

LModel a2_rho() {
    LModel m;
    IntVec x{2, 1, 0};
    std::sort(x.begin(), x.end());
    do m.points.push_back(x);
    while (std::next_permutation(x.begin(), x.end()));
    m.coroots = {{1, -1, 0}, {0, 1, -1}};
    // Roots L_i - L_j: one +c, one -c entry.
    m.is_root_direction = [](const IntVec& d) {
        int pos = 0, neg = 0;
        for (const auto& v : d) pos += v > 0, neg += v < 0;
        return pos == 1 && neg == 1 && d[0] + d[1] + d[2] == 0;
    };
    return m;
}

// Signed unit vectors +-L_i; every pair is swapped by some root reflection.
LModel b_short(std::size_t r) {
    LModel m;
    for (std::size_t i = 0; i < r; ++i)
        for (int s : {1, -1}) {
            IntVec x(r, 0);
            x[i] = s;
            m.points.push_back(x);
        }
    if (r == 2) m.coroots = {{0, 2}, {1, -1}};
    else m.coroots = {{1, -1, 0}, {0, 0, 2}, {0, 1, -1}};
    m.is_root_direction = [](const IntVec&) { return true; };
    return m;
}

std::vector<Integer> crossing_orders(const std::vector<CrossingEdge>& xs) {
    std::vector<Integer> m;
    for (const auto& x : xs) m.push_back(abs(x.m));
    std::sort(m.begin(), m.end());
    return m;
}

Integer sum_of_squares(const std::vector<Integer>& m) {
    Integer s = 0;
    for (const auto& x : m) s += x * x;
    return s;
}

GkmGraph a2() { return from_root_system({'A', 2, {q(1), q(1)}}); }
GkmGraph b2() { return from_root_system({'B', 2, {q(0), q(1)}}); }

std::size_t degree(const GkmGraph& g, std::size_t v) {
    return std::count_if(g.edges.begin(), g.edges.end(), [&](const GkmEdge& e) { return e.v == v || e.w == v; });
}

}  // namespace

TEST(RootSystem, PositiveRootCounts) {
    EXPECT_EQ(positive_roots({'A', 1, {q(1)}}).size(), 1u);
    EXPECT_EQ(positive_roots({'A', 2, {q(1), q(1)}}).size(), 3u);
    EXPECT_EQ(positive_roots({'A', 3, {q(1), q(1), q(1)}}).size(), 6u);
    EXPECT_EQ(positive_roots({'B', 2, {q(1), q(1)}}).size(), 4u);
    EXPECT_EQ(positive_roots({'B', 3, {q(1), q(1), q(1)}}).size(), 9u);
}

TEST(RootSystem, SimpleRootsAreCartanRows) {
    // In fundamental coordinates a simple root is its Cartan matrix row.
    const auto a = positive_roots({'A', 2, {q(1), q(1)}});
    EXPECT_EQ(a[0], (IntVec{2, -1}));
    EXPECT_EQ(a[1], (IntVec{-1, 2}));
    const auto b = positive_roots({'B', 2, {q(1), q(1)}});
    EXPECT_EQ(b[0], (IntVec{2, -1}));
    EXPECT_EQ(b[1], (IntVec{-2, 2}));
}

TEST(RootSystem, Unsupported) {
    EXPECT_THROW(from_root_system({'C', 2, {q(1), q(1)}}), InvalidInput);
    EXPECT_THROW(from_root_system({'A', 4, {q(1), q(1), q(1), q(1)}}), InvalidInput);
    EXPECT_THROW(from_root_system({'A', 2, {q(0), q(0)}}), InvalidInput);
    EXPECT_THROW(from_root_system({'A', 2, {q(1)}}), InvalidInput);
}

TEST(FromRootSystem, A2Flag) {
    const GkmGraph g = a2();
    EXPECT_EQ(g.vertices.size(), 6u);
    EXPECT_EQ(g.edges.size(), 9u);
    EXPECT_TRUE(validate_gkm(g).empty());
    for (std::size_t v = 0; v < g.vertices.size(); ++v) EXPECT_EQ(degree(g, v), 3u);
    EXPECT_EQ(g.vertices[0].id, "(1,1)");
}

TEST(FromRootSystem, A2VertexValues) {
    const GkmGraph g = a2();
    const CircleSubgroup c({1, 3});
    std::multiset<Rational> values;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) values.insert(vertex_value(g, v, c));
    EXPECT_EQ(values, (std::multiset<Rational>{q(4), q(5), q(-1), q(1), q(-5), q(-4)}));
}

TEST(FromRootSystem, B2Quadric) {
    const GkmGraph g = b2();
    EXPECT_EQ(g.vertices.size(), 4u);
    EXPECT_EQ(g.edges.size(), 6u);
    EXPECT_TRUE(validate_gkm(g).empty());
    const CircleSubgroup c({2, 1});
    std::multiset<Rational> values;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) values.insert(vertex_value(g, v, c));
    EXPECT_EQ(values, (std::multiset<Rational>{q(1), q(3), q(-1), q(-3)}));
}

TEST(FromRootSystem, B3ShortOrbit) {
    const GkmGraph g = from_root_system({'B', 3, {q(1), q(0), q(0)}});
    EXPECT_EQ(g.vertices.size(), 6u);
    EXPECT_EQ(g.edges.size(), 15u);
}

TEST(FromRootSystem, RegularOrbitsHaveWeylGroupSize) {
    EXPECT_EQ(from_root_system({'A', 3, {q(1), q(1), q(1)}}).vertices.size(), 24u);
    EXPECT_EQ(from_root_system({'B', 2, {q(1), q(1)}}).vertices.size(), 8u);
    const GkmGraph b3 = from_root_system({'B', 3, {q(1), q(1), q(1)}});
    EXPECT_EQ(b3.vertices.size(), 48u);
    EXPECT_TRUE(validate_gkm(b3).empty());
    for (std::size_t v = 0; v < b3.vertices.size(); ++v) EXPECT_EQ(degree(b3, v), 9u);
}

TEST(FromRootSystem, AgreesWithLCoordinateOrbit) {
    const auto ea = expected_counts(a2_rho(), {1, 3}, q(1, 2));
    EXPECT_EQ(a2().edges.size(), ea.edges);
    const auto eb = expected_counts(b_short(2), {2, 1}, q(3, 2));
    EXPECT_EQ(b2().edges.size(), eb.edges);
    EXPECT_EQ(from_root_system({'B', 3, {q(1), q(0), q(0)}}).edges.size(), expected_counts(b_short(3), {1, 1, 1}, q(1, 2)).edges);
}

TEST(CircleSubgroup, RejectsNonPrimitive) {
    EXPECT_THROW(CircleSubgroup({2, 4}), InvalidInput);
    EXPECT_THROW(CircleSubgroup({0, 0}), InvalidInput);
    EXPECT_NO_THROW(CircleSubgroup({2, 3}));
}

TEST(Admissible, A2ZeroPairing) {
    const GkmGraph g = a2();
    const CircleSubgroup c({1, 2});
    const auto bad = inadmissible_edges(g, c);
    EXPECT_FALSE(bad.empty());
    for (auto e : bad) EXPECT_EQ(dot(g.edges[e].alpha, c.b()), 0);
    EXPECT_FALSE(admissible_circle(g, c));
    try {
        crossing_edges(g, c, q(1, 2));
        FAIL();
    } catch (const InadmissibleCircle& e) {
        EXPECT_EQ(e.edges, bad);
    }
    EXPECT_THROW(inadmissible_edges(g, CircleSubgroup({1, 1, 1})), InvalidInput);
}

TEST(Crossings, A2) {
    const auto xs = crossing_edges(a2(), CircleSubgroup({1, 3}), q(1, 2));
    EXPECT_EQ(xs.size(), 5u);
    EXPECT_EQ(crossing_orders(xs), expected_counts(a2_rho(), {1, 3}, q(1, 2)).m);
    for (const auto& x : xs) {
        EXPECT_GT(x.m, 0);
        EXPECT_LT(x.lower_value, q(1, 2));
        EXPECT_GT(x.upper_value, q(1, 2));
        EXPECT_EQ(x.group.order(), x.m);
    }
}

TEST(Crossings, B2) {
    const auto xs = crossing_edges(b2(), CircleSubgroup({2, 1}), q(3, 2));
    EXPECT_EQ(xs.size(), 3u);
    EXPECT_EQ(crossing_orders(xs), (std::vector<Integer>{1, 2, 3}));
    EXPECT_EQ(crossing_orders(xs), expected_counts(b_short(2), {2, 1}, q(3, 2)).m);
}

TEST(Crossings, LevelAtVertex) {
    try {
        crossing_edges(b2(), CircleSubgroup({2, 1}), q(1));
        FAIL();
    } catch (const NonRegularLevel& e) {
        EXPECT_EQ(e.vertex, "(0,1)");
    }
}

TEST(Crossings, OutsideImageIsEmpty) {
    const auto rep = gkm_korb_report(a2(), CircleSubgroup({1, 3}), q(10));
    EXPECT_TRUE(rep.sectors.empty());
    EXPECT_EQ(rep.total_rank, 0);
}

TEST(GkmReport, A2) {
    const auto rep = gkm_korb_report(a2(), CircleSubgroup({1, 3}), q(1, 2));
    EXPECT_EQ(rep.untwisted_rank(), 20);
    EXPECT_EQ(rep.total_rank, 92);
    EXPECT_TRUE(rep.torsion_free);
    EXPECT_EQ(rep.total_rank, sum_of_squares(expected_counts(a2_rho(), {1, 3}, q(1, 2)).m));
}

TEST(GkmReport, B2) {
    const auto rep = gkm_korb_report(b2(), CircleSubgroup({2, 1}), q(3, 2));
    EXPECT_EQ(rep.untwisted_rank(), 6);
    EXPECT_EQ(rep.total_rank, 14);
    std::vector<Rational> elems;
    for (const auto& s : rep.sectors) elems.push_back(s.element.coords()[0]);
    EXPECT_EQ(elems, (std::vector<Rational>{q(0), q(1, 3), q(1, 2), q(2, 3)}));
}

TEST(GkmReport, AgreesWithOracleScan) {
    EXPECT_EQ(gkm_korb_report(a2(), CircleSubgroup({1, 3}), q(1, 2)),
              oracle::gkm_sectors(a2(), CircleSubgroup({1, 3}), q(1, 2)));
    EXPECT_THROW(oracle::gkm_sectors(a2(), CircleSubgroup({1, 3}), q(1, 2), 10), OracleBoundsExceeded);
}

// Each crossing with |m| lies in exactly |m| sectors, each contributing |m|.
TEST(GkmProperty, RanksAreSumsOverCrossings) {
    Rng rng(7);
    const std::vector<RootSystemSpec> specs = {
        {'A', 2, {q(1), q(1)}}, {'A', 2, {q(1), q(0)}}, {'A', 3, {q(1), q(0), q(1)}},
        {'B', 2, {q(1), q(1)}}, {'B', 3, {q(1), q(0), q(0)}}, {'B', 3, {q(0), q(1), q(1)}}};
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto& spec = specs[trial % specs.size()];
        const GkmGraph g = from_root_system(spec);
        IntVec b(spec.rank);
        for (auto& x : b) x = rng.uniform(-4, 4);
        if (gcd_of(b) != 1) continue;
        const CircleSubgroup c(b);
        if (!admissible_circle(g, c)) {
            EXPECT_THROW(gkm_korb_report(g, c, q(1, 2)), InadmissibleCircle);
            continue;
        }
        const Rational eta = q(rng.uniform(-40, 40), 7);
        bool at_vertex = false;
        for (std::size_t v = 0; v < g.vertices.size(); ++v) at_vertex |= vertex_value(g, v, c) == eta;
        if (at_vertex) continue;
        const auto xs = crossing_edges(g, c, eta);
        const auto rep = gkm_korb_report(g, c, eta);
        Integer sum = 0;
        for (const auto& x : xs) sum += abs(x.m);
        EXPECT_EQ(rep.untwisted_rank(), xs.empty() ? Integer(0) : sum);
        EXPECT_EQ(rep.total_rank, sum_of_squares(crossing_orders(xs)));
        Integer L = 1;
        for (const auto& x : xs) L = lcm_of(L, abs(x.m));
        if (L <= 60) {
            EXPECT_EQ(rep, oracle::gkm_sectors(g, c, eta));
        }
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(ValidateGkm, Violations) {
    using K = GkmViolation::Kind;
    auto kinds = [](const GkmGraph& g) {
        std::set<K> ks;
        for (const auto& v : validate_gkm(g)) ks.insert(v.kind);
        return ks;
    };
    GkmGraph g{2, {{"a", {q(0), q(0)}}, {"b", {q(2), q(0)}}, {"c", {q(0), q(1)}}}, {}};

    auto h = g;
    h.edges = {{0, 1, {1, 0}}, {0, 2, {0, 1}}};
    EXPECT_TRUE(validate_gkm(h).empty());

    h.edges = {{0, 1, {0, 0}}};
    EXPECT_EQ(kinds(h), std::set<K>{K::ZeroWeight});
    h.edges = {{0, 1, {2, 0}}};
    EXPECT_EQ(kinds(h), std::set<K>{K::NotPrimitive});
    h.edges = {{0, 1, {-1, 0}}};
    EXPECT_EQ(kinds(h), std::set<K>{K::MomentMismatch});
    h.edges = {{0, 1, {1, 0}}, {0, 2, {1, 0}}};
    EXPECT_TRUE(kinds(h).count(K::DependentWeights));
    h.edges = {{0, 7, {1, 0}}};
    EXPECT_EQ(kinds(h), std::set<K>{K::Structure});
    h.edges = {{0, 0, {1, 0}}};
    EXPECT_EQ(kinds(h), std::set<K>{K::Structure});

    h = g;
    h.vertices[2].id = "a";
    EXPECT_EQ(kinds(h), std::set<K>{K::Structure});
    h = g;
    h.vertices[1].mu = {q(1)};
    EXPECT_EQ(kinds(h), std::set<K>{K::Structure});

    // Every problem is reported, not only the first.
    h = g;
    h.edges = {{0, 1, {0, 0}}, {0, 2, {0, 2}}, {1, 2, {1, 1}}};
    EXPECT_EQ(validate_gkm(h).size(), 3u);
}
