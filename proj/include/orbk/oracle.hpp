#pragma once

#include <orbk/errors.hpp>
#include <orbk/exact_linalg.hpp>
#include <orbk/fourier_motzkin.hpp>
#include <orbk/gkm.hpp>
#include <orbk/polyhedra.hpp>
#include <orbk/report.hpp>
#include <orbk/toric.hpp>
#include <orbk/types.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

// Slow reference path for small instances. Nothing here goes through
// Smith/Hermite forms or the simplex code: supports are decided by
// Fourier-Motzkin, groups by scanning (1/L)Z^k, solves by Cramer's rule.

namespace orbk::oracle {

struct Bounds {
    std::size_t max_coordinates = 6;
    std::size_t max_rank = 3;
    Integer max_lcm = 60;
};

namespace detail {

inline Integer cofactor_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Integer d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = m(i, j);
        const Integer t = m(0, c) * cofactor_det(minor);
        if (c % 2 == 0) d += t;
        else d -= t;
    }
    return d;
}

inline RatVec cramer(const IntMatrix& M, const RatVec& b) {
    const Integer det = cofactor_det(M);
    const std::size_t n = M.rows();
    // Scale b to integers so the replaced-column determinants stay integral.
    Integer den = 1;
    for (const auto& x : b) den = lcm_of(den, Integer(x.get_den()));
    RatVec x(n);
    for (std::size_t c = 0; c < n; ++c) {
        IntMatrix Mc = M;
        for (std::size_t i = 0; i < n; ++i) Mc(i, c) = Integer(b[i] * den);
        x[c] = Rational(cofactor_det(Mc)) / Rational(det * den);
    }
    return x;
}

inline std::vector<Integer> prime_factors(Integer n) {
    std::vector<Integer> ps;
    for (Integer p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline unsigned valuation(Integer n, const Integer& p) {
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Invariant factors read off from element orders: for each prime p the
// number of cyclic factors with p-exponent >= e is log_p(|G[p^e]| / |G[p^(e-1)]|).
inline FiniteAbelianGroup group_from_elements(const std::vector<TorusElement>& elems) {
    const Integer order(elems.size());
    std::vector<Integer> element_orders;
    for (const auto& t : elems) element_orders.push_back(t.order());
    std::vector<Integer> factors;  // largest first
    for (const auto& p : prime_factors(order)) {
        const unsigned top = valuation(order, p);
        std::vector<std::size_t> at_least;  // at_least[e-1] = #factors with exponent >= e
        Integer prev = 1;
        for (unsigned e = 1; e <= top; ++e) {
            Integer pe = 1;
            for (unsigned i = 0; i < e; ++i) pe *= p;
            Integer count = 0;
            for (const auto& o : element_orders)
                if (valuation(o, p) <= e) ++count;
            const Integer ratio = count / prev;
            if (ratio == 1) break;
            at_least.push_back(valuation(ratio, p));
            prev = count;
        }
        const std::size_t m = at_least.empty() ? 0 : at_least.front();
        if (factors.size() < m) factors.resize(m, Integer(1));
        for (std::size_t i = 0; i < m; ++i) {
            Integer pp = 1;
            for (auto c : at_least)
                if (c > i) pp *= p;
            factors[i] *= pp;
        }
    }
    std::reverse(factors.begin(), factors.end());
    return FiniteAbelianGroup::from_invariant_factors(IntVec(factors.begin(), factors.end()));
}

}  // namespace detail

// The instance must satisfy n <= 6, k <= 3 and lcm |det A_S| <= 60 over
// critical S; otherwise OracleBoundsExceeded.
inline Integer check_toric_bounds(const ToricModel& model, const Bounds& b = {}) {
    if (model.num_coordinates() > b.max_coordinates || model.rank() > b.max_rank)
        throw OracleBoundsExceeded("oracle bounds exceeded: need n <= " + std::to_string(b.max_coordinates) +
                                   " and k <= " + std::to_string(b.max_rank));
    Integer L = 1;
    for_each_combination(model.num_coordinates(), model.rank(), [&](const Support& S) {
        const Integer d = abs(detail::cofactor_det(model.weights().select_columns(S)));
        if (d != 0 && fm::cone_system_feasible(model.level(), model.columns(S)).satisfiable) L = lcm_of(L, d);
    });
    if (L > b.max_lcm)
        throw OracleBoundsExceeded("oracle bounds exceeded: lcm of stabilizer orders is " + L.get_str() + " > " +
                                   b.max_lcm.get_str());
    return L;
}

// Regularity by enumerating every coordinate subset.
inline RegularityCheck regularity(const ToricModel& model) {
    const std::size_t n = model.num_coordinates();
    std::optional<Support> worst;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Support S;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1) S.push_back(j);
        if (rank(model.weights().select_columns(S)) == model.rank()) continue;
        if (!fm::cone_system_feasible(model.level(), model.columns(S)).satisfiable) continue;
        if (!worst || S.size() > worst->size() || (S.size() == worst->size() && S < *worst)) worst = S;
    }
    return {worst};
}

inline PropernessCertificate properness(const IntMatrix& A, const RatVec& xi) {
    PropernessCertificate c;
    if (auto r = fm::properness_system_feasible(A, xi); r.satisfiable) {
        c.y = r.witness;
        return c;
    }
    c.counterexample_ray = primitive_integer_direction(*fm::recession_ray_feasible(A, xi).witness);
    return c;
}

inline ConeMembership cone(const RatVec& eta, const std::vector<IntVec>& columns) {
    ConeMembership m;
    const auto r = fm::cone_system_feasible(eta, columns);
    m.member = r.satisfiable;
    if (r.satisfiable) m.primal_certificate = r.witness;
    return m;
}

// Toric report by brute force, same shape and ordering as korb_report.
inline ToricReport toric_sectors(const ToricModel& model, const RatVec& xi, const Bounds& b = {}) {
    if (xi.size() != model.num_coordinates()) throw InvalidInput("xi length must equal the number of coordinates");
    const Integer L = check_toric_bounds(model, b);
    if (auto reg = regularity(model); !reg.ok())
        throw NonRegularLevel("level is not a regular value: a support reaching it does not span", *reg.witness);
    if (auto pc = properness(model.weights(), xi); !pc.proper())
        throw NotProper("xi is not proper and bounded below on the level set", *pc.counterexample_ray);

    const std::size_t k = model.rank();
    const std::size_t n = model.num_coordinates();
    std::vector<Support> supports;
    for_each_combination(n, k, [&](const Support& S) {
        if (detail::cofactor_det(model.weights().select_columns(S)) == 0) return;
        if (fm::cone_system_feasible(model.level(), model.columns(S)).satisfiable) supports.push_back(S);
    });

    // One scan of (1/L)Z^k / Z^k records Fix(v) for every point.
    const long den = L.get_si();
    struct Point {
        TorusElement t;
        Support fix;
    };
    std::vector<Point> points;
    std::vector<long> num(k, 0);
    for (;;) {
        Support fix;
        for (std::size_t j = 0; j < n; ++j) {
            Integer s = 0;
            for (std::size_t i = 0; i < k; ++i) s += model.weights()(i, j) * num[i];
            if (s % den == 0) fix.push_back(j);
        }
        RatVec v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = make_rational(num[i], den);
        points.push_back({TorusElement(std::move(v)), std::move(fix)});
        std::size_t pos = k;
        while (pos > 0 && ++num[pos - 1] == den) num[--pos] = 0;
        if (pos == 0) break;
    }
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& c) { return a.t < c.t; });

    auto subset = [](const Support& S, const Support& fix) { return std::includes(fix.begin(), fix.end(), S.begin(), S.end()); };

    std::vector<CriticalComponent> comps;
    for (const auto& S : supports) {
        CriticalComponent c;
        c.support = S;
        const IntMatrix AS = model.weights().select_columns(S);
        c.r = detail::cramer(AS, model.level());
        for (const auto& p : points)
            if (subset(S, p.fix)) c.elements.push_back(p.t);
        c.group = detail::group_from_elements(c.elements);
        RatVec xi_S;
        for (auto j : S) xi_S.push_back(xi[j]);
        const RatVec mu = detail::cramer(AS.transpose(), xi_S);
        for (std::size_t i = 0; i < S.size(); ++i) c.critical_value += xi_S[i] * c.r[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (std::find(S.begin(), S.end(), j) != S.end()) continue;
            Rational lam = xi[j];
            for (std::size_t i = 0; i < k; ++i) lam -= mu[i] * model.weights()(i, j);
            if (lam == 0) throw NonGenericXi("xi is not generic: a Morse coefficient vanishes", S, j);
            if (lam < 0) c.morse_index += 2;
            c.lambda.emplace_back(j, lam);
        }
        comps.push_back(std::move(c));
    }
    std::sort(comps.begin(), comps.end(), [](const CriticalComponent& a, const CriticalComponent& c) {
        if (a.critical_value != c.critical_value) return a.critical_value < c.critical_value;
        return a.support < c.support;
    });

    std::vector<SectorEntry<CriticalComponent>> sectors;
    for (const auto& p : points) {
        std::vector<CriticalComponent> inside;
        for (const auto& c : comps) {
            if (!subset(c.support, p.fix)) continue;
            // Morse data of f on Z^t only involves the fixed coordinates.
            CriticalComponent d = c;
            d.lambda.clear();
            d.morse_index = 0;
            for (const auto& [j, lam] : c.lambda) {
                if (!std::binary_search(p.fix.begin(), p.fix.end(), j)) continue;
                if (lam < 0) d.morse_index += 2;
                d.lambda.emplace_back(j, lam);
            }
            inside.push_back(std::move(d));
        }
        if (!inside.empty()) sectors.push_back(make_sector(p.t, std::move(inside)));
    }
    return assemble_report(std::move(sectors), model_warnings(model));
}

// GKM sector table by scanning t in (1/L)Z / Z with L the lcm of |m_e|.
inline GkmReport gkm_sectors(const GkmGraph& g, const CircleSubgroup& c, const Rational& eta, const Integer& max_lcm = 60) {
    const auto crossings = crossing_edges(g, c, eta);
    Integer L = 1;
    for (const auto& x : crossings) L = lcm_of(L, abs(x.m));
    if (L > max_lcm) throw OracleBoundsExceeded("oracle bounds exceeded: lcm of |m| is " + L.get_str());
    std::vector<SectorEntry<CrossingEdge>> sectors;
    if (crossings.empty()) return assemble_report(std::move(sectors), {});
    for (long j = 0; j < L.get_si(); ++j) {
        const Rational t = make_rational(j, L);
        std::vector<CrossingEdge> fixed;
        for (const auto& x : crossings)
            if (Rational(t * x.m).get_den() == 1) fixed.push_back(x);
        if (!fixed.empty()) sectors.push_back(make_sector(TorusElement(RatVec{t}), std::move(fixed)));
    }
    return assemble_report(std::move(sectors), {});
}

}  // namespace orbk::oracle
