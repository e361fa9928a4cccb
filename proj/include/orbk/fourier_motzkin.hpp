#pragma once

#include <orbk/errors.hpp>
#include <orbk/exact_linalg.hpp>
#include <orbk/types.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

// Fourier-Motzkin elimination over Q. Exponential in the number of
// variables; used as an independent check on the LP-based predicates.

namespace orbk::fm {

enum class Relation { Less, LessEqual, Equal };

// coeffs . x  REL  rhs
struct Inequality {
    RatVec coeffs;
    Relation relation;
    Rational rhs;
};

struct Result {
    bool satisfiable = false;
    std::optional<RatVec> witness;
};

namespace detail {

struct Row {
    RatVec coeffs;
    bool strict;
    Rational rhs;

    friend bool operator<(const Row& a, const Row& b) {
        if (a.strict != b.strict) return a.strict < b.strict;
        if (a.coeffs != b.coeffs) return lex_less(a.coeffs, b.coeffs);
        return a.rhs < b.rhs;
    }
};

// Scale so the first nonzero coefficient has absolute value 1.
inline Row normalized(Row r) {
    for (const auto& c : r.coeffs)
        if (c != 0) {
            const Rational s = abs(c);
            for (auto& x : r.coeffs) x /= s;
            r.rhs /= s;
            break;
        }
    return r;
}

inline bool holds(const Row& r, const RatVec& x) {
    const Rational lhs = dot(r.coeffs, x);
    return r.strict ? lhs < r.rhs : lhs <= r.rhs;
}

}  // namespace detail

inline Result fm_eliminate(const std::vector<Inequality>& system, std::size_t num_vars) {
    using detail::Row;
    std::vector<RatVec> equalities;
    std::vector<Row> rows;
    for (const auto& in : system) {
        if (in.coeffs.size() != num_vars) throw InvalidInput("fm_eliminate: coefficient length mismatch");
        if (in.relation == Relation::Equal) {
            RatVec e = in.coeffs;
            e.push_back(in.rhs);
            equalities.push_back(std::move(e));
        } else {
            rows.push_back({in.coeffs, in.relation == Relation::Less, in.rhs});
        }
    }

    // Equalities are solved exactly first: x_p = rhs_p - sum_f c_pf x_f.
    const auto pivots = rref_in_place(equalities, num_vars);
    for (std::size_t i = pivots.size(); i < equalities.size(); ++i)
        if (equalities[i][num_vars] != 0) return {false, std::nullopt};
    equalities.resize(pivots.size());
    for (auto& r : rows) {
        for (std::size_t e = 0; e < pivots.size(); ++e) {
            const Rational c = r.coeffs[pivots[e]];
            if (c == 0) continue;
            for (std::size_t i = 0; i < num_vars; ++i) r.coeffs[i] -= c * equalities[e][i];
            r.rhs -= c * equalities[e][num_vars];
        }
    }

    std::vector<bool> active(num_vars, true);
    for (auto p : pivots) active[p] = false;

    // Each stage records the variable eliminated and the rows it was taken from.
    std::vector<std::pair<std::size_t, std::vector<Row>>> stages;
    std::set<Row> current;
    for (auto& r : rows) current.insert(detail::normalized(std::move(r)));
    for (;;) {
        // Greedy choice: fewest generated rows.
        std::size_t best = num_vars;
        long best_cost = 0;
        for (std::size_t v = 0; v < num_vars; ++v) {
            if (!active[v]) continue;
            long up = 0, lo = 0;
            for (const auto& r : current) {
                if (r.coeffs[v] > 0) ++up;
                else if (r.coeffs[v] < 0) ++lo;
            }
            const long cost = up * lo - up - lo;
            if (best == num_vars || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        if (best == num_vars) break;
        const std::size_t v = best;
        active[v] = false;
        std::vector<Row> upper, lower;
        std::set<Row> next;
        for (const auto& r : current) {
            if (r.coeffs[v] > 0) upper.push_back(r);
            else if (r.coeffs[v] < 0) lower.push_back(r);
            else next.insert(r);
        }
        for (const auto& u : upper)
            for (const auto& l : lower) {
                const Rational fu = 1 / u.coeffs[v];
                const Rational fl = -1 / l.coeffs[v];
                Row c{RatVec(num_vars), u.strict || l.strict, u.rhs * fu + l.rhs * fl};
                for (std::size_t i = 0; i < num_vars; ++i) c.coeffs[i] = u.coeffs[i] * fu + l.coeffs[i] * fl;
                c.coeffs[v] = 0;
                next.insert(detail::normalized(std::move(c)));
            }
        stages.emplace_back(v, std::vector<Row>(current.begin(), current.end()));
        current = std::move(next);
    }

    const RatVec zero(num_vars);
    for (const auto& r : current)
        if (!detail::holds(r, zero)) return {false, std::nullopt};

    // Back-substitution in reverse elimination order; each variable gets a
    // value inside its bound interval given the values already fixed.
    RatVec x(num_vars);
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        const std::size_t v = it->first;
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& r : it->second) {
            if (r.coeffs[v] == 0) continue;
            Rational rest = r.rhs;
            for (std::size_t i = 0; i < num_vars; ++i)
                if (i != v) rest -= r.coeffs[i] * x[i];
            const Rational bound = rest / r.coeffs[v];
            if (r.coeffs[v] > 0) {
                if (!hi || bound < *hi) {
                    hi = bound;
                    hi_strict = r.strict;
                } else if (bound == *hi) {
                    hi_strict = hi_strict || r.strict;
                }
            } else {
                if (!lo || bound > *lo) {
                    lo = bound;
                    lo_strict = r.strict;
                } else if (bound == *lo) {
                    lo_strict = lo_strict || r.strict;
                }
            }
        }
        if (lo && hi) x[v] = (*lo == *hi) ? *lo : (*lo + *hi) / 2;
        else if (lo) x[v] = lo_strict ? *lo + 1 : *lo;
        else if (hi) x[v] = hi_strict ? *hi - 1 : *hi;
        else x[v] = 0;
    }
    for (std::size_t e = 0; e < pivots.size(); ++e) {
        Rational val = equalities[e][num_vars];
        for (std::size_t i = 0; i < num_vars; ++i)
            if (i != pivots[e]) val -= equalities[e][i] * x[i];
        x[pivots[e]] = val;
    }
    for (const auto& in : system) {
        const Rational lhs = dot(in.coeffs, x);
        const bool ok = in.relation == Relation::Less ? lhs < in.rhs
                        : in.relation == Relation::LessEqual ? lhs <= in.rhs
                                                             : lhs == in.rhs;
        if (!ok) throw std::logic_error("fm_eliminate: back-substitution produced an invalid witness");
    }
    return {true, std::move(x)};
}

// eta in cone_{>0}{columns}: c_j > 0, sum_j c_j a_j = eta.
inline Result cone_system_feasible(const RatVec& eta, const std::vector<IntVec>& columns) {
    const std::size_t m = columns.size();
    std::vector<Inequality> sys;
    for (std::size_t j = 0; j < m; ++j) {
        RatVec c(m);
        c[j] = -1;
        sys.push_back({std::move(c), Relation::Less, 0});
    }
    for (std::size_t i = 0; i < eta.size(); ++i) {
        RatVec c(m);
        for (std::size_t j = 0; j < m; ++j) c[j] = columns[j][i];
        sys.push_back({std::move(c), Relation::Equal, eta[i]});
    }
    return fm_eliminate(sys, m);
}

// exists y with xi_j - a_j.y > 0 for all j.
inline Result properness_system_feasible(const IntMatrix& A, const RatVec& xi) {
    std::vector<Inequality> sys;
    for (std::size_t j = 0; j < A.cols(); ++j) sys.push_back({to_rational(A.column(j)), Relation::Less, xi[j]});
    return fm_eliminate(sys, A.rows());
}

// exists r >= 0, A r = 0, sum r = 1, xi.r <= 0.
inline Result recession_ray_feasible(const IntMatrix& A, const RatVec& xi) {
    const std::size_t n = A.cols();
    std::vector<Inequality> sys;
    for (std::size_t j = 0; j < n; ++j) {
        RatVec c(n);
        c[j] = -1;
        sys.push_back({std::move(c), Relation::LessEqual, 0});
    }
    for (std::size_t i = 0; i < A.rows(); ++i) sys.push_back({to_rational(A.row(i)), Relation::Equal, 0});
    sys.push_back({RatVec(n, Rational(1)), Relation::Equal, 1});
    sys.push_back({xi, Relation::LessEqual, 0});
    return fm_eliminate(sys, n);
}

}  // namespace orbk::fm
