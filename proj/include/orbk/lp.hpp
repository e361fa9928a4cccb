#pragma once

#include <orbk/types.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

// Exact rational linear programming: a dense two-phase simplex method with
// Bland's anti-cycling rule. Sizes here are desk-scale (tens of variables).

namespace orbk::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
    RatVec coeffs;
    Relation relation;
    Rational rhs;
};

struct Program {
    std::size_t num_vars = 0;
    std::vector<bool> is_free;  // free variables; the rest are >= 0
    std::vector<Constraint> constraints;
    RatVec objective;  // maximized; empty means pure feasibility

    explicit Program(std::size_t n) : num_vars(n), is_free(n, false), objective(n) {}

    std::size_t add_free_variable() {
        ++num_vars;
        is_free.push_back(true);
        objective.emplace_back(0);
        for (auto& c : constraints) c.coeffs.emplace_back(0);
        return num_vars - 1;
    }

    void add(RatVec coeffs, Relation rel, Rational rhs) {
        coeffs.resize(num_vars);
        constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
    }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    RatVec x;
    Rational value;
};

namespace detail {

// Tableau for  max c.x  s.t.  T x = rhs, x >= 0, with a tracked basis.
struct Tableau {
    std::vector<RatVec> rows;
    RatVec rhs;
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t c) {
        const Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        basis[r] = c;
    }

    // Returns false when unbounded.
    bool optimize(const RatVec& cost, std::size_t allowed_cols) {
        for (;;) {
            std::size_t enter = allowed_cols;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < rows.size(); ++i)
                    if (rows[i][j] != 0) reduced -= cost[basis[i]] * rows[i][j];
                if (reduced > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed_cols) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                Rational ratio = rhs[i] / rows[i][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace detail

// Maximize c.x subject to A x = b, x >= 0.
inline Result solve_standard(std::vector<RatVec> A, RatVec b, const RatVec& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (auto& x : A[i]) x = -x;
            b[i] = -b[i];
        }

    detail::Tableau t;
    t.rows.assign(m, RatVec(n + m));
    t.rhs = b;
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = A[i][j];
        t.rows[i][n + i] = 1;
        t.basis[i] = n + i;
    }

    RatVec phase1(n + m);
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
    t.optimize(phase1, n + m);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] >= n) infeasibility += t.rhs[i];
    if (infeasibility != 0) return {Status::Infeasible, {}, {}};

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t.rows[i][j] != 0) {
                col = j;
                break;
            }
        if (col == n) {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        t.pivot(i, col);
        ++i;
    }

    RatVec phase2(n + m);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    if (!t.optimize(phase2, n)) return {Status::Unbounded, {}, {}};

    Result res;
    res.status = Status::Optimal;
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n) res.x[t.basis[i]] = t.rhs[i];
    res.value = dot(c, res.x);
    return res;
}

// General form: free variables are split, inequalities get slacks.
inline Result solve(const Program& p) {
    std::vector<std::size_t> pos(p.num_vars), neg(p.num_vars, SIZE_MAX);
    std::size_t cols = 0;
    for (std::size_t v = 0; v < p.num_vars; ++v) {
        pos[v] = cols++;
        if (p.is_free[v]) neg[v] = cols++;
    }
    std::size_t slack_base = cols;
    for (const auto& con : p.constraints)
        if (con.relation != Relation::Equal) ++cols;

    std::vector<RatVec> A;
    RatVec b;
    std::size_t slack = slack_base;
    for (const auto& con : p.constraints) {
        RatVec row(cols);
        for (std::size_t v = 0; v < p.num_vars; ++v) {
            row[pos[v]] = con.coeffs[v];
            if (neg[v] != SIZE_MAX) row[neg[v]] = -con.coeffs[v];
        }
        if (con.relation == Relation::LessEqual) row[slack++] = 1;
        if (con.relation == Relation::GreaterEqual) row[slack++] = -1;
        A.push_back(std::move(row));
        b.push_back(con.rhs);
    }
    RatVec c(cols);
    for (std::size_t v = 0; v < p.num_vars && v < p.objective.size(); ++v) {
        c[pos[v]] = p.objective[v];
        if (neg[v] != SIZE_MAX) c[neg[v]] = -p.objective[v];
    }

    Result std_res = solve_standard(std::move(A), std::move(b), c);
    if (std_res.status != Status::Optimal) return {std_res.status, {}, {}};
    Result res;
    res.status = Status::Optimal;
    res.x.resize(p.num_vars);
    for (std::size_t v = 0; v < p.num_vars; ++v) {
        res.x[v] = std_res.x[pos[v]];
        if (neg[v] != SIZE_MAX) res.x[v] -= std_res.x[neg[v]];
    }
    res.value = std_res.value;
    return res;
}

}  // namespace orbk::lp
