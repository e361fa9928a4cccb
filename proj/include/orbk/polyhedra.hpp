#pragma once

#include <orbk/errors.hpp>
#include <orbk/exact_linalg.hpp>
#include <orbk/lp.hpp>
#include <orbk/types.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orbk {

// Verdict on eta in cone_{>0}{a_j}. Exactly one certificate is set:
//   primal: c with every c_j > 0 and sum c_j a_j = eta;
//   dual:   y with y.a_j >= 0, y.eta <= 0 and sum_j y.a_j - y.eta = 1,
//           which rules out any strictly positive combination.
struct ConeMembership {
    bool member = false;
    std::optional<RatVec> primal_certificate;
    std::optional<RatVec> dual_certificate;
};

// Properness of xi on {r >= 0 : A r = eta}. Exactly one field is set:
//   y:   xi_j - a_j.y > 0 for every j (so xi is positive on the recession cone);
//   ray: r >= 0, r != 0, A r = 0, xi.r <= 0 (primitive integer vector).
struct PropernessCertificate {
    std::optional<RatVec> y;
    std::optional<IntVec> counterexample_ray;

    bool proper() const { return y.has_value(); }
};

inline bool verify_cone_certificate(const ConeMembership& m, const RatVec& eta, const std::vector<IntVec>& columns) {
    const std::size_t k = eta.size();
    if (m.member) {
        if (!m.primal_certificate || m.dual_certificate) return false;
        const RatVec& c = *m.primal_certificate;
        if (c.size() != columns.size()) return false;
        RatVec sum(k);
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (c[j] <= 0) return false;
            for (std::size_t i = 0; i < k; ++i) sum[i] += c[j] * Rational(columns[j][i]);
        }
        return sum == eta;
    }
    if (!m.dual_certificate || m.primal_certificate) return false;
    const RatVec& y = *m.dual_certificate;
    if (y.size() != k) return false;
    Rational total = -dot(y, eta);
    if (total < 0) return false;
    for (const auto& a : columns) {
        const Rational p = dot(a, y);
        if (p < 0) return false;
        total += p;
    }
    return total == 1;
}

// eta in cone_{>0}{columns}: maximize t s.t. sum c_j a_j = eta, c_j >= t, t <= 1.
inline ConeMembership open_cone_member(const RatVec& eta, const std::vector<IntVec>& columns) {
    const std::size_t k = eta.size();
    const std::size_t m = columns.size();
    for (const auto& a : columns)
        if (a.size() != k) throw InvalidInput("open_cone_member: column dimension does not match level");

    // Variables: s_0..s_{m-1} >= 0, t free; c_j = s_j + t.
    lp::Program primal(m);
    const std::size_t t = primal.add_free_variable();
    for (std::size_t i = 0; i < k; ++i) {
        RatVec row(m + 1);
        for (std::size_t j = 0; j < m; ++j) {
            row[j] = columns[j][i];
            row[t] += Rational(columns[j][i]);
        }
        primal.add(std::move(row), lp::Relation::Equal, eta[i]);
    }
    {
        RatVec row(m + 1);
        row[t] = 1;
        primal.add(std::move(row), lp::Relation::LessEqual, 1);
    }
    primal.objective[t] = 1;
    const lp::Result pr = lp::solve(primal);

    ConeMembership out;
    if (pr.status == lp::Status::Optimal && pr.value > 0) {
        RatVec c(m);
        for (std::size_t j = 0; j < m; ++j) c[j] = pr.x[j] + pr.x[t];
        out.member = true;
        out.primal_certificate = std::move(c);
        return out;
    }

    lp::Program dual(0);
    for (std::size_t i = 0; i < k; ++i) dual.add_free_variable();
    RatVec normalization(k);
    for (const auto& a : columns) {
        dual.add(to_rational(a), lp::Relation::GreaterEqual, 0);
        for (std::size_t i = 0; i < k; ++i) normalization[i] += Rational(a[i]);
    }
    RatVec neg_eta(k);
    for (std::size_t i = 0; i < k; ++i) {
        neg_eta[i] = -eta[i];
        normalization[i] -= eta[i];
    }
    dual.add(std::move(neg_eta), lp::Relation::GreaterEqual, 0);
    dual.add(std::move(normalization), lp::Relation::Equal, 1);
    const lp::Result dr = lp::solve(dual);
    if (dr.status != lp::Status::Optimal) throw std::logic_error("open_cone_member: neither alternative is feasible");
    out.dual_certificate = dr.x;
    return out;
}

inline bool verify_properness_certificate(const PropernessCertificate& c, const IntMatrix& A, const RatVec& xi) {
    if (c.y.has_value() == c.counterexample_ray.has_value()) return false;
    if (c.y) {
        if (c.y->size() != A.rows()) return false;
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (xi[j] - dot(A.column(j), *c.y) <= 0) return false;
        return true;
    }
    const IntVec& r = *c.counterexample_ray;
    if (r.size() != A.cols()) return false;
    bool nonzero = false;
    for (const auto& x : r) {
        if (x < 0) return false;
        if (x != 0) nonzero = true;
    }
    if (!nonzero) return false;
    for (std::size_t i = 0; i < A.rows(); ++i)
        if (dot(A.row(i), r) != 0) return false;
    return dot(r, xi) <= 0;
}

// Recession-cone positivity of xi over {r >= 0 : A r = 0} via Farkas duality.
inline PropernessCertificate recession_positive(const IntMatrix& A, const RatVec& xi) {
    const std::size_t k = A.rows();
    const std::size_t n = A.cols();
    if (xi.size() != n) throw InvalidInput("recession_positive: xi length must equal the number of coordinates");

    // maximize t s.t. a_j.y + t <= xi_j, t <= 1, with y and t free.
    lp::Program strict(0);
    for (std::size_t i = 0; i <= k; ++i) strict.add_free_variable();
    for (std::size_t j = 0; j < n; ++j) {
        RatVec row(k + 1);
        for (std::size_t i = 0; i < k; ++i) row[i] = A(i, j);
        row[k] = 1;
        strict.add(std::move(row), lp::Relation::LessEqual, xi[j]);
    }
    {
        RatVec row(k + 1);
        row[k] = 1;
        strict.add(std::move(row), lp::Relation::LessEqual, 1);
    }
    strict.objective[k] = 1;
    const lp::Result sr = lp::solve(strict);

    PropernessCertificate out;
    if (sr.status == lp::Status::Optimal && sr.value > 0) {
        out.y = RatVec(sr.x.begin(), sr.x.begin() + static_cast<std::ptrdiff_t>(k));
        return out;
    }

    // minimize xi.r over r >= 0, A r = 0, sum r = 1.
    lp::Program ray(n);
    for (std::size_t i = 0; i < k; ++i) ray.add(to_rational(A.row(i)), lp::Relation::Equal, 0);
    ray.add(RatVec(n, Rational(1)), lp::Relation::Equal, 1);
    for (std::size_t j = 0; j < n; ++j) ray.objective[j] = -xi[j];
    const lp::Result rr = lp::solve(ray);
    if (rr.status != lp::Status::Optimal || -rr.value > 0)
        throw std::logic_error("recession_positive: neither alternative is feasible");
    out.counterexample_ray = primitive_integer_direction(rr.x);
    return out;
}

// ---------------------------------------------------------------------------
// Vertices of the level polyhedron {r >= 0 : A r = eta}

template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    Support idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(static_cast<const Support&>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

struct LevelVertex {
    Support support;
    RatVec r;  // A_S r = eta, all entries > 0
};

// Supports S with |S| = k, A_S nonsingular and A_S^{-1} eta > 0, in
// lexicographic order of S.
inline std::vector<LevelVertex> critical_supports(const IntMatrix& A, const RatVec& eta) {
    const std::size_t k = A.rows();
    std::vector<LevelVertex> out;
    for_each_combination(A.cols(), k, [&](const Support& S) {
        const IntMatrix AS = A.select_columns(S);
        if (determinant(AS) == 0) return;
        RatVec r = solve_square(AS, eta);
        for (const auto& x : r)
            if (x <= 0) return;
        out.push_back({S, std::move(r)});
    });
    return out;
}

struct MorseData {
    Rational critical_value;
    std::vector<std::pair<std::size_t, Rational>> lambda;  // over j not in S, increasing j
    int morse_index = 0;
};

// lambda_j = xi_j - xi_S^T A_S^{-1} a_j; index = 2 #{lambda_j < 0}.
inline MorseData morse_data(const IntMatrix& A, const Support& S, const RatVec& r, const RatVec& xi) {
    const IntMatrix AS = A.select_columns(S);
    RatVec xi_S(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) xi_S[i] = xi[S[i]];
    const RatVec mu = solve_square(AS.transpose(), xi_S);
    MorseData d;
    d.critical_value = dot(xi_S, r);
    std::size_t s = 0;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        if (s < S.size() && S[s] == j) {
            ++s;
            continue;
        }
        Rational lam = xi[j] - dot(A.column(j), mu);
        if (lam < 0) d.morse_index += 2;
        d.lambda.emplace_back(j, std::move(lam));
    }
    return d;
}

// First (support, coordinate) with a vanishing Morse coefficient, if any.
inline std::optional<std::pair<Support, std::size_t>> find_degeneracy(const IntMatrix& A,
                                                                      const std::vector<LevelVertex>& vertices,
                                                                      const RatVec& xi) {
    for (const auto& v : vertices)
        for (const auto& [j, lam] : morse_data(A, v.support, v.r, xi).lambda)
            if (lam == 0) return std::make_pair(v.support, j);
    return std::nullopt;
}

// Deterministic proper and generic xi. Candidates run along the moment
// curve xi_j = t^j, t = 1, 2, ...; positive entries make xi proper, and each
// Morse coefficient is a nonzero polynomial of degree < n in t, so a
// bounded number of candidates suffices.
inline RatVec find_generic_xi(const IntMatrix& A, const RatVec& eta) {
    const std::size_t n = A.cols();
    const PropernessCertificate base = recession_positive(A, RatVec(n, Rational(1)));
    if (!base.proper()) throw NotProper("no proper component exists", *base.counterexample_ray);

    const auto vertices = critical_supports(A, eta);
    const std::size_t forms = vertices.size() * (n - A.rows());
    const std::size_t limit = forms * (n > 0 ? n : 1) + 2;
    for (std::size_t t = 1; t <= limit; ++t) {
        RatVec xi(n);
        Integer p = 1;
        for (std::size_t j = 0; j < n; ++j) {
            xi[j] = p;
            p *= static_cast<unsigned long>(t);
        }
        if (!find_degeneracy(A, vertices, xi)) return xi;
    }
    throw std::logic_error("find_generic_xi: candidate bound exhausted");
}

}  // namespace orbk
