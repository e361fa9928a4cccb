#pragma once

#include <orbk/errors.hpp>
#include <orbk/types.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orbk {

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
            for (long x : row) data_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    // Each inner vector is one column; all must have length `rows`.
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& columns) {
        IntMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw InvalidInput("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVec>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InvalidInput("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVec column(std::size_t j) const {
        IntVec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    IntVec row(std::size_t i) const {
        return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    IntMatrix select_columns(const Support& cols) const {
        IntMatrix m(rows_, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) m(i, j) = (*this)(i, cols[j]);
        return m;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    // row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
        if (factor == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
    }

    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
        if (factor == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw InvalidInput("matrix product dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const Integer& x = a(i, l);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(l, j);
            }
        return c;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ",";
                s += (*this)(i, j).get_str();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// Fraction-free Bareiss elimination.
inline Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// Row-reduced echelon form over Q. Returns pivot columns.
inline std::vector<std::size_t> rref_in_place(std::vector<RatVec>& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        const Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(const IntMatrix& m) {
    std::vector<RatVec> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = to_rational(m.row(i));
    return rref_in_place(rows, m.cols()).size();
}

// ---------------------------------------------------------------------------
// Finite abelian groups and torus elements

// Z/d_1 x ... x Z/d_m with d_1 | d_2 | ... and every d_i >= 2.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;

    // Accepts any list of cyclic orders (>= 1) and brings it to invariant-factor form.
    static FiniteAbelianGroup from_cyclic_orders(const IntVec& orders);

    // Trusted constructor for an already normalized chain.
    static FiniteAbelianGroup from_invariant_factors(IntVec factors) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i] < 2) throw InvalidInput("invariant factor below 2");
            if (i && factors[i] % factors[i - 1] != 0) throw InvalidInput("invariant factors do not form a divisibility chain");
        }
        FiniteAbelianGroup g;
        g.factors_ = std::move(factors);
        return g;
    }

    const IntVec& invariant_factors() const { return factors_; }

    Integer order() const {
        Integer o = 1;
        for (const auto& d : factors_) o *= d;
        return o;
    }

    bool is_trivial() const { return factors_.empty(); }

    // Additive rank of the representation ring R(G): the number of characters.
    Integer representation_rank() const { return order(); }

    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += " x ";
            s += "Z/" + factors_[i].get_str();
        }
        return s;
    }

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

private:
    IntVec factors_;
};

// Element of Q^k / Z^k, stored with every coordinate in [0, 1).
class TorusElement {
public:
    TorusElement() = default;
    explicit TorusElement(RatVec v) : coords_(std::move(v)) {
        for (auto& x : coords_) x = floor_frac(x);
    }

    static TorusElement identity(std::size_t k) { return TorusElement(RatVec(k)); }

    const RatVec& coords() const { return coords_; }
    std::size_t dimension() const { return coords_.size(); }

    bool is_identity() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rational& x) { return x == 0; });
    }

    TorusElement negated() const {
        RatVec v = coords_;
        for (auto& x : v) x = -x;
        return TorusElement(std::move(v));
    }

    // Least common denominator: the order of the element.
    Integer order() const {
        Integer l = 1;
        for (const auto& x : coords_) l = lcm_of(l, Integer(x.get_den()));
        return l;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += coords_[i].get_str();
        }
        return s + ")";
    }

    friend bool operator==(const TorusElement& a, const TorusElement& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const TorusElement& a, const TorusElement& b) { return lex_less(a.coords_, b.coords_); }

private:
    RatVec coords_;
};

// ---------------------------------------------------------------------------
// Normal forms

struct HermiteForm {
    IntMatrix H;
    IntMatrix U;
};

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer trunc_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace detail

// Row-style Hermite normal form: U * M = H with U unimodular, H upper
// echelon, positive pivots, entries above each pivot in [0, pivot).
inline HermiteForm hermite_normal_form(const IntMatrix& M) {
    IntMatrix H = M;
    IntMatrix U = IntMatrix::identity(M.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
        for (;;) {
            std::size_t best = H.rows();
            for (std::size_t i = r; i < H.rows(); ++i) {
                if (H(i, c) == 0) continue;
                if (best == H.rows() || abs(H(i, c)) < abs(H(best, c))) best = i;
            }
            if (best == H.rows()) break;
            H.swap_rows(r, best);
            U.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < H.rows(); ++i) {
                if (H(i, c) == 0) continue;
                const Integer q = detail::floor_div(H(i, c), H(r, c));
                H.add_row_multiple(i, r, -q);
                U.add_row_multiple(i, r, -q);
                if (H(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H(r, c) == 0) continue;
        if (H(r, c) < 0) {
            H.negate_row(r);
            U.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            const Integer q = detail::floor_div(H(i, c), H(r, c));
            H.add_row_multiple(i, r, -q);
            U.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    return {std::move(H), std::move(U)};
}

struct SmithForm {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;

    // Diagonal entries d_1 | d_2 | ... (min(rows, cols) of them, zeros last).
    IntVec diagonal() const {
        IntVec d;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

// U * M * V = D with U, V unimodular and D diagonal, nonnegative, with a
// divisibility chain. Pivots on the entry of least absolute value.
inline SmithForm smith_normal_form(const IntMatrix& M) {
    IntMatrix D = M;
    IntMatrix U = IntMatrix::identity(M.rows());
    IntMatrix V = IntMatrix::identity(M.cols());
    const std::size_t n = std::min(D.rows(), D.cols());
    for (std::size_t t = 0; t < n; ++t) {
        bool exhausted = false;
        for (;;) {
            std::size_t pi = D.rows(), pj = D.cols();
            for (std::size_t i = t; i < D.rows(); ++i)
                for (std::size_t j = t; j < D.cols(); ++j) {
                    if (D(i, j) == 0) continue;
                    if (pi == D.rows() || abs(D(i, j)) < abs(D(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == D.rows()) {
                exhausted = true;
                break;
            }
            D.swap_rows(t, pi);
            U.swap_rows(t, pi);
            D.swap_cols(t, pj);
            V.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < D.rows(); ++i) {
                if (D(i, t) == 0) continue;
                const Integer q = detail::trunc_div(D(i, t), D(t, t));
                D.add_row_multiple(i, t, -q);
                U.add_row_multiple(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < D.cols(); ++j) {
                if (D(t, j) == 0) continue;
                const Integer q = detail::trunc_div(D(t, j), D(t, t));
                D.add_col_multiple(j, t, -q);
                V.add_col_multiple(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            std::size_t bad = D.rows();
            for (std::size_t i = t + 1; i < D.rows() && bad == D.rows(); ++i)
                for (std::size_t j = t + 1; j < D.cols(); ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == D.rows()) break;
            D.add_row_multiple(t, bad, 1);
            U.add_row_multiple(t, bad, 1);
        }
        if (exhausted) break;
        if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }
    return {std::move(D), std::move(U), std::move(V)};
}

inline FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const IntVec& orders) {
    IntMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1) throw InvalidInput("cyclic order must be positive");
        diag(i, i) = orders[i];
    }
    IntVec factors;
    for (const auto& d : smith_normal_form(diag).diagonal())
        if (d > 1) factors.push_back(d);
    return from_invariant_factors(std::move(factors));
}

// Torsion structure of Z^k / image(M) for M with k rows; nullopt when the
// columns do not span Q^k (infinite cokernel).
inline std::optional<FiniteAbelianGroup> cokernel_group(const IntMatrix& M) {
    const SmithForm snf = smith_normal_form(M);
    IntVec factors;
    std::size_t nonzero = 0;
    for (const auto& d : snf.diagonal()) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) factors.push_back(d);
    }
    if (nonzero < M.rows()) return std::nullopt;
    return FiniteAbelianGroup::from_invariant_factors(std::move(factors));
}

struct LinearSolution {
    std::optional<RatVec> solution;
    std::vector<RatVec> kernel_basis;
};

// One solution of A x = b (free variables set to zero) plus a kernel basis.
inline LinearSolution rational_solve(const IntMatrix& A, const RatVec& b) {
    if (b.size() != A.rows()) throw InvalidInput("rational_solve: right-hand side length mismatch");
    const std::size_t n = A.cols();
    std::vector<RatVec> aug(A.rows(), RatVec(n + 1));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = A(i, j);
        aug[i][n] = b[i];
    }
    const auto pivots = rref_in_place(aug, n);

    LinearSolution out;
    bool consistent = true;
    for (std::size_t i = pivots.size(); i < aug.size(); ++i)
        if (aug[i][n] != 0) consistent = false;
    if (consistent) {
        RatVec x(n);
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][n];
        out.solution = std::move(x);
    }

    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(n);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug[r][f];
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

// Unique solution of the square nonsingular system A x = b.
inline RatVec solve_square(const IntMatrix& A, const RatVec& b) {
    auto sol = rational_solve(A, b);
    if (!sol.solution || !sol.kernel_basis.empty()) throw InvalidInput("solve_square: singular system");
    return std::move(*sol.solution);
}

// All v in Q^k / Z^k with A_S^T v integral, canonical and sorted. The
// columns of A_S must span Q^k.
inline std::vector<TorusElement> dual_group_elements(const IntMatrix& A_S) {
    const std::size_t k = A_S.rows();
    const SmithForm snf = smith_normal_form(A_S);
    const IntVec diag = snf.diagonal();
    if (diag.size() < k || std::any_of(diag.begin(), diag.end(), [](const Integer& d) { return d == 0; }))
        throw InvalidInput("dual_group_elements: columns do not span, solution group is infinite");

    // A^T v in Z^m  <=>  D^T (U^{-T} v) in Z^m, so v = U^T w with w_i in (1/d_i) Z.
    const IntMatrix Ut = snf.U.transpose();
    std::vector<TorusElement> out;
    IntVec counter(k, 0);
    for (;;) {
        RatVec v(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l)
                if (counter[l] != 0) v[i] += Rational(Ut(i, l)) * make_rational(counter[l], diag[l]);
        out.emplace_back(std::move(v));
        std::size_t pos = 0;
        while (pos < k) {
            if (++counter[pos] < diag[pos]) break;
            counter[pos] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace orbk
