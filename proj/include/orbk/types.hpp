#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace orbk {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

// Sorted 0-based coordinate indices.
using Support = std::vector<std::size_t>;

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// "p/q" or "p", canonical sign and lowest terms.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational floor_frac(const Rational& q) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - Rational(fl);
}

inline RatVec to_rational(const IntVec& v) { return RatVec(v.begin(), v.end()); }

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVec& a, const RatVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

inline Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Integer gcd_of(const IntVec& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return a == 0 ? b : a;
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Smallest positive integer multiple of a rational vector (primitive direction).
inline IntVec primitive_integer_direction(const RatVec& v) {
    Integer den = 1;
    for (const auto& x : v) den = lcm_of(den, Integer(x.get_den()));
    IntVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(Integer(x * den));
    Integer g = gcd_of(out);
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

inline IntVec primitive(const IntVec& v) {
    Integer g = gcd_of(v);
    if (g <= 1) return v;
    IntVec out = v;
    for (auto& x : out) x /= g;
    return out;
}

inline bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

}  // namespace orbk
