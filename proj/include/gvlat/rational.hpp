#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gvlat/errors.hpp"

namespace gvlat {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Rat>;

// mpq_class arithmetic keeps canonical operands canonical, but raw
// construction from a numerator/denominator pair does not.
inline Rat ratio(const Int& num, const Int& den) {
    if (den == 0) fail("DivisionByZero", "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat ratio(long num, long den) { return ratio(Int(num), Int(den)); }

// Parses "p", "-p" or "p/q" in lowest or non-lowest terms.
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) fail("ParseError", "empty rational literal");
    Rat r;
    if (r.set_str(text, 10) != 0)
        fail("ParseError", "bad rational literal '" + text + "'");
    if (r.get_den() == 0) fail("ParseError", "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// r mod m for rational r and positive rational m, result in [0, m).
inline Rat rat_mod(const Rat& r, const Rat& m) {
    Rat q = r / m;
    Rat out = r - Rat(rat_floor(q)) * m;
    out.canonicalize();
    return out;
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) fail("Overflow", "integer does not fit in long");
    return z.get_si();
}

inline long to_long(const Rat& r) {
    if (!is_integer(r)) fail("NotAnInteger", "expected integer, got " + to_string(r));
    return to_long(Int(r.get_num()));
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline Vec vec_scale(const Rat& c, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

inline bool vec_is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

}  // namespace gvlat
