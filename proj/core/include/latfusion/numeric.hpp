#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace latfusion {

// All arithmetic in the library is exact: Int is an arbitrary-precision
// integer, Rat an exact rational (always kept canonicalized by gmpxx).
using Int = mpz_class;
using Rat = mpq_class;

// Ambient vector with exact rational coordinates.
using Vec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer too large for long");
    return z.get_si();
}

inline Int pow2(unsigned long k) {
    Int z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, k);
    return z;
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vec_scale(const Rat& c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Rat dot(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool vec_is_zero(const Vec& a) {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

// Lexicographic compare, used wherever a deterministic vector order is needed.
inline bool vec_less(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

}  // namespace latfusion
