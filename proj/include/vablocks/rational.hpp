#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vablocks {

// Exact rational scalar. GMP keeps values canonical (gcd 1, positive
// denominator) under arithmetic; only raw string input needs an explicit
// canonicalize.
using Scalar = mpq_class;

inline Scalar scalar_from_string(const std::string& s) {
    mpq_class v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    if (v.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
    v.canonicalize();
    return v;
}

// Serialized form is "p/q", or "p" when q == 1.
inline std::string scalar_to_string(const Scalar& v) {
    return v.get_str();
}

inline bool is_zero(const Scalar& v) { return sgn(v) == 0; }

// canonical p/q; the raw two-argument mpq_class constructor does not reduce
inline Scalar frac(long p, long q) {
    Scalar r(p, q);
    r.canonicalize();
    return r;
}

// binomial(n, k) for arbitrary integer n and k >= 0:
// n(n-1)...(n-k+1)/k!.  Nonzero for negative n.
inline Scalar binomial(long n, long k) {
    if (k < 0) return 0;
    mpz_class num = 1;
    for (long i = 0; i < k; ++i) num *= (n - i);
    mpz_class den = 1;
    for (long i = 2; i <= k; ++i) den *= i;
    Scalar r(num, den);
    r.canonicalize();
    return r;
}

inline Scalar factorial(long n) {
    mpz_class r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return Scalar(r);
}

// falling factorial e(e-1)...(e-m+1) for integer e
inline Scalar falling(long e, long m) {
    mpz_class r = 1;
    for (long i = 0; i < m; ++i) r *= (e - i);
    return Scalar(r);
}

inline Scalar inv_factorial(long n) {
    Scalar r(1, factorial(n).get_num());
    r.canonicalize();
    return r;
}

} // namespace vablocks
