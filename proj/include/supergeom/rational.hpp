#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "error.hpp"

namespace supergeom {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    require(den != 0, ErrorKind::precondition, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// "a/b", or "a" when the denominator is 1.
inline std::string to_string(const Rational &q) { return q.get_str(); }

inline bool is_zero(const Rational &q) { return sgn(q) == 0; }

// C(n, k) for integers with n >= 0; zero when k < 0 or k > n.
inline std::int64_t binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    require(r.fits_slong_p(), ErrorKind::limit_exceeded, "binomial coefficient overflows 64 bits");
    return r.get_si();
}

inline Rational factorial_q(int n)
{
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return Rational(r);
}

} // namespace supergeom
