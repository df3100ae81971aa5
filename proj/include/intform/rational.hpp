#pragma once

#include <gmpxx.h>

#include <string>

namespace intform {

/// Exact fraction, always kept canonical (gcd 1, positive denominator) by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return Rational(r);
}

/// b (b-1) ... (b-a+1)
inline Rational falling_factorial(long b, long a) {
    Integer r = 1;
    for (long i = 0; i < a; ++i) r *= (b - i);
    return Rational(r);
}

inline Rational power(const Rational& base, long exponent) {
    Rational result = 1;
    Rational b = exponent < 0 ? Rational(1 / base) : base;
    for (long e = exponent < 0 ? -exponent : exponent; e > 0; e >>= 1) {
        if (e & 1) result *= b;
        b *= b;
    }
    return result;
}

}  // namespace intform
