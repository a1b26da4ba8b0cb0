#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "errors.hpp"

namespace vgw {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw ValidationError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Always "p/q", also for integers.
inline std::string to_pq(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Integers without "/1".
inline std::string to_plain(const Rational& r)
{
    return r.get_str();
}

inline Rational parse_rational(const std::string& s)
{
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw ValidationError("malformed rational: '" + s + "'");
    r.canonicalize();
    return r;
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Rational pow(const Rational& base, unsigned long e)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::optional<Rational> try_invert(const Rational& r)
{
    if (r == 0)
        return std::nullopt;
    return Rational(1) / r;
}

} // namespace vgw
