#ifndef PSEUDOTRACE_RATIONAL_HPP
#define PSEUDOTRACE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace pt
{

using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view s);
// canonical p/q
Rational frac(long p, long q);
std::string to_string(const Rational &r);

// floor of a rational as an integer
Integer floor_of(const Rational &r);
bool is_integer(const Rational &r);
long to_long(const Rational &r); // requires an integer value that fits

// binom(alpha, k) = alpha (alpha-1) ... (alpha-k+1) / k!, and 0 for k < 0
Rational binom(const Rational &alpha, long k);
Rational binom(long n, long k);
Rational factorial(long n);

// sign (-1)^e for any integer e
inline int neg_one_pow(long e)
{
    return (e % 2 == 0) ? 1 : -1;
}

} // namespace pt

#endif
