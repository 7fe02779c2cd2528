#include <pseudotrace/errors.hpp>
#include <pseudotrace/rational.hpp>

#include <cctype>

namespace pt
{

Rational parse_rational(std::string_view s)
{
    std::string t;
    for (char ch : s) {
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t.push_back(ch);
    }
    if (t.empty())
        throw std::invalid_argument("empty rational");
    std::size_t i = 0;
    if (t[0] == '+' || t[0] == '-')
        i = 1;
    bool seen_digit = false, seen_slash = false, digit_after_slash = false;
    for (; i < t.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(t[i]))) {
            seen_digit = true;
            if (seen_slash)
                digit_after_slash = true;
        } else if (t[i] == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
        } else {
            throw std::invalid_argument("bad rational: " + std::string(s));
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash))
        throw std::invalid_argument("bad rational: " + std::string(s));
    if (t[0] == '+')
        t.erase(0, 1);
    Rational r(t, 10);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + std::string(s));
    r.canonicalize();
    return r;
}

std::string to_string(const Rational &r)
{
    return r.get_str();
}

Integer floor_of(const Rational &r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

bool is_integer(const Rational &r)
{
    return r.get_den() == 1;
}

long to_long(const Rational &r)
{
    if (!is_integer(r) || !r.get_num().fits_slong_p())
        throw DomainError("rational is not a machine integer: " + r.get_str());
    return r.get_num().get_si();
}

Rational binom(const Rational &alpha, long k)
{
    if (k < 0)
        return Rational(0);
    Rational acc(1);
    for (long i = 0; i < k; ++i) {
        acc *= (alpha - i);
        acc /= (i + 1);
    }
    return acc;
}

Rational binom(long n, long k)
{
    return binom(Rational(n), k);
}

Rational factorial(long n)
{
    Rational acc(1);
    for (long i = 2; i <= n; ++i)
        acc *= i;
    return acc;
}

Rational frac(long p, long q)
{
    if (q == 0)
        throw DomainError("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

} // namespace pt
