#ifndef PSEUDOTRACE_SERIES_HPP
#define PSEUDOTRACE_SERIES_HPP

#include <pseudotrace/errors.hpp>
#include <pseudotrace/scalar.hpp>

#include "json.hpp"

#include <map>
#include <string>
#include <utility>

namespace pt
{

// hi() of a series with no truncation (a Laurent polynomial)
inline constexpr int kExact = 1 << 28;

// Truncated Laurent series sum_{e >= lo} c_e x^e over Scalar.
// Coefficients below lo are zero, coefficients in [lo, hi] are known exactly,
// coefficients above hi are unknown and asking for them raises WindowError.
class LaurentSeries
{
public:
    LaurentSeries() = default;
    LaurentSeries(int lo, int hi, const std::map<int, Scalar> &coeffs, std::string var = "x");

    static LaurentSeries zero(int hi = kExact, std::string var = "x");
    static LaurentSeries constant(const Scalar &c, int hi = kExact);
    static LaurentSeries monomial(const Scalar &c, int e, int hi = kExact);
    static LaurentSeries polynomial(const std::map<int, Scalar> &coeffs);

    int lo() const
    {
        return lo_;
    }
    int hi() const
    {
        return hi_;
    }
    bool exact() const
    {
        return hi_ >= kExact;
    }
    const std::string &var() const
    {
        return var_;
    }
    void set_var(std::string v)
    {
        var_ = std::move(v);
    }
    const std::map<int, Scalar> &coeffs() const
    {
        return c_;
    }

    Scalar coeff(int e) const;
    bool is_zero() const
    {
        return c_.empty();
    }
    // lowest exponent with a nonzero coefficient; hi()+1 when all known coefficients vanish
    int valuation() const;

    LaurentSeries truncated(int hi) const;
    LaurentSeries shifted(int k) const; // multiply by x^k
    LaurentSeries derivative() const;
    LaurentSeries inverse() const;
    LaurentSeries pow(long k) const;

    LaurentSeries &operator+=(const LaurentSeries &o);
    LaurentSeries &operator-=(const LaurentSeries &o);
    LaurentSeries &operator*=(const Scalar &s);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries &b)
    {
        return a += b;
    }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries &b)
    {
        return a -= b;
    }
    friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b);
    friend LaurentSeries operator*(LaurentSeries a, const Scalar &s)
    {
        return a *= s;
    }
    friend LaurentSeries operator*(const Scalar &s, LaurentSeries a)
    {
        return a *= s;
    }
    LaurentSeries operator-() const;

    // equality of coefficients on the common known window
    bool agrees_with(const LaurentSeries &o) const;

    std::string str() const;

private:
    void add_coeff(int e, const Scalar &c);

    int lo_ = 0;
    int hi_ = kExact;
    std::map<int, Scalar> c_;
    std::string var_ = "x";
};

int clamp_hi(long h);

// sum_{k=0}^{order} c^k x^k / k!
LaurentSeries exp_series(const Scalar &c, int order);
// log(1+x) through x^order
LaurentSeries log1p_series(int order);
// (e^{kx} - 1)^{-m}, m >= 1, exact through x^order
LaurentSeries expm1_inverse_power(int m, int order);
// (e^{kx} - 1)^p for any integer p, exact through x^order
LaurentSeries expm1_power(int p, int order);

Scalar residue(const LaurentSeries &s);

LaurentSeries substitute(const LaurentSeries &outer, const LaurentSeries &inner);

// sum_m binom(alpha, m) (base - 1)^m, base with constant term 1
LaurentSeries binom_pow(const LaurentSeries &base, const Rational &alpha, int order = kExact);

nlohmann::json to_json(const LaurentSeries &s);
LaurentSeries laurent_from_json(const nlohmann::json &j);

// Finite sum of blocks (log q)^k q^{r + n} * body(q), r in [0, 1) rational.
class QLogSeries
{
public:
    using Key = std::pair<Rational, int>; // (r, k)

    QLogSeries() = default;

    // declare a block with a known window (so zero coefficients are known zeros)
    void declare(const Rational &exponent_offset, int k, int lo, int hi);
    void add_term(int k, const Rational &exponent, const Scalar &c);
    void add_block(const Rational &r, int k, const LaurentSeries &body);

    Scalar coeff(int k, const Rational &exponent) const;
    const std::map<Key, LaurentSeries> &blocks() const
    {
        return blocks_;
    }
    int max_log_power() const;
    bool is_zero() const;

    QLogSeries qddq() const;
    // multiply by q^s for an integer s
    QLogSeries shifted(int s) const;

    QLogSeries &operator+=(const QLogSeries &o);
    QLogSeries &operator-=(const QLogSeries &o);
    QLogSeries &operator*=(const Scalar &s);
    friend QLogSeries operator+(QLogSeries a, const QLogSeries &b)
    {
        return a += b;
    }
    friend QLogSeries operator-(QLogSeries a, const QLogSeries &b)
    {
        return a -= b;
    }
    friend QLogSeries operator*(QLogSeries a, const Scalar &s)
    {
        return a *= s;
    }

    std::string str() const;
    nlohmann::json to_json() const;

    static std::pair<Rational, int> split_exponent(const Rational &exponent);

private:
    std::map<Key, LaurentSeries> blocks_;
};

} // namespace pt

#endif
