#ifndef PSEUDOTRACE_SCALAR_HPP
#define PSEUDOTRACE_SCALAR_HPP

#include <pseudotrace/rational.hpp>

#include <complex>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

namespace pt
{

// Element of Q[k, 1/k] where the formal symbol k stands for 2*pi*i.
class Scalar
{
public:
    using Terms = std::map<int, Rational>;

    Scalar() = default;
    Scalar(int v);
    Scalar(long v);
    Scalar(const Rational &r);

    static Scalar monomial(const Rational &c, int e);
    static Scalar kappa(int e = 1);
    // pi^2 = -k^2/4
    static Scalar pi_squared();

    const Terms &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    bool is_rational() const;
    Rational to_rational() const;
    Rational coeff(int e) const;
    bool is_monomial() const
    {
        return terms_.size() == 1;
    }
    int min_exponent() const;
    int max_exponent() const;

    Scalar inverse() const;

    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator*=(const Rational &r);

    friend Scalar operator+(Scalar a, const Scalar &b)
    {
        return a += b;
    }
    friend Scalar operator-(Scalar a, const Scalar &b)
    {
        return a -= b;
    }
    friend Scalar operator*(const Scalar &a, const Scalar &b);
    friend Scalar operator*(Scalar a, const Rational &r)
    {
        return a *= r;
    }
    friend Scalar operator*(const Rational &r, Scalar a)
    {
        return a *= r;
    }
    Scalar operator-() const;

    friend bool operator==(const Scalar &a, const Scalar &b)
    {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Scalar &a, const Scalar &b)
    {
        return !(a == b);
    }

    // value at k = 2*pi*i
    std::complex<double> eval() const;

    std::string str() const;
    static Scalar parse(std::string_view s);

private:
    Terms terms_;
};

std::ostream &operator<<(std::ostream &os, const Scalar &s);

} // namespace pt

#endif
