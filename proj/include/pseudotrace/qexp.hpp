#ifndef PSEUDOTRACE_QEXP_HPP
#define PSEUDOTRACE_QEXP_HPP

#include <pseudotrace/series.hpp>

#include <complex>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace pt
{

Integer sigma(long l);
Integer sigma_k(long l, int k);
// Bernoulli numbers with B_1 = -1/2
Rational bernoulli(int n);

// Double series sum c_{a,b} x^a q^b, exact for a in [x_lo, x_hi] and 0 <= b <= q_order.
class DoubleSeries
{
public:
    DoubleSeries() = default;
    DoubleSeries(int x_lo, int x_hi, int q_order) : x_lo_(x_lo), x_hi_(x_hi), q_order_(q_order) {}

    int x_lo() const
    {
        return x_lo_;
    }
    int x_hi() const
    {
        return x_hi_;
    }
    int q_order() const
    {
        return q_order_;
    }
    const std::map<std::pair<int, int>, Scalar> &coeffs() const
    {
        return c_;
    }

    Scalar coeff(int x_exp, int q_exp) const;
    void add(int x_exp, int q_exp, const Scalar &c);
    // x-series multiplying q^{q_exp}
    LaurentSeries row(int q_exp) const;
    void add_row(int q_exp, const LaurentSeries &s);
    // q-series multiplying x^{x_exp}
    LaurentSeries column(int x_exp) const;

    DoubleSeries restricted(int x_lo, int x_hi, int q_order) const;
    DoubleSeries derivative_x() const;

    DoubleSeries &operator+=(const DoubleSeries &o);
    DoubleSeries &operator-=(const DoubleSeries &o);
    DoubleSeries &operator*=(const Scalar &s);
    friend DoubleSeries operator+(DoubleSeries a, const DoubleSeries &b)
    {
        return a += b;
    }
    friend DoubleSeries operator-(DoubleSeries a, const DoubleSeries &b)
    {
        return a -= b;
    }
    friend DoubleSeries operator*(const DoubleSeries &a, const DoubleSeries &b);

    nlohmann::json to_json() const;

private:
    int x_lo_ = 0;
    int x_hi_ = 0;
    int q_order_ = 0;
    std::map<std::pair<int, int>, Scalar> c_;
};

// G_{2k}(tau) as a series in q, 2k >= 4; memoized behind a lock
LaurentSeries eisenstein_qexp(int two_k, int q_order);
LaurentSeries eisenstein_g2(int q_order);

DoubleSeries tilde_wp2(int x_hi, int q_order);
DoubleSeries tilde_wp1_minus_g2x(int x_hi, int q_order);
DoubleSeries wp2_x_expansion(int x_hi, int q_order);
DoubleSeries wp1_x_expansion(int x_hi, int q_order);

// kernel rows q^s of the two tilde kernels as x-series, used by the trace conditions
LaurentSeries tilde_wp2_row(int s, int x_hi);
LaurentSeries tilde_wp1_row(int s, int x_hi);

struct Discrepancy {
    int x_exp;
    int q_exp;
    Scalar difference;
};

struct LemmaA1Report {
    std::string pair;
    int x_lo = 0;
    int x_hi = 0;
    int q_order = 0;
    long compared = 0;
    std::vector<Discrepancy> discrepancies;
    bool ok() const
    {
        return discrepancies.empty();
    }
};

// perturbation adds a constant to G_4 on the expansion side
LemmaA1Report lemma_a1_check_wp2(int x_hi, int q_order, const Scalar &g4_perturbation = Scalar());
LemmaA1Report lemma_a1_check_wp1(int x_hi, int q_order, const Scalar &g4_perturbation = Scalar());

// d/dx of the wp1 kernel plus the wp2 kernel equals -G2(q), constant in x
bool wp_derivative_relation(int x_hi, int q_order);

std::complex<double> eval_q_series(const LaurentSeries &s, std::complex<double> q);

struct ModularCheck {
    int two_k;
    std::complex<double> tau;
    std::complex<double> lhs;
    std::complex<double> rhs;
    double residual;
};

// |G_{2k}(-1/tau) - tau^{2k} G_{2k}(tau)|
ModularCheck modular_numeric_check(int two_k, std::complex<double> tau, int q_order);

} // namespace pt

#endif
