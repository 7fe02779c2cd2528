#include <pseudotrace/qexp.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace pt
{

Integer sigma(long l)
{
    return sigma_k(l, 1);
}

Integer sigma_k(long l, int k)
{
    if (l < 1)
        throw DomainError("sigma needs a positive argument");
    Integer s = 0;
    for (long d = 1; d * d <= l; ++d) {
        if (l % d != 0)
            continue;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        s += p;
        long e = l / d;
        if (e != d) {
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
            s += p;
        }
    }
    return s;
}

Rational bernoulli(int n)
{
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        Rational acc(0);
        for (int j = 0; j < m; ++j)
            acc += binom(m + 1, j) * table[j];
        table.push_back(-acc / Rational(m + 1));
    }
    return table[n];
}

Scalar DoubleSeries::coeff(int x_exp, int q_exp) const
{
    if (x_exp > x_hi_ || q_exp > q_order_)
        throw WindowError("double series coefficient outside the known window");
    if (x_exp < x_lo_ || q_exp < 0)
        return Scalar();
    auto it = c_.find({x_exp, q_exp});
    return it == c_.end() ? Scalar() : it->second;
}

void DoubleSeries::add(int x_exp, int q_exp, const Scalar &c)
{
    if (c.is_zero() || x_exp > x_hi_ || q_exp > q_order_)
        return;
    if (x_exp < x_lo_ || q_exp < 0)
        throw DomainError("double series term below the declared window");
    auto [it, inserted] = c_.emplace(std::make_pair(x_exp, q_exp), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            c_.erase(it);
    }
}

LaurentSeries DoubleSeries::row(int q_exp) const
{
    if (q_exp > q_order_)
        throw WindowError("q-row beyond the known order");
    std::map<int, Scalar> m;
    for (const auto &[key, c] : c_)
        if (key.second == q_exp)
            m.emplace(key.first, c);
    return LaurentSeries(x_lo_, x_hi_, m);
}

void DoubleSeries::add_row(int q_exp, const LaurentSeries &s)
{
    if (s.hi() < x_hi_)
        throw WindowError("row is known on a shorter x-window than the double series");
    for (const auto &[e, c] : s.coeffs())
        add(e, q_exp, c);
}

LaurentSeries DoubleSeries::column(int x_exp) const
{
    if (x_exp > x_hi_)
        throw WindowError("x-column beyond the known window");
    std::map<int, Scalar> m;
    for (const auto &[key, c] : c_)
        if (key.first == x_exp)
            m.emplace(key.second, c);
    return LaurentSeries(0, q_order_, m, "q");
}

DoubleSeries DoubleSeries::restricted(int x_lo, int x_hi, int q_order) const
{
    if (x_hi > x_hi_ || q_order > q_order_)
        throw WindowError("restriction beyond the known window");
    DoubleSeries out(std::min(x_lo, x_lo_), x_hi, q_order);
    for (const auto &[key, c] : c_)
        if (key.first <= x_hi && key.second <= q_order)
            out.add(key.first, key.second, c);
    return out;
}

DoubleSeries DoubleSeries::derivative_x() const
{
    DoubleSeries out(x_lo_ - 1, x_hi_ - 1, q_order_);
    for (const auto &[key, c] : c_)
        if (key.first != 0)
            out.add(key.first - 1, key.second, c * Rational(key.first));
    return out;
}

DoubleSeries &DoubleSeries::operator+=(const DoubleSeries &o)
{
    DoubleSeries out(std::min(x_lo_, o.x_lo_), std::min(x_hi_, o.x_hi_), std::min(q_order_, o.q_order_));
    for (const auto &[key, c] : c_)
        out.add(key.first, key.second, c);
    for (const auto &[key, c] : o.c_)
        out.add(key.first, key.second, c);
    *this = std::move(out);
    return *this;
}

DoubleSeries &DoubleSeries::operator-=(const DoubleSeries &o)
{
    DoubleSeries neg = o;
    neg *= Scalar(-1);
    return *this += neg;
}

DoubleSeries &DoubleSeries::operator*=(const Scalar &s)
{
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto &[key, c] : c_)
        c = c * s;
    return *this;
}

DoubleSeries operator*(const DoubleSeries &a, const DoubleSeries &b)
{
    int hi = std::min(a.x_hi_ + b.x_lo_, b.x_hi_ + a.x_lo_);
    DoubleSeries out(a.x_lo_ + b.x_lo_, hi, std::min(a.q_order_, b.q_order_));
    for (const auto &[ka, ca] : a.c_)
        for (const auto &[kb, cb] : b.c_)
            out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

nlohmann::json DoubleSeries::to_json() const
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[key, c] : c_)
        terms.push_back({{"x", key.first}, {"q", key.second}, {"c", c.str()}});
    return {{"x_lo", x_lo_}, {"x_hi", x_hi_}, {"q_order", q_order_}, {"terms", terms}};
}

namespace
{

LaurentSeries eisenstein_any(int two_k, int q_order)
{
    static std::mutex mu;
    static std::map<int, LaurentSeries> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(two_k);
        if (it != cache.end() && it->second.hi() >= q_order)
            return it->second.truncated(q_order);
    }
    std::map<int, Scalar> m;
    m.emplace(0, Scalar::monomial(-bernoulli(two_k) / factorial(two_k), two_k));
    Rational lead = Rational(2) / factorial(two_k - 1);
    for (int n = 1; n <= q_order; ++n)
        m.emplace(n, Scalar::monomial(lead * Rational(sigma_k(n, two_k - 1)), two_k));
    LaurentSeries g(0, q_order, m, "q");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(two_k);
    if (it == cache.end() || it->second.hi() < q_order)
        cache[two_k] = g;
    return g;
}

std::vector<long> divisors(long s)
{
    std::vector<long> d;
    for (long l = 1; l <= s; ++l)
        if (s % l == 0)
            d.push_back(l);
    return d;
}

} // namespace

LaurentSeries eisenstein_qexp(int two_k, int q_order)
{
    if (two_k < 4 || two_k % 2 != 0)
        throw DomainError("eisenstein_qexp needs an even weight >= 4");
    return eisenstein_any(two_k, q_order);
}

LaurentSeries eisenstein_g2(int q_order)
{
    return eisenstein_any(2, q_order);
}

LaurentSeries tilde_wp2_row(int s, int x_hi)
{
    Scalar k2 = Scalar::kappa(2);
    if (s == 0) {
        LaurentSeries lead = exp_series(Scalar::kappa(1), x_hi + 2) * expm1_inverse_power(2, x_hi);
        return (lead + LaurentSeries::constant(Scalar(frac(1, 12)), x_hi)) * k2;
    }
    LaurentSeries acc = LaurentSeries::constant(Scalar(Rational(-2) * Rational(sigma(s))), x_hi);
    for (long l : divisors(s)) {
        Scalar lk = Scalar::monomial(Rational(l), 1);
        acc += (exp_series(lk, x_hi) + exp_series(-lk, x_hi)) * Scalar(Rational(l));
    }
    return acc * k2;
}

LaurentSeries tilde_wp1_row(int s, int x_hi)
{
    Scalar k = Scalar::kappa(1);
    if (s == 0) {
        LaurentSeries lead = exp_series(k, x_hi + 1) * expm1_inverse_power(1, x_hi);
        return (lead - LaurentSeries::constant(Scalar(frac(1, 2)), x_hi)) * k;
    }
    LaurentSeries acc = LaurentSeries::zero(x_hi);
    for (long l : divisors(s)) {
        Scalar lk = Scalar::monomial(Rational(l), 1);
        acc += exp_series(lk, x_hi) - exp_series(-lk, x_hi);
    }
    return acc * (-k);
}

DoubleSeries tilde_wp2(int x_hi, int q_order)
{
    if (x_hi < -2)
        throw DomainError("tilde_wp2 needs x_hi >= -2");
    DoubleSeries d(-2, x_hi, q_order);
    for (int s = 0; s <= q_order; ++s)
        d.add_row(s, tilde_wp2_row(s, x_hi));
    return d;
}

DoubleSeries tilde_wp1_minus_g2x(int x_hi, int q_order)
{
    if (x_hi < -1)
        throw DomainError("tilde_wp1_minus_g2x needs x_hi >= -1");
    DoubleSeries d(-1, x_hi, q_order);
    for (int s = 0; s <= q_order; ++s)
        d.add_row(s, tilde_wp1_row(s, x_hi));
    return d;
}

DoubleSeries wp2_x_expansion(int x_hi, int q_order)
{
    DoubleSeries d(-2, x_hi, q_order);
    d.add(-2, 0, Scalar(1));
    for (int k = 1; 2 * k <= x_hi; ++k) {
        LaurentSeries g = eisenstein_qexp(2 * k + 2, q_order);
        for (const auto &[n, c] : g.coeffs())
            d.add(2 * k, n, c * Rational(2 * k + 1));
    }
    return d;
}

DoubleSeries wp1_x_expansion(int x_hi, int q_order)
{
    DoubleSeries d(-1, x_hi, q_order);
    d.add(-1, 0, Scalar(1));
    for (int k = 0; 2 * k + 1 <= x_hi; ++k) {
        LaurentSeries g = eisenstein_any(2 * k + 2, q_order);
        for (const auto &[n, c] : g.coeffs())
            d.add(2 * k + 1, n, -c);
    }
    return d;
}

namespace
{

LemmaA1Report compare(const std::string &name, const DoubleSeries &a, const DoubleSeries &b, int x_lo, int x_hi,
                      int q_order)
{
    LemmaA1Report r;
    r.pair = name;
    r.x_lo = x_lo;
    r.x_hi = x_hi;
    r.q_order = q_order;
    for (int q = 0; q <= q_order; ++q) {
        for (int x = x_lo; x <= x_hi; ++x) {
            Scalar d = a.coeff(x, q) - b.coeff(x, q);
            ++r.compared;
            if (!d.is_zero())
                r.discrepancies.push_back({x, q, d});
        }
    }
    return r;
}

} // namespace

LemmaA1Report lemma_a1_check_wp2(int x_hi, int q_order, const Scalar &g4_perturbation)
{
    DoubleSeries expansion = wp2_x_expansion(x_hi, q_order);
    if (x_hi >= 2)
        expansion.add(2, 0, g4_perturbation * Rational(3));
    return compare("wp2", tilde_wp2(x_hi, q_order), expansion, -2, x_hi, q_order);
}

LemmaA1Report lemma_a1_check_wp1(int x_hi, int q_order, const Scalar &g4_perturbation)
{
    DoubleSeries expansion = wp1_x_expansion(x_hi, q_order);
    if (x_hi >= 3)
        expansion.add(3, 0, -g4_perturbation);
    return compare("wp1", tilde_wp1_minus_g2x(x_hi, q_order), expansion, -1, x_hi, q_order);
}

bool wp_derivative_relation(int x_hi, int q_order)
{
    DoubleSeries lhs = tilde_wp1_minus_g2x(x_hi + 1, q_order).derivative_x() + tilde_wp2(x_hi, q_order);
    LaurentSeries g2 = eisenstein_g2(q_order);
    for (int q = 0; q <= q_order; ++q) {
        for (int x = -2; x <= x_hi; ++x) {
            Scalar expect = x == 0 ? -g2.coeff(q) : Scalar();
            if (lhs.coeff(x, q) != expect)
                return false;
        }
    }
    return true;
}

std::complex<double> eval_q_series(const LaurentSeries &s, std::complex<double> q)
{
    std::complex<double> acc(0.0, 0.0);
    for (const auto &[e, c] : s.coeffs())
        acc += c.eval() * std::pow(q, e);
    return acc;
}

ModularCheck modular_numeric_check(int two_k, std::complex<double> tau, int q_order)
{
    if (two_k < 4 || two_k % 2 != 0)
        throw DomainError("modular check needs an even weight >= 4");
    if (tau.imag() <= 0)
        throw ConvergenceDomainError("tau must lie in the upper half plane");
    const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
    std::complex<double> q = std::exp(two_pi_i * tau);
    std::complex<double> tau_s = -1.0 / tau;
    std::complex<double> q_s = std::exp(two_pi_i * tau_s);
    if (std::abs(q) >= 0.1)
        throw ConvergenceDomainError("|q(tau)| must be below 0.1");
    if (std::abs(q_s) >= 0.5)
        throw ConvergenceDomainError("|q(-1/tau)| must be below 0.5");
    LaurentSeries g = eisenstein_qexp(two_k, q_order);
    ModularCheck r;
    r.two_k = two_k;
    r.tau = tau;
    r.lhs = eval_q_series(g, q_s);
    r.rhs = std::pow(tau, two_k) * eval_q_series(g, q);
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

} // namespace pt
