#ifndef PSEUDOTRACE_COMBINATORICS_HPP
#define PSEUDOTRACE_COMBINATORICS_HPP

#include <pseudotrace/report.hpp>
#include <pseudotrace/series.hpp>

#include <cstdint>
#include <vector>

namespace pt
{

Scalar binom(const Scalar &alpha, long k);
// coefficients c_i of binom(a*T + b, k) = sum_i c_i T^i
std::vector<Scalar> binom_polynomial(const Scalar &a, const Scalar &b, long k);

// sum_k binom(-n-1,k) (e^{k(n+1)x} + sign (-1)^{-n-k-1} e^{kkx}) (e^{kx}-1)^{-n-k-1}
LaurentSeries b1_series(int n, int x_order, int sign = 1);
bool check_b1(int n, int x_order, int sign = 1);

Rational b2_sum(long m, long n, long k, long l);
bool check_b2(long m, long n, long k, long l);

Rational vandermonde(const Rational &alpha, const Rational &beta, long m);
bool check_b3a(const Rational &alpha, const Rational &beta, long m);
Rational b3b_sum(long m, long n, const Rational &alpha);
bool check_b3b(long m, long n, const Rational &alpha);

Rational b4_sum(long m, long n, long l);
bool check_b4(long m, long n, long l);

Rational andersen_lhs(const Rational &alpha, long m, long k);
Rational andersen_rhs(const Rational &alpha, long m, long k);
bool andersen(const Rational &alpha, long m, long k);

Rational b6_sum(long m, long n, long l);
bool check_b6(long m, long n, long l);

Rational b7_value(long m, long n);
bool check_b7(long m, long n);

Rational b8_first(long n, long l);
Rational b8_second(long n, long l);
Rational b9_first(long n, long l);
Rational b9_second(long n, long l);
bool check_b8(long n, long l);
bool check_b9(long n, long l);

// random rationals p/q with 1 < q <= 12, |p| <= 60, never integers
std::vector<Rational> random_rationals(std::uint64_t seed, int count);

Report appendix_b_sweep(int max_index, std::uint64_t seed, int alpha_samples = 20);

} // namespace pt

#endif
