#include <pseudotrace/combinatorics.hpp>

#include <gtest/gtest.h>

using namespace pt;

namespace
{

// falling factorial over k!, written out independently of the library
Rational oracle_binom(const Rational &a, long k)
{
    if (k < 0)
        return 0;
    Rational num(1), den(1);
    for (long i = 0; i < k; ++i) {
        num *= a - i;
        den *= i + 1;
    }
    return num / den;
}

} // namespace

TEST(Binomial, MatchesFallingFactorial)
{
    for (long k = -1; k <= 9; ++k)
        for (Rational a : {Rational(-5), Rational(0), Rational(7), frac(1, 2), frac(-7, 3)})
            EXPECT_EQ(binom(a, k), oracle_binom(a, k)) << a << " " << k;
    EXPECT_EQ(binom(10L, 3L), Rational(120));
    EXPECT_EQ(binom(3L, 5L), Rational(0));
    EXPECT_EQ(binom(Rational(-1), 4), Rational(1));
    EXPECT_EQ(binom(Rational(-2), 3), Rational(-4));
}

TEST(Binomial, ScalarBinomialOfKappa)
{
    Scalar k = Scalar::kappa(1);
    Scalar b = binom(k, 2);
    EXPECT_EQ(b, Scalar(frac(1, 2)) * Scalar::kappa(2) - Scalar(frac(1, 2)) * k);
}

TEST(Binomial, PolynomialCoefficients)
{
    Rational a = frac(3, 2), b = frac(-1, 3);
    for (long k = 0; k <= 5; ++k) {
        std::vector<Scalar> c = binom_polynomial(Scalar(a), Scalar(b), k);
        for (long t = -3; t <= 3; ++t) {
            Scalar val;
            Scalar tp(1);
            for (const Scalar &ci : c) {
                val += ci * tp;
                tp *= Scalar(t);
            }
            EXPECT_EQ(val, Scalar(oracle_binom(a * t + b, k))) << k << " " << t;
        }
    }
}

TEST(Identities, VandermondeAgainstBruteForce)
{
    for (Rational a : random_rationals(7, 6))
        for (Rational b : random_rationals(8, 4))
            for (long m = 0; m <= 8; ++m) {
                Rational brute(0);
                for (long j = 0; j <= m; ++j)
                    brute += oracle_binom(a, j) * oracle_binom(b, m - j);
                EXPECT_EQ(vandermonde(a, b, m), brute);
                EXPECT_EQ(brute, oracle_binom(a + b, m));
                EXPECT_TRUE(check_b3a(a, b, m));
            }
}

TEST(Identities, SecondBinomialSum)
{
    for (Rational a : random_rationals(11, 5))
        for (long m = 0; m <= 6; ++m)
            for (long n = 0; n <= 6; ++n) {
                Rational brute(0);
                for (long j = 0; j <= m; ++j)
                    brute += oracle_binom(Rational(m), j) * oracle_binom(a, j + n);
                EXPECT_EQ(b3b_sum(m, n, a), brute);
                EXPECT_EQ(brute, oracle_binom(a + m, m + n));
            }
}

TEST(Identities, AndersenHandExample)
{
    EXPECT_EQ(andersen_lhs(frac(1, 2), 2, 1), frac(1, 8));
    EXPECT_EQ(andersen_rhs(frac(1, 2), 2, 1), frac(1, 8));
    for (Rational a : random_rationals(3, 8))
        for (long m = 1; m <= 8; ++m)
            for (long k = 0; k <= m; ++k) {
                Rational lhs(0);
                for (long j = 0; j <= k; ++j)
                    lhs += oracle_binom(a, j) * oracle_binom(-a, m - j);
                EXPECT_EQ(lhs, Rational(m - k) / m * oracle_binom(a - 1, k) * oracle_binom(-a, m - k));
                EXPECT_TRUE(andersen(a, m, k));
            }
    EXPECT_THROW(andersen(frac(1, 2), 0, 0), DomainError);
}

TEST(Identities, KroneckerSums)
{
    for (long m = 1; m <= 8; ++m)
        for (long n = 0; n < m; ++n)
            for (long l = 0; l <= m; ++l) {
                Rational brute(0);
                for (long k = 0; k <= n; ++k)
                    for (long j = 0; j <= m; ++j) {
                        long d = 2 * m - j - n + k;
                        brute += oracle_binom(Rational(-2 * m + n - 1), k) * frac(l, d) *
                                 oracle_binom(Rational(m), j) * oracle_binom(Rational(l - 1), d - 1);
                    }
                EXPECT_EQ(brute, Rational(l == m - n ? 1 : 0)) << m << n << l;
                EXPECT_TRUE(check_b4(m, n, l));
            }
    for (long n = 1; n <= 7; ++n)
        for (long m = n + 1; m < 2 * n; ++m)
            for (long l = 1; l <= n; ++l)
                EXPECT_TRUE(check_b6(m, n, l)) << m << n << l;
    EXPECT_THROW(check_b6(2, 2, 1), DomainError);
}

TEST(Identities, BetaIntegralValue)
{
    for (long m = 0; m <= 10; ++m)
        for (long n = 0; n <= 10; ++n) {
            Rational s(0);
            for (long p = 0; p <= n; ++p)
                s += frac(p % 2 ? -1 : 1, p + m + 1) * oracle_binom(Rational(n), p);
            EXPECT_EQ(s * (n + m + 1) * oracle_binom(Rational(n + m), m), Rational(1));
            EXPECT_TRUE(check_b7(m, n));
        }
}

TEST(Identities, VanishingSumAndLadders)
{
    for (long m = 1; m <= 6; ++m)
        for (long n = m; n <= 7; ++n)
            for (long l = 1; l <= m; ++l)
                for (long k = 1; k <= 4; ++k)
                    EXPECT_TRUE(check_b2(m, n, k, l));
    for (long n = 1; n <= 8; ++n)
        for (long l = 1; l <= n; ++l) {
            Rational first(0);
            for (long j = 0; j < n; ++j)
                first += oracle_binom(Rational(n), j) * frac(l, n - j) * oracle_binom(Rational(-l - 1), n - j - 1);
            EXPECT_EQ(first, Rational(1));
            EXPECT_TRUE(check_b8(n, l));
            EXPECT_TRUE(check_b9(n, l));
        }
    EXPECT_THROW(check_b8(2, 3), DomainError);
}

TEST(Identities, ExponentialSeries)
{
    LaurentSeries plus = b1_series(0, 5, 1);
    for (int e = plus.lo(); e <= 5; ++e)
        EXPECT_EQ(plus.coeff(e), Scalar(e == 0 ? 1 : 0));
    // (e^{kx} + 1)/(e^{kx} - 1) has residue 2/k
    LaurentSeries minus = b1_series(0, 5, -1);
    EXPECT_EQ(minus.coeff(-1), Scalar(2) * Scalar::kappa(-1));
    for (int n = 0; n <= 5; ++n)
        EXPECT_TRUE(check_b1(n, 6)) << n;
}

TEST(Identities, RandomRationalsAreNonIntegers)
{
    std::vector<Rational> r = random_rationals(42, 50);
    EXPECT_EQ(r.size(), 50u);
    for (const Rational &x : r) {
        EXPECT_FALSE(is_integer(x));
        EXPECT_LE(x.get_den(), 12);
    }
    EXPECT_EQ(random_rationals(42, 50), r);
}

TEST(Identities, SmallSweepHasNoFailures)
{
    Report rep = appendix_b_sweep(6, 1, 4);
    EXPECT_EQ(rep.count(Status::Fail), 0);
    EXPECT_GT(rep.count(Status::Pass), 0);
}
