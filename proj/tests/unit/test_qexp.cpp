#include <pseudotrace/qexp.hpp>

#include <gtest/gtest.h>

using namespace pt;

namespace
{

Integer brute_sigma(long l, int k)
{
    Integer s = 0;
    for (long d = 1; d <= l; ++d)
        if (l % d == 0) {
            Integer p = 1;
            for (int i = 0; i < k; ++i)
                p *= d;
            s += p;
        }
    return s;
}

Scalar kp(int e)
{
    return Scalar::kappa(e);
}

// x^a coefficient of k^2 sum_{l | s} l (e^{lkx} + e^{-lkx}) - 2 k^2 sigma(s)
Scalar wp2_row_oracle(int s, int a)
{
    Scalar acc;
    if (a % 2 == 0) {
        for (long l = 1; l <= s; ++l)
            if (s % l == 0) {
                Rational c = Rational(2 * l) / factorial(a);
                for (int i = 0; i < a; ++i)
                    c *= l;
                acc += Scalar(c) * kp(a + 2);
            }
    }
    if (a == 0)
        acc -= Scalar(Rational(2 * brute_sigma(s, 1))) * kp(2);
    return acc;
}

// power series coefficients of y / (e^y - 1)
std::vector<Rational> bernoulli_gf(int n)
{
    std::vector<Rational> a(n + 1), b(n + 1);
    for (int j = 0; j <= n; ++j)
        a[j] = 1 / factorial(j + 1);
    b[0] = 1;
    for (int i = 1; i <= n; ++i) {
        Rational acc = 0;
        for (int j = 1; j <= i; ++j)
            acc += a[j] * b[i - j];
        b[i] = -acc;
    }
    return b;
}

} // namespace

TEST(Sigma, AgainstDivisorEnumeration)
{
    EXPECT_EQ(sigma(1), 1);
    EXPECT_EQ(sigma(6), 12);
    EXPECT_EQ(sigma_k(2, 3), 9);
    for (long l = 1; l <= 60; ++l) {
        EXPECT_EQ(sigma(l), brute_sigma(l, 1)) << l;
        EXPECT_EQ(sigma_k(l, 3), brute_sigma(l, 3)) << l;
        EXPECT_EQ(sigma_k(l, 5), brute_sigma(l, 5)) << l;
    }
}

TEST(Bernoulli, AgainstGeneratingFunction)
{
    std::vector<Rational> gf = bernoulli_gf(14);
    for (int n = 0; n <= 14; ++n)
        EXPECT_EQ(bernoulli(n), gf[n] * factorial(n)) << n;
    EXPECT_EQ(bernoulli(1), frac(-1, 2));
    EXPECT_EQ(bernoulli(12), frac(-691, 2730));
}

TEST(Eisenstein, ClassicalCoefficients)
{
    LaurentSeries g4 = eisenstein_qexp(4, 10);
    EXPECT_EQ(g4.coeff(0), Scalar(frac(1, 720)) * kp(4));
    for (int n = 1; n <= 10; ++n)
        EXPECT_EQ(g4.coeff(n), Scalar(Rational(brute_sigma(n, 3)) / 3) * kp(4)) << n;
    LaurentSeries g6 = eisenstein_qexp(6, 10);
    // 2 zeta(6) = 2 pi^6 / 945 and pi^6 = -k^6 / 64
    EXPECT_EQ(g6.coeff(0), Scalar(frac(-1, 30240)) * kp(6));
    for (int n = 1; n <= 10; ++n)
        EXPECT_EQ(g6.coeff(n), Scalar(Rational(brute_sigma(n, 5)) / 60) * kp(6)) << n;
    LaurentSeries g2 = eisenstein_g2(6);
    EXPECT_EQ(g2.coeff(0), Scalar(frac(-1, 12)) * kp(2));
    for (int n = 1; n <= 6; ++n)
        EXPECT_EQ(g2.coeff(n), Scalar(Rational(2 * brute_sigma(n, 1))) * kp(2)) << n;
    EXPECT_THROW(g4.coeff(11), WindowError);
}

TEST(Kernels, TildeWp2Rows)
{
    DoubleSeries t = tilde_wp2(6, 5);
    EXPECT_EQ(t.coeff(-2, 0), Scalar(1));
    EXPECT_EQ(t.coeff(0, 1), Scalar());
    for (int s = 1; s <= 5; ++s)
        for (int a = -2; a <= 6; ++a)
            EXPECT_EQ(t.coeff(a, s), a < 0 ? Scalar() : wp2_row_oracle(s, a)) << a << " " << s;
    // q^0 row: k^2 e^{kx} (e^{kx} - 1)^{-2} + k^2/12 = x^{-2} - k^2 sum_{j >= 2} (j - 1) B_j (kx)^{j-2} / j! + k^2/12
    std::vector<Rational> gf = bernoulli_gf(8);
    for (int a = -1; a <= 6; ++a) {
        Scalar want;
        if (a >= 0) {
            int j = a + 2;
            want = Scalar(-Rational(j - 1) * gf[j]) * kp(a + 2);
            if (a == 0)
                want += Scalar(frac(1, 12)) * kp(2);
        }
        EXPECT_EQ(t.coeff(a, 0), want) << a;
    }
}

TEST(Kernels, TildeWp1Rows)
{
    DoubleSeries t = tilde_wp1_minus_g2x(5, 4);
    EXPECT_EQ(t.coeff(-1, 0), Scalar(1));
    EXPECT_EQ(t.coeff(0, 0), Scalar());
    for (int s = 0; s <= 4; ++s)
        for (int a = 0; a <= 5; a += 2)
            EXPECT_EQ(t.coeff(a, s), Scalar()) << a << " " << s;
}

TEST(Kernels, Expansions)
{
    DoubleSeries w2 = wp2_x_expansion(6, 4);
    DoubleSeries w1 = wp1_x_expansion(7, 4);
    LaurentSeries g4 = eisenstein_qexp(4, 4);
    LaurentSeries g6 = eisenstein_qexp(6, 4);
    LaurentSeries g2 = eisenstein_g2(4);
    for (int s = 0; s <= 4; ++s) {
        EXPECT_EQ(w2.coeff(-2, s), Scalar(s == 0 ? 1 : 0));
        EXPECT_EQ(w2.coeff(1, s), Scalar());
        EXPECT_EQ(w2.coeff(2, s), Scalar(3) * g4.coeff(s));
        EXPECT_EQ(w2.coeff(4, s), Scalar(5) * g6.coeff(s));
        EXPECT_EQ(w1.coeff(-1, s), Scalar(s == 0 ? 1 : 0));
        EXPECT_EQ(w1.coeff(1, s), -g2.coeff(s));
        EXPECT_EQ(w1.coeff(3, s), -g4.coeff(s));
    }
}

TEST(Kernels, LemmaA1AndNegativeControl)
{
    EXPECT_TRUE(lemma_a1_check_wp2(6, 6).ok());
    EXPECT_TRUE(lemma_a1_check_wp1(3, 6).ok());
    LemmaA1Report bad = lemma_a1_check_wp2(6, 6, Scalar(1));
    EXPECT_FALSE(bad.ok());
    EXPECT_FALSE(lemma_a1_check_wp1(4, 4, Scalar(1)).ok());
    EXPECT_TRUE(wp_derivative_relation(6, 5));
}

TEST(Kernels, RowsMatchDoubleSeries)
{
    DoubleSeries t2 = tilde_wp2(5, 3);
    DoubleSeries t1 = tilde_wp1_minus_g2x(5, 3);
    for (int s = 0; s <= 3; ++s) {
        LaurentSeries r2 = tilde_wp2_row(s, 5), r1 = tilde_wp1_row(s, 5);
        for (int a = -2; a <= 5; ++a) {
            EXPECT_EQ(r2.coeff(a), t2.coeff(a, s));
            EXPECT_EQ(r1.coeff(a), t1.coeff(a, s));
        }
    }
}

TEST(Modular, NumericTransformation)
{
    for (int two_k : {4, 6})
        for (std::complex<double> tau : {std::complex<double>(0, 2), std::complex<double>(1, 2)}) {
            ModularCheck m = modular_numeric_check(two_k, tau, 40);
            EXPECT_LT(m.residual, 1e-6) << two_k;
        }
    EXPECT_THROW(modular_numeric_check(4, std::complex<double>(0, 0.1), 40), ConvergenceDomainError);
}

TEST(Modular, SeriesEvaluation)
{
    LaurentSeries s = LaurentSeries::polynomial({{0, Scalar(1)}, {1, Scalar(2)}, {2, Scalar(frac(1, 2)) * kp(2)}});
    std::complex<double> q(0.1, 0.05);
    std::complex<double> k(0, 2 * M_PI);
    std::complex<double> want = 1.0 + 2.0 * q + 0.5 * k * k * q * q;
    EXPECT_NEAR(std::abs(eval_q_series(s, q) - want), 0.0, 1e-12);
}
