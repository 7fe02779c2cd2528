#include <pseudotrace/series.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace pt;

namespace
{

Scalar k(int e)
{
    return Scalar::kappa(e);
}

// power series inverse by long division, independent of the library routine
std::vector<Scalar> series_inverse(const std::vector<Scalar> &a, int n)
{
    std::vector<Scalar> b(n + 1);
    Scalar inv0 = a[0].inverse();
    b[0] = inv0;
    for (int i = 1; i <= n; ++i) {
        Scalar acc;
        for (int j = 1; j <= i && j < static_cast<int>(a.size()); ++j)
            acc += a[j] * b[i - j];
        b[i] = -(acc * inv0);
    }
    return b;
}

} // namespace

TEST(Scalar, ArithmeticInLaurentPolynomials)
{
    Scalar a = Scalar(1) + k(1);
    Scalar b = Scalar(1) - k(1);
    EXPECT_EQ(a * b, Scalar(1) - k(2));
    EXPECT_EQ(k(3) * k(-3), Scalar(1));
    EXPECT_EQ((Scalar(frac(2, 3)) * k(-2)).inverse(), Scalar(frac(3, 2)) * k(2));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_TRUE(Scalar(frac(5, 7)).is_rational());
    EXPECT_FALSE(a.is_rational());
    EXPECT_EQ(a.coeff(1), Rational(1));
    EXPECT_EQ(a.min_exponent(), 0);
    EXPECT_EQ(a.max_exponent(), 1);
}

TEST(Scalar, InverseOfNonMonomialThrows)
{
    EXPECT_ANY_THROW((Scalar(1) + k(1)).inverse());
}

TEST(Scalar, PiSquaredAndEvaluation)
{
    std::complex<double> v = Scalar::pi_squared().eval();
    EXPECT_NEAR(v.real(), M_PI * M_PI, 1e-12);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
    std::complex<double> kv = k(1).eval();
    EXPECT_NEAR(kv.imag(), 2 * M_PI, 1e-12);
}

TEST(Scalar, ParseRoundTrip)
{
    Scalar s = Scalar(frac(-3, 4)) * k(-2) + Scalar(7) + Scalar(frac(1, 720)) * k(4);
    EXPECT_EQ(Scalar::parse(s.str()), s);
    EXPECT_EQ(Scalar::parse("1/2*k^2 - 3"), Scalar(frac(1, 2)) * k(2) - Scalar(3));
    EXPECT_EQ(Scalar::parse("k"), k(1));
    EXPECT_ANY_THROW(Scalar::parse("1/2*z"));
}

TEST(Laurent, WindowIsEnforced)
{
    LaurentSeries e = exp_series(Scalar(1), 5);
    EXPECT_EQ(e.coeff(5), Scalar(frac(1, 120)));
    EXPECT_EQ(e.coeff(-3), Scalar());
    EXPECT_THROW(e.coeff(6), WindowError);
    LaurentSeries p = LaurentSeries::polynomial({{0, Scalar(1)}, {2, Scalar(3)}});
    EXPECT_TRUE(p.exact());
    EXPECT_EQ(p.coeff(100), Scalar());
}

TEST(Laurent, ProductTracksPrecision)
{
    LaurentSeries a = exp_series(k(1), 6);
    LaurentSeries b = exp_series(-k(1), 6);
    LaurentSeries c = a * b;
    EXPECT_EQ(c.hi(), 6);
    for (int i = 1; i <= 6; ++i)
        EXPECT_TRUE(c.coeff(i).is_zero()) << i;
    EXPECT_EQ(c.coeff(0), Scalar(1));
    LaurentSeries s = LaurentSeries::monomial(Scalar(1), -2) * a;
    EXPECT_EQ(s.lo(), -2);
    EXPECT_EQ(s.hi(), 4);
}

TEST(Laurent, LogOfExpIsIdentity)
{
    LaurentSeries inner = exp_series(Scalar(1), 8) - LaurentSeries::constant(Scalar(1));
    LaurentSeries r = substitute(log1p_series(8), inner);
    for (int i = 0; i <= std::min(8, r.hi()); ++i)
        EXPECT_EQ(r.coeff(i), Scalar(i == 1 ? 1 : 0)) << i;
}

TEST(Laurent, Expm1InverseAgainstLongDivision)
{
    const int n = 7;
    // e^{kx} - 1 = kx * sum_j k^j x^j / (j+1)!
    std::vector<Scalar> g(n + 2);
    for (int j = 0; j <= n + 1; ++j)
        g[j] = Scalar(1 / factorial(j + 1)) * k(j);
    std::vector<Scalar> ginv = series_inverse(g, n + 1);
    LaurentSeries lib = expm1_inverse_power(1, n);
    for (int e = -1; e <= n; ++e)
        EXPECT_EQ(lib.coeff(e), ginv[e + 1] * k(-1)) << e;
    LaurentSeries sq = expm1_inverse_power(2, n);
    LaurentSeries prod = lib * lib;
    for (int e = -2; e <= std::min(n, prod.hi()); ++e)
        EXPECT_EQ(sq.coeff(e), prod.coeff(e)) << e;
    LaurentSeries pos = expm1_power(2, n);
    for (int e = 0; e <= n; ++e) {
        Scalar want = e < 2 ? Scalar() : Scalar(Rational((Integer(1) << e) - 2) / factorial(e)) * k(e);
        EXPECT_EQ(pos.coeff(e), want) << e;
    }
}

TEST(Laurent, ResidueAndDerivative)
{
    LaurentSeries s = LaurentSeries::polynomial({{-3, Scalar(2)}, {-1, Scalar(5)}, {2, Scalar(1)}});
    EXPECT_EQ(residue(s), Scalar(5));
    LaurentSeries d = s.derivative();
    EXPECT_EQ(d.coeff(-4), Scalar(-6));
    EXPECT_EQ(d.coeff(-2), Scalar(-5));
    EXPECT_EQ(d.coeff(1), Scalar(2));
    EXPECT_TRUE(residue(d).is_zero());
}

TEST(Laurent, BinomialPowerSquaresBack)
{
    LaurentSeries base = LaurentSeries::polynomial({{0, Scalar(1)}, {1, Scalar(1)}});
    LaurentSeries half = binom_pow(base, frac(1, 2), 10);
    LaurentSeries sq = half * half;
    for (int e = 0; e <= 10; ++e)
        EXPECT_EQ(sq.coeff(e), Scalar(e <= 1 ? 1 : 0)) << e;
    LaurentSeries third = binom_pow(base, Rational(3));
    EXPECT_EQ(third.coeff(2), Scalar(3));
    EXPECT_EQ(third.coeff(4), Scalar());
}

TEST(Laurent, InverseAndPow)
{
    LaurentSeries s = LaurentSeries(1, 9, {{1, Scalar(2)}, {2, Scalar(1)}});
    LaurentSeries inv = s.inverse();
    LaurentSeries one = s * inv;
    for (int e = 0; e <= one.hi(); ++e)
        EXPECT_EQ(one.coeff(e), Scalar(e == 0 ? 1 : 0)) << e;
    LaurentSeries cube = s.pow(3);
    LaurentSeries direct = s * s * s;
    EXPECT_TRUE(cube.agrees_with(direct));
}

TEST(Laurent, JsonRoundTrip)
{
    LaurentSeries s = expm1_inverse_power(2, 4);
    LaurentSeries back = laurent_from_json(to_json(s));
    EXPECT_EQ(back.lo(), s.lo());
    EXPECT_EQ(back.hi(), s.hi());
    EXPECT_TRUE(back.agrees_with(s));
}

TEST(QLog, BlocksAndDerivative)
{
    auto [r, n] = QLogSeries::split_exponent(frac(7, 3));
    EXPECT_EQ(r, frac(1, 3));
    EXPECT_EQ(n, 2);
    auto [r2, n2] = QLogSeries::split_exponent(frac(-1, 24));
    EXPECT_EQ(r2, frac(23, 24));
    EXPECT_EQ(n2, -1);

    QLogSeries s;
    s.add_term(0, frac(3, 2), Scalar(4));
    s.add_term(1, frac(-1, 24), Scalar(1));
    QLogSeries d = s.qddq();
    EXPECT_EQ(d.coeff(0, frac(3, 2)), Scalar(6));
    // q d/dq (log q q^r) = q^r + r log q q^r
    EXPECT_EQ(d.coeff(0, frac(-1, 24)), Scalar(1));
    EXPECT_EQ(d.coeff(1, frac(-1, 24)), Scalar(frac(-1, 24)));
    EXPECT_EQ(d.max_log_power(), 1);
    QLogSeries sh = s.shifted(2);
    EXPECT_EQ(sh.coeff(0, frac(7, 2)), Scalar(4));
    EXPECT_TRUE((s - s).is_zero());
}
