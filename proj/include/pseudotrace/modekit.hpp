#ifndef PSEUDOTRACE_MODEKIT_HPP
#define PSEUDOTRACE_MODEKIT_HPP

#include <pseudotrace/algkit.hpp>
#include <pseudotrace/linalg.hpp>
#include <pseudotrace/report.hpp>
#include <pseudotrace/series.hpp>

#include "json.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pt
{

using Vec = std::vector<Scalar>;
using SMat = std::vector<std::vector<Scalar>>;

Vec to_vec(const RVec &v);
Vec vec_zero(std::size_t n);
Vec vec_add(const Vec &a, const Vec &b);
Vec vec_sub(const Vec &a, const Vec &b);
Vec vec_scale(const Vec &a, const Scalar &s);
bool vec_is_zero(const Vec &v);
Vec smat_apply(const SMat &m, const Vec &v);
Vec rmat_apply(const RMat &m, const Vec &v);
SMat smat_mul(const SMat &a, const SMat &b);
SMat smat_identity(std::size_t n);
SMat to_smat(const RMat &m);
nlohmann::json vec_to_json(const Vec &v);

// Vector-valued truncated Laurent series in x: coefficients below lo vanish,
// coefficients above hi are unknown and reading them raises TruncationOverflow.
class VSeries
{
public:
    VSeries() = default;
    VSeries(std::size_t dim, int lo, int hi) : dim_(dim), lo_(lo), hi_(hi) {}

    std::size_t dim() const
    {
        return dim_;
    }
    int lo() const
    {
        return lo_;
    }
    int hi() const
    {
        return hi_;
    }
    const std::map<int, Vec> &coeffs() const
    {
        return c_;
    }
    Vec coeff(int e) const;
    void add(int e, const Vec &v);
    int valuation() const;

    VSeries truncated(int hi) const;
    VSeries reflected() const; // x -> -x
    VSeries mapped(const SMat &m) const;
    VSeries &operator+=(const VSeries &o);
    VSeries &operator*=(const Scalar &s);

private:
    std::size_t dim_ = 0;
    int lo_ = 0;
    int hi_ = kExact;
    std::map<int, Vec> c_;
};

// product of a scalar series with a vector series, truncated at cap
VSeries multiply(const LaurentSeries &s, const VSeries &v, int cap = kExact);
// Res_x K(x) F(x)
Vec kernel_residue(const LaurentSeries &kernel, const VSeries &f);
// F(inner(x)) for an inner series with zero constant term and invertible linear term, through x^order
VSeries substitute(const VSeries &outer, const LaurentSeries &inner, int order);
// sum_k x^k ops[k] applied coefficientwise
VSeries apply_operator_series(const std::vector<SMat> &ops, const VSeries &v, int cap);

// Truncated graded vertex algebra V_(0) + ... + V_(D) given by its mode matrices.
class VertexData
{
public:
    static VertexData heisenberg(int D);
    static VertexData trivial();
    static VertexData from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;

    const std::string &name() const
    {
        return name_;
    }
    int cutoff() const
    {
        return D_;
    }
    // true when V has no states above the cutoff, so every window is exact
    bool complete() const
    {
        return complete_;
    }
    std::size_t dim() const
    {
        return weights_.size();
    }
    const std::vector<int> &dims() const
    {
        return dims_;
    }
    int weight(std::size_t i) const
    {
        return weights_[i];
    }
    std::vector<std::size_t> basis_of_weight(int k) const;
    std::vector<std::size_t> basis_up_to_weight(int k) const;
    const std::string &label(std::size_t i) const
    {
        return labels_[i];
    }
    const Rational &central_charge() const
    {
        return c_;
    }
    Vec vacuum() const;
    Vec omega() const;
    Vec basis_vec(std::size_t i) const;
    // largest weight carrying a nonzero component, -1 for the zero vector
    int top_weight(const Vec &v) const;
    Vec weight_component(const Vec &v, int k) const;

    // u_n for the basis vector u = e_a; zero outside the stored range
    const RMat &mode(std::size_t a, int n) const;
    RMat mode_of(const RVec &u, int n) const;
    // L(n) = omega_{n+1}
    const RMat &L(int n) const;
    SMat Lmat(int n) const;

    // Y(u, x) w
    VSeries Y(const Vec &u, const Vec &w) const;
    VSeries Y_basis(std::size_t a, std::size_t b) const;
    // sum over weights h of u of factor(h) Y(u_h, x) w
    VSeries Y_weighted(const Vec &u, const Vec &w, const std::function<LaurentSeries(int)> &factor, int cap) const;

    const SMat &U1() const
    {
        return u1_;
    }
    const SMat &U1_inverse() const
    {
        return u1_inv_;
    }

    // throws ValidationError with the first violated law
    void validate() const;

private:
    void finalize();

    std::string name_;
    int D_ = 0;
    bool complete_ = false;
    std::vector<int> dims_;
    std::vector<int> weights_;
    std::vector<std::string> labels_;
    Rational c_;
    RVec vacuum_;
    RVec omega_;
    std::map<std::pair<std::size_t, int>, RMat> modes_;
    std::map<int, RMat> L_;
    RMat zero_;
    SMat u1_;
    SMat u1_inv_;
};

// A_1, ..., A_J
std::vector<Scalar> compute_A_coeffs(int J);
// (1/k) log(1 + k y) - exp(sum_j A_j y^{j+1} d/dy) y through y^order
LaurentSeries A_coeffs_residual(const std::vector<Scalar> &A, int order);
SMat u1_operator(const VertexData &V, int upto_weight);

// U(1) Y(v, k^{-1} log(1+x)) w against Y((1+x)^{L(0)} U(1) v, x) U(1) w on the common known window
struct VopComparison {
    bool ok = true;
    int x_lo = 0;
    int x_hi = -1;
    int first_mismatch = 0;
};
VopComparison u1_vop_check(const VertexData &V, const Vec &v, const Vec &w);

// Y(u, sign k^{-1} log(1+x)) w through x^order
VSeries Y_log(const VertexData &V, const Vec &u, const Vec &w, int sign, int order);
// (1+x)^p, exact for p >= 0 and through x^order otherwise
LaurentSeries one_plus_x_pow(long p, int order);

Vec star_n(const VertexData &V, const Vec &u, const Vec &w, int N);
Vec star_n_right(const VertexData &V, const Vec &w, const Vec &u, int N);
Vec bullet_n(const VertexData &V, const Vec &u, const Vec &v, int N);

enum class Flavor { Plain, Tilde };
enum class Side { Left, Right };

struct UMatrix {
    std::map<std::pair<int, int>, Vec> entries;

    static UMatrix single(int k, int l, const Vec &v);
    void add(int k, int l, const Vec &v);
    UMatrix mapped(const SMat &m) const;
    bool operator==(const UMatrix &o) const;
    nlohmann::json to_json() const;
};

// left: mu over V acting on mv; right: mu over W = V acted on by mv
UMatrix diamond(const VertexData &V, const UMatrix &mu, const UMatrix &mv, Flavor flavor, Side side);
// [a]_{kn} times [b]_{nl} for one matching inner index
Vec diamond_entry(const VertexData &V, int k, int n, int l, const Vec &a, const Vec &b, Flavor flavor, Side side);

// Span over Q(k) of vectors with Scalar coordinates. With rescale set, the weight-j
// coordinate is multiplied by k^j first; every generator must then be a single power
// of k times a rational vector.
class KappaSpan
{
public:
    KappaSpan() = default;
    KappaSpan(const VertexData &V, bool rescale);
    void add(const Vec &v);
    bool contains(const Vec &v) const;
    std::size_t dim() const
    {
        return span_.dim();
    }
    const Subspace &rational() const
    {
        return span_;
    }
    // coordinates are ordered by descending weight inside the rational span
    RVec to_rational(const Vec &v) const;
    std::vector<RVec> components(const Vec &v) const;
    Vec from_rational(const RVec &r) const;

private:
    std::vector<int> weights_;
    std::vector<std::size_t> order_; // position -> basis index
    bool rescale_ = false;
    Subspace span_;
};

struct OSpan {
    Flavor flavor = Flavor::Plain;
    int N = 0;
    int weight_bound = 0;
    std::vector<Vec> generators;
    KappaSpan span;
};

OSpan o_n_span(const VertexData &V, int N, int weight_bound, Flavor flavor);

struct ModeQuotient {
    Flavor flavor = Flavor::Plain;
    int N = 0;
    int weight_bound = 0;
    OSpan ospan;
    std::vector<std::size_t> reps; // basis indices of the coset representatives
    // products of representatives reduced onto the representatives; absent when not validated
    std::map<std::pair<std::size_t, std::size_t>, RVec> table;
    bool closed = false;
    std::optional<FinDimAlgebra> algebra;
    std::string note;
    nlohmann::json to_json() const;
};

ModeQuotient quotient_algebra(const VertexData &V, int N, int weight_bound, Flavor flavor);

// transition operator, unit, centrality, conjugation and span checks on validated windows
Report modekit_suite(const VertexData &V, int diamond_N_max = 2);

} // namespace pt

#endif
