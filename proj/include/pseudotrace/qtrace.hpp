#ifndef PSEUDOTRACE_QTRACE_HPP
#define PSEUDOTRACE_QTRACE_HPP

#include <pseudotrace/algkit.hpp>
#include <pseudotrace/modekit.hpp>
#include <pseudotrace/report.hpp>
#include <pseudotrace/series.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace pt
{

// Trace data over W = V. Without P the pseudo-trace is the ordinary graded trace.
class TraceContext
{
public:
    explicit TraceContext(const VertexData &V);
    // p_action[i] is the matrix of w -> w e_i on V; it must preserve weights and commute with every mode
    TraceContext(const VertexData &V, FinDimAlgebra P, SLF phi, std::vector<RMat> p_action);

    const VertexData &data() const
    {
        return *V_;
    }
    int K() const
    {
        return 0;
    }
    // r = -c/24
    Rational offset() const;
    // largest q-order whose coefficients are exact
    int max_q_order() const;
    // phi-pseudo-trace of o(e_a) on V_(n)
    const Rational &mode_trace(std::size_t a, int n) const
    {
        return traces_[a][n];
    }

private:
    const VertexData *V_;
    std::vector<std::vector<Rational>> traces_;
};

// sum_n Tr_{V_(n)} o(U(1) w) q^{n - c/24} through q^{r + q_order}
QLogSeries shifted_trace(const TraceContext &ctx, const Vec &w, int q_order);

using OnePointMap = std::function<QLogSeries(const Vec &w, int q_order)>;
OnePointMap trace_map(const TraceContext &ctx);
// w -> sum_n f_n(w) q^{r+n} with random integer functionals f_n; violates the block conditions
OnePointMap random_one_point_map(const VertexData &V, std::uint64_t seed);

// coefficient of (log q)^k q^{r+n}
Scalar S_component(const QLogSeries &s, const Rational &r, int k, int n);

QLogSeries check_condition_vacuum(const OnePointMap &S, const VertexData &V, const Vec &v, const Vec &w, int q_order);
// drop_sigma removes the constant -2 k^2 sigma(s) q^s part of the kernel
QLogSeries check_condition_wp2(const OnePointMap &S, const VertexData &V, const Vec &v, const Vec &w, int q_order,
                               bool drop_sigma = false);
QLogSeries check_condition_derivative(const OnePointMap &S, const VertexData &V, const Vec &w, int q_order);

// Res_x e^{(m+1) k x} (e^{k x} - 1)^p Y(v, sign x) w
Vec exp_kernel_residue(const VertexData &V, int m, int p, const Vec &v, const Vec &w, int sign);

// left minus right side of the two operator identities, per q-power
std::vector<Vec> mod_inv6_difference(const VertexData &V, const Vec &w, int q_order);
std::vector<Vec> mod_inv7_difference(const VertexData &V, const Vec &u, const Vec &w, int q_order);
Report verify_operator_identities(const VertexData &V, const Vec &w, int q_order);

// left minus right side; throws TruncationOverflow outside the window
Vec lemma_1_1_difference(const VertexData &V, int m, int n, const Vec &v, const Vec &w, int sign);
bool verify_lemma_1_1(const VertexData &V, int m, int n, const Vec &v, const Vec &w, int sign);

Scalar main_lemma_3_value(const OnePointMap &S, const TraceContext &ctx, int m, int n, int p, const Vec &v,
                          const Vec &w);
Scalar main_lemma_4_difference(const OnePointMap &S, const TraceContext &ctx, int m, int n, const Vec &v,
                               const Vec &w);
Scalar grading_slf_difference(const OnePointMap &S, const TraceContext &ctx, int k, int n, const Vec &w);

// basis vectors of weight <= max_weight, used as the v, w grid of the suites
std::vector<std::size_t> trace_grid(const VertexData &V, int max_weight);

Report blocks_suite(const TraceContext &ctx, int q_order, std::uint64_t seed = 0);
Report lemma11_suite(const VertexData &V, int n_max);
Report derived_suite(const TraceContext &ctx, int n_max);

} // namespace pt

#endif
