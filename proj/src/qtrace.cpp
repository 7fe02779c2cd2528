#include <pseudotrace/qexp.hpp>
#include <pseudotrace/qtrace.hpp>

#include <algorithm>

namespace pt
{

namespace
{

RMat block(const RMat &m, const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols)
{
    RMat out = zeros(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out[i][j] = m[rows[i]][cols[j]];
    return out;
}

bool preserves_weights(const VertexData &V, const RMat &m)
{
    for (std::size_t i = 0; i < V.dim(); ++i)
        for (std::size_t j = 0; j < V.dim(); ++j)
            if (m[i][j] != 0 && V.weight(i) != V.weight(j))
                return false;
    return true;
}

int top(const VertexData &V, const Vec &v)
{
    return std::max(V.top_weight(v), 0);
}

void require_window(const VertexData &V, int needed, const std::string &what)
{
    if (!V.complete() && needed > V.cutoff())
        throw TruncationOverflow(what + " needs weight " + std::to_string(needed) + " above the cutoff " +
                                 std::to_string(V.cutoff()));
}

// sum_a u_a (e_a)_n w
Vec mode_apply(const VertexData &V, const Vec &u, int n, const Vec &w)
{
    Vec acc(V.dim());
    for (std::size_t a = 0; a < u.size(); ++a)
        if (!u[a].is_zero())
            acc = vec_add(acc, vec_scale(rmat_apply(V.mode(a, n), w), u[a]));
    return acc;
}

LaurentSeries eisenstein(int two_k, int q_order)
{
    return two_k == 2 ? eisenstein_g2(q_order) : eisenstein_qexp(two_k, q_order);
}

std::string pair_label(const VertexData &V, std::size_t a, std::size_t b)
{
    return "v=" + V.label(a) + ",w=" + V.label(b);
}

} // namespace

TraceContext::TraceContext(const VertexData &V) : V_(&V)
{
    traces_.assign(V.dim(), std::vector<Rational>(V.cutoff() + 1));
    for (std::size_t a = 0; a < V.dim(); ++a) {
        const RMat &m = V.mode(a, V.weight(a) - 1);
        for (std::size_t i = 0; i < V.dim(); ++i)
            traces_[a][V.weight(i)] += m[i][i];
    }
}

TraceContext::TraceContext(const VertexData &V, FinDimAlgebra P, SLF phi, std::vector<RMat> p_action) : V_(&V)
{
    if (p_action.size() != P.dim())
        throw ValidationError("one action matrix per basis vector of P is required");
    for (const auto &act : p_action) {
        if (!preserves_weights(V, act))
            throw ValidationError("P-action does not preserve weights");
        for (std::size_t a = 0; a < V.dim(); ++a)
            for (int n = V.weight(a) - 1 - V.cutoff(); n <= V.weight(a) - 1 + V.cutoff(); ++n) {
                const RMat &m = V.mode(a, n);
                if (matmul(m, act) != matmul(act, m))
                    throw ValidationError("P-action does not commute with the mode " + V.label(a) + "_(" +
                                          std::to_string(n) + ")");
            }
    }
    traces_.assign(V.dim(), std::vector<Rational>(V.cutoff() + 1));
    for (int n = 0; n <= V.cutoff(); ++n) {
        std::vector<std::size_t> idx = V.basis_of_weight(n);
        if (idx.empty())
            continue;
        RightModule M;
        M.dim = idx.size();
        for (const auto &act : p_action)
            M.action.push_back(block(act, idx, idx));
        M.validate(P);
        ProjectiveBasis pb = projectivity_and_basis(P, M);
        for (std::size_t a = 0; a < V.dim(); ++a)
            traces_[a][n] = pseudo_trace(phi, pb, block(V.mode(a, V.weight(a) - 1), idx, idx));
    }
}

Rational TraceContext::offset() const
{
    return -V_->central_charge() / 24;
}

int TraceContext::max_q_order() const
{
    return V_->complete() ? (1 << 20) : V_->cutoff();
}

QLogSeries shifted_trace(const TraceContext &ctx, const Vec &w, int q_order)
{
    if (q_order > ctx.max_q_order())
        throw TruncationOverflow("q-order " + std::to_string(q_order) + " needs graded pieces above the cutoff");
    const VertexData &V = ctx.data();
    Vec u = smat_apply(V.U1(), w);
    Rational r = ctx.offset();
    QLogSeries S;
    S.declare(r, 0, 0, q_order);
    for (int n = 0; n <= std::min(q_order, V.cutoff()); ++n) {
        Scalar c;
        for (std::size_t a = 0; a < u.size(); ++a)
            if (!u[a].is_zero() && ctx.mode_trace(a, n) != 0)
                c += u[a] * ctx.mode_trace(a, n);
        S.add_term(0, r + n, c);
    }
    return S;
}

OnePointMap trace_map(const TraceContext &ctx)
{
    return [&ctx](const Vec &w, int q_order) { return shifted_trace(ctx, w, q_order); };
}

OnePointMap random_one_point_map(const VertexData &V, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    int rows = V.complete() ? 1 : V.cutoff() + 1;
    std::vector<RVec> f;
    for (int n = 0; n < rows; ++n)
        f.push_back(random_integer_vector(rng, V.dim(), 5));
    Rational r = -V.central_charge() / 24;
    return [f, r](const Vec &w, int q_order) {
        QLogSeries S;
        S.declare(r, 0, 0, q_order);
        for (int n = 0; n <= q_order && n < static_cast<int>(f.size()); ++n) {
            Scalar c;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (!w[i].is_zero())
                    c += w[i] * f[n][i];
            S.add_term(0, r + n, c);
        }
        return S;
    };
}

Scalar S_component(const QLogSeries &s, const Rational &r, int k, int n)
{
    return s.coeff(k, r + n);
}

QLogSeries check_condition_vacuum(const OnePointMap &S, const VertexData &V, const Vec &v, const Vec &w, int q_order)
{
    Vec u = kernel_residue(LaurentSeries::monomial(Scalar(1), 0), V.Y(v, w));
    return S(u, q_order);
}

QLogSeries check_condition_wp2(const OnePointMap &S, const VertexData &V, const Vec &v, const Vec &w, int q_order,
                               bool drop_sigma)
{
    require_window(V, top(V, v) + top(V, w) + 1, "wp2 condition");
    int x_hi = std::max(top(V, v) + top(V, w) - 1, 0);
    VSeries F = V.Y(v, w);
    QLogSeries acc;
    for (int s = 0; s <= q_order; ++s) {
        LaurentSeries row = tilde_wp2_row(s, x_hi);
        if (drop_sigma && s >= 1)
            row += LaurentSeries::constant(Scalar::kappa(2) * Rational(2 * sigma(s)), x_hi);
        acc += S(kernel_residue(row, F), q_order - s).shifted(s);
    }
    return acc;
}

QLogSeries check_condition_derivative(const OnePointMap &S, const VertexData &V, const Vec &w, int q_order)
{
    require_window(V, top(V, w) + 2, "derivative condition");
    int x_hi = top(V, w) + 1;
    VSeries F = V.Y(V.omega(), w);
    QLogSeries acc = S(w, q_order).qddq() * Scalar::kappa(2);
    for (int s = 0; s <= q_order; ++s)
        acc -= S(kernel_residue(tilde_wp1_row(s, x_hi), F), q_order - s).shifted(s);
    return acc;
}

Vec exp_kernel_residue(const VertexData &V, int m, int p, const Vec &v, const Vec &w, int sign)
{
    VSeries F = V.Y(v, w);
    if (sign < 0)
        F = F.reflected();
    int H = std::max(-1 - F.lo(), p);
    int ord = H - std::min(p, 0);
    LaurentSeries K = exp_series(Scalar::kappa(1) * Rational(m + 1), ord) * expm1_power(p, ord);
    return kernel_residue(K, F);
}

std::vector<Vec> mod_inv6_difference(const VertexData &V, const Vec &w, int q_order)
{
    require_window(V, top(V, w) + 2, "mod-inv-6");
    int x_hi = top(V, w) + 1;
    VSeries F = V.Y(V.omega(), w);
    DoubleSeries ker = wp1_x_expansion(x_hi, q_order);
    std::vector<Vec> out;
    for (int j = 0; j <= q_order; ++j) {
        Vec lhs = j == 0 ? rmat_apply(V.L(-2), w) : Vec(V.dim());
        for (int k = 0; 2 * k <= top(V, w); ++k) {
            Scalar g = eisenstein(2 * k + 2, q_order).coeff(j);
            if (!g.is_zero())
                lhs = vec_sub(lhs, vec_scale(rmat_apply(V.L(2 * k), w), g));
        }
        out.push_back(vec_sub(lhs, kernel_residue(ker.row(j), F)));
    }
    return out;
}

std::vector<Vec> mod_inv7_difference(const VertexData &V, const Vec &u, const Vec &w, int q_order)
{
    require_window(V, top(V, u) + top(V, w) + 1, "mod-inv-7");
    int x_hi = std::max(top(V, u) + top(V, w) - 1, 2);
    VSeries F = V.Y(u, w);
    DoubleSeries ker = wp2_x_expansion(x_hi, q_order);
    std::vector<Vec> out;
    for (int j = 0; j <= q_order; ++j) {
        Vec lhs = j == 0 ? mode_apply(V, u, -2, w) : Vec(V.dim());
        for (int k = 1; 2 * k <= top(V, u) + top(V, w); ++k) {
            Scalar g = eisenstein(2 * k + 2, q_order).coeff(j);
            if (!g.is_zero())
                lhs = vec_add(lhs, vec_scale(mode_apply(V, u, 2 * k, w), g * Rational(2 * k + 1)));
        }
        out.push_back(vec_sub(lhs, kernel_residue(ker.row(j), F)));
    }
    return out;
}

Report verify_operator_identities(const VertexData &V, const Vec &w, int q_order)
{
    Report rep;
    rep.suite = "operator-identities";
    auto all_zero = [](const std::vector<Vec> &d) {
        return std::all_of(d.begin(), d.end(), [](const Vec &v) { return vec_is_zero(v); });
    };
    nlohmann::json params = {{"w", vec_to_json(w)}, {"q_order", q_order}};
    try {
        rep.add("mod-inv-6", params, all_zero(mod_inv6_difference(V, w, q_order)));
    } catch (const TruncationOverflow &e) {
        rep.skip("mod-inv-6", params, e.what());
    }
    for (std::size_t a : trace_grid(V, 2)) {
        nlohmann::json p = params;
        p["u"] = V.label(a);
        try {
            rep.add("mod-inv-7/u=" + V.label(a), p, all_zero(mod_inv7_difference(V, V.basis_vec(a), w, q_order)));
        } catch (const TruncationOverflow &e) {
            rep.skip("mod-inv-7/u=" + V.label(a), p, e.what());
        }
    }
    return rep;
}

Vec lemma_1_1_difference(const VertexData &V, int m, int n, const Vec &v, const Vec &w, int sign)
{
    if (m < 0 || n < m)
        throw DomainError("lemma 1.1 needs 0 <= m <= n");
    require_window(V, top(V, v) + top(V, w) + n + 1, "lemma 1.1");
    Vec lhs = exp_kernel_residue(V, m, -n - 2, v, w, sign);
    // B_k = binom(sign k^{-1} L(-1) - 1, k) v
    std::vector<Vec> B{v};
    Scalar sk = Scalar::monomial(Rational(sign), -1);
    for (int k = 0; k < n; ++k) {
        const Vec &t = B.back();
        Vec next = vec_sub(vec_scale(rmat_apply(V.L(-1), t), sk), vec_scale(t, Scalar(k + 1)));
        B.push_back(vec_scale(next, Scalar(frac(1, k + 1))));
    }
    Vec rhs(V.dim());
    for (int j = 0; j <= m; ++j) {
        Rational c = binom(static_cast<long>(m), static_cast<long>(j)) / (n - j + 1);
        rhs = vec_add(rhs, vec_scale(exp_kernel_residue(V, 0, -2, B[n - j], w, sign), Scalar(c)));
    }
    return vec_sub(lhs, rhs);
}

bool verify_lemma_1_1(const VertexData &V, int m, int n, const Vec &v, const Vec &w, int sign)
{
    return vec_is_zero(lemma_1_1_difference(V, m, n, v, w, sign));
}

Scalar main_lemma_3_value(const OnePointMap &S, const TraceContext &ctx, int m, int n, int p, const Vec &v,
                          const Vec &w)
{
    const VertexData &V = ctx.data();
    require_window(V, top(V, v) + top(V, w) + n + 1, "main lemma 3");
    Vec u = exp_kernel_residue(V, m, -n - 2, v, w, 1);
    return S_component(S(u, p), ctx.offset(), 0, p);
}

Scalar main_lemma_4_difference(const OnePointMap &S, const TraceContext &ctx, int m, int n, const Vec &v,
                               const Vec &w)
{
    const VertexData &V = ctx.data();
    require_window(V, top(V, v) + top(V, w) + 2 * std::max(m, n), "main lemma 4");
    Rational r = ctx.offset();
    Scalar lhs, rhs;
    for (int k = 0; k <= n; ++k) {
        Rational c = binom(Rational(-2 * m + n - 1), k);
        if (c == 0)
            continue;
        Vec u = exp_kernel_residue(V, m, -2 * m + n - k - 1, v, w, 1);
        lhs += S_component(S(u, m), r, 0, m) * c;
    }
    for (int k = 0; k <= m; ++k) {
        Rational c = binom(Rational(-2 * n + m - 1), k);
        if (c == 0)
            continue;
        Vec u = exp_kernel_residue(V, n, -2 * n + m - k - 1, v, w, -1);
        rhs += S_component(S(u, n), r, 0, n) * c;
    }
    return lhs - rhs;
}

Scalar grading_slf_difference(const OnePointMap &S, const TraceContext &ctx, int k, int n, const Vec &w)
{
    const VertexData &V = ctx.data();
    require_window(V, top(V, w) + 2 + 2 * n, "grading identity");
    Rational r = ctx.offset();
    Scalar lhs;
    for (int m = 0; m <= n; ++m) {
        Vec u = exp_kernel_residue(V, n, -n - m - 1, V.omega(), w, 1);
        lhs += S_component(S(u, n), r, k, n) * binom(Rational(-n - 1), m);
    }
    QLogSeries Sw = S(w, n);
    lhs -= Scalar::kappa(1) * (r + n) * S_component(Sw, r, k, n);
    Scalar rhs = Scalar::kappa(1) * Rational(k + 1) * S_component(Sw, r, k + 1, n);
    return lhs - rhs;
}

std::vector<std::size_t> trace_grid(const VertexData &V, int max_weight)
{
    return V.basis_up_to_weight(std::min(max_weight, V.cutoff()));
}

Report blocks_suite(const TraceContext &ctx, int q_order, std::uint64_t seed)
{
    const VertexData &V = ctx.data();
    Report rep;
    rep.suite = "qtrace-blocks";
    OnePointMap S = trace_map(ctx);
    Rational r = ctx.offset();
    nlohmann::json base = {{"algebra", V.name()}, {"D", V.cutoff()}, {"q_order", q_order}};
    if (q_order > ctx.max_q_order()) {
        rep.skip("character", base, "q-order exceeds the cutoff");
        return rep;
    }
    {
        QLogSeries ch = S(V.vacuum(), q_order);
        QLogSeries om = S(V.omega(), q_order);
        bool ok = true, ok_omega = true;
        for (int n = 0; n <= q_order; ++n) {
            long d = n <= V.cutoff() ? V.dims()[n] : 0;
            ok = ok && S_component(ch, r, 0, n) == Scalar(d);
            ok_omega = ok_omega && S_component(om, r, 0, n) == Scalar::kappa(2) * Rational((r + n) * d);
        }
        rep.add("character", base, ok && ch.max_log_power() == 0);
        rep.add("character-omega", base, ok_omega);
    }
    std::vector<std::size_t> grid = trace_grid(V, 2);
    OnePointMap noise = random_one_point_map(V, seed);
    bool control_detected = false, vacuum_control = false;
    for (std::size_t a : grid) {
        for (std::size_t b : grid) {
            Vec v = V.basis_vec(a), w = V.basis_vec(b);
            nlohmann::json p = base;
            p["v"] = V.label(a);
            p["w"] = V.label(b);
            std::string tag = pair_label(V, a, b);
            try {
                rep.add("vacuum/" + tag, p, check_condition_vacuum(S, V, v, w, q_order).is_zero());
            } catch (const TruncationOverflow &e) {
                rep.skip("vacuum/" + tag, p, e.what());
            }
            try {
                rep.add("wp2/" + tag, p, check_condition_wp2(S, V, v, w, q_order).is_zero());
                QLogSeries diff = check_condition_wp2(noise, V, v, w, q_order) -
                                  check_condition_wp2(noise, V, v, w, q_order, true);
                if (!diff.is_zero())
                    control_detected = true;
                if (!check_condition_vacuum(noise, V, v, w, q_order).is_zero())
                    vacuum_control = true;
            } catch (const TruncationOverflow &e) {
                rep.skip("wp2/" + tag, p, e.what());
            }
            try {
                Scalar left = S_component(S(bullet_n(V, v, w, 0), 0), r, 0, 0);
                Scalar right = S_component(S(bullet_n(V, w, v, 0), 0), r, 0, 0);
                rep.add("trace-symmetry/" + tag, p, left == right);
            } catch (const TruncationOverflow &e) {
                rep.skip("trace-symmetry/" + tag, p, e.what());
            }
        }
        nlohmann::json p = base;
        p["w"] = V.label(a);
        try {
            rep.add("derivative/w=" + V.label(a), p, check_condition_derivative(S, V, V.basis_vec(a), q_order).is_zero());
        } catch (const TruncationOverflow &e) {
            rep.skip("derivative/w=" + V.label(a), p, e.what());
        }
        Report ops = verify_operator_identities(V, V.basis_vec(a), q_order);
        for (auto c : ops.checks) {
            c.id += "/w=" + V.label(a);
            rep.checks.push_back(c);
        }
    }
    // the sigma term multiplies S(v_0 w), which the vacuum condition kills, so the controls use a random map
    if (control_detected)
        rep.add("wp2-negative-control", base, true, "dropping the sigma term changes the residual of a random map");
    else
        rep.skip("wp2-negative-control", base, "no validated pair detects the perturbed kernel");
    if (vacuum_control)
        rep.add("vacuum-negative-control", base, true, "a random map violates the vacuum condition");
    else
        rep.skip("vacuum-negative-control", base, "v_0 w vanishes on every validated pair");
    return rep;
}

Report lemma11_suite(const VertexData &V, int n_max)
{
    Report rep;
    rep.suite = "qtrace-lemma11";
    std::vector<std::size_t> grid = trace_grid(V, 2);
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; m <= n; ++m)
            for (int sign : {1, -1})
                for (std::size_t a : grid)
                    for (std::size_t b : grid) {
                        nlohmann::json p = {{"m", m}, {"n", n}, {"sign", sign}, {"v", V.label(a)}, {"w", V.label(b)}};
                        std::string id = "lemma-1-1/m=" + std::to_string(m) + ",n=" + std::to_string(n) +
                                         ",sign=" + (sign > 0 ? "+" : "-") + "/" + pair_label(V, a, b);
                        try {
                            rep.add(id, p, verify_lemma_1_1(V, m, n, V.basis_vec(a), V.basis_vec(b), sign));
                        } catch (const TruncationOverflow &e) {
                            rep.skip(id, p, e.what());
                        }
                    }
    return rep;
}

Report derived_suite(const TraceContext &ctx, int n_max)
{
    const VertexData &V = ctx.data();
    Report rep;
    rep.suite = "qtrace-derived";
    OnePointMap S = trace_map(ctx);
    std::vector<std::size_t> grid = trace_grid(V, 2);
    auto attempt = [&](const std::string &id, const nlohmann::json &p, const std::function<Scalar()> &f) {
        try {
            Scalar d = f();
            rep.add(id, p, d.is_zero(), d.is_zero() ? "" : "residual " + d.str());
        } catch (const TruncationOverflow &e) {
            rep.skip(id, p, e.what());
        }
    };
    // the three hypotheses on the same grid
    for (std::size_t a : grid)
        for (std::size_t b : grid) {
            Vec v = V.basis_vec(a), w = V.basis_vec(b);
            nlohmann::json p = {{"v", V.label(a)}, {"w", V.label(b)}};
            int q = std::min(2, ctx.max_q_order());
            try {
                bool ok = check_condition_vacuum(S, V, v, w, q).is_zero() && check_condition_wp2(S, V, v, w, q).is_zero();
                if (b == 0)
                    ok = ok && check_condition_derivative(S, V, v, q).is_zero();
                rep.add("hypotheses/" + pair_label(V, a, b), p, ok);
            } catch (const TruncationOverflow &e) {
                rep.skip("hypotheses/" + pair_label(V, a, b), p, e.what());
            }
        }
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; 2 * m <= n; ++m)
            for (int q = 0; q <= m; ++q)
                for (std::size_t a : grid)
                    for (std::size_t b : grid) {
                        nlohmann::json p = {{"m", m}, {"n", n}, {"p", q}, {"v", V.label(a)}, {"w", V.label(b)}};
                        std::string id = "main-lemma-3/m=" + std::to_string(m) + ",n=" + std::to_string(n) +
                                         ",p=" + std::to_string(q) + "/" + pair_label(V, a, b);
                        attempt(id, p, [&] {
                            return main_lemma_3_value(S, ctx, m, n, q, V.basis_vec(a), V.basis_vec(b));
                        });
                    }
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n)
            for (std::size_t a : grid)
                for (std::size_t b : grid) {
                    nlohmann::json p = {{"m", m}, {"n", n}, {"v", V.label(a)}, {"w", V.label(b)}};
                    std::string id = "main-lemma-4/m=" + std::to_string(m) + ",n=" + std::to_string(n) + "/" +
                                     pair_label(V, a, b);
                    attempt(id, p,
                            [&] { return main_lemma_4_difference(S, ctx, m, n, V.basis_vec(a), V.basis_vec(b)); });
                }
    for (int n = 0; n <= 2; ++n)
        for (std::size_t b : grid) {
            nlohmann::json p = {{"k", 0}, {"n", n}, {"w", V.label(b)}};
            std::string id = "grading-slf/k=0,n=" + std::to_string(n) + "/w=" + V.label(b);
            attempt(id, p, [&] { return grading_slf_difference(S, ctx, 0, n, V.basis_vec(b)); });
        }
    return rep;
}

} // namespace pt
