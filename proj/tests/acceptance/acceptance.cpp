#include <pseudotrace/algkit.hpp>
#include <pseudotrace/combinatorics.hpp>
#include <pseudotrace/modekit.hpp>
#include <pseudotrace/qexp.hpp>
#include <pseudotrace/qtrace.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace pt;

namespace
{

constexpr double kSweepSeconds = 30.0;
constexpr double kLemmaA1Seconds = 10.0;
constexpr double kModularTolerance = 1e-6;

struct Outcome {
    bool ok = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string counts(const Report &r)
{
    std::ostringstream os;
    os << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, " << r.count(Status::Skipped)
       << " skipped";
    return os.str();
}

long count_with_prefix(const Report &r, const std::string &prefix, Status s)
{
    long n = 0;
    for (const Check &c : r.checks)
        if (c.id.rfind(prefix, 0) == 0 && c.status == s)
            ++n;
    return n;
}

std::string first_failure(const Report &r)
{
    for (const Check &c : r.checks)
        if (c.status == Status::Fail)
            return c.id + (c.detail.empty() ? "" : " (" + c.detail + ")");
    return "";
}

// large enough that every check of criteria 7 and 8 lies inside the weight window
const VertexData &deep_data()
{
    static const VertexData V = VertexData::heisenberg(9);
    return V;
}

// partition numbers by the standard dynamic program over part sizes
std::vector<long> partition_numbers(int n)
{
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int i = part; i <= n; ++i)
            p[i] += p[i - part];
    return p;
}

Outcome criterion1()
{
    auto t0 = std::chrono::steady_clock::now();
    Report r = appendix_b_sweep(12, 0, 20);
    double t = seconds_since(t0);
    Outcome o;
    o.ok = r.count(Status::Fail) == 0 && r.count(Status::Pass) > 0 && t < kSweepSeconds;
    std::ostringstream os;
    os << counts(r) << ", " << t << " s";
    if (!r.ok())
        os << ", first failure " << first_failure(r);
    o.detail = os.str();
    return o;
}

Outcome criterion2()
{
    auto t0 = std::chrono::steady_clock::now();
    LemmaA1Report w2 = lemma_a1_check_wp2(8, 8);
    LemmaA1Report w1 = lemma_a1_check_wp1(9, 8);
    double t = seconds_since(t0);
    Outcome o;
    bool windows = w2.x_lo <= -2 && w2.x_hi >= 8 && w1.x_lo <= -1 && w1.x_hi >= 9 && w2.q_order == 8 &&
                   w1.q_order == 8;
    o.ok = w2.ok() && w1.ok() && windows && t < kLemmaA1Seconds;
    std::ostringstream os;
    os << "wp2 x in [" << w2.x_lo << ", " << w2.x_hi << "] " << w2.compared << " coefficients, "
       << w2.discrepancies.size() << " discrepancies; wp1 x in [" << w1.x_lo << ", " << w1.x_hi << "] " << w1.compared
       << " coefficients, " << w1.discrepancies.size() << " discrepancies; " << t << " s";
    o.detail = os.str();
    return o;
}

Outcome criterion3()
{
    Outcome o;
    std::ostringstream os;
    double worst = 0;
    for (int two_k : {4, 6})
        for (std::complex<double> tau : {std::complex<double>(0, 2), std::complex<double>(1, 2)}) {
            ModularCheck m = modular_numeric_check(two_k, tau, 40);
            worst = std::max(worst, m.residual);
            if (!(m.residual < kModularTolerance))
                o.ok = false;
        }
    os << "max residual " << worst << " (tolerance " << kModularTolerance << ")";
    o.detail = os.str();
    return o;
}

Outcome criterion4()
{
    Report r = algebra_verify_suite(0, 50, 3);
    Outcome o;
    long hs = count_with_prefix(r, "hs-trace-symmetry/", Status::Pass);
    long slf = count_with_prefix(r, "slf-decomposition/", Status::Pass);
    long bim = count_with_prefix(r, "bimodule-decomposition/", Status::Pass);
    std::size_t algebras = corpus_names().size();
    o.ok = r.count(Status::Fail) == 0 && hs == static_cast<long>(algebras) &&
           slf == static_cast<long>(3 * algebras) && bim >= 2;
    std::ostringstream os;
    os << counts(r) << "; hs-trace " << hs << " algebras x 50 pairs, slf reconstruction and radical annihilation " << slf << ", bimodule " << bim;
    if (!r.ok())
        os << ", first failure " << first_failure(r);
    o.detail = os.str();
    return o;
}

Outcome criterion5()
{
    Outcome o;
    std::ostringstream os;
    for (VertexData V : {VertexData::heisenberg(4), VertexData::trivial()}) {
        Vec one = V.vacuum();
        Vec target = vec_scale(vec_sub(V.omega(), vec_scale(one, Scalar(V.central_charge() / 24))), Scalar::kappa(2));
        bool vac = smat_apply(V.U1(), one) == one;
        bool om = smat_apply(V.U1(), V.omega()) == target;
        if (!vac || !om)
            o.ok = false;
        os << V.name() << " vacuum " << (vac ? "ok" : "FAIL") << " omega " << (om ? "ok" : "FAIL") << "; ";
    }
    VertexData V = VertexData::heisenberg(4);
    int pairs = 0, good = 0;
    for (std::size_t a : V.basis_up_to_weight(2))
        for (std::size_t b : V.basis_up_to_weight(2)) {
            VopComparison c = u1_vop_check(V, V.basis_vec(a), V.basis_vec(b));
            ++pairs;
            if (c.ok && c.x_lo <= c.x_hi)
                ++good;
        }
    if (good != pairs)
        o.ok = false;
    bool residual = A_coeffs_residual(compute_A_coeffs(7), 7).is_zero();
    if (!residual)
        o.ok = false;
    os << "vertex operator conjugation " << good << "/" << pairs << " pairs; A residual through y^7 "
       << (residual ? "zero" : "nonzero");
    o.detail = os.str();
    return o;
}

Outcome criterion6()
{
    Outcome o;
    VertexData V = VertexData::heisenberg(4);
    Vec one = V.vacuum();
    const SMat &U = V.U1();
    std::vector<std::size_t> grid = V.basis_up_to_weight(2);
    int unit = 0, unit_total = 0;
    for (std::size_t a = 0; a < V.dim(); ++a) {
        Vec v = V.basis_vec(a);
        try {
            ++unit_total;
            if (star_n(V, one, v, 0) == v && star_n(V, v, one, 0) == v)
                ++unit;
        } catch (const TruncationOverflow &) {
            --unit_total;
        }
    }
    OSpan O = o_n_span(V, 0, V.cutoff(), Flavor::Plain);
    int central = 0;
    Vec om = V.omega();
    for (std::size_t a : grid) {
        Vec v = V.basis_vec(a);
        Vec d = vec_sub(star_n(V, om, v, 0), star_n(V, v, om, 0));
        // rank test: adding the commutator does not enlarge the O_0 span
        KappaSpan grown = O.span;
        std::size_t before = grown.dim();
        grown.add(d);
        if (grown.dim() == before)
            ++central;
    }
    int conj = 0, conj_total = 0;
    for (std::size_t a : grid)
        for (std::size_t b : grid) {
            Vec u = V.basis_vec(a), v = V.basis_vec(b);
            try {
                Vec lhs = smat_apply(U, bullet_n(V, u, v, 0));
                Vec rhs = star_n(V, smat_apply(U, u), smat_apply(U, v), 0);
                ++conj_total;
                if (lhs == rhs)
                    ++conj;
            } catch (const TruncationOverflow &) {
            }
        }
    Report suite = modekit_suite(V, 2);
    long dpass = count_with_prefix(suite, "diamond-conjugation/", Status::Pass);
    long dfail = count_with_prefix(suite, "diamond-conjugation/", Status::Fail);
    long dskip = count_with_prefix(suite, "diamond-conjugation/", Status::Skipped);
    o.ok = unit == unit_total && unit_total > 0 && central == static_cast<int>(grid.size()) && conj == conj_total &&
           conj_total > 0 && dfail == 0 && dpass > 0;
    std::ostringstream os;
    os << "unit " << unit << "/" << unit_total << "; omega central " << central << "/" << grid.size()
       << "; bullet conjugation " << conj << "/" << conj_total << "; diamond conjugation " << dpass << " pass, "
       << dfail << " fail, " << dskip << " outside the window";
    o.detail = os.str();
    return o;
}

Outcome criterion7()
{
    Outcome o;
    std::ostringstream os;
    VertexData V5 = VertexData::heisenberg(5);
    TraceContext c5(V5);
    QLogSeries ch = shifted_trace(c5, V5.vacuum(), 5);
    std::vector<long> p = partition_numbers(5);
    bool character = ch.max_log_power() == 0;
    os << "character";
    for (int n = 0; n <= 5; ++n) {
        Scalar got = S_component(ch, c5.offset(), 0, n);
        os << " " << got;
        if (got != Scalar(p[n]))
            character = false;
    }
    if (c5.offset() != frac(-1, 24))
        character = false;
    os << (character ? " ok" : " FAIL");

    const VertexData &V9 = deep_data();
    TraceContext c9(V9);
    Report blocks = blocks_suite(c9, 2, 0);
    Report ladder = lemma11_suite(V9, 3);
    long cond_fail = blocks.count(Status::Fail);
    long cond_skip = count_with_prefix(blocks, "vacuum/", Status::Skipped) +
                     count_with_prefix(blocks, "wp2/", Status::Skipped) +
                     count_with_prefix(blocks, "derivative/", Status::Skipped);
    long mod_pass =
        count_with_prefix(blocks, "mod-inv-6", Status::Pass) + count_with_prefix(blocks, "mod-inv-7", Status::Pass);
    o.ok = character && cond_fail == 0 && cond_skip == 0 && mod_pass > 0 && ladder.count(Status::Fail) == 0 &&
           ladder.count(Status::Skipped) == 0 && ladder.count(Status::Pass) > 0;
    os << "; conditions and operator identities " << counts(blocks) << "; residue ladder m <= n <= 3 "
       << counts(ladder);
    if (!blocks.ok())
        os << ", first failure " << first_failure(blocks);
    if (!ladder.ok())
        os << ", first failure " << first_failure(ladder);
    o.detail = os.str();
    return o;
}

Outcome criterion8()
{
    Outcome o;
    TraceContext ctx(deep_data());
    Report r = derived_suite(ctx, 4);
    long l3 = count_with_prefix(r, "main-lemma-3/", Status::Pass);
    long l4 = count_with_prefix(r, "main-lemma-4/", Status::Pass);
    long gr = count_with_prefix(r, "grading-slf/", Status::Pass);
    o.ok = r.count(Status::Fail) == 0 && r.count(Status::Skipped) == 0 && l3 > 0 && l4 > 0 && gr > 0;
    std::ostringstream os;
    os << counts(r) << "; main-lemma-3 " << l3 << " pass, main-lemma-4 " << l4 << " pass, grading " << gr
       << " pass";
    if (!r.ok())
        os << ", first failure " << first_failure(r);
    o.detail = os.str();
    return o;
}

} // namespace

int main()
{
    std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.ok)
            ++failures;
        std::printf("criterion %zu %s %s\n", i + 1, o.ok ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
