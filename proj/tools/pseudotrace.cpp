#include <pseudotrace/algkit.hpp>
#include <pseudotrace/combinatorics.hpp>
#include <pseudotrace/modekit.hpp>
#include <pseudotrace/qexp.hpp>
#include <pseudotrace/qtrace.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace
{

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t seed_from_env()
{
    const char *s = std::getenv("PSEUDOTRACE_SEED");
    if (!s || !*s)
        return 0;
    try {
        return std::stoull(s);
    } catch (const std::exception &) {
        throw UsageError("PSEUDOTRACE_SEED must be a non-negative integer");
    }
}

std::string digest(const std::string &text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_file(const std::string &path, json &inputs)
{
    std::string text = read_file(path);
    inputs["files"][path] = digest(text);
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw UsageError(path + " is not valid JSON: " + e.what());
    }
}

struct Output {
    std::string format = "json";
    json inputs = json::object();
    std::vector<pt::Report> reports;
    json results = json::object();

    int emit() const
    {
        long fails = 0, passes = 0, skips = 0;
        for (const auto &r : reports) {
            fails += r.count(pt::Status::Fail);
            passes += r.count(pt::Status::Pass);
            skips += r.count(pt::Status::Skipped);
        }
        json in = inputs;
        in["digest"] = digest(inputs.dump());
        if (format == "json") {
            json j;
            j["tool"] = "pseudotrace";
            j["version"] = pt::kVersion;
            j["inputs"] = in;
            json arr = json::array();
            for (const auto &r : reports)
                arr.push_back(r.to_json());
            j["reports"] = arr;
            if (!results.empty())
                j["results"] = results;
            j["summary"] = {{"pass", passes}, {"fail", fails}, {"skipped", skips}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "pseudotrace " << pt::kVersion << "  inputs " << in.dump() << "\n";
            for (const auto &r : reports)
                std::cout << r.to_text();
            for (const auto &[k, v] : results.items())
                std::cout << k << ": " << v.dump() << "\n";
            std::cout << "total: " << passes << " pass, " << fails << " fail, " << skips << " skipped\n";
        }
        return fails == 0 ? 0 : 1;
    }
};

pt::VertexData load_algebra(const std::string &name, int D, json &inputs)
{
    if (name == "heisenberg") {
        if (D < 2 || D > 10)
            throw UsageError("heisenberg needs 2 <= D <= 10");
        return pt::VertexData::heisenberg(D);
    }
    if (name == "trivial")
        return pt::VertexData::trivial();
    return pt::VertexData::from_json(parse_json_file(name, inputs));
}

pt::Vec parse_vector(const pt::VertexData &V, const std::string &text)
{
    if (text == "vacuum" || text == "1")
        return V.vacuum();
    if (text == "omega")
        return V.omega();
    for (std::size_t i = 0; i < V.dim(); ++i)
        if (V.label(i) == text)
            return V.basis_vec(i);
    try {
        std::size_t pos = 0;
        unsigned long i = std::stoul(text, &pos);
        if (pos == text.size() && i < V.dim())
            return V.basis_vec(i);
    } catch (const std::exception &) {
    }
    throw UsageError("unknown vector '" + text + "'; use a basis label, an index, vacuum or omega");
}

pt::Report lemma_a1_report(int x_hi, int q_order)
{
    pt::Report rep;
    rep.suite = "qexp-lemma-a1";
    for (const auto &r : {pt::lemma_a1_check_wp2(x_hi, q_order), pt::lemma_a1_check_wp1(x_hi + 1, q_order)}) {
        json p = {{"x_lo", r.x_lo}, {"x_hi", r.x_hi}, {"q_order", r.q_order}, {"compared", r.compared}};
        std::string detail;
        if (!r.ok()) {
            const auto &d = r.discrepancies.front();
            detail = "x^" + std::to_string(d.x_exp) + " q^" + std::to_string(d.q_exp) + " differs by " +
                     d.difference.str();
        }
        rep.add("lemma-a1/" + r.pair, p, r.ok(), detail);
    }
    rep.add("wp-derivative-relation", {{"x_hi", x_hi}, {"q_order", q_order}}, pt::wp_derivative_relation(x_hi, q_order));
    return rep;
}

pt::Report modular_report(int q_order, double tol)
{
    pt::Report rep;
    rep.suite = "qexp-modular";
    for (int two_k : {4, 6})
        for (std::complex<double> tau : {std::complex<double>(0, 2), std::complex<double>(1, 2)}) {
            pt::ModularCheck c = pt::modular_numeric_check(two_k, tau, q_order);
            std::ostringstream id, res;
            id << "G" << two_k << "/tau=" << tau.real() << "+" << tau.imag() << "i";
            res << std::scientific << std::setprecision(3) << c.residual;
            rep.add(id.str(), {{"q_order", q_order}, {"tol", tol}}, c.residual < tol, "residual " + res.str());
        }
    return rep;
}

pt::Report qtrace_report(const pt::VertexData &V, const std::string &suite, int q_order, int n_max,
                         std::uint64_t seed)
{
    pt::TraceContext ctx(V);
    pt::Report all;
    all.suite = "qtrace-" + suite;
    if (suite == "blocks" || suite == "all")
        all.merge(pt::blocks_suite(ctx, q_order, seed));
    if (suite == "lemma11" || suite == "all")
        all.merge(pt::lemma11_suite(V, std::min(n_max, 3)));
    if (suite == "derived" || suite == "all")
        all.merge(pt::derived_suite(ctx, n_max));
    return all;
}

json series_json(const pt::LaurentSeries &s)
{
    json j = pt::to_json(s);
    j["text"] = s.str();
    return j;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact verification harness for shifted pseudo-q-traces, mode algebras and q-expansions"};
    app.require_subcommand(1);
    Output out;
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    // qexp
    auto *qexp = app.add_subcommand("qexp", "q-expansions of Eisenstein series and Weierstrass functions");
    qexp->require_subcommand(1);
    int a1_x_hi = 8, a1_q = 8;
    auto *lemma = qexp->add_subcommand("lemma-a1", "compare the exponential and Eisenstein expansions exactly");
    lemma->add_option("--x-hi", a1_x_hi, "highest x power compared for the wp2 pair (wp1 uses x-hi + 1)")
        ->capture_default_str();
    lemma->add_option("--q-order", a1_q, "highest q power compared")->capture_default_str();
    int eis_weight = 4, eis_q = 10;
    auto *eis = qexp->add_subcommand("eisenstein", "print the q-expansion of G_{2k}");
    eis->add_option("--weight", eis_weight, "even weight 2k >= 2")->capture_default_str();
    eis->add_option("--q-order", eis_q, "highest q power")->capture_default_str();
    int mod_q = 40;
    double mod_tol = 1e-6;
    auto *mod = qexp->add_subcommand("modular", "numeric check of G_4, G_6 under tau -> -1/tau");
    mod->add_option("--q-order", mod_q, "q-order of the truncated expansions")->capture_default_str();
    mod->add_option("--tol", mod_tol, "absolute tolerance on the residual")->capture_default_str();

    // identities
    auto *ident = app.add_subcommand("identities", "combinatorial identities with exact rationals");
    ident->require_subcommand(1);
    std::string id_suite = "appendixB";
    int id_max = 12, id_alpha = 20;
    auto *iverify = ident->add_subcommand("verify", "sweep the binomial identities over their index grid");
    iverify->add_option("--suite", id_suite, "identity suite")->check(CLI::IsMember({"appendixB"}))->capture_default_str();
    iverify->add_option("--max", id_max, "largest index")->capture_default_str();
    iverify->add_option("--alpha-samples", id_alpha, "random rational alpha samples")->capture_default_str();

    // algebra
    auto *alg = app.add_subcommand("algebra", "finite-dimensional algebras and pseudo-traces");
    alg->require_subcommand(1);
    int hom_pairs = 50, slfs = 3;
    auto *averify = alg->add_subcommand("verify", "corpus checks of idempotents, projective bases and pseudo-traces");
    averify->add_option("--hom-pairs", hom_pairs, "random map pairs per algebra")->capture_default_str();
    averify->add_option("--slfs", slfs, "random symmetric linear functions per algebra")->capture_default_str();
    std::string slf_file;
    auto *adecomp = alg->add_subcommand("decompose", "decompose a symmetric linear function into pseudo-traces");
    adecomp->add_option("--slf", slf_file, "JSON file {algebra, slf, bimodule?}")->required()->check(CLI::ExistingFile);

    // voa
    auto *voa = app.add_subcommand("voa", "vertex algebra data at a weight cutoff");
    voa->require_subcommand(1);
    std::string algebra = "heisenberg";
    int D = 4, N = 0;
    auto add_algebra = [&](CLI::App *c) {
        c->add_option("--algebra", algebra, "heisenberg, trivial or a JSON data file")->capture_default_str();
        c->add_option("--D", D, "weight cutoff for heisenberg")->capture_default_str();
    };
    auto *vverify = voa->add_subcommand("verify", "transition operator, products and spans");
    add_algebra(vverify);
    int diamond_max = 2;
    vverify->add_option("--N-max", diamond_max, "largest N for the matrix products")->capture_default_str();
    std::string op = "star_n", u_text = "vacuum", v_text = "vacuum", flavor = "plain", side = "left";
    int k_idx = 0, l_idx = 0;
    auto *vprod = voa->add_subcommand("product", "evaluate one product");
    add_algebra(vprod);
    vprod->add_option("--op", op, "product")->check(CLI::IsMember({"star_n", "star_n_right", "bullet_n", "diamond"}))
        ->capture_default_str();
    vprod->add_option("--N", N, "level")->capture_default_str();
    vprod->add_option("--u", u_text, "left factor: basis label, index, vacuum or omega")->capture_default_str();
    vprod->add_option("--v", v_text, "right factor")->capture_default_str();
    vprod->add_option("--flavor", flavor, "diamond flavor")->check(CLI::IsMember({"plain", "tilde"}))->capture_default_str();
    vprod->add_option("--side", side, "diamond side")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
    vprod->add_option("--k", k_idx, "row index of the left factor")->capture_default_str();
    vprod->add_option("--l", l_idx, "column index of the right factor")->capture_default_str();
    int wbound = 2;
    auto *vquot = voa->add_subcommand("quotient", "truncated quotient V/O_N and its product table");
    add_algebra(vquot);
    vquot->add_option("--N", N, "level")->capture_default_str();
    vquot->add_option("--weight-bound", wbound, "largest weight of the representatives")->capture_default_str();
    vquot->add_option("--flavor", flavor, "plain or tilde")->check(CLI::IsMember({"plain", "tilde"}))->capture_default_str();
    auto *vdump = voa->add_subcommand("dump", "print the vertex data as JSON");
    add_algebra(vdump);

    // qtrace
    auto *qt = app.add_subcommand("qtrace", "shifted q-traces and genus-one conditions");
    qt->require_subcommand(1);
    std::string qt_suite = "blocks";
    int qt_q = 4, n_max = 4;
    auto *qrun = qt->add_subcommand("run", "run a verification suite");
    add_algebra(qrun);
    qrun->add_option("--q-order", qt_q, "q-order of the traces")->capture_default_str();
    qrun->add_option("--suite", qt_suite, "suite")->check(CLI::IsMember({"blocks", "lemma11", "derived", "all"}))
        ->capture_default_str();
    qrun->add_option("--n-max", n_max, "largest n in the lemma grids")->capture_default_str();
    std::string w_text = "vacuum";
    auto *qchar = qt->add_subcommand("trace", "print the shifted trace of one vector");
    add_algebra(qchar);
    qchar->add_option("--q-order", qt_q, "q-order")->capture_default_str();
    qchar->add_option("--w", w_text, "vector: basis label, index, vacuum or omega")->capture_default_str();

    auto *all = app.add_subcommand("all", "run every suite with default parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        std::uint64_t seed = seed_from_env();
        out.inputs["argv"] = std::vector<std::string>(argv + 1, argv + argc);
        out.inputs["seed"] = seed;

        if (*lemma) {
            out.reports.push_back(lemma_a1_report(a1_x_hi, a1_q));
        } else if (*eis) {
            if (eis_weight < 2 || eis_weight % 2)
                throw UsageError("--weight must be an even integer >= 2");
            pt::LaurentSeries g = eis_weight == 2 ? pt::eisenstein_g2(eis_q) : pt::eisenstein_qexp(eis_weight, eis_q);
            out.results["G" + std::to_string(eis_weight)] = series_json(g);
        } else if (*mod) {
            out.reports.push_back(modular_report(mod_q, mod_tol));
        } else if (*iverify) {
            out.reports.push_back(pt::appendix_b_sweep(id_max, seed, id_alpha));
        } else if (*averify) {
            out.reports.push_back(pt::algebra_verify_suite(seed, hom_pairs, slfs));
        } else if (*adecomp) {
            json j = parse_json_file(slf_file, out.inputs);
            pt::FinDimAlgebra A = j.at("algebra").is_string() ? pt::algebra_by_name(j.at("algebra").get<std::string>())
                                                                : pt::FinDimAlgebra::from_json(j.at("algebra"));
            pt::RVec phi;
            for (const auto &x : j.at("slf"))
                phi.push_back(x.is_string() ? pt::parse_rational(x.get<std::string>()) : pt::Rational(x.get<long>()));
            pt::Report rep;
            rep.suite = "algebra-decompose";
            if (j.contains("bimodule")) {
                pt::Bimodule M = pt::Bimodule::from_json(j.at("bimodule"));
                pt::BimoduleDecomposition d = pt::decompose_slf_bimodule(A, M, phi);
                rep.add("bimodule-laws", json::object(), d.bimodule_laws_ok);
                rep.add("reconstruction", json::object(), d.reconstruction_ok);
                out.results["decomposition"] = d.to_json();
            } else {
                pt::SlfDecomposition d = pt::decompose_slf_algebra(A, phi);
                rep.add("reconstruction", json::object(), d.reconstruction_ok);
                rep.add("radical-annihilates", json::object(), d.radical_annihilates);
                out.results["decomposition"] = d.to_json();
            }
            out.reports.push_back(rep);
        } else if (*vverify) {
            pt::VertexData V = load_algebra(algebra, D, out.inputs);
            out.reports.push_back(pt::modekit_suite(V, diamond_max));
        } else if (*vprod) {
            pt::VertexData V = load_algebra(algebra, D, out.inputs);
            pt::Vec u = parse_vector(V, u_text), v = parse_vector(V, v_text);
            pt::Report rep;
            rep.suite = "voa-product";
            json p = {{"op", op}, {"N", N}, {"u", u_text}, {"v", v_text}};
            try {
                if (op == "diamond") {
                    pt::UMatrix r = pt::diamond(V, pt::UMatrix::single(k_idx, N, u), pt::UMatrix::single(N, l_idx, v),
                                                flavor == "plain" ? pt::Flavor::Plain : pt::Flavor::Tilde,
                                                side == "left" ? pt::Side::Left : pt::Side::Right);
                    out.results["product"] = r.to_json();
                } else {
                    pt::Vec r = op == "star_n"         ? pt::star_n(V, u, v, N)
                                : op == "star_n_right" ? pt::star_n_right(V, u, v, N)
                                                       : pt::bullet_n(V, u, v, N);
                    out.results["product"] = pt::vec_to_json(r);
                }
                out.results["labels"] = [&] {
                    std::vector<std::string> l;
                    for (std::size_t i = 0; i < V.dim(); ++i)
                        l.push_back(V.label(i));
                    return l;
                }();
                rep.add("product", p, true);
            } catch (const pt::TruncationOverflow &e) {
                rep.fail("product", p, e.what());
            }
            out.reports.push_back(rep);
        } else if (*vquot) {
            pt::VertexData V = load_algebra(algebra, D, out.inputs);
            pt::ModeQuotient Q = pt::quotient_algebra(V, N, wbound, flavor == "plain" ? pt::Flavor::Plain : pt::Flavor::Tilde);
            out.results["quotient"] = Q.to_json();
            out.results["warning"] = "truncation-level approximation; only validated products are tabulated";
        } else if (*vdump) {
            out.results["data"] = load_algebra(algebra, D, out.inputs).to_json();
        } else if (*qrun) {
            pt::VertexData V = load_algebra(algebra, D, out.inputs);
            out.reports.push_back(qtrace_report(V, qt_suite, qt_q, n_max, seed));
        } else if (*qchar) {
            pt::VertexData V = load_algebra(algebra, D, out.inputs);
            pt::TraceContext ctx(V);
            pt::Report rep;
            rep.suite = "qtrace-trace";
            try {
                pt::QLogSeries s = pt::shifted_trace(ctx, parse_vector(V, w_text), qt_q);
                out.results["trace"] = s.to_json();
                out.results["text"] = s.str();
                rep.add("trace", {{"w", w_text}, {"q_order", qt_q}}, true);
            } catch (const pt::TruncationOverflow &e) {
                rep.fail("trace", {{"w", w_text}, {"q_order", qt_q}}, e.what());
            }
            out.reports.push_back(rep);
        } else if (*all) {
            out.reports.push_back(pt::appendix_b_sweep(12, seed, 20));
            out.reports.push_back(lemma_a1_report(8, 8));
            out.reports.push_back(modular_report(40, 1e-6));
            out.reports.push_back(pt::algebra_verify_suite(seed, 50, 3));
            pt::VertexData H4 = pt::VertexData::heisenberg(4), H6 = pt::VertexData::heisenberg(6),
                           T = pt::VertexData::trivial();
            out.reports.push_back(pt::modekit_suite(H4, 2));
            out.reports.push_back(pt::modekit_suite(T, 2));
            out.reports.push_back(qtrace_report(H6, "all", 4, 4, seed));
            out.reports.push_back(qtrace_report(T, "all", 4, 4, seed));
        }
        return out.emit();
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const pt::TruncationOverflow &e) {
        pt::Report rep;
        rep.suite = "error";
        rep.fail("truncation-overflow", json::object(), e.what());
        out.reports.push_back(rep);
        return out.emit();
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
