#include <pseudotrace/algkit.hpp>
#include <pseudotrace/errors.hpp>

#include <gtest/gtest.h>

#include <map>

using namespace pt;

namespace
{

RVec rv(std::initializer_list<long> xs)
{
    RVec v;
    for (long x : xs)
        v.push_back(Rational(x));
    return v;
}

struct Expected {
    std::size_t radical, center, commutator, central_idempotents;
};

// hand-computed invariants of the corpus algebras
const std::map<std::string, Expected> &expected()
{
    static const std::map<std::string, Expected> e = {
        {"Q", {0, 1, 0, 1}},  {"dual", {1, 2, 0, 1}}, {"QxQ", {0, 2, 0, 2}},
        {"M2", {0, 1, 3, 1}}, {"UT2", {1, 1, 1, 1}},  {"M2xdual", {1, 3, 3, 2}},
    };
    return e;
}

bool is_idempotent(const FinDimAlgebra &A, const RVec &e)
{
    return A.mul(e, e) == e;
}

} // namespace

TEST(Linalg, EchelonRankNullspace)
{
    RMat a = {rv({1, 2, 3}), rv({2, 4, 6}), rv({1, 0, 1})};
    EXPECT_EQ(rank(a), 2u);
    RMat ns = nullspace(a, 3);
    ASSERT_EQ(ns.size(), 1u);
    EXPECT_TRUE(is_zero(matvec(a, ns[0])));
    auto x = solve(a, rv({3, 6, 1}), 3);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(matvec(a, *x), rv({3, 6, 1}));
    EXPECT_FALSE(solve(a, rv({1, 0, 0}), 3).has_value());
    Subspace s = Subspace::span(a, 3);
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_TRUE(s.contains(rv({3, 4, 7})));
    EXPECT_FALSE(s.contains(rv({0, 0, 1})));
    auto c = s.coordinates(rv({3, 4, 7}));
    ASSERT_TRUE(c.has_value());
    RVec back(3);
    for (std::size_t i = 0; i < c->size(); ++i)
        for (std::size_t j = 0; j < 3; ++j)
            back[j] += (*c)[i] * s.basis()[i][j];
    EXPECT_EQ(back, rv({3, 4, 7}));
    EXPECT_EQ(complement_pivots(s).size(), 1u);
}

TEST(Algebra, CorpusInvariants)
{
    for (const auto &name : corpus_names()) {
        FinDimAlgebra A = algebra_by_name(name);
        const Expected &e = expected().at(name);
        EXPECT_EQ(jacobson_radical(A).dim(), e.radical) << name;
        EXPECT_EQ(center(A).dim(), e.center) << name;
        EXPECT_EQ(commutator_subspace(A).dim(), e.commutator) << name;
        EXPECT_EQ(slf_space(A).size(), A.dim() - e.commutator) << name;
        Idempotents id = central_idempotents(A);
        EXPECT_EQ(id.idempotents.size(), e.central_idempotents) << name;
        RVec sum(A.dim());
        for (const RVec &x : id.idempotents) {
            EXPECT_TRUE(is_idempotent(A, x)) << name;
            for (std::size_t i = 0; i < A.dim(); ++i)
                sum[i] += x[i];
        }
        EXPECT_EQ(sum, A.unit()) << name;
    }
}

TEST(Algebra, RadicalIsNilpotentIdeal)
{
    for (const auto &name : corpus_names()) {
        FinDimAlgebra A = algebra_by_name(name);
        Subspace J = jacobson_radical(A);
        for (const RVec &x : J.basis()) {
            RVec p = x;
            for (std::size_t k = 0; k < A.dim(); ++k)
                p = A.mul(p, x);
            EXPECT_TRUE(is_zero(p)) << name;
            for (std::size_t i = 0; i < A.dim(); ++i) {
                EXPECT_TRUE(J.contains(A.mul(A.basis(i), x))) << name;
                EXPECT_TRUE(J.contains(A.mul(x, A.basis(i)))) << name;
            }
        }
    }
}

TEST(Algebra, RejectsNonAssociativeTable)
{
    // e0 e0 = e1 with unit e0 violates the unit law
    std::vector<std::vector<RVec>> mul = {{rv({0, 1}), rv({0, 1})}, {rv({0, 1}), rv({0, 0})}};
    EXPECT_THROW(FinDimAlgebra(mul, rv({1, 0})), ValidationError);
}

TEST(Algebra, JsonRoundTrip)
{
    FinDimAlgebra A = algebra_by_name("UT2");
    FinDimAlgebra B = FinDimAlgebra::from_json(A.to_json());
    EXPECT_EQ(B.table(), A.table());
    EXPECT_EQ(B.unit(), A.unit());
}

TEST(Algebra, NewtonLift)
{
    FinDimAlgebra A = algebra_by_name("dual");
    RVec e = newton_lift_idempotent(A, rv({1, 3}));
    EXPECT_TRUE(is_idempotent(A, e));
    EXPECT_EQ(e, rv({1, 0}));
    FinDimAlgebra U = algebra_by_name("UT2");
    RVec f = newton_lift_idempotent(U, rv({1, 5, 0}));
    EXPECT_TRUE(is_idempotent(U, f));
    EXPECT_EQ(f[0], Rational(1));
    EXPECT_EQ(f[2], Rational(0));
}

TEST(Algebra, SymmetricFunctions)
{
    FinDimAlgebra M = algebra_by_name("M2");
    EXPECT_TRUE(is_symmetric(M, rv({1, 0, 0, 1})));
    EXPECT_FALSE(is_symmetric(M, rv({1, 0, 0, 0})));
    FinDimAlgebra D = algebra_by_name("dual");
    EXPECT_EQ(slf_radical(D, rv({1, 0})).dim(), 1u);
    EXPECT_EQ(slf_radical(D, rv({0, 1})).dim(), 0u);
    EXPECT_EQ(slf_radical(M, rv({1, 0, 0, 1})).dim(), 0u);
}

TEST(Modules, HomOfRegularModuleIsAlgebra)
{
    for (const auto &name : corpus_names()) {
        FinDimAlgebra A = algebra_by_name(name);
        RightModule R = RightModule::regular(A);
        R.validate(A);
        std::vector<RMat> homs = hom_space(A, R, R);
        EXPECT_EQ(homs.size(), A.dim()) << name;
        for (const RMat &f : homs)
            EXPECT_TRUE(is_module_map(A, R, R, f)) << name;
        RightModule RR = RightModule::direct_sum(R, R);
        EXPECT_EQ(hom_space(A, R, RR).size(), 2 * A.dim()) << name;
    }
}

TEST(Modules, PseudoTraceOfIdentity)
{
    FinDimAlgebra M = algebra_by_name("M2");
    SLF tr = rv({1, 0, 0, 1});
    RightModule R = RightModule::regular(M);
    ProjectiveBasis pb = projectivity_and_basis(M, R);
    EXPECT_TRUE(verify_projective_basis(M, R, pb));
    EXPECT_EQ(pseudo_trace(tr, pb, identity(4)), Rational(2));
    RightModule RR = RightModule::direct_sum(R, R);
    ProjectiveBasis pb2 = projectivity_and_basis(M, RR);
    EXPECT_EQ(pseudo_trace(tr, pb2, identity(8)), Rational(4));
    // left multiplication by E12 is a module endomorphism with trace tr(E12) = 0
    EXPECT_EQ(pseudo_trace(tr, pb, M.left(rv({0, 1, 0, 0}))), Rational(0));
    EXPECT_EQ(pseudo_trace(tr, pb, M.left(rv({3, 0, 0, 5}))), Rational(8));
}

TEST(Modules, HattoriStallingsIsSymmetric)
{
    FinDimAlgebra A = algebra_by_name("UT2");
    RightModule R = RightModule::direct_sum(RightModule::regular(A), RightModule::regular(A));
    ProjectiveBasis pb = projectivity_and_basis(A, R);
    std::vector<RMat> homs = hom_space(A, R, R);
    for (std::size_t i = 0; i < homs.size(); i += 3)
        for (std::size_t j = 0; j < homs.size(); j += 2)
            EXPECT_EQ(hs_trace(A, pb, matmul(homs[i], homs[j])), hs_trace(A, pb, matmul(homs[j], homs[i])));
}

TEST(Decomposition, ReconstructsSlf)
{
    FinDimAlgebra A = algebra_by_name("UT2");
    SLF phi = rv({1, 0, 2});
    ASSERT_TRUE(is_symmetric(A, phi));
    SlfDecomposition d = decompose_slf_algebra(A, phi);
    EXPECT_TRUE(d.reconstruction_ok);
    EXPECT_TRUE(d.radical_annihilates);
    EXPECT_EQ(d.reconstructed, d.phi_values);
    EXPECT_EQ(d.phi_values, phi);

    FinDimAlgebra B = algebra_by_name("M2xdual");
    SLF psi = rv({2, 0, 0, 2, 1, 3});
    ASSERT_TRUE(is_symmetric(B, psi));
    SlfDecomposition e = decompose_slf_algebra(B, psi);
    EXPECT_TRUE(e.reconstruction_ok);
    EXPECT_EQ(e.blocks.size(), 2u);
}

TEST(Decomposition, SquareZeroExtension)
{
    FinDimAlgebra A = algebra_by_name("dual");
    Bimodule M = Bimodule::regular(A);
    M.validate(A);
    FinDimAlgebra E = square_zero_extension(A, M);
    EXPECT_EQ(E.dim(), 4u);
    BimoduleDecomposition d = decompose_slf_bimodule(A, M, rv({0, 1}));
    EXPECT_TRUE(d.bimodule_laws_ok);
    EXPECT_TRUE(d.reconstruction_ok);
}

TEST(Decomposition, BasicIdempotent)
{
    FinDimAlgebra M = algebra_by_name("M2");
    bool split = false;
    RVec e = basic_idempotent(M, &split);
    EXPECT_TRUE(split);
    EXPECT_TRUE(is_idempotent(M, e));
    // a primitive idempotent of M2 has rank one: trace 1
    EXPECT_EQ(e[0] + e[3], Rational(1));
}

TEST(Decomposition, VerifySuite)
{
    Report rep = algebra_verify_suite(0, 10, 2);
    EXPECT_EQ(rep.count(Status::Fail), 0);
    EXPECT_GT(rep.count(Status::Pass), 10);
}
