#ifndef PSEUDOTRACE_ALGKIT_HPP
#define PSEUDOTRACE_ALGKIT_HPP

#include <pseudotrace/linalg.hpp>
#include <pseudotrace/report.hpp>

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pt
{

// Vectors are coordinate columns; matrices act on them from the left.
class FinDimAlgebra
{
public:
    FinDimAlgebra() = default;
    // mul[i][j] = coordinates of e_i e_j; associativity and unit laws are validated
    FinDimAlgebra(std::vector<std::vector<RVec>> mul, RVec unit);

    std::size_t dim() const
    {
        return unit_.size();
    }
    const RVec &unit() const
    {
        return unit_;
    }
    const std::vector<std::vector<RVec>> &table() const
    {
        return mul_;
    }
    RVec basis(std::size_t i) const;
    RVec mul(const RVec &a, const RVec &b) const;
    RMat left(const RVec &a) const;  // x -> a x
    RMat right(const RVec &a) const; // x -> x a

    nlohmann::json to_json() const;
    static FinDimAlgebra from_json(const nlohmann::json &j);

private:
    std::vector<std::vector<RVec>> mul_;
    RVec unit_;
};

// Right module: action[i] is the matrix of m -> m e_i, so rho(ab) = rho(b) rho(a).
struct RightModule {
    std::size_t dim = 0;
    std::vector<RMat> action;

    RMat rho(const RVec &a) const;
    void validate(const FinDimAlgebra &A) const;

    static RightModule regular(const FinDimAlgebra &A);
    static RightModule direct_sum(const RightModule &a, const RightModule &b);
    nlohmann::json to_json() const;
    static RightModule from_json(const nlohmann::json &j);
};

// restriction of M to an invariant subspace, in the coordinates of s.basis()
RightModule submodule(const RightModule &M, const Subspace &s);

struct Bimodule {
    std::size_t dim = 0;
    std::vector<RMat> left;  // m -> e_i m
    std::vector<RMat> right; // m -> m e_i

    RMat lambda(const RVec &a) const;
    RMat rho(const RVec &a) const;
    void validate(const FinDimAlgebra &A) const;

    static Bimodule regular(const FinDimAlgebra &A);
    nlohmann::json to_json() const;
    static Bimodule from_json(const nlohmann::json &j);
};

using SLF = RVec;

Rational apply(const SLF &phi, const RVec &v);
bool is_symmetric(const FinDimAlgebra &A, const SLF &phi);
bool is_symmetric(const FinDimAlgebra &A, const Bimodule &M, const SLF &phi);
// basis of SLF(A), the annihilator of [A, A]
RMat slf_space(const FinDimAlgebra &A);

Subspace jacobson_radical(const FinDimAlgebra &A);
Subspace center(const FinDimAlgebra &A);
Subspace commutator_subspace(const FinDimAlgebra &A);

struct Idempotents {
    std::vector<RVec> idempotents;
    // false when some idempotent is primitive over Q but its block is not split over Q
    bool absolutely_primitive = true;
};

Idempotents central_idempotents(const FinDimAlgebra &A);
// e <- 3e^2 - 2e^3 until e^2 = e
RVec newton_lift_idempotent(const FinDimAlgebra &A, RVec e);

// basis of Hom_A(M1, M2) as matrices dim M2 x dim M1
std::vector<RMat> hom_space(const FinDimAlgebra &A, const RightModule &M1, const RightModule &M2);
bool is_module_map(const FinDimAlgebra &A, const RightModule &M1, const RightModule &M2, const RMat &f);

struct ProjectiveBasis {
    std::vector<RVec> m;     // generators in M
    std::vector<RMat> alpha; // Hom_A(M, A), matrices dim A x dim M
};

// generators default to a greedy generating set taken from the standard basis
ProjectiveBasis projectivity_and_basis(const FinDimAlgebra &A, const RightModule &M,
                                       const std::optional<std::vector<RVec>> &generators = std::nullopt);
bool verify_projective_basis(const FinDimAlgebra &A, const RightModule &M, const ProjectiveBasis &pb);

// sum_i alpha_i(f(m_i)) in A, before reduction modulo [A, A]
RVec hs_trace_lift(const ProjectiveBasis &pb, const RMat &f);
// canonical representative of the class modulo [A, A]
RVec hs_trace(const FinDimAlgebra &A, const ProjectiveBasis &pb, const RMat &f);
Rational pseudo_trace(const SLF &phi, const ProjectiveBasis &pb, const RMat &f);

Subspace slf_radical(const FinDimAlgebra &A, const SLF &phi);
// radical of the extended function on the square-zero extension, in coordinates of A + M
Subspace slf_radical(const FinDimAlgebra &A, const Bimodule &M, const SLF &phi);

FinDimAlgebra square_zero_extension(const FinDimAlgebra &A, const Bimodule &M);
SLF extend_slf(const FinDimAlgebra &A, const SLF &phi_on_m);

// Subalgebra spanned by the rows of span.basis() with the given unit.
struct EmbeddedAlgebra {
    FinDimAlgebra alg;
    Subspace span;
    RVec coords(const RVec &ambient) const; // ambient vector in the span -> coordinates
    RVec ambient(const RVec &coords) const;
};
EmbeddedAlgebra subalgebra(const FinDimAlgebra &A, const Subspace &span, const RVec &unit);

// Quotient by a two-sided ideal; basis = standard vectors off the ideal's pivots.
struct QuotientAlgebra {
    FinDimAlgebra alg;
    Subspace ideal;
    std::vector<std::size_t> reps;
    RVec project(const RVec &ambient) const;
    RVec lift(const RVec &coords) const;
};
QuotientAlgebra quotient(const FinDimAlgebra &A, const Subspace &ideal);

struct SlfBlock {
    RVec central_idempotent; // in A
    std::size_t dim_block = 0;
    std::size_t dim_radical = 0;
    std::size_t dim_quotient = 0;
    FinDimAlgebra P;
    SLF phi_P;
    RightModule M;                // right P-module
    std::vector<RMat> left_basis; // left action of each basis vector of A on M
    ProjectiveBasis pb;
    bool P_symmetric = false;
    bool P_nondegenerate = false;
    bool P_basic = false;
    bool absolutely_primitive = true;

    RMat left_action(const RVec &a) const;
    Rational pseudo_trace_of(const RVec &a) const;
};

struct SlfDecomposition {
    std::vector<SlfBlock> blocks;
    std::vector<Rational> phi_values;    // phi on the basis of A
    std::vector<Rational> reconstructed; // sum of block pseudo-traces on the basis of A
    bool reconstruction_ok = false;
    bool radical_annihilates = false;
    nlohmann::json to_json() const;
};

SlfDecomposition decompose_slf_algebra(const FinDimAlgebra &A, const SLF &phi);

struct BimoduleDecomposition {
    FinDimAlgebra extension;
    SLF extended_phi;
    SlfDecomposition inner;
    std::vector<Rational> phi_values;
    std::vector<Rational> reconstructed;
    bool reconstruction_ok = false;
    bool bimodule_laws_ok = false;
    nlohmann::json to_json() const;
};

BimoduleDecomposition decompose_slf_bimodule(const FinDimAlgebra &A, const Bimodule &M, const SLF &phi);

// sum over the simple blocks of A/J(A) of one primitive idempotent each, lifted to A
RVec basic_idempotent(const FinDimAlgebra &A, bool *split_over_q = nullptr);
RVec primitive_idempotent(const FinDimAlgebra &A);

// Q, Q[e]/(e^2), Q x Q, M2(Q), upper triangular 2x2, M2(Q) x Q[e]/(e^2)
FinDimAlgebra algebra_by_name(const std::string &name);
std::vector<std::string> corpus_names();
FinDimAlgebra direct_product(const FinDimAlgebra &a, const FinDimAlgebra &b);

RVec random_integer_vector(std::mt19937_64 &rng, std::size_t n, int bound);
Report algebra_verify_suite(std::uint64_t seed, int hom_pairs = 50, int slfs_per_algebra = 3);

} // namespace pt

#endif
