#ifndef PSEUDOTRACE_LINALG_HPP
#define PSEUDOTRACE_LINALG_HPP

#include <pseudotrace/rational.hpp>

#include <optional>
#include <vector>

namespace pt
{

using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>; // row major

RMat zeros(std::size_t rows, std::size_t cols);
RMat identity(std::size_t n);
RMat matmul(const RMat &a, const RMat &b);
RVec matvec(const RMat &a, const RVec &v);
RMat transpose(const RMat &a);
RMat add(const RMat &a, const RMat &b);
RMat scaled(const RMat &a, const Rational &s);
Rational trace(const RMat &a);
bool is_zero(const RVec &v);
bool is_zero(const RMat &a);
std::size_t cols_of(const RMat &a);

struct Echelon {
    RMat rows; // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;
};

Echelon rref(RMat a, std::size_t ncols);
std::size_t rank(const RMat &a);
// basis of {x : a x = 0}
RMat nullspace(const RMat &a, std::size_t ncols);
std::optional<RVec> solve(const RMat &a, const RVec &b, std::size_t ncols);

// Row space kept in reduced echelon form for membership tests and reductions.
class Subspace
{
public:
    explicit Subspace(std::size_t ambient = 0) : n_(ambient) {}
    static Subspace span(const RMat &generators, std::size_t ambient);

    std::size_t ambient() const
    {
        return n_;
    }
    std::size_t dim() const
    {
        return basis_.size();
    }
    const RMat &basis() const
    {
        return basis_;
    }
    const std::vector<std::size_t> &pivots() const
    {
        return pivots_;
    }

    // returns true when v enlarged the space
    bool add(const RVec &v);
    RVec reduce(const RVec &v) const;
    bool contains(const RVec &v) const;
    // coordinates of a member with respect to basis(); nullopt if not a member
    std::optional<RVec> coordinates(const RVec &v) const;

private:
    std::size_t n_;
    RMat basis_;
    std::vector<std::size_t> pivots_;
};

// complement basis: standard unit vectors completing s to the ambient space
std::vector<std::size_t> complement_pivots(const Subspace &s);

} // namespace pt

#endif
