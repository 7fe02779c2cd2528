#include <pseudotrace/errors.hpp>
#include <pseudotrace/linalg.hpp>

#include <algorithm>

namespace pt
{

RMat zeros(std::size_t rows, std::size_t cols)
{
    return RMat(rows, RVec(cols, Rational(0)));
}

RMat identity(std::size_t n)
{
    RMat m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

std::size_t cols_of(const RMat &a)
{
    return a.empty() ? 0 : a[0].size();
}

RMat matmul(const RMat &a, const RMat &b)
{
    std::size_t n = a.size(), k = b.size(), m = cols_of(b);
    RMat c = zeros(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (b[t][j] != 0)
                    c[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    return c;
}

RVec matvec(const RMat &a, const RVec &v)
{
    RVec out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (a[i][j] != 0 && v[j] != 0)
                out[i] += a[i][j] * v[j];
    return out;
}

RMat transpose(const RMat &a)
{
    RMat t = zeros(cols_of(a), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

RMat add(const RMat &a, const RMat &b)
{
    RMat c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c[i].size(); ++j)
            c[i][j] += b[i][j];
    return c;
}

RMat scaled(const RMat &a, const Rational &s)
{
    RMat c = a;
    for (auto &row : c)
        for (auto &x : row)
            x *= s;
    return c;
}

Rational trace(const RMat &a)
{
    Rational t(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        t += a[i][i];
    return t;
}

bool is_zero(const RVec &v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational &x) { return x == 0; });
}

bool is_zero(const RMat &a)
{
    return std::all_of(a.begin(), a.end(), [](const RVec &r) { return is_zero(r); });
}

Echelon rref(RMat a, std::size_t ncols)
{
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
        std::size_t piv = row;
        while (piv < a.size() && a[piv][col] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[row], a[piv]);
        Rational inv = Rational(1) / a[row][col];
        for (auto &x : a[row])
            x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0)
                continue;
            Rational f = a[r][col];
            for (std::size_t j = col; j < ncols; ++j)
                if (a[row][j] != 0)
                    a[r][j] -= f * a[row][j];
        }
        e.pivots.push_back(col);
        ++row;
    }
    a.resize(row);
    e.rows = std::move(a);
    return e;
}

std::size_t rank(const RMat &a)
{
    return rref(a, cols_of(a)).pivots.size();
}

RMat nullspace(const RMat &a, std::size_t ncols)
{
    Echelon e = rref(a, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    RMat basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f])
            continue;
        RVec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.rows[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RVec> solve(const RMat &a, const RVec &b, std::size_t ncols)
{
    RMat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i)
        aug[i].push_back(b[i]);
    Echelon e = rref(aug, ncols + 1);
    RVec x(ncols, Rational(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == ncols)
            return std::nullopt;
        x[e.pivots[r]] = e.rows[r][ncols];
    }
    return x;
}

Subspace Subspace::span(const RMat &generators, std::size_t ambient)
{
    Subspace s(ambient);
    for (const auto &g : generators)
        s.add(g);
    return s;
}

RVec Subspace::reduce(const RVec &v) const
{
    RVec r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Rational &c = r[pivots_[i]];
        if (c == 0)
            continue;
        Rational f = c;
        for (std::size_t j = 0; j < n_; ++j)
            if (basis_[i][j] != 0)
                r[j] -= f * basis_[i][j];
    }
    return r;
}

bool Subspace::add(const RVec &v)
{
    if (v.size() != n_)
        throw DomainError("subspace: dimension mismatch");
    RVec r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && r[p] == 0)
        ++p;
    if (p == n_)
        return false;
    Rational inv = Rational(1) / r[p];
    for (auto &x : r)
        x *= inv;
    for (auto &row : basis_) {
        if (row[p] == 0)
            continue;
        Rational f = row[p];
        for (std::size_t j = 0; j < n_; ++j)
            if (r[j] != 0)
                row[j] -= f * r[j];
    }
    // keep rows ordered by pivot
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, p);
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(r));
    return true;
}

bool Subspace::contains(const RVec &v) const
{
    return is_zero(reduce(v));
}

std::optional<RVec> Subspace::coordinates(const RVec &v) const
{
    if (!contains(v))
        return std::nullopt;
    RVec c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
        c[i] = v[pivots_[i]];
    return c;
}

std::vector<std::size_t> complement_pivots(const Subspace &s)
{
    std::vector<bool> used(s.ambient(), false);
    for (auto p : s.pivots())
        used[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.ambient(); ++i)
        if (!used[i])
            out.push_back(i);
    return out;
}

} // namespace pt
