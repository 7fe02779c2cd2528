#include <pseudotrace/algkit.hpp>
#include <pseudotrace/errors.hpp>

#include <algorithm>
#include <functional>

namespace pt
{

namespace
{

RVec zero_vec(std::size_t n)
{
    return RVec(n, Rational(0));
}

RVec unit_vec(std::size_t n, std::size_t i)
{
    RVec v = zero_vec(n);
    v[i] = 1;
    return v;
}

RVec vadd(const RVec &a, const RVec &b)
{
    RVec c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += b[i];
    return c;
}

RVec vsub(const RVec &a, const RVec &b)
{
    RVec c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] -= b[i];
    return c;
}

RVec vscale(const RVec &a, const Rational &s)
{
    RVec c = a;
    for (auto &x : c)
        x *= s;
    return c;
}

Rational parse_entry(const nlohmann::json &j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw ValidationError("rational entries must be integers or strings p/q");
}

nlohmann::json vec_json(const RVec &v)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto &x : v)
        a.push_back(x.get_str());
    return a;
}

RVec vec_from_json(const nlohmann::json &j)
{
    RVec v;
    for (const auto &x : j)
        v.push_back(parse_entry(x));
    return v;
}

nlohmann::json mat_json(const RMat &m)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto &row : m)
        a.push_back(vec_json(row));
    return a;
}

RMat mat_from_json(const nlohmann::json &j)
{
    RMat m;
    for (const auto &row : j)
        m.push_back(vec_from_json(row));
    return m;
}

// matrix of x -> T(x) from the images of the standard basis
RMat from_columns(const std::vector<RVec> &cols, std::size_t rows)
{
    RMat m = zeros(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i)
            m[i][j] = cols[j][i];
    return m;
}

// ---- polynomials over Q, coefficients from low to high degree

using Poly = std::vector<Rational>;

void trim(Poly &p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

int deg(const Poly &p)
{
    return static_cast<int>(p.size()) - 1;
}

Poly pmul(const Poly &a, const Poly &b)
{
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

Poly psub(const Poly &a, const Poly &b)
{
    Poly c(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] -= b[i];
    trim(c);
    return c;
}

std::pair<Poly, Poly> pdivmod(Poly a, const Poly &b)
{
    trim(a);
    if (b.empty())
        throw DomainError("polynomial division by zero");
    Poly q(std::max<int>(deg(a) - deg(b) + 1, 0), Rational(0));
    while (!a.empty() && deg(a) >= deg(b)) {
        Rational c = a.back() / b.back();
        int shift = deg(a) - deg(b);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

Poly pmonic(Poly p)
{
    trim(p);
    if (p.empty())
        return p;
    Rational lead = p.back();
    for (auto &c : p)
        c /= lead;
    return p;
}

Poly pgcd(Poly a, Poly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = pdivmod(a, b).second;
        a = b;
        b = r;
    }
    return pmonic(a);
}

// u with u*a = 1 mod b, for coprime a, b
Poly inverse_mod(const Poly &a, const Poly &b)
{
    Poly r0 = b, r1 = pdivmod(a, b).second;
    Poly s0, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = pdivmod(r0, r1);
        Poly s = psub(s0, pmul(q, s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if (deg(r0) != 0)
        throw DomainError("polynomials are not coprime");
    return vscale(s0, Rational(1) / r0[0]);
}

Poly pderiv(const Poly &p)
{
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * Rational(static_cast<long>(i)));
    trim(d);
    return d;
}

std::vector<Integer> divisors_of(Integer n)
{
    if (n < 0)
        n = -n;
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n)
                out.push_back(n / d);
        }
    }
    return out;
}

Rational peval(const Poly &p, const Rational &x)
{
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

std::vector<Rational> rational_roots(const Poly &p0)
{
    Poly p = pmonic(p0);
    std::vector<Rational> roots;
    if (p.empty())
        return roots;
    std::size_t z = 0;
    while (z < p.size() && p[z] == 0)
        ++z;
    if (z > 0)
        roots.push_back(Rational(0));
    Poly q(p.begin() + static_cast<std::ptrdiff_t>(z), p.end());
    if (deg(q) < 1)
        return roots;
    Integer l = 1;
    for (const auto &c : q)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Integer a0 = Integer(q.front() * Rational(l));
    Integer an = Integer(q.back() * Rational(l));
    for (const auto &num : divisors_of(a0))
        for (const auto &den : divisors_of(an))
            for (int sgn : {1, -1}) {
                Rational r(Integer(sgn * num), den);
                r.canonicalize();
                if (peval(q, r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end())
                    roots.push_back(r);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

struct Factorization {
    std::vector<Poly> parts; // pairwise coprime, product is the input
    bool undecidable = false;
    bool has_nonlinear = false;
};

Factorization coprime_parts(const Poly &mu)
{
    Factorization f;
    Poly rest = pmonic(mu);
    for (const auto &r : rational_roots(rest)) {
        Poly lin{-r, Rational(1)};
        Poly part{Rational(1)};
        while (true) {
            auto [q, rem] = pdivmod(rest, lin);
            if (!rem.empty())
                break;
            rest = q;
            part = pmul(part, lin);
        }
        f.parts.push_back(part);
    }
    if (deg(rest) >= 1) {
        f.has_nonlinear = true;
        Poly sf = pdivmod(rest, pgcd(rest, pderiv(rest))).first;
        if (deg(sf) >= 4)
            f.undecidable = true;
        f.parts.push_back(rest);
    }
    return f;
}

// minimal polynomial of z in the corner algebra with identity e
Poly minimal_polynomial(const FinDimAlgebra &A, const RVec &z, const RVec &e)
{
    std::vector<RVec> powers{e};
    while (true) {
        RVec next = A.mul(powers.back(), z);
        RMat m = zeros(A.dim(), powers.size());
        for (std::size_t j = 0; j < powers.size(); ++j)
            for (std::size_t i = 0; i < A.dim(); ++i)
                m[i][j] = powers[j][i];
        auto sol = solve(m, next, powers.size());
        if (sol) {
            Poly mu = vscale(*sol, Rational(-1));
            mu.push_back(Rational(1));
            return mu;
        }
        powers.push_back(next);
        if (powers.size() > A.dim() + 1)
            throw DomainError("minimal polynomial degree exceeds the dimension");
    }
}

RVec eval_at(const FinDimAlgebra &A, const Poly &p, const RVec &z, const RVec &e)
{
    RVec acc = zero_vec(A.dim());
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = vadd(A.mul(acc, z), vscale(e, *it));
    return acc;
}

// idempotents e_j of the corner with identity e splitting along the coprime parts of mu(z)
std::vector<RVec> crt_idempotents(const FinDimAlgebra &A, const Poly &mu, const std::vector<Poly> &parts,
                                  const RVec &z, const RVec &e)
{
    std::vector<RVec> out;
    for (const auto &f : parts) {
        Poly g = pdivmod(mu, f).first;
        Poly u = inverse_mod(g, f);
        Poly eps = pdivmod(pmul(u, g), mu).second;
        out.push_back(eval_at(A, eps, z, e));
    }
    return out;
}

Subspace corner_span(const FinDimAlgebra &A, const RVec &e, bool two_sided)
{
    Subspace s(A.dim());
    for (std::size_t i = 0; i < A.dim(); ++i) {
        RVec b = A.mul(e, A.basis(i));
        if (two_sided)
            b = A.mul(b, e);
        s.add(b);
    }
    return s;
}

std::vector<RVec> candidates(const Subspace &s)
{
    std::vector<RVec> c = s.basis();
    const auto &b = s.basis();
    if (b.size() > 1) {
        RVec sum = zero_vec(s.ambient());
        for (std::size_t i = 0; i < b.size(); ++i)
            sum = vadd(sum, vscale(b[i], Rational(static_cast<long>(i + 1))));
        c.push_back(sum);
    }
    return c;
}

struct SplitOutcome {
    std::vector<RVec> pieces;
    bool undecidable = false;
    bool nonlinear = false;
};

// try to split the corner with identity e (elements from the span s) by one element
SplitOutcome try_split(const FinDimAlgebra &A, const RVec &e, const Subspace &s)
{
    SplitOutcome out;
    for (const auto &z : candidates(s)) {
        Poly mu = minimal_polynomial(A, z, e);
        Factorization f = coprime_parts(mu);
        if (f.parts.size() >= 2) {
            out.pieces = crt_idempotents(A, mu, f.parts, z, e);
            return out;
        }
        out.undecidable = out.undecidable || f.undecidable;
        out.nonlinear = out.nonlinear || f.has_nonlinear;
    }
    return out;
}

bool is_local_corner(const FinDimAlgebra &A, const RVec &e, const Subspace &s)
{
    EmbeddedAlgebra C = subalgebra(A, s, e);
    return C.alg.dim() - jacobson_radical(C.alg).dim() == 1;
}

void split_central(const FinDimAlgebra &Z, const RVec &e, std::vector<RVec> &out, bool &absolute)
{
    Subspace s = corner_span(Z, e, false);
    if (s.dim() <= 1) {
        out.push_back(e);
        return;
    }
    SplitOutcome o = try_split(Z, e, s);
    if (!o.pieces.empty()) {
        for (const auto &p : o.pieces)
            split_central(Z, p, out, absolute);
        return;
    }
    if (!is_local_corner(Z, e, s)) {
        if (o.undecidable)
            throw IrreducibilityError("cannot decide whether a central block splits over Q");
        absolute = false;
    }
    out.push_back(e);
}

RVec primitive_in_semisimple(const FinDimAlgebra &S, const RVec &e, bool &absolute)
{
    Subspace s = corner_span(S, e, true);
    if (s.dim() <= 1)
        return e;
    SplitOutcome o = try_split(S, e, s);
    if (o.pieces.empty()) {
        if (o.undecidable)
            throw IrreducibilityError("cannot decide whether a simple block splits over Q");
        absolute = false;
        return e;
    }
    std::size_t best = 0, best_dim = s.dim() + 1;
    for (std::size_t i = 0; i < o.pieces.size(); ++i) {
        std::size_t d = corner_span(S, o.pieces[i], true).dim();
        if (d < best_dim) {
            best = i;
            best_dim = d;
        }
    }
    return primitive_in_semisimple(S, o.pieces[best], absolute);
}

RMat restrict_operator(const std::function<RVec(const RVec &)> &op, const Subspace &s)
{
    std::vector<RVec> cols;
    for (const auto &b : s.basis()) {
        RVec img = op(b);
        auto c = s.coordinates(img);
        if (!c)
            throw DomainError("operator does not preserve the subspace");
        cols.push_back(*c);
    }
    return from_columns(cols, s.dim());
}

} // namespace

// ---- FinDimAlgebra

FinDimAlgebra::FinDimAlgebra(std::vector<std::vector<RVec>> mul, RVec unit) : mul_(std::move(mul)), unit_(std::move(unit))
{
    const std::size_t d = unit_.size();
    if (mul_.size() != d)
        throw ValidationError("multiplication table has the wrong size");
    for (const auto &row : mul_) {
        if (row.size() != d)
            throw ValidationError("multiplication table has the wrong size");
        for (const auto &v : row)
            if (v.size() != d)
                throw ValidationError("multiplication table has the wrong size");
    }
    for (std::size_t i = 0; i < d; ++i) {
        RVec b = basis(i);
        if (this->mul(unit_, b) != b || this->mul(b, unit_) != b)
            throw ValidationError("unit law fails on basis vector " + std::to_string(i));
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (this->mul(mul_[i][j], basis(k)) != this->mul(basis(i), mul_[j][k]))
                    throw ValidationError("associativity fails on basis triple (" + std::to_string(i) + "," +
                                          std::to_string(j) + "," + std::to_string(k) + ")");
}

RVec FinDimAlgebra::basis(std::size_t i) const
{
    return unit_vec(dim(), i);
}

RVec FinDimAlgebra::mul(const RVec &a, const RVec &b) const
{
    const std::size_t d = dim();
    RVec out = zero_vec(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b[j] == 0)
                continue;
            Rational f = a[i] * b[j];
            const RVec &c = mul_[i][j];
            for (std::size_t k = 0; k < d; ++k)
                if (c[k] != 0)
                    out[k] += f * c[k];
        }
    }
    return out;
}

RMat FinDimAlgebra::left(const RVec &a) const
{
    std::vector<RVec> cols;
    for (std::size_t j = 0; j < dim(); ++j)
        cols.push_back(mul(a, basis(j)));
    return from_columns(cols, dim());
}

RMat FinDimAlgebra::right(const RVec &a) const
{
    std::vector<RVec> cols;
    for (std::size_t j = 0; j < dim(); ++j)
        cols.push_back(mul(basis(j), a));
    return from_columns(cols, dim());
}

nlohmann::json FinDimAlgebra::to_json() const
{
    nlohmann::json mul = nlohmann::json::array();
    for (const auto &row : mul_) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto &v : row)
            r.push_back(vec_json(v));
        mul.push_back(r);
    }
    return {{"dim", dim()}, {"unit", vec_json(unit_)}, {"mul", mul}};
}

FinDimAlgebra FinDimAlgebra::from_json(const nlohmann::json &j)
{
    std::size_t d = j.at("dim").get<std::size_t>();
    RVec unit = vec_from_json(j.at("unit"));
    std::vector<std::vector<RVec>> mul;
    for (const auto &row : j.at("mul")) {
        std::vector<RVec> r;
        for (const auto &v : row)
            r.push_back(vec_from_json(v));
        mul.push_back(r);
    }
    if (unit.size() != d)
        throw ValidationError("unit has the wrong length");
    return FinDimAlgebra(mul, unit);
}

// ---- modules

RMat RightModule::rho(const RVec &a) const
{
    RMat m = zeros(dim, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            m = add(m, scaled(action[i], a[i]));
    return m;
}

void RightModule::validate(const FinDimAlgebra &A) const
{
    if (action.size() != A.dim())
        throw ValidationError("module needs one action matrix per basis vector");
    for (const auto &m : action)
        if (m.size() != dim || cols_of(m) != dim)
            throw ValidationError("action matrix has the wrong size");
    if (rho(A.unit()) != identity(dim))
        throw ValidationError("unit does not act as the identity");
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            if (rho(A.table()[i][j]) != matmul(action[j], action[i]))
                throw ValidationError("right action is not compatible with the product");
}

RightModule RightModule::regular(const FinDimAlgebra &A)
{
    RightModule M;
    M.dim = A.dim();
    for (std::size_t i = 0; i < A.dim(); ++i)
        M.action.push_back(A.right(A.basis(i)));
    return M;
}

RightModule RightModule::direct_sum(const RightModule &a, const RightModule &b)
{
    RightModule M;
    M.dim = a.dim + b.dim;
    for (std::size_t i = 0; i < a.action.size(); ++i) {
        RMat m = zeros(M.dim, M.dim);
        for (std::size_t r = 0; r < a.dim; ++r)
            for (std::size_t c = 0; c < a.dim; ++c)
                m[r][c] = a.action[i][r][c];
        for (std::size_t r = 0; r < b.dim; ++r)
            for (std::size_t c = 0; c < b.dim; ++c)
                m[a.dim + r][a.dim + c] = b.action[i][r][c];
        M.action.push_back(m);
    }
    return M;
}

nlohmann::json RightModule::to_json() const
{
    nlohmann::json acts = nlohmann::json::array();
    for (const auto &m : action)
        acts.push_back(mat_json(m));
    return {{"dim", dim}, {"action", acts}};
}

RightModule RightModule::from_json(const nlohmann::json &j)
{
    RightModule M;
    M.dim = j.at("dim").get<std::size_t>();
    for (const auto &m : j.at("action"))
        M.action.push_back(mat_from_json(m));
    return M;
}

RightModule submodule(const RightModule &M, const Subspace &s)
{
    RightModule out;
    out.dim = s.dim();
    for (const auto &a : M.action)
        out.action.push_back(restrict_operator([&](const RVec &v) { return matvec(a, v); }, s));
    return out;
}

RMat Bimodule::lambda(const RVec &a) const
{
    RMat m = zeros(dim, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            m = add(m, scaled(left[i], a[i]));
    return m;
}

RMat Bimodule::rho(const RVec &a) const
{
    RMat m = zeros(dim, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            m = add(m, scaled(right[i], a[i]));
    return m;
}

void Bimodule::validate(const FinDimAlgebra &A) const
{
    if (left.size() != A.dim() || right.size() != A.dim())
        throw ValidationError("bimodule needs left and right matrices per basis vector");
    if (lambda(A.unit()) != identity(dim) || rho(A.unit()) != identity(dim))
        throw ValidationError("unit does not act as the identity on the bimodule");
    for (std::size_t i = 0; i < A.dim(); ++i) {
        for (std::size_t j = 0; j < A.dim(); ++j) {
            if (lambda(A.table()[i][j]) != matmul(left[i], left[j]))
                throw ValidationError("left action is not compatible with the product");
            if (rho(A.table()[i][j]) != matmul(right[j], right[i]))
                throw ValidationError("right action is not compatible with the product");
            if (matmul(left[i], right[j]) != matmul(right[j], left[i]))
                throw ValidationError("left and right actions do not commute");
        }
    }
}

Bimodule Bimodule::regular(const FinDimAlgebra &A)
{
    Bimodule M;
    M.dim = A.dim();
    for (std::size_t i = 0; i < A.dim(); ++i) {
        M.left.push_back(A.left(A.basis(i)));
        M.right.push_back(A.right(A.basis(i)));
    }
    return M;
}

nlohmann::json Bimodule::to_json() const
{
    nlohmann::json l = nlohmann::json::array(), r = nlohmann::json::array();
    for (const auto &m : left)
        l.push_back(mat_json(m));
    for (const auto &m : right)
        r.push_back(mat_json(m));
    return {{"dim", dim}, {"left", l}, {"right", r}};
}

Bimodule Bimodule::from_json(const nlohmann::json &j)
{
    Bimodule M;
    M.dim = j.at("dim").get<std::size_t>();
    for (const auto &m : j.at("left"))
        M.left.push_back(mat_from_json(m));
    for (const auto &m : j.at("right"))
        M.right.push_back(mat_from_json(m));
    return M;
}

// ---- symmetric linear functions

Rational apply(const SLF &phi, const RVec &v)
{
    Rational acc(0);
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (phi[i] != 0 && v[i] != 0)
            acc += phi[i] * v[i];
    return acc;
}

bool is_symmetric(const FinDimAlgebra &A, const SLF &phi)
{
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            if (pt::apply(phi, A.table()[i][j]) != pt::apply(phi, A.table()[j][i]))
                return false;
    return true;
}

bool is_symmetric(const FinDimAlgebra &A, const Bimodule &M, const SLF &phi)
{
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t k = 0; k < M.dim; ++k) {
            RVec m = unit_vec(M.dim, k);
            if (pt::apply(phi, matvec(M.left[i], m)) != pt::apply(phi, matvec(M.right[i], m)))
                return false;
        }
    return true;
}

RMat slf_space(const FinDimAlgebra &A)
{
    RMat rows;
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = i + 1; j < A.dim(); ++j)
            rows.push_back(vsub(A.table()[i][j], A.table()[j][i]));
    if (rows.empty())
        return identity(A.dim());
    return nullspace(rows, A.dim());
}

Subspace jacobson_radical(const FinDimAlgebra &A)
{
    const std::size_t d = A.dim();
    RVec tr(d, Rational(0));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j)
            tr[k] += A.table()[k][j][j];
    RMat g = zeros(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            g[i][j] = pt::apply(tr, A.table()[i][j]);
    return Subspace::span(nullspace(g, d), d);
}

Subspace center(const FinDimAlgebra &A)
{
    const std::size_t d = A.dim();
    RMat rows;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            RVec r(d, Rational(0));
            for (std::size_t j = 0; j < d; ++j)
                r[j] = A.table()[j][i][k] - A.table()[i][j][k];
            rows.push_back(r);
        }
    return Subspace::span(nullspace(rows, d), d);
}

Subspace commutator_subspace(const FinDimAlgebra &A)
{
    Subspace s(A.dim());
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = i + 1; j < A.dim(); ++j)
            s.add(vsub(A.table()[i][j], A.table()[j][i]));
    return s;
}

// ---- subalgebras and quotients

RVec EmbeddedAlgebra::coords(const RVec &ambient) const
{
    auto c = span.coordinates(ambient);
    if (!c)
        throw DomainError("vector is not in the subalgebra");
    return *c;
}

RVec EmbeddedAlgebra::ambient(const RVec &c) const
{
    RVec out = zero_vec(span.ambient());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0)
            out = vadd(out, vscale(span.basis()[i], c[i]));
    return out;
}

EmbeddedAlgebra subalgebra(const FinDimAlgebra &A, const Subspace &span, const RVec &unit)
{
    EmbeddedAlgebra E;
    E.span = span;
    const auto &b = span.basis();
    std::vector<std::vector<RVec>> mul(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            mul[i].push_back(E.coords(A.mul(b[i], b[j])));
    E.alg = FinDimAlgebra(mul, E.coords(unit));
    return E;
}

RVec QuotientAlgebra::project(const RVec &ambient) const
{
    RVec r = ideal.reduce(ambient);
    RVec out;
    for (auto i : reps)
        out.push_back(r[i]);
    return out;
}

RVec QuotientAlgebra::lift(const RVec &c) const
{
    RVec out = zero_vec(ideal.ambient());
    for (std::size_t i = 0; i < reps.size(); ++i)
        out[reps[i]] = c[i];
    return out;
}

QuotientAlgebra quotient(const FinDimAlgebra &A, const Subspace &ideal)
{
    QuotientAlgebra Q;
    Q.ideal = ideal;
    Q.reps = complement_pivots(ideal);
    if (Q.reps.empty())
        return Q;
    std::vector<std::vector<RVec>> mul(Q.reps.size());
    for (std::size_t i = 0; i < Q.reps.size(); ++i)
        for (std::size_t j = 0; j < Q.reps.size(); ++j)
            mul[i].push_back(Q.project(A.table()[Q.reps[i]][Q.reps[j]]));
    Q.alg = FinDimAlgebra(mul, Q.project(A.unit()));
    return Q;
}

// ---- idempotents

Idempotents central_idempotents(const FinDimAlgebra &A)
{
    Idempotents out;
    EmbeddedAlgebra Z = subalgebra(A, center(A), A.unit());
    std::vector<RVec> pieces;
    split_central(Z.alg, Z.alg.unit(), pieces, out.absolutely_primitive);
    for (const auto &p : pieces)
        out.idempotents.push_back(Z.ambient(p));
    std::sort(out.idempotents.begin(), out.idempotents.end(), std::greater<>());
    return out;
}

RVec newton_lift_idempotent(const FinDimAlgebra &A, RVec e)
{
    for (int it = 0; it < 64; ++it) {
        RVec e2 = A.mul(e, e);
        if (e2 == e)
            return e;
        RVec e3 = A.mul(e2, e);
        e = vsub(vscale(e2, Rational(3)), vscale(e3, Rational(2)));
    }
    throw DomainError("idempotent lifting did not converge");
}

RVec basic_idempotent(const FinDimAlgebra &A, bool *split_over_q)
{
    QuotientAlgebra S = quotient(A, jacobson_radical(A));
    bool absolute = true;
    Idempotents cs = central_idempotents(S.alg);
    absolute = absolute && cs.absolutely_primitive;
    RVec eps = zero_vec(S.alg.dim());
    for (const auto &c : cs.idempotents)
        eps = vadd(eps, primitive_in_semisimple(S.alg, c, absolute));
    if (split_over_q)
        *split_over_q = absolute;
    return newton_lift_idempotent(A, S.lift(eps));
}

RVec primitive_idempotent(const FinDimAlgebra &A)
{
    QuotientAlgebra S = quotient(A, jacobson_radical(A));
    bool absolute = true;
    Idempotents cs = central_idempotents(S.alg);
    RVec eps = primitive_in_semisimple(S.alg, cs.idempotents.front(), absolute);
    return newton_lift_idempotent(A, S.lift(eps));
}

// ---- homomorphisms and projective bases

std::vector<RMat> hom_space(const FinDimAlgebra &A, const RightModule &M1, const RightModule &M2)
{
    const std::size_t n1 = M1.dim, n2 = M2.dim, nv = n1 * n2;
    auto idx = [n1](std::size_t r, std::size_t c) { return r * n1 + c; };
    RMat rows;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        const RMat &p1 = M1.action[i];
        const RMat &p2 = M2.action[i];
        for (std::size_t r = 0; r < n2; ++r)
            for (std::size_t c = 0; c < n1; ++c) {
                RVec row(nv, Rational(0));
                for (std::size_t t = 0; t < n1; ++t)
                    if (p1[t][c] != 0)
                        row[idx(r, t)] += p1[t][c];
                for (std::size_t t = 0; t < n2; ++t)
                    if (p2[r][t] != 0)
                        row[idx(t, c)] -= p2[r][t];
                if (!is_zero(row))
                    rows.push_back(row);
            }
    }
    RMat basis = rows.empty() ? identity(nv) : nullspace(rows, nv);
    std::vector<RMat> out;
    for (const auto &v : basis) {
        RMat f = zeros(n2, n1);
        for (std::size_t r = 0; r < n2; ++r)
            for (std::size_t c = 0; c < n1; ++c)
                f[r][c] = v[idx(r, c)];
        out.push_back(f);
    }
    return out;
}

bool is_module_map(const FinDimAlgebra &A, const RightModule &M1, const RightModule &M2, const RMat &f)
{
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (matmul(f, M1.action[i]) != matmul(M2.action[i], f))
            return false;
    return true;
}

ProjectiveBasis projectivity_and_basis(const FinDimAlgebra &A, const RightModule &M,
                                       const std::optional<std::vector<RVec>> &generators)
{
    const std::size_t d = A.dim(), n = M.dim;
    std::vector<RVec> gens;
    if (generators) {
        gens = *generators;
    } else {
        Subspace covered(n);
        for (std::size_t k = 0; k < n; ++k) {
            RVec v = unit_vec(n, k);
            if (covered.contains(v))
                continue;
            gens.push_back(v);
            for (std::size_t j = 0; j < d; ++j)
                covered.add(matvec(M.action[j], v));
        }
    }
    ProjectiveBasis pb;
    if (n == 0)
        return pb;
    const std::size_t g = gens.size(), rows_s = g * d, nv = rows_s * n;
    auto idx = [n](std::size_t r, std::size_t c) { return r * n + c; };
    // pi: A^g -> M, column (t, j) = g_t e_j
    RMat pi = zeros(n, rows_s);
    for (std::size_t t = 0; t < g; ++t)
        for (std::size_t j = 0; j < d; ++j) {
            RVec img = matvec(M.action[j], gens[t]);
            for (std::size_t p = 0; p < n; ++p)
                pi[p][t * d + j] = img[p];
        }
    RMat eqs;
    RVec rhs;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t c = 0; c < n; ++c) {
            RVec row(nv, Rational(0));
            for (std::size_t r = 0; r < rows_s; ++r)
                if (pi[p][r] != 0)
                    row[idx(r, c)] = pi[p][r];
            eqs.push_back(row);
            rhs.push_back(p == c ? Rational(1) : Rational(0));
        }
    for (std::size_t i = 0; i < d; ++i) {
        RMat Ri = A.right(A.basis(i));
        const RMat &rho = M.action[i];
        for (std::size_t r = 0; r < rows_s; ++r) {
            std::size_t t = r / d, a = r % d;
            for (std::size_t c = 0; c < n; ++c) {
                RVec row(nv, Rational(0));
                for (std::size_t u = 0; u < n; ++u)
                    if (rho[u][c] != 0)
                        row[idx(r, u)] += rho[u][c];
                for (std::size_t b = 0; b < d; ++b)
                    if (Ri[a][b] != 0)
                        row[idx(t * d + b, c)] -= Ri[a][b];
                if (!is_zero(row)) {
                    eqs.push_back(row);
                    rhs.push_back(Rational(0));
                }
            }
        }
    }
    auto sol = solve(eqs, rhs, nv);
    if (!sol)
        throw NotProjectiveError("no module splitting of the free cover exists");
    for (std::size_t t = 0; t < g; ++t) {
        RMat alpha = zeros(d, n);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < n; ++c)
                alpha[a][c] = (*sol)[idx(t * d + a, c)];
        pb.m.push_back(gens[t]);
        pb.alpha.push_back(alpha);
    }
    return pb;
}

bool verify_projective_basis(const FinDimAlgebra &A, const RightModule &M, const ProjectiveBasis &pb)
{
    RightModule reg = RightModule::regular(A);
    for (const auto &alpha : pb.alpha)
        if (!is_module_map(A, M, reg, alpha))
            return false;
    for (std::size_t k = 0; k < M.dim; ++k) {
        RVec m = unit_vec(M.dim, k);
        RVec acc = zero_vec(M.dim);
        for (std::size_t t = 0; t < pb.m.size(); ++t)
            acc = vadd(acc, matvec(M.rho(matvec(pb.alpha[t], m)), pb.m[t]));
        if (acc != m)
            return false;
    }
    return true;
}

RVec hs_trace_lift(const ProjectiveBasis &pb, const RMat &f)
{
    if (pb.alpha.empty())
        return {};
    RVec acc = zero_vec(pb.alpha.front().size());
    for (std::size_t t = 0; t < pb.m.size(); ++t)
        acc = vadd(acc, matvec(pb.alpha[t], matvec(f, pb.m[t])));
    return acc;
}

RVec hs_trace(const FinDimAlgebra &A, const ProjectiveBasis &pb, const RMat &f)
{
    RVec lift = hs_trace_lift(pb, f);
    if (lift.empty())
        lift = zero_vec(A.dim());
    return commutator_subspace(A).reduce(lift);
}

Rational pseudo_trace(const SLF &phi, const ProjectiveBasis &pb, const RMat &f)
{
    RVec lift = hs_trace_lift(pb, f);
    return lift.empty() ? Rational(0) : pt::apply(phi, lift);
}

Subspace slf_radical(const FinDimAlgebra &A, const SLF &phi)
{
    const std::size_t d = A.dim();
    RMat g = zeros(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            g[i][j] = pt::apply(phi, A.table()[i][j]);
    return Subspace::span(nullspace(g, d), d);
}

Subspace slf_radical(const FinDimAlgebra &A, const Bimodule &M, const SLF &phi)
{
    return slf_radical(square_zero_extension(A, M), extend_slf(A, phi));
}

FinDimAlgebra square_zero_extension(const FinDimAlgebra &A, const Bimodule &M)
{
    M.validate(A);
    const std::size_t d = A.dim(), n = M.dim, D = d + n;
    std::vector<std::vector<RVec>> mul(D, std::vector<RVec>(D, zero_vec(D)));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                mul[i][j][k] = A.table()[i][j][k];
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t r = 0; r < n; ++r) {
                mul[i][d + k][d + r] = M.left[i][r][k];
                mul[d + k][i][d + r] = M.right[i][r][k];
            }
        }
    }
    RVec unit = zero_vec(D);
    for (std::size_t i = 0; i < d; ++i)
        unit[i] = A.unit()[i];
    return FinDimAlgebra(mul, unit);
}

SLF extend_slf(const FinDimAlgebra &A, const SLF &phi_on_m)
{
    SLF out = zero_vec(A.dim());
    out.insert(out.end(), phi_on_m.begin(), phi_on_m.end());
    return out;
}

// ---- decompositions

RMat SlfBlock::left_action(const RVec &a) const
{
    RMat m = zeros(M.dim, M.dim);
    for (std::size_t j = 0; j < a.size() && j < left_basis.size(); ++j)
        if (a[j] != 0)
            m = add(m, scaled(left_basis[j], a[j]));
    return m;
}

Rational SlfBlock::pseudo_trace_of(const RVec &a) const
{
    if (M.dim == 0)
        return Rational(0);
    return pseudo_trace(phi_P, pb, left_action(a));
}

namespace
{

bool is_basic(const FinDimAlgebra &P)
{
    QuotientAlgebra S = quotient(P, jacobson_radical(P));
    if (S.reps.empty())
        return true;
    if (commutator_subspace(S.alg).dim() != 0)
        return false;
    Idempotents cs = central_idempotents(S.alg);
    return cs.absolutely_primitive && cs.idempotents.size() == S.alg.dim();
}

SlfBlock build_block(const FinDimAlgebra &A, const SLF &phi, const RVec &e)
{
    SlfBlock blk;
    blk.central_idempotent = e;
    Subspace ai_span(A.dim());
    for (std::size_t j = 0; j < A.dim(); ++j)
        ai_span.add(A.mul(A.basis(j), e));
    EmbeddedAlgebra Ai = subalgebra(A, ai_span, e);
    blk.dim_block = Ai.alg.dim();
    SLF phi_i;
    for (const auto &row : ai_span.basis())
        phi_i.push_back(pt::apply(phi, row));
    Subspace rad = slf_radical(Ai.alg, phi_i);
    blk.dim_radical = rad.dim();
    blk.dim_quotient = blk.dim_block - blk.dim_radical;
    if (blk.dim_quotient == 0) {
        blk.M.dim = 0;
        blk.left_basis.assign(A.dim(), RMat{});
        blk.P_symmetric = blk.P_nondegenerate = blk.P_basic = true;
        return blk;
    }
    QuotientAlgebra R = quotient(Ai.alg, rad);
    SLF phi_R;
    for (auto r : R.reps)
        phi_R.push_back(phi_i[r]);
    bool split = true;
    RVec ebar = basic_idempotent(R.alg, &split);
    blk.absolutely_primitive = split;

    Subspace p_span(R.alg.dim()), m_span(R.alg.dim());
    for (std::size_t j = 0; j < R.alg.dim(); ++j) {
        RVec bj = R.alg.mul(R.alg.basis(j), ebar);
        m_span.add(bj);
        p_span.add(R.alg.mul(ebar, bj));
    }
    EmbeddedAlgebra P = subalgebra(R.alg, p_span, ebar);
    blk.P = P.alg;
    for (const auto &row : p_span.basis())
        blk.phi_P.push_back(pt::apply(phi_R, row));
    blk.M.dim = m_span.dim();
    for (const auto &p : p_span.basis())
        blk.M.action.push_back(restrict_operator([&](const RVec &x) { return R.alg.mul(x, p); }, m_span));
    blk.M.validate(blk.P);
    for (std::size_t j = 0; j < A.dim(); ++j) {
        RVec r = R.project(Ai.coords(A.mul(A.basis(j), e)));
        blk.left_basis.push_back(restrict_operator([&](const RVec &x) { return R.alg.mul(r, x); }, m_span));
    }
    blk.pb = projectivity_and_basis(blk.P, blk.M);
    if (!verify_projective_basis(blk.P, blk.M, blk.pb))
        throw DomainError("internal: projective basis identity fails");
    blk.P_symmetric = is_symmetric(blk.P, blk.phi_P);
    blk.P_nondegenerate = slf_radical(blk.P, blk.phi_P).dim() == 0;
    blk.P_basic = is_basic(blk.P);
    return blk;
}

nlohmann::json rationals_json(const std::vector<Rational> &v)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto &x : v)
        a.push_back(x.get_str());
    return a;
}

} // namespace

SlfDecomposition decompose_slf_algebra(const FinDimAlgebra &A, const SLF &phi)
{
    if (phi.size() != A.dim())
        throw ValidationError("linear function has the wrong length");
    if (!is_symmetric(A, phi))
        throw ValidationError("linear function is not symmetric");
    SlfDecomposition out;
    for (const auto &e : central_idempotents(A).idempotents)
        out.blocks.push_back(build_block(A, phi, e));
    out.reconstruction_ok = true;
    for (std::size_t j = 0; j < A.dim(); ++j) {
        RVec b = A.basis(j);
        Rational acc(0);
        for (const auto &blk : out.blocks)
            acc += blk.pseudo_trace_of(b);
        out.phi_values.push_back(pt::apply(phi, b));
        out.reconstructed.push_back(acc);
        if (acc != out.phi_values.back())
            out.reconstruction_ok = false;
    }
    out.radical_annihilates = true;
    Subspace rad = slf_radical(A, phi);
    for (const auto &nu : rad.basis())
        for (const auto &blk : out.blocks)
            if (blk.M.dim > 0 && !is_zero(blk.left_action(nu)))
                out.radical_annihilates = false;
    return out;
}

nlohmann::json SlfDecomposition::to_json() const
{
    nlohmann::json bl = nlohmann::json::array();
    for (const auto &b : blocks) {
        nlohmann::json j = {{"central_idempotent", vec_json(b.central_idempotent)},
                            {"dim_block", b.dim_block},
                            {"dim_radical", b.dim_radical},
                            {"dim_quotient", b.dim_quotient},
                            {"dim_M", b.M.dim},
                            {"P_symmetric", b.P_symmetric},
                            {"P_nondegenerate", b.P_nondegenerate},
                            {"P_basic", b.P_basic},
                            {"split_over_Q", b.absolutely_primitive}};
        if (b.dim_quotient > 0) {
            j["P"] = b.P.to_json();
            j["phi_P"] = vec_json(b.phi_P);
            j["projective_basis_size"] = b.pb.m.size();
        }
        bl.push_back(j);
    }
    return {{"blocks", bl},
            {"phi", rationals_json(phi_values)},
            {"reconstructed", rationals_json(reconstructed)},
            {"reconstruction_ok", reconstruction_ok},
            {"radical_annihilates", radical_annihilates}};
}

BimoduleDecomposition decompose_slf_bimodule(const FinDimAlgebra &A, const Bimodule &M, const SLF &phi)
{
    M.validate(A);
    if (phi.size() != M.dim)
        throw ValidationError("linear function has the wrong length");
    if (!is_symmetric(A, M, phi))
        throw ValidationError("linear function on the bimodule is not symmetric");
    BimoduleDecomposition out;
    out.extension = square_zero_extension(A, M);
    out.extended_phi = extend_slf(A, phi);
    out.inner = decompose_slf_algebra(out.extension, out.extended_phi);
    const std::size_t d = A.dim(), D = out.extension.dim();
    auto embed_m = [&](const RVec &m) {
        RVec v = zero_vec(D);
        for (std::size_t k = 0; k < M.dim; ++k)
            v[d + k] = m[k];
        return v;
    };
    auto embed_a = [&](const RVec &a) {
        RVec v = zero_vec(D);
        for (std::size_t k = 0; k < d; ++k)
            v[k] = a[k];
        return v;
    };
    out.reconstruction_ok = true;
    for (std::size_t k = 0; k < M.dim; ++k) {
        RVec m = unit_vec(M.dim, k);
        Rational acc(0);
        for (const auto &blk : out.inner.blocks)
            acc += blk.pseudo_trace_of(embed_m(m));
        out.phi_values.push_back(pt::apply(phi, m));
        out.reconstructed.push_back(acc);
        if (acc != out.phi_values.back())
            out.reconstruction_ok = false;
    }
    out.bimodule_laws_ok = true;
    for (const auto &blk : out.inner.blocks) {
        if (blk.M.dim == 0)
            continue;
        for (std::size_t k = 0; k < M.dim; ++k) {
            RVec m = unit_vec(M.dim, k);
            RMat fm = blk.left_action(embed_m(m));
            for (std::size_t i = 0; i < d; ++i) {
                RVec a = A.basis(i);
                RMat la = blk.left_action(embed_a(a));
                if (blk.left_action(embed_m(matvec(M.rho(a), m))) != matmul(fm, la))
                    out.bimodule_laws_ok = false;
                if (blk.left_action(embed_m(matvec(M.lambda(a), m))) != matmul(la, fm))
                    out.bimodule_laws_ok = false;
            }
            for (const auto &rp : blk.M.action)
                if (matmul(fm, rp) != matmul(rp, fm))
                    out.bimodule_laws_ok = false;
        }
    }
    return out;
}

nlohmann::json BimoduleDecomposition::to_json() const
{
    return {{"extension_dim", extension.dim()},
            {"algebra_decomposition", inner.to_json()},
            {"phi", rationals_json(phi_values)},
            {"reconstructed", rationals_json(reconstructed)},
            {"reconstruction_ok", reconstruction_ok},
            {"bimodule_laws_ok", bimodule_laws_ok}};
}

// ---- corpus

namespace
{

FinDimAlgebra from_products(std::size_t d, const std::function<RVec(std::size_t, std::size_t)> &prod, RVec unit)
{
    std::vector<std::vector<RVec>> mul(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            mul[i].push_back(prod(i, j));
    return FinDimAlgebra(mul, unit);
}

} // namespace

FinDimAlgebra direct_product(const FinDimAlgebra &a, const FinDimAlgebra &b)
{
    const std::size_t da = a.dim(), db = b.dim(), d = da + db;
    RVec unit = a.unit();
    unit.insert(unit.end(), b.unit().begin(), b.unit().end());
    return from_products(
        d,
        [&](std::size_t i, std::size_t j) {
            RVec v = zero_vec(d);
            if (i < da && j < da)
                for (std::size_t k = 0; k < da; ++k)
                    v[k] = a.table()[i][j][k];
            if (i >= da && j >= da)
                for (std::size_t k = 0; k < db; ++k)
                    v[da + k] = b.table()[i - da][j - da][k];
            return v;
        },
        unit);
}

FinDimAlgebra algebra_by_name(const std::string &name)
{
    if (name == "Q")
        return from_products(1, [](std::size_t, std::size_t) { return RVec{Rational(1)}; }, RVec{Rational(1)});
    if (name == "dual")
        return from_products(
            2,
            [](std::size_t i, std::size_t j) {
                if (i + j >= 2)
                    return zero_vec(2);
                return unit_vec(2, i + j);
            },
            unit_vec(2, 0));
    if (name == "QxQ")
        return from_products(
            2, [](std::size_t i, std::size_t j) { return i == j ? unit_vec(2, i) : zero_vec(2); },
            RVec{Rational(1), Rational(1)});
    if (name == "M2")
        return from_products(
            4,
            [](std::size_t i, std::size_t j) {
                std::size_t a = i / 2, b = i % 2, c = j / 2, dd = j % 2;
                return b == c ? unit_vec(4, 2 * a + dd) : zero_vec(4);
            },
            RVec{Rational(1), Rational(0), Rational(0), Rational(1)});
    if (name == "UT2") {
        // basis E11, E12, E22
        const std::size_t row[3] = {0, 0, 1}, col[3] = {0, 1, 1};
        return from_products(
            3,
            [&](std::size_t i, std::size_t j) {
                if (col[i] != row[j])
                    return zero_vec(3);
                std::size_t r = row[i], c = col[j];
                return unit_vec(3, r == 0 ? (c == 0 ? 0 : 1) : 2);
            },
            RVec{Rational(1), Rational(0), Rational(1)});
    }
    if (name == "M2xdual")
        return direct_product(algebra_by_name("M2"), algebra_by_name("dual"));
    throw ValidationError("unknown algebra: " + name);
}

std::vector<std::string> corpus_names()
{
    return {"Q", "dual", "QxQ", "M2", "UT2", "M2xdual"};
}

RVec random_integer_vector(std::mt19937_64 &rng, std::size_t n, int bound)
{
    std::uniform_int_distribution<int> dist(-bound, bound);
    RVec v(n);
    for (auto &x : v)
        x = dist(rng);
    return v;
}

namespace
{

RMat random_combination(std::mt19937_64 &rng, const std::vector<RMat> &basis, std::size_t rows, std::size_t cols)
{
    RMat m = zeros(rows, cols);
    RVec c = random_integer_vector(rng, basis.size(), 3);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c[i] != 0)
            m = add(m, scaled(basis[i], c[i]));
    return m;
}

} // namespace

Report algebra_verify_suite(std::uint64_t seed, int hom_pairs, int slfs_per_algebra)
{
    Report rep;
    rep.suite = "algebra";
    std::mt19937_64 rng(seed);
    for (const auto &name : corpus_names()) {
        FinDimAlgebra A = algebra_by_name(name);
        Idempotents idem = central_idempotents(A);
        RVec sum = zero_vec(A.dim());
        bool laws = true;
        Subspace Z = center(A);
        for (std::size_t i = 0; i < idem.idempotents.size(); ++i) {
            const RVec &ei = idem.idempotents[i];
            sum = vadd(sum, ei);
            laws = laws && Z.contains(ei);
            for (std::size_t j = 0; j < idem.idempotents.size(); ++j) {
                RVec p = A.mul(ei, idem.idempotents[j]);
                laws = laws && (p == (i == j ? ei : zero_vec(A.dim())));
            }
        }
        laws = laws && sum == A.unit();
        rep.add("idempotents/" + name, {{"count", idem.idempotents.size()}}, laws);

        // projective modules A, eA, A + A and random map pairs
        RightModule reg = RightModule::regular(A);
        RVec e = primitive_idempotent(A);
        Subspace eA(A.dim());
        for (std::size_t j = 0; j < A.dim(); ++j)
            eA.add(A.mul(e, A.basis(j)));
        std::vector<RightModule> mods{reg, submodule(reg, eA), RightModule::direct_sum(reg, reg)};
        std::vector<ProjectiveBasis> bases;
        bool pb_ok = true;
        for (const auto &M : mods) {
            bases.push_back(projectivity_and_basis(A, M));
            pb_ok = pb_ok && verify_projective_basis(A, M, bases.back());
        }
        rep.add("projective-basis/" + name, {{"modules", mods.size()}}, pb_ok);
        long good = 0;
        std::string first_bad;
        for (int t = 0; t < hom_pairs; ++t) {
            std::size_t i = static_cast<std::size_t>(t) % mods.size();
            std::size_t j = (static_cast<std::size_t>(t) / mods.size()) % mods.size();
            auto h12 = hom_space(A, mods[i], mods[j]);
            auto h21 = hom_space(A, mods[j], mods[i]);
            RMat f = random_combination(rng, h12, mods[j].dim, mods[i].dim);
            RMat g = random_combination(rng, h21, mods[i].dim, mods[j].dim);
            RVec t1 = hs_trace(A, bases[j], matmul(f, g));
            RVec t2 = hs_trace(A, bases[i], matmul(g, f));
            if (t1 == t2)
                ++good;
            else if (first_bad.empty())
                first_bad = "pair " + std::to_string(t);
        }
        rep.add("hs-trace-symmetry/" + name, {{"pairs", hom_pairs}}, good == hom_pairs, first_bad);

        RMat slfs = slf_space(A);
        for (int s = 0; s < slfs_per_algebra; ++s) {
            SLF phi = zero_vec(A.dim());
            RVec c = random_integer_vector(rng, slfs.size(), 4);
            if (is_zero(c))
                c[0] = 1;
            for (std::size_t k = 0; k < slfs.size(); ++k)
                phi = vadd(phi, vscale(slfs[k], c[k]));
            SlfDecomposition dec = decompose_slf_algebra(A, phi);
            bool sym = true;
            for (const auto &b : dec.blocks)
                sym = sym && b.P_symmetric && b.P_nondegenerate;
            nlohmann::json params = {{"algebra", name}, {"slf", vec_json(phi)}, {"blocks", dec.blocks.size()}};
            rep.add("slf-decomposition/" + name + "/" + std::to_string(s), params,
                    dec.reconstruction_ok && dec.radical_annihilates && sym,
                    dec.reconstruction_ok ? "" : "reconstruction differs");
        }
    }
    struct Instance {
        std::string id;
        std::string algebra;
        std::function<SLF(const FinDimAlgebra &)> phi;
    };
    std::vector<Instance> instances{
        {"Q-regular-identity", "Q", [](const FinDimAlgebra &) { return SLF{Rational(1)}; }},
        {"M2-regular-trace", "M2", [](const FinDimAlgebra &) { return SLF{Rational(1), 0, 0, Rational(1)}; }}};
    for (const auto &inst : instances) {
        FinDimAlgebra A = algebra_by_name(inst.algebra);
        Bimodule M = Bimodule::regular(A);
        BimoduleDecomposition dec = decompose_slf_bimodule(A, M, inst.phi(A));
        rep.add("bimodule-decomposition/" + inst.id, {{"extension_dim", dec.extension.dim()}},
                dec.reconstruction_ok && dec.bimodule_laws_ok && dec.inner.reconstruction_ok);
    }
    return rep;
}

} // namespace pt
