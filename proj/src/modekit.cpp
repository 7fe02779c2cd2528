#include <pseudotrace/combinatorics.hpp>
#include <pseudotrace/modekit.hpp>

#include <algorithm>
#include <functional>
#include <numeric>

namespace pt
{

Vec to_vec(const RVec &v)
{
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Scalar(v[i]);
    return out;
}

Vec vec_zero(std::size_t n)
{
    return Vec(n);
}

Vec vec_add(const Vec &a, const Vec &b)
{
    Vec out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    return out;
}

Vec vec_sub(const Vec &a, const Vec &b)
{
    Vec out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] -= b[i];
    return out;
}

Vec vec_scale(const Vec &a, const Scalar &s)
{
    Vec out(a.size());
    if (s.is_zero())
        return out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero())
            out[i] = a[i] * s;
    return out;
}

bool vec_is_zero(const Vec &v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar &s) { return s.is_zero(); });
}

Vec smat_apply(const SMat &m, const Vec &v)
{
    Vec out(m.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero())
            continue;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (!m[i][j].is_zero())
                out[i] += m[i][j] * v[j];
    }
    return out;
}

Vec rmat_apply(const RMat &m, const Vec &v)
{
    Vec out(m.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero())
            continue;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i][j] != 0)
                out[i] += v[j] * m[i][j];
    }
    return out;
}

SMat smat_mul(const SMat &a, const SMat &b)
{
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    SMat out(n, Vec(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero())
                continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero())
                    out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

SMat smat_identity(std::size_t n)
{
    SMat out(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        out[i][i] = Scalar(1);
    return out;
}

SMat to_smat(const RMat &m)
{
    SMat out;
    out.reserve(m.size());
    for (const auto &row : m)
        out.push_back(to_vec(row));
    return out;
}

nlohmann::json vec_to_json(const Vec &v)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &s : v)
        arr.push_back(s.str());
    return arr;
}

namespace
{

Vec column(const RMat &m, std::size_t b)
{
    Vec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i][b] != 0)
            out[i] = Scalar(m[i][b]);
    return out;
}

SMat smat_add(const SMat &a, const SMat &b)
{
    SMat out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b[i].size(); ++j)
            out[i][j] += b[i][j];
    return out;
}

SMat smat_scale(const SMat &a, const Scalar &s)
{
    SMat out = a;
    for (auto &row : out)
        for (auto &x : row)
            if (!x.is_zero())
                x = x * s;
    return out;
}

} // namespace

LaurentSeries one_plus_x_pow(long p, int order)
{
    std::map<int, Scalar> m;
    if (p >= 0) {
        for (long j = 0; j <= p; ++j)
            m.emplace(static_cast<int>(j), Scalar(binom(p, j)));
        return LaurentSeries::polynomial(m);
    }
    for (int j = 0; j <= order; ++j)
        m.emplace(j, Scalar(binom(Rational(p), j)));
    return LaurentSeries(0, order, m);
}

Vec VSeries::coeff(int e) const
{
    if (e > hi_)
        throw TruncationOverflow("coefficient of x^" + std::to_string(e) +
                                 " needs states above the weight cutoff (known through x^" + std::to_string(hi_) + ")");
    auto it = c_.find(e);
    return it == c_.end() ? Vec(dim_) : it->second;
}

void VSeries::add(int e, const Vec &v)
{
    if (e > hi_ || vec_is_zero(v))
        return;
    lo_ = std::min(lo_, e);
    auto [it, inserted] = c_.emplace(e, v);
    if (!inserted) {
        for (std::size_t i = 0; i < v.size(); ++i)
            it->second[i] += v[i];
        if (vec_is_zero(it->second))
            c_.erase(it);
    }
}

int VSeries::valuation() const
{
    if (c_.empty())
        return hi_ >= kExact ? kExact : hi_ + 1;
    return c_.begin()->first;
}

VSeries VSeries::truncated(int hi) const
{
    VSeries s = *this;
    s.hi_ = std::min(hi_, hi);
    for (auto it = s.c_.upper_bound(s.hi_); it != s.c_.end();)
        it = s.c_.erase(it);
    return s;
}

VSeries VSeries::reflected() const
{
    VSeries s = *this;
    for (auto &[e, v] : s.c_)
        if (e % 2 != 0)
            v = vec_scale(v, Scalar(-1));
    return s;
}

VSeries VSeries::mapped(const SMat &m) const
{
    VSeries s(m.size(), lo_, hi_);
    for (const auto &[e, v] : c_)
        s.add(e, smat_apply(m, v));
    return s;
}

VSeries &VSeries::operator+=(const VSeries &o)
{
    if (dim_ == 0)
        dim_ = o.dim_;
    lo_ = std::min(lo_, o.lo_);
    hi_ = std::min(hi_, o.hi_);
    for (auto it = c_.upper_bound(hi_); it != c_.end();)
        it = c_.erase(it);
    for (const auto &[e, v] : o.c_)
        add(e, v);
    return *this;
}

VSeries &VSeries::operator*=(const Scalar &s)
{
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto &[e, v] : c_)
        v = vec_scale(v, s);
    return *this;
}

VSeries multiply(const LaurentSeries &s, const VSeries &v, int cap)
{
    long h;
    if (s.exact() && v.hi() >= kExact)
        h = kExact;
    else
        h = std::min(static_cast<long>(s.hi()) + v.valuation(), static_cast<long>(v.hi()) + s.valuation());
    h = std::min(h, static_cast<long>(cap));
    VSeries out(v.dim(), s.lo() + v.lo(), clamp_hi(h));
    for (const auto &[e1, c1] : s.coeffs())
        for (const auto &[e2, c2] : v.coeffs()) {
            if (e1 + e2 > out.hi())
                break;
            out.add(e1 + e2, vec_scale(c2, c1));
        }
    return out;
}

Vec kernel_residue(const LaurentSeries &kernel, const VSeries &f)
{
    Vec acc(f.dim());
    if (f.coeffs().empty() && f.hi() >= kExact)
        return acc;
    long need = -1L - f.lo();
    if (kernel.hi() < need && !f.coeffs().empty()) {
        int lowest = f.coeffs().begin()->first;
        if (kernel.hi() < -1 - lowest)
            throw WindowError("kernel series is too short for the residue");
    }
    for (const auto &[ke, kc] : kernel.coeffs()) {
        int e = -1 - ke;
        if (e < f.lo())
            continue;
        Vec fv = f.coeff(e);
        if (!vec_is_zero(fv))
            acc = vec_add(acc, vec_scale(fv, kc));
    }
    return acc;
}

VSeries substitute(const VSeries &outer, const LaurentSeries &inner, int order)
{
    if (inner.hi() < 1)
        throw SubstitutionError("inner series has unknown linear coefficient");
    for (const auto &[e, c] : inner.coeffs())
        if (e <= 0)
            throw SubstitutionError("inner series must have zero constant term");
    if (inner.valuation() != 1)
        throw SubstitutionError("inner series must have an invertible linear coefficient");
    LaurentSeries U = inner.shifted(-1);
    long R = order;
    if (outer.hi() < kExact)
        R = std::min(R, static_cast<long>(outer.hi()));
    if (outer.coeffs().empty())
        return VSeries(outer.dim(), std::min(0, outer.lo()), clamp_hi(R));
    int emin = outer.coeffs().begin()->first;
    if (!inner.exact())
        R = std::min(R, static_cast<long>(emin) + inner.hi() - 1);
    int hi = clamp_hi(R);
    VSeries acc(outer.dim(), emin, hi);
    for (const auto &[e, c] : outer.coeffs()) {
        if (e > hi)
            break;
        int rel = hi - e;
        LaurentSeries Ue = U.truncated(rel).pow(e).truncated(rel);
        for (const auto &[j, s] : Ue.coeffs())
            acc.add(e + j, vec_scale(c, s));
    }
    return acc;
}

VSeries apply_operator_series(const std::vector<SMat> &ops, const VSeries &v, int cap)
{
    int hi = std::min(v.hi(), cap);
    VSeries out(v.dim(), v.lo(), hi);
    if (hi >= kExact)
        throw DomainError("operator series needs a finite cap");
    if (!v.coeffs().empty() && static_cast<long>(hi) - v.coeffs().begin()->first >= static_cast<long>(ops.size()))
        throw DomainError("operator series is too short for the requested window");
    for (const auto &[e, c] : v.coeffs())
        for (std::size_t k = 0; k < ops.size() && e + static_cast<int>(k) <= hi; ++k)
            out.add(e + static_cast<int>(k), smat_apply(ops[k], c));
    return out;
}

// ---------------------------------------------------------------- VertexData

namespace
{

using Partition = std::vector<int>; // parts in descending order

void partitions_of(int n, int max_part, Partition &cur, std::vector<Partition> &out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_of(n - p, p, cur, out);
        cur.pop_back();
    }
}

std::string partition_label(const Partition &p)
{
    if (p.empty())
        return "1";
    std::string s;
    for (int part : p)
        s += "a(-" + std::to_string(part) + ")";
    return s + "1";
}

} // namespace

VertexData VertexData::heisenberg(int D)
{
    if (D < 2)
        throw DomainError("heisenberg data needs cutoff D >= 2 to contain omega");
    VertexData V;
    V.name_ = "heisenberg";
    V.D_ = D;
    V.complete_ = false;
    V.c_ = 1;
    std::vector<Partition> parts;
    for (int k = 0; k <= D; ++k) {
        std::vector<Partition> pk;
        Partition cur;
        partitions_of(k, k, cur, pk);
        V.dims_.push_back(static_cast<int>(pk.size()));
        for (auto &p : pk)
            parts.push_back(p);
    }
    std::size_t n = parts.size();
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        index[parts[i]] = i;
        V.labels_.push_back(partition_label(parts[i]));
    }

    // alpha_m on the Fock space truncated at weight D, as (row, column, value) entries
    struct Entry {
        std::size_t row, col;
        Rational value;
    };
    std::map<int, std::vector<Entry>> alpha;
    for (int m = 1; m <= D; ++m) {
        std::vector<Entry> create, annihilate;
        for (std::size_t i = 0; i < n; ++i) {
            Partition p = parts[i];
            Partition up = p;
            up.insert(std::upper_bound(up.begin(), up.end(), m, std::greater<int>()), m);
            auto it = index.find(up);
            if (it != index.end())
                create.push_back({it->second, i, Rational(1)});
            long count = std::count(p.begin(), p.end(), m);
            if (count > 0) {
                Partition down = p;
                down.erase(std::find(down.begin(), down.end(), m));
                annihilate.push_back({index.at(down), i, Rational(count * m)});
            }
        }
        alpha[-m] = create;
        alpha[m] = annihilate;
    }

    V.weights_.clear();
    for (int k = 0; k <= D; ++k)
        for (int j = 0; j < V.dims_[k]; ++j)
            V.weights_.push_back(k);
    V.zero_ = zeros(n, n);

    V.modes_[{0, -1}] = identity(n);
    for (std::size_t i = 1; i < n; ++i) {
        const Partition &p = parts[i];
        int first = p[0];
        Partition rest(p.begin() + 1, p.end());
        std::size_t v = index.at(rest);
        int hu = V.weights_[i], hv = V.weights_[v];
        for (int N = hu - 1 - D; N <= hu - 1 + D; ++N) {
            RMat acc = zeros(n, n);
            for (int m = -D; m <= D; ++m) {
                if (m == 0)
                    continue;
                Rational c = binom(Rational(-m - 1), first - 1);
                if (c == 0)
                    continue;
                int K = N - m - first;
                if (K < hv - 1 - D || K > hv - 1 + D)
                    continue;
                auto it = V.modes_.find({v, K});
                if (it == V.modes_.end())
                    continue;
                const RMat &X = it->second;
                Rational t;
                if (m < 0) {
                    for (const Entry &e : alpha.at(m))
                        for (std::size_t j = 0; j < n; ++j)
                            if (X[e.col][j] != 0) {
                                t = c * e.value * X[e.col][j];
                                acc[e.row][j] += t;
                            }
                } else {
                    for (const Entry &e : alpha.at(m))
                        for (std::size_t r = 0; r < n; ++r)
                            if (X[r][e.row] != 0) {
                                t = c * e.value * X[r][e.row];
                                acc[r][e.col] += t;
                            }
                }
            }
            if (!is_zero(acc))
                V.modes_[{i, N}] = acc;
        }
    }

    V.vacuum_ = RVec(n);
    V.vacuum_[0] = 1;
    V.omega_ = RVec(n);
    V.omega_[index.at(Partition{1, 1})] = frac(1, 2);
    V.finalize();
    return V;
}

VertexData VertexData::trivial()
{
    VertexData V;
    V.name_ = "trivial";
    V.D_ = 0;
    V.complete_ = true;
    V.c_ = 0;
    V.dims_ = {1};
    V.labels_ = {"1"};
    V.weights_ = {0};
    V.zero_ = zeros(1, 1);
    V.modes_[{0, -1}] = identity(1);
    V.vacuum_ = RVec{Rational(1)};
    V.omega_ = RVec{Rational(0)};
    V.finalize();
    return V;
}

namespace
{

RMat rmat_from_json(const nlohmann::json &j, std::size_t n)
{
    RMat m = zeros(n, n);
    if (j.size() != n)
        throw ValidationError("mode matrix has the wrong number of rows");
    for (std::size_t i = 0; i < n; ++i) {
        if (j[i].size() != n)
            throw ValidationError("mode matrix has the wrong number of columns");
        for (std::size_t k = 0; k < n; ++k)
            m[i][k] = j[i][k].is_string() ? parse_rational(j[i][k].get<std::string>()) : Rational(j[i][k].get<long>());
    }
    return m;
}

RVec rvec_from_json(const nlohmann::json &j, std::size_t n)
{
    if (j.size() != n)
        throw ValidationError("vector has the wrong length");
    RVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = j[i].is_string() ? parse_rational(j[i].get<std::string>()) : Rational(j[i].get<long>());
    return v;
}

nlohmann::json rvec_json(const RVec &v)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &x : v)
        arr.push_back(x.get_str());
    return arr;
}

} // namespace

VertexData VertexData::from_json(const nlohmann::json &j)
{
    VertexData V;
    try {
        V.name_ = j.value("name", std::string("custom"));
        V.dims_ = j.at("dims").get<std::vector<int>>();
        if (V.dims_.empty() || V.dims_[0] != 1)
            throw ValidationError("V_(0) must be one-dimensional");
        V.D_ = j.contains("D") ? j.at("D").get<int>() : static_cast<int>(V.dims_.size()) - 1;
        if (V.D_ != static_cast<int>(V.dims_.size()) - 1)
            throw ValidationError("dims must list V_(0), ..., V_(D)");
        V.complete_ = j.value("complete", false);
        V.c_ = j.at("c").is_string() ? parse_rational(j.at("c").get<std::string>()) : Rational(j.at("c").get<long>());
        for (int k = 0; k <= V.D_; ++k)
            for (int i = 0; i < V.dims_[k]; ++i)
                V.weights_.push_back(k);
        std::size_t n = V.weights_.size();
        V.zero_ = zeros(n, n);
        if (j.contains("labels"))
            V.labels_ = j.at("labels").get<std::vector<std::string>>();
        else
            for (std::size_t i = 0; i < n; ++i)
                V.labels_.push_back("e" + std::to_string(i));
        if (V.labels_.size() != n)
            throw ValidationError("labels has the wrong length");
        V.vacuum_ = rvec_from_json(j.at("vacuum"), n);
        V.omega_ = rvec_from_json(j.at("omega"), n);
        for (const auto &[a, per] : j.at("modes").items()) {
            std::size_t ai = std::stoul(a);
            if (ai >= n)
                throw ValidationError("mode for a nonexistent basis vector");
            for (const auto &[nn, mat] : per.items()) {
                RMat m = rmat_from_json(mat, n);
                if (!is_zero(m))
                    V.modes_[{ai, std::stoi(nn)}] = m;
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed vertex data: ") + e.what());
    }
    V.finalize();
    V.validate();
    return V;
}

nlohmann::json VertexData::to_json() const
{
    nlohmann::json j;
    j["name"] = name_;
    j["D"] = D_;
    j["dims"] = dims_;
    j["complete"] = complete_;
    j["c"] = c_.get_str();
    j["labels"] = labels_;
    j["vacuum"] = rvec_json(vacuum_);
    j["omega"] = rvec_json(omega_);
    nlohmann::json modes = nlohmann::json::object();
    for (const auto &[key, m] : modes_) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &row : m)
            rows.push_back(rvec_json(row));
        modes[std::to_string(key.first)][std::to_string(key.second)] = rows;
    }
    j["modes"] = modes;
    return j;
}

std::vector<std::size_t> VertexData::basis_of_weight(int k) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] == k)
            out.push_back(i);
    return out;
}

std::vector<std::size_t> VertexData::basis_up_to_weight(int k) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] <= k)
            out.push_back(i);
    return out;
}

Vec VertexData::vacuum() const
{
    return to_vec(vacuum_);
}

Vec VertexData::omega() const
{
    return to_vec(omega_);
}

Vec VertexData::basis_vec(std::size_t i) const
{
    Vec v(dim());
    v.at(i) = Scalar(1);
    return v;
}

int VertexData::top_weight(const Vec &v) const
{
    int top = -1;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            top = std::max(top, weights_[i]);
    return top;
}

Vec VertexData::weight_component(const Vec &v, int k) const
{
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (weights_[i] == k)
            out[i] = v[i];
    return out;
}

const RMat &VertexData::mode(std::size_t a, int n) const
{
    auto it = modes_.find({a, n});
    return it == modes_.end() ? zero_ : it->second;
}

RMat VertexData::mode_of(const RVec &u, int n) const
{
    RMat acc = zero_;
    for (std::size_t a = 0; a < u.size(); ++a)
        if (u[a] != 0) {
            auto it = modes_.find({a, n});
            if (it != modes_.end())
                acc = add(acc, scaled(it->second, u[a]));
        }
    return acc;
}

const RMat &VertexData::L(int n) const
{
    auto it = L_.find(n);
    return it == L_.end() ? zero_ : it->second;
}

SMat VertexData::Lmat(int n) const
{
    return to_smat(L(n));
}

VSeries VertexData::Y_basis(std::size_t a, std::size_t b) const
{
    int ha = weights_[a], hb = weights_[b];
    int lo = -ha - hb;
    int top = D_ - ha - hb;
    VSeries s(dim(), lo, complete_ ? kExact : top);
    for (int e = lo; e <= top; ++e)
        s.add(e, column(mode(a, -e - 1), b));
    return s;
}

VSeries VertexData::Y(const Vec &u, const Vec &w) const
{
    VSeries acc(dim(), 0, kExact);
    for (std::size_t a = 0; a < u.size(); ++a) {
        if (u[a].is_zero())
            continue;
        for (std::size_t b = 0; b < w.size(); ++b) {
            if (w[b].is_zero())
                continue;
            VSeries t = Y_basis(a, b);
            t *= u[a] * w[b];
            acc += t;
        }
    }
    return acc;
}

VSeries VertexData::Y_weighted(const Vec &u, const Vec &w, const std::function<LaurentSeries(int)> &factor,
                               int cap) const
{
    VSeries acc(dim(), 0, cap);
    for (int h = 0; h <= D_; ++h) {
        Vec uh = weight_component(u, h);
        if (vec_is_zero(uh))
            continue;
        acc += multiply(factor(h), Y(uh, w), cap);
    }
    return acc;
}

void VertexData::finalize()
{
    std::size_t n = dim();
    for (int k = -D_ - 1; k <= D_ + 1; ++k) {
        RMat m = mode_of(omega_, k + 1);
        if (!is_zero(m))
            L_[k] = m;
    }
    std::vector<Scalar> A = compute_A_coeffs(std::max(D_, 1));
    SMat M(n, Vec(n));
    for (int j = 1; j <= D_; ++j)
        M = smat_add(M, smat_scale(Lmat(j), A[j - 1]));
    SMat E = smat_identity(n), Einv = smat_identity(n);
    SMat P = smat_identity(n), Q = smat_identity(n);
    SMat negM = smat_scale(M, Scalar(-1));
    for (int k = 1; k <= D_; ++k) {
        P = smat_scale(smat_mul(P, negM), Scalar(frac(1, k)));
        Q = smat_scale(smat_mul(Q, M), Scalar(frac(1, k)));
        E = smat_add(E, P);
        Einv = smat_add(Einv, Q);
    }
    u1_ = E;
    for (std::size_t i = 0; i < n; ++i)
        for (auto &x : u1_[i])
            if (!x.is_zero())
                x = x * Scalar::kappa(weights_[i]);
    u1_inv_ = Einv;
    for (auto &row : u1_inv_)
        for (std::size_t j = 0; j < n; ++j)
            if (!row[j].is_zero())
                row[j] = row[j] * Scalar::kappa(-weights_[j]);
}

void VertexData::validate() const
{
    std::size_t n = dim();
    auto fail = [](const std::string &msg) { throw ValidationError(msg); };
    if (vacuum_.size() != n || omega_.size() != n)
        fail("vacuum or omega has the wrong length");
    for (std::size_t i = 0; i < n; ++i) {
        if (vacuum_[i] != 0 && weights_[i] != 0)
            fail("vacuum is not homogeneous of weight 0");
        if (omega_[i] != 0 && weights_[i] != 2)
            fail("omega is not homogeneous of weight 2");
    }
    if (is_zero(vacuum_))
        fail("vacuum vanishes");
    for (const auto &[key, m] : modes_) {
        auto [a, k] = key;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t b = 0; b < n; ++b)
                if (m[i][b] != 0 && weights_[i] != weights_[a] + weights_[b] - k - 1)
                    fail("mode " + labels_[a] + "_(" + std::to_string(k) + ") does not respect the grading");
    }
    RMat id = identity(n);
    for (int k = -1 - D_; k <= D_ + 1; ++k)
        if (mode_of(vacuum_, k) != (k == -1 ? id : zero_))
            fail("vacuum modes are not 1_(-1) = id, 1_(n) = 0");
    Vec vac = vacuum();
    for (std::size_t a = 0; a < n; ++a) {
        if (rmat_apply(mode(a, -1), vac) != basis_vec(a))
            fail("creation property fails for " + labels_[a]);
        for (int k = 0; k <= D_; ++k)
            if (!vec_is_zero(rmat_apply(mode(a, k), vac)))
                fail("u_n 1 != 0 for n >= 0 at " + labels_[a]);
    }
    RMat L0 = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        L0[i][i] = weights_[i];
    if (L(0) != L0)
        fail("L(0) is not the grading operator");
    for (std::size_t a = 0; a < n; ++a) {
        int h = weights_[a];
        if (h + 1 > D_)
            continue;
        RVec du = matvec(L(-1), [&] {
            RVec e(n);
            e[a] = 1;
            return e;
        }());
        for (int k = h - D_; k <= h + D_; ++k)
            if (mode_of(du, k) != scaled(mode(a, k - 1), Rational(-k)))
                fail("(L(-1)u)_n = -n u_(n-1) fails for " + labels_[a]);
    }
    // commutator formula on low weights, restricted to columns whose intermediate states stay in range
    std::vector<std::size_t> low = basis_up_to_weight(std::min(2, D_));
    for (std::size_t a : low)
        for (std::size_t b : low)
            for (int m = -2; m <= 2; ++m)
                for (int k = -2; k <= 2; ++k) {
                    int ha = weights_[a], hb = weights_[b];
                    RMat lhs = add(matmul(mode(a, m), mode(b, k)), scaled(matmul(mode(b, k), mode(a, m)), -1));
                    RMat rhs = zero_;
                    for (int i = 0; i <= ha + hb - 1; ++i) {
                        Rational c = binom(Rational(m), i);
                        if (c == 0)
                            continue;
                        if (ha + hb - i - 1 > D_)
                            continue;
                        RVec ab(n);
                        for (std::size_t r = 0; r < n; ++r)
                            ab[r] = mode(a, i)[r][b];
                        rhs = add(rhs, scaled(mode_of(ab, m + k - i), c));
                    }
                    for (std::size_t col = 0; col < n; ++col) {
                        int hc = weights_[col];
                        if (!complete_ && (hb + hc - k - 1 > D_ || ha + hc - m - 1 > D_ || ha + hb - 1 > D_))
                            continue;
                        for (std::size_t r = 0; r < n; ++r)
                            if (lhs[r][col] != rhs[r][col])
                                fail("commutator formula fails for " + labels_[a] + ", " + labels_[b]);
                    }
                }
}

// ---------------------------------------------------------------- transition operator

namespace
{

// exp(sum_j A_j y^{j+1} d/dy) y through y^order, as coefficients 0..order
std::vector<Scalar> exp_derivation_of_y(const std::vector<Scalar> &A, int order)
{
    auto derive = [&](const std::vector<Scalar> &p) {
        std::vector<Scalar> out(order + 1);
        for (int d = 1; d <= order; ++d) {
            if (p[d].is_zero())
                continue;
            for (std::size_t j = 1; j <= A.size(); ++j) {
                int e = d + static_cast<int>(j);
                if (e > order)
                    break;
                if (!A[j - 1].is_zero())
                    out[e] += A[j - 1] * p[d] * Rational(d);
            }
        }
        return out;
    };
    std::vector<Scalar> term(order + 1), acc(order + 1);
    if (order >= 1)
        term[1] = Scalar(1);
    acc = term;
    for (int k = 1; k <= order; ++k) {
        term = derive(term);
        for (auto &x : term)
            if (!x.is_zero())
                x = x * frac(1, k);
        for (int e = 0; e <= order; ++e)
            acc[e] += term[e];
    }
    return acc;
}

Scalar log_target(int i)
{
    return Scalar::monomial(frac(neg_one_pow(i + 1), i), i - 1);
}

} // namespace

std::vector<Scalar> compute_A_coeffs(int J)
{
    std::vector<Scalar> A(J);
    for (int j = 1; j <= J; ++j) {
        std::vector<Scalar> cur = exp_derivation_of_y(A, j + 1);
        A[j - 1] = log_target(j + 1) - cur[j + 1];
    }
    return A;
}

LaurentSeries A_coeffs_residual(const std::vector<Scalar> &A, int order)
{
    std::vector<Scalar> cur = exp_derivation_of_y(A, order);
    std::map<int, Scalar> m;
    for (int i = 1; i <= order; ++i)
        m.emplace(i, log_target(i) - cur[i]);
    return LaurentSeries(0, order, m, "y");
}

SMat u1_operator(const VertexData &V, int upto_weight)
{
    std::vector<std::size_t> idx = V.basis_up_to_weight(upto_weight);
    SMat out(idx.size(), Vec(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            out[i][j] = V.U1()[idx[i]][idx[j]];
    return out;
}

// ---------------------------------------------------------------- products

VSeries Y_log(const VertexData &V, const Vec &u, const Vec &w, int sign, int order)
{
    VSeries G = V.Y(u, w);
    int inner_hi = std::max(1, order - G.lo() + 1);
    LaurentSeries inner = log1p_series(inner_hi) * Scalar::monomial(Rational(sign), -1);
    return substitute(G, inner, order);
}

VopComparison u1_vop_check(const VertexData &V, const Vec &v, const Vec &w)
{
    VopComparison r;
    int order = V.cutoff() - std::max(V.top_weight(v), 0) - std::max(V.top_weight(w), 0);
    if (order < 0 && !V.complete())
        return r;
    order = std::max(order, 0);
    VSeries lhs = Y_log(V, v, w, 1, order).mapped(V.U1());
    Vec Uv = smat_apply(V.U1(), v), Uw = smat_apply(V.U1(), w);
    VSeries rhs = V.Y_weighted(Uv, Uw, [order](int h) { return one_plus_x_pow(h, order); }, order);
    r.x_lo = std::min(lhs.lo(), rhs.lo());
    r.x_hi = std::min(lhs.hi(), rhs.hi());
    for (int e = r.x_lo; e <= r.x_hi; ++e)
        if (lhs.coeff(e) != rhs.coeff(e)) {
            r.ok = false;
            r.first_mismatch = e;
            break;
        }
    return r;
}

namespace
{

LaurentSeries star_kernel(int N)
{
    std::map<int, Scalar> m;
    for (int k = 0; k <= N; ++k)
        m.emplace(-N - k - 1, Scalar(binom(Rational(-N - 1), k)));
    return LaurentSeries::polynomial(m);
}

} // namespace

Vec star_n(const VertexData &V, const Vec &u, const Vec &w, int N)
{
    int cap = 2 * N;
    VSeries F = V.Y_weighted(u, w, [N, cap](int h) { return one_plus_x_pow(h + N, cap); }, cap);
    return kernel_residue(star_kernel(N), F);
}

Vec bullet_n(const VertexData &V, const Vec &u, const Vec &v, int N)
{
    int cap = 2 * N;
    VSeries F = multiply(one_plus_x_pow(N, cap), Y_log(V, u, v, 1, cap), cap);
    return kernel_residue(star_kernel(N), F);
}

Vec star_n_right(const VertexData &V, const Vec &w, const Vec &u, int N)
{
    int cap = 2 * N;
    std::size_t n = V.dim();
    VSeries G(n, 0, kExact);
    for (int h = 0; h <= V.cutoff(); ++h) {
        Vec wh = V.weight_component(w, h);
        if (vec_is_zero(wh))
            continue;
        G += multiply(one_plus_x_pow(h + N, cap), V.Y(u, wh).reflected(), cap);
    }
    G = G.truncated(cap);
    int span = G.coeffs().empty() ? 1 : cap - G.coeffs().begin()->first + 1;
    span = std::max(span, 1);
    SMat Lm1 = V.Lmat(-1);
    SMat T = smat_add(Lm1, V.Lmat(0));
    std::vector<SMat> expL(span, SMat(n, Vec(n)));
    SMat p = smat_identity(n);
    for (int k = 0; k < span; ++k) {
        if (k > 0)
            p = smat_scale(smat_mul(p, Lm1), Scalar(frac(1, k)));
        expL[k] = p;
    }
    G = apply_operator_series(expL, G, cap);
    // (1+x)^{-T} = sum_j (-T)^j log(1+x)^j / j!
    LaurentSeries lg = log1p_series(span);
    std::vector<SMat> ops(span, SMat(n, Vec(n)));
    SMat Tj = smat_identity(n);
    LaurentSeries lj = LaurentSeries::constant(Scalar(1));
    for (int j = 0; j < span; ++j) {
        if (j > 0) {
            Tj = smat_scale(smat_mul(Tj, T), Scalar(frac(-1, j)));
            lj = (lj * lg).truncated(span);
        }
        for (const auto &[k, c] : lj.coeffs())
            if (k < span)
                ops[k] = smat_add(ops[k], smat_scale(Tj, c));
    }
    G = apply_operator_series(ops, G, cap);
    return kernel_residue(star_kernel(N), G);
}

UMatrix UMatrix::single(int k, int l, const Vec &v)
{
    UMatrix m;
    m.add(k, l, v);
    return m;
}

void UMatrix::add(int k, int l, const Vec &v)
{
    auto it = entries.find({k, l});
    if (it == entries.end()) {
        if (!vec_is_zero(v))
            entries.emplace(std::make_pair(k, l), v);
        return;
    }
    it->second = vec_add(it->second, v);
    if (vec_is_zero(it->second))
        entries.erase(it);
}

UMatrix UMatrix::mapped(const SMat &m) const
{
    UMatrix out;
    for (const auto &[kl, v] : entries)
        out.add(kl.first, kl.second, smat_apply(m, v));
    return out;
}

bool UMatrix::operator==(const UMatrix &o) const
{
    auto nonzero = [](const UMatrix &u) {
        std::map<std::pair<int, int>, Vec> out;
        for (const auto &[kl, v] : u.entries)
            if (!vec_is_zero(v))
                out.emplace(kl, v);
        return out;
    };
    return nonzero(*this) == nonzero(o);
}

nlohmann::json UMatrix::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &[kl, v] : entries)
        arr.push_back({{"k", kl.first}, {"l", kl.second}, {"value", vec_to_json(v)}});
    return arr;
}

Vec diamond_entry(const VertexData &V, int k, int n, int l, const Vec &a, const Vec &b, Flavor flavor, Side side)
{
    int p = -k + n - l - 1;
    std::map<int, Scalar> km;
    for (int m = 0; m <= n; ++m)
        km.emplace(p - m, Scalar(binom(Rational(p), m)));
    LaurentSeries K = LaurentSeries::polynomial(km);
    int cap = k + l;
    VSeries F;
    if (side == Side::Left) {
        if (flavor == Flavor::Plain)
            F = V.Y_weighted(a, b, [l, cap](int h) { return one_plus_x_pow(h + l, cap); }, cap);
        else
            F = multiply(one_plus_x_pow(l, cap), Y_log(V, a, b, 1, cap), cap);
    } else {
        // a = w in the module, b = v in V
        if (flavor == Flavor::Tilde) {
            F = multiply(one_plus_x_pow(k, cap), Y_log(V, b, a, -1, cap), cap);
        } else {
            VSeries acc(V.dim(), 0, cap);
            for (int h = 0; h <= V.cutoff(); ++h) {
                Vec bh = V.weight_component(b, h);
                if (vec_is_zero(bh))
                    continue;
                VSeries G = V.Y(bh, a);
                int inner_hi = std::max(1, cap - G.lo() + 1);
                std::map<int, Scalar> im;
                for (int i = 1; i <= inner_hi; ++i)
                    im.emplace(i, Scalar(neg_one_pow(i)));
                VSeries S = substitute(G, LaurentSeries(1, inner_hi, im), cap);
                acc += multiply(one_plus_x_pow(-h, cap), S, cap);
            }
            F = multiply(one_plus_x_pow(k, cap), acc, cap);
        }
    }
    return kernel_residue(K, F);
}

UMatrix diamond(const VertexData &V, const UMatrix &mu, const UMatrix &mv, Flavor flavor, Side side)
{
    UMatrix out;
    for (const auto &[kn, a] : mu.entries)
        for (const auto &[nl, b] : mv.entries) {
            if (kn.second != nl.first)
                continue;
            out.add(kn.first, nl.second, diamond_entry(V, kn.first, kn.second, nl.second, a, b, flavor, side));
        }
    return out;
}

// ---------------------------------------------------------------- spans over Q(k)

KappaSpan::KappaSpan(const VertexData &V, bool rescale) : rescale_(rescale), span_(V.dim())
{
    for (std::size_t i = 0; i < V.dim(); ++i)
        weights_.push_back(V.weight(i));
    order_.resize(V.dim());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return weights_[a] > weights_[b]; });
}

std::vector<RVec> KappaSpan::components(const Vec &v) const
{
    std::map<int, RVec> byexp;
    for (std::size_t p = 0; p < order_.size(); ++p) {
        std::size_t i = order_[p];
        Scalar s = v[i];
        if (s.is_zero())
            continue;
        if (rescale_)
            s = s * Scalar::kappa(weights_[i]);
        for (const auto &[e, c] : s.terms()) {
            auto it = byexp.try_emplace(e, RVec(order_.size())).first;
            it->second[p] = c;
        }
    }
    std::vector<RVec> out;
    for (auto &[e, r] : byexp)
        out.push_back(std::move(r));
    return out;
}

RVec KappaSpan::to_rational(const Vec &v) const
{
    std::vector<RVec> comps = components(v);
    if (comps.empty())
        return RVec(order_.size());
    if (comps.size() > 1)
        throw DomainError("vector is not a single power of k times a rational vector");
    return comps[0];
}

Vec KappaSpan::from_rational(const RVec &r) const
{
    Vec out(order_.size());
    for (std::size_t p = 0; p < order_.size(); ++p) {
        if (r[p] == 0)
            continue;
        std::size_t i = order_[p];
        out[i] = rescale_ ? Scalar::monomial(r[p], -weights_[i]) : Scalar(r[p]);
    }
    return out;
}

void KappaSpan::add(const Vec &v)
{
    span_.add(to_rational(v));
}

bool KappaSpan::contains(const Vec &v) const
{
    for (const auto &c : components(v))
        if (!span_.contains(c))
            return false;
    return true;
}

OSpan o_n_span(const VertexData &V, int N, int weight_bound, Flavor flavor)
{
    if (!V.complete() && weight_bound > V.cutoff())
        throw DomainError("weight bound exceeds the cutoff of the vertex data");
    int B = std::min(weight_bound, V.complete() ? std::max(weight_bound, 0) : V.cutoff());
    OSpan S;
    S.flavor = flavor;
    S.N = N;
    S.weight_bound = weight_bound;
    S.span = KappaSpan(V, flavor == Flavor::Tilde);
    auto push = [&](const Vec &g) {
        if (vec_is_zero(g))
            return;
        S.generators.push_back(g);
        S.span.add(g);
    };
    std::size_t n = V.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            int base = V.weight(a) + V.weight(b) + 2 * N + 1;
            for (int p = 0; base + p <= B; ++p) {
                int cap = 2 * N + 1 + p;
                LaurentSeries K = LaurentSeries::monomial(Scalar(1), -2 * N - 2 - p);
                VSeries F;
                Vec u = V.basis_vec(a), w = V.basis_vec(b);
                if (flavor == Flavor::Plain)
                    F = V.Y_weighted(u, w, [N, cap](int h) { return one_plus_x_pow(h + N, cap); }, cap);
                else
                    F = multiply(one_plus_x_pow(N, cap), Y_log(V, u, w, 1, cap), cap);
                push(kernel_residue(K, F));
            }
        }
    for (std::size_t a = 0; a < n; ++a) {
        if (V.weight(a) + 1 > B)
            continue;
        Vec e = V.basis_vec(a);
        Vec g = rmat_apply(V.L(-1), e);
        if (flavor == Flavor::Plain)
            g = vec_add(g, rmat_apply(V.L(0), e));
        push(g);
    }
    return S;
}

ModeQuotient quotient_algebra(const VertexData &V, int N, int weight_bound, Flavor flavor)
{
    ModeQuotient Q;
    Q.flavor = flavor;
    Q.N = N;
    Q.weight_bound = weight_bound;
    int full = V.cutoff();
    Q.ospan = o_n_span(V, N, full, flavor);
    const Subspace &sp = Q.ospan.span.rational();
    std::vector<std::size_t> order(V.dim());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return V.weight(a) > V.weight(b); });
    std::vector<bool> pivot(V.dim(), false);
    for (std::size_t p : sp.pivots())
        pivot[p] = true;
    std::map<std::size_t, std::size_t> rep_position; // position -> rep slot
    for (std::size_t p = 0; p < order.size(); ++p)
        if (!pivot[p] && V.weight(order[p]) <= weight_bound) {
            rep_position[p] = Q.reps.size();
            Q.reps.push_back(order[p]);
        }
    std::sort(Q.reps.begin(), Q.reps.end());
    rep_position.clear();
    for (std::size_t p = 0; p < order.size(); ++p)
        for (std::size_t r = 0; r < Q.reps.size(); ++r)
            if (order[p] == Q.reps[r])
                rep_position[p] = r;

    auto rep_vec = [&](std::size_t i) {
        Vec e = V.basis_vec(i);
        if (flavor == Flavor::Tilde)
            e[i] = Scalar::kappa(-V.weight(i));
        return e;
    };
    auto project = [&](const Vec &v) -> std::optional<RVec> {
        RVec red = sp.reduce(Q.ospan.span.to_rational(v));
        RVec coords(Q.reps.size());
        for (std::size_t p = 0; p < red.size(); ++p) {
            if (red[p] == 0)
                continue;
            auto it = rep_position.find(p);
            if (it == rep_position.end())
                return std::nullopt;
            coords[it->second] = red[p];
        }
        return coords;
    };
    bool closed = true;
    std::size_t missing = 0;
    for (std::size_t i = 0; i < Q.reps.size(); ++i)
        for (std::size_t j = 0; j < Q.reps.size(); ++j) {
            try {
                Vec prod = flavor == Flavor::Plain ? star_n(V, rep_vec(Q.reps[i]), rep_vec(Q.reps[j]), N)
                                                   : bullet_n(V, rep_vec(Q.reps[i]), rep_vec(Q.reps[j]), N);
                auto c = project(prod);
                if (c)
                    Q.table[{i, j}] = *c;
                else {
                    closed = false;
                    ++missing;
                }
            } catch (const TruncationOverflow &) {
                closed = false;
                ++missing;
            }
        }
    Q.closed = closed;
    if (!closed) {
        Q.note = std::to_string(missing) + " products leave V_(<=" + std::to_string(weight_bound) +
                 ") modulo the span or need states above the cutoff";
        return Q;
    }
    std::vector<std::vector<RVec>> mul(Q.reps.size(), std::vector<RVec>(Q.reps.size()));
    for (const auto &[ij, v] : Q.table)
        mul[ij.first][ij.second] = v;
    auto unit = project(V.vacuum());
    if (!unit) {
        Q.note = "vacuum does not reduce onto the representatives";
        Q.closed = false;
        return Q;
    }
    try {
        Q.algebra = FinDimAlgebra(mul, *unit);
        Q.note = "closed";
    } catch (const ValidationError &e) {
        Q.note = std::string("table is closed but fails the algebra laws: ") + e.what();
    }
    return Q;
}

nlohmann::json ModeQuotient::to_json() const
{
    nlohmann::json j;
    j["flavor"] = flavor == Flavor::Plain ? "plain" : "tilde";
    j["N"] = N;
    j["weight_bound"] = weight_bound;
    j["span_dim"] = ospan.span.dim();
    j["generators"] = ospan.generators.size();
    j["reps"] = reps;
    j["closed"] = closed;
    j["note"] = note;
    nlohmann::json t = nlohmann::json::array();
    for (const auto &[ij, v] : table) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto &x : v)
            row.push_back(x.get_str());
        t.push_back({{"i", ij.first}, {"j", ij.second}, {"value", row}});
    }
    j["table"] = t;
    if (algebra)
        j["algebra"] = algebra->to_json();
    return j;
}

} // namespace pt

namespace pt
{

Report modekit_suite(const VertexData &V, int diamond_N_max)
{
    Report rep;
    rep.suite = "voa";
    nlohmann::json base = {{"algebra", V.name()}, {"D", V.cutoff()}};
    const SMat &U = V.U1();
    Vec one = V.vacuum(), om = V.omega();
    rep.add("u1-vacuum", base, smat_apply(U, one) == one);
    Vec target = vec_scale(vec_sub(om, vec_scale(one, Scalar(V.central_charge() / 24))), Scalar::kappa(2));
    rep.add("u1-omega", base, smat_apply(U, om) == target);
    rep.add("u1-inverse", base, smat_mul(U, V.U1_inverse()) == smat_identity(V.dim()));
    rep.add("A-coefficients", {{"order", 7}}, A_coeffs_residual(compute_A_coeffs(7), 7).is_zero());

    auto guarded = [&](const std::string &id, const nlohmann::json &p, const std::function<bool()> &f) {
        try {
            rep.add(id, p, f());
        } catch (const TruncationOverflow &e) {
            rep.skip(id, p, e.what());
        }
    };
    std::vector<std::size_t> low = V.basis_up_to_weight(std::min(2, V.cutoff()));
    for (std::size_t a : low)
        for (std::size_t b : low) {
            std::string tag = "/u=" + V.label(a) + ",v=" + V.label(b);
            nlohmann::json p = base;
            p["u"] = V.label(a);
            p["v"] = V.label(b);
            Vec u = V.basis_vec(a), v = V.basis_vec(b);
            VopComparison c = u1_vop_check(V, u, v);
            if (c.x_hi < c.x_lo)
                rep.skip("u1-vop" + tag, p, "empty x-window");
            else
                rep.add("u1-vop" + tag, p, c.ok, "x in [" + std::to_string(c.x_lo) + ", " + std::to_string(c.x_hi) + "]");
            guarded("bullet-conjugation" + tag, p, [&] {
                return smat_apply(U, bullet_n(V, u, v, 0)) == star_n(V, smat_apply(U, u), smat_apply(U, v), 0);
            });
        }
    for (std::size_t a = 0; a < V.dim(); ++a) {
        Vec u = V.basis_vec(a);
        nlohmann::json p = base;
        p["v"] = V.label(a);
        guarded("star-unit-left/v=" + V.label(a), p, [&] { return star_n(V, one, u, 0) == u; });
        guarded("star-unit-right/v=" + V.label(a), p, [&] { return star_n(V, u, one, 0) == u; });
    }
    OSpan plain = o_n_span(V, 0, V.cutoff(), Flavor::Plain);
    OSpan tilde = o_n_span(V, 0, V.cutoff(), Flavor::Tilde);
    rep.add("o-span-transport", base, std::all_of(tilde.generators.begin(), tilde.generators.end(), [&](const Vec &g) {
                return plain.span.contains(smat_apply(U, g));
            }), std::to_string(tilde.generators.size()) + " generators");
    for (std::size_t a : low) {
        Vec v = V.basis_vec(a);
        nlohmann::json p = base;
        p["v"] = V.label(a);
        guarded("omega-central/v=" + V.label(a), p,
                [&] { return plain.span.contains(vec_sub(star_n(V, om, v, 0), star_n(V, v, om, 0))); });
    }
    std::vector<std::size_t> one_wt = V.basis_up_to_weight(std::min(1, V.cutoff()));
    for (std::size_t a : one_wt)
        for (std::size_t b : one_wt)
            for (std::size_t c : one_wt) {
                Vec x = V.basis_vec(a), y = V.basis_vec(b), z = V.basis_vec(c);
                nlohmann::json p = base;
                p["u"] = V.label(a);
                p["v"] = V.label(b);
                p["w"] = V.label(c);
                guarded("star-associative/" + V.label(a) + "," + V.label(b) + "," + V.label(c), p, [&] {
                    Vec d = vec_sub(star_n(V, star_n(V, x, y, 0), z, 0), star_n(V, x, star_n(V, y, z, 0), 0));
                    return plain.span.contains(d);
                });
            }
    for (int N = 0; N <= diamond_N_max; ++N)
        for (std::size_t a : one_wt)
            for (std::size_t b : one_wt)
                for (int k = 0; k <= N; ++k)
                    for (int l = 0; l <= N; ++l)
                        for (Side side : {Side::Left, Side::Right}) {
                            int n = N;
                            UMatrix mu = UMatrix::single(k, n, V.basis_vec(a)), mv = UMatrix::single(n, l, V.basis_vec(b));
                            std::string s = side == Side::Left ? "left" : "right";
                            nlohmann::json p = base;
                            p["N"] = N;
                            p["k"] = k;
                            p["l"] = l;
                            p["side"] = s;
                            p["u"] = V.label(a);
                            p["v"] = V.label(b);
                            std::string id = "diamond-conjugation/" + s + "/N=" + std::to_string(N) +
                                             ",k=" + std::to_string(k) + ",l=" + std::to_string(l) + "/u=" +
                                             V.label(a) + ",v=" + V.label(b);
                            guarded(id, p, [&] {
                                UMatrix lhs = diamond(V, mu, mv, Flavor::Tilde, side).mapped(U);
                                UMatrix rhs = diamond(V, mu.mapped(U), mv.mapped(U), Flavor::Plain, side);
                                return lhs == rhs;
                            });
                        }
    ModeQuotient Q = quotient_algebra(VertexData::trivial(), 0, 0, Flavor::Plain);
    rep.add("quotient-trivial", {{"N", 0}}, Q.closed && Q.algebra && Q.algebra->dim() == 1, Q.note);
    return rep;
}

} // namespace pt
