#include <pseudotrace/series.hpp>

#include <algorithm>
#include <sstream>

namespace pt
{

int clamp_hi(long h)
{
    if (h >= kExact)
        return kExact;
    return static_cast<int>(h);
}

LaurentSeries::LaurentSeries(int lo, int hi, const std::map<int, Scalar> &coeffs, std::string var)
    : lo_(lo), hi_(clamp_hi(hi)), var_(std::move(var))
{
    for (const auto &[e, c] : coeffs) {
        if (c.is_zero() || e > hi_)
            continue;
        if (e < lo_)
            throw DomainError("coefficient below declared lowest exponent");
        c_.emplace(e, c);
    }
}

LaurentSeries LaurentSeries::zero(int hi, std::string var)
{
    LaurentSeries s;
    s.lo_ = 0;
    s.hi_ = clamp_hi(hi);
    s.var_ = std::move(var);
    return s;
}

LaurentSeries LaurentSeries::constant(const Scalar &c, int hi)
{
    return monomial(c, 0, hi);
}

LaurentSeries LaurentSeries::monomial(const Scalar &c, int e, int hi)
{
    LaurentSeries s;
    s.lo_ = e;
    s.hi_ = clamp_hi(hi);
    if (!c.is_zero() && e <= s.hi_)
        s.c_.emplace(e, c);
    return s;
}

LaurentSeries LaurentSeries::polynomial(const std::map<int, Scalar> &coeffs)
{
    int lo = 0;
    bool first = true;
    for (const auto &[e, c] : coeffs) {
        if (c.is_zero())
            continue;
        if (first || e < lo)
            lo = e;
        first = false;
    }
    return LaurentSeries(lo, kExact, coeffs);
}

Scalar LaurentSeries::coeff(int e) const
{
    if (e > hi_)
        throw WindowError("coefficient of " + var_ + "^" + std::to_string(e) + " is beyond the known window (hi=" +
                          std::to_string(hi_) + ")");
    auto it = c_.find(e);
    return it == c_.end() ? Scalar() : it->second;
}

int LaurentSeries::valuation() const
{
    if (c_.empty())
        return hi_ >= kExact ? kExact : hi_ + 1;
    return c_.begin()->first;
}

void LaurentSeries::add_coeff(int e, const Scalar &c)
{
    if (c.is_zero() || e > hi_)
        return;
    auto [it, inserted] = c_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            c_.erase(it);
    }
}

LaurentSeries LaurentSeries::truncated(int hi) const
{
    LaurentSeries s = *this;
    s.hi_ = std::min(hi_, clamp_hi(hi));
    for (auto it = s.c_.upper_bound(s.hi_); it != s.c_.end();)
        it = s.c_.erase(it);
    return s;
}

LaurentSeries LaurentSeries::shifted(int k) const
{
    LaurentSeries s;
    s.var_ = var_;
    s.lo_ = lo_ + k;
    s.hi_ = exact() ? kExact : hi_ + k;
    for (const auto &[e, c] : c_)
        s.c_.emplace(e + k, c);
    return s;
}

LaurentSeries LaurentSeries::derivative() const
{
    LaurentSeries s;
    s.var_ = var_;
    s.lo_ = lo_ - 1;
    s.hi_ = exact() ? kExact : hi_ - 1;
    for (const auto &[e, c] : c_)
        if (e != 0)
            s.c_.emplace(e - 1, c * Rational(e));
    return s;
}

LaurentSeries LaurentSeries::inverse() const
{
    if (c_.empty())
        throw WindowError("cannot invert a series whose known coefficients vanish");
    int v = valuation();
    Scalar lead = c_.begin()->second;
    Scalar inv = lead.inverse();
    if (c_.size() == 1)
        return monomial(inv, -v, exact() ? kExact : hi_ - 2 * v);
    if (exact())
        throw WindowError("inverse of a non-monomial Laurent polynomial needs a truncation order");
    int P = hi_ - v;
    std::vector<Scalar> a(static_cast<std::size_t>(P) + 1), b(static_cast<std::size_t>(P) + 1);
    for (const auto &[e, c] : c_)
        if (e - v <= P)
            a[static_cast<std::size_t>(e - v)] = c;
    b[0] = inv;
    Scalar minus_inv = -inv;
    for (int k = 1; k <= P; ++k) {
        Scalar acc;
        for (int j = 1; j <= k; ++j)
            if (!a[j].is_zero() && !b[k - j].is_zero())
                acc += a[j] * b[k - j];
        b[k] = minus_inv * acc;
    }
    std::map<int, Scalar> m;
    for (int k = 0; k <= P; ++k)
        if (!b[k].is_zero())
            m.emplace(k - v, b[k]);
    return LaurentSeries(-v, -v + P, m, var_);
}

LaurentSeries LaurentSeries::pow(long k) const
{
    if (k == 0) {
        LaurentSeries one = constant(Scalar(1));
        one.var_ = var_;
        return one;
    }
    if (k < 0)
        return inverse().pow(-k);
    LaurentSeries result = constant(Scalar(1));
    result.var_ = var_;
    LaurentSeries base = *this;
    while (k > 0) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return result;
}

LaurentSeries &LaurentSeries::operator+=(const LaurentSeries &o)
{
    lo_ = std::min(lo_, o.lo_);
    hi_ = std::min(hi_, o.hi_);
    for (auto it = c_.upper_bound(hi_); it != c_.end();)
        it = c_.erase(it);
    for (const auto &[e, c] : o.c_)
        add_coeff(e, c);
    return *this;
}

LaurentSeries &LaurentSeries::operator-=(const LaurentSeries &o)
{
    return *this += -o;
}

LaurentSeries &LaurentSeries::operator*=(const Scalar &s)
{
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto &[e, c] : c_)
        c = c * s;
    return *this;
}

LaurentSeries LaurentSeries::operator-() const
{
    LaurentSeries s = *this;
    for (auto &[e, c] : s.c_)
        c = -c;
    return s;
}

LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b)
{
    long va = a.valuation(), vb = b.valuation();
    long h = std::min(static_cast<long>(a.hi_) + vb, static_cast<long>(b.hi_) + va);
    if (a.exact() && b.exact())
        h = kExact;
    LaurentSeries out;
    out.var_ = a.var_;
    out.lo_ = a.lo_ + b.lo_;
    out.hi_ = clamp_hi(h);
    for (const auto &[ea, ca] : a.c_) {
        for (const auto &[eb, cb] : b.c_) {
            if (ea + eb > out.hi_)
                break;
            out.add_coeff(ea + eb, ca * cb);
        }
    }
    return out;
}

bool LaurentSeries::agrees_with(const LaurentSeries &o) const
{
    int h = std::min(hi_, o.hi_);
    int l = std::min(lo_, o.lo_);
    for (const auto &[e, c] : c_)
        if (e <= h && o.coeff(e) != c)
            return false;
    for (const auto &[e, c] : o.c_)
        if (e <= h && coeff(e) != c)
            return false;
    (void)l;
    return true;
}

std::string LaurentSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : c_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << var_ << "^" << e;
    }
    if (first)
        os << "0";
    if (!exact())
        os << " + O(" << var_ << "^" << hi_ + 1 << ")";
    return os.str();
}

LaurentSeries exp_series(const Scalar &c, int order)
{
    std::map<int, Scalar> m;
    Scalar p(1);
    Rational fact(1);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            p = p * c;
            fact *= k;
        }
        m.emplace(k, p * (Rational(1) / fact));
    }
    return LaurentSeries(0, order, m);
}

LaurentSeries log1p_series(int order)
{
    std::map<int, Scalar> m;
    for (int k = 1; k <= order; ++k)
        m.emplace(k, Scalar(frac(neg_one_pow(k + 1), k)));
    return LaurentSeries(0, order, m);
}

namespace
{

// (e^{kx} - 1) / (k x) = 1 + sum_{j>=1} k^j x^j / (j+1)!
LaurentSeries expm1_unit(int order)
{
    std::map<int, Scalar> m;
    for (int j = 0; j <= order; ++j)
        m.emplace(j, Scalar::monomial(Rational(1) / factorial(j + 1), j));
    return LaurentSeries(0, order, m);
}

} // namespace

LaurentSeries expm1_inverse_power(int m, int order)
{
    if (m < 1)
        throw DomainError("expm1_inverse_power needs m >= 1");
    int rel = order + m;
    if (rel < 0)
        return LaurentSeries(-m, order, {});
    LaurentSeries u = expm1_unit(rel);
    LaurentSeries v = binom_pow(u, Rational(-m), rel);
    return v.shifted(-m) * Scalar::kappa(-m);
}

LaurentSeries expm1_power(int p, int order)
{
    if (p < 0)
        return expm1_inverse_power(-p, order);
    if (p == 0)
        return LaurentSeries::constant(Scalar(1));
    int rel = order - p;
    if (rel < 0)
        return LaurentSeries(p, order, {});
    LaurentSeries u = expm1_unit(rel);
    LaurentSeries v = binom_pow(u, Rational(p), rel);
    return v.shifted(p) * Scalar::kappa(p);
}

Scalar residue(const LaurentSeries &s)
{
    return s.coeff(-1);
}

LaurentSeries substitute(const LaurentSeries &outer, const LaurentSeries &inner)
{
    if (inner.hi() < 1)
        throw SubstitutionError("inner series has unknown linear coefficient");
    for (const auto &[e, c] : inner.coeffs())
        if (e <= 0)
            throw SubstitutionError("inner series must have zero constant term");
    if (outer.is_zero()) {
        int v = inner.valuation();
        long h = outer.exact() ? kExact : static_cast<long>(v) * (outer.hi() + 1) - 1;
        return LaurentSeries::zero(clamp_hi(h), outer.var());
    }
    int v = inner.valuation();
    if (v > inner.hi() || v >= kExact)
        throw SubstitutionError("inner series vanishes within its window");
    bool has_negative = outer.coeffs().begin()->first < 0;
    if (has_negative && v != 1)
        throw SubstitutionError("negative powers need an invertible linear coefficient");
    // inner = x^v * U
    LaurentSeries U = inner.shifted(-v);
    long R = kExact;
    if (!outer.exact())
        R = std::min(R, static_cast<long>(v) * (outer.hi() + 1) - 1);
    if (!inner.exact()) {
        int emin = outer.coeffs().begin()->first;
        long rel = inner.hi() - v;
        R = std::min(R, static_cast<long>(v) * emin + rel);
    }
    int hi = clamp_hi(R);
    LaurentSeries acc = LaurentSeries::zero(hi, outer.var());
    acc = LaurentSeries(std::min(0, v * outer.lo()), hi, {}, outer.var());
    for (const auto &[e, c] : outer.coeffs()) {
        if (static_cast<long>(v) * e > hi)
            break;
        LaurentSeries Ue;
        if (hi >= kExact) {
            if (e < 0 && U.coeffs().size() != 1)
                throw SubstitutionError("exact substitution of negative powers needs a truncated inner series");
            Ue = U.pow(e);
        } else {
            int rel = hi - v * e;
            LaurentSeries Ut = U.truncated(rel);
            Ue = Ut.pow(e).truncated(rel);
        }
        acc += (Ue.shifted(v * e) * c).truncated(hi);
    }
    return acc;
}

LaurentSeries binom_pow(const LaurentSeries &base, const Rational &alpha, int order)
{
    if (base.hi() < 0)
        throw WindowError("binom_pow: constant term unknown");
    for (const auto &[e, c] : base.coeffs())
        if (e < 0)
            throw DomainError("binom_pow: base has negative powers");
    if (base.coeff(0) != Scalar(1))
        throw DomainError("binom_pow: base must have constant term 1");
    LaurentSeries t = base - LaurentSeries::constant(Scalar(1));
    int H = std::min(base.hi(), clamp_hi(order));
    bool nonneg_int = is_integer(alpha) && alpha >= 0;
    if (t.is_zero()) {
        return LaurentSeries(0, H, {{0, Scalar(1)}}, base.var());
    }
    if (H >= kExact && !nonneg_int)
        throw WindowError("binom_pow: non-polynomial power of an exact series needs an order");
    int vt = t.valuation();
    long M = nonneg_int ? to_long(alpha) : (H / vt);
    if (nonneg_int && H < kExact)
        M = std::min(M, static_cast<long>(H / vt));
    LaurentSeries acc(0, H, {{0, Scalar(1)}}, base.var());
    LaurentSeries tm = LaurentSeries::constant(Scalar(1));
    for (long m = 1; m <= M; ++m) {
        tm = (tm * t).truncated(H);
        Rational b = binom(alpha, m);
        if (b != 0)
            acc += tm * Scalar(b);
    }
    return acc.truncated(H);
}

nlohmann::json to_json(const LaurentSeries &s)
{
    nlohmann::json j;
    j["var"] = s.var();
    j["lo"] = s.lo();
    if (s.exact())
        j["hi"] = nullptr;
    else
        j["hi"] = s.hi();
    nlohmann::json c = nlohmann::json::object();
    for (const auto &[e, v] : s.coeffs())
        c[std::to_string(e)] = v.str();
    j["coeffs"] = c;
    return j;
}

LaurentSeries laurent_from_json(const nlohmann::json &j)
{
    std::map<int, Scalar> m;
    for (const auto &[k, v] : j.at("coeffs").items())
        m.emplace(std::stoi(k), Scalar::parse(v.get<std::string>()));
    int hi = j.at("hi").is_null() ? kExact : j.at("hi").get<int>();
    return LaurentSeries(j.at("lo").get<int>(), hi, m, j.value("var", std::string("x")));
}

std::pair<Rational, int> QLogSeries::split_exponent(const Rational &exponent)
{
    Integer f = floor_of(exponent);
    Rational r = exponent - Rational(f);
    return {r, static_cast<int>(f.get_si())};
}

void QLogSeries::declare(const Rational &base_exponent, int k, int n_lo, int n_hi)
{
    auto [r, f] = split_exponent(base_exponent);
    Key key{r, k};
    LaurentSeries window(f + n_lo, f + n_hi, {}, "q");
    auto it = blocks_.find(key);
    if (it == blocks_.end())
        blocks_.emplace(key, window);
    else
        it->second += window;
}

void QLogSeries::add_term(int k, const Rational &exponent, const Scalar &c)
{
    auto [r, e] = split_exponent(exponent);
    Key key{r, k};
    auto it = blocks_.find(key);
    if (it == blocks_.end())
        it = blocks_.emplace(key, LaurentSeries(e, kExact, {}, "q")).first;
    LaurentSeries &body = it->second;
    if (e > body.hi())
        throw WindowError("term beyond the declared q-window");
    body += LaurentSeries(std::min(e, body.lo()), kExact, {{e, c}}, "q");
}

void QLogSeries::add_block(const Rational &r, int k, const LaurentSeries &body)
{
    if (r < 0 || r >= 1)
        throw DomainError("block offset must lie in [0, 1)");
    Key key{r, k};
    auto it = blocks_.find(key);
    if (it == blocks_.end()) {
        LaurentSeries b = body;
        b.set_var("q");
        blocks_.emplace(key, b);
    } else {
        it->second += body;
    }
}

Scalar QLogSeries::coeff(int k, const Rational &exponent) const
{
    auto [r, e] = split_exponent(exponent);
    auto it = blocks_.find(Key{r, k});
    if (it == blocks_.end())
        return Scalar();
    return it->second.coeff(e);
}

int QLogSeries::max_log_power() const
{
    int k = 0;
    for (const auto &[key, body] : blocks_)
        if (!body.is_zero())
            k = std::max(k, key.second);
    return k;
}

bool QLogSeries::is_zero() const
{
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto &kv) { return kv.second.is_zero(); });
}

QLogSeries QLogSeries::qddq() const
{
    QLogSeries out;
    for (const auto &[key, body] : blocks_) {
        const auto &[r, k] = key;
        std::map<int, Scalar> grading;
        for (const auto &[n, c] : body.coeffs())
            grading.emplace(n, c * (r + n));
        out.add_block(r, k, LaurentSeries(body.lo(), body.hi(), grading, "q"));
        if (k > 0)
            out.add_block(r, k - 1, body * Scalar(k));
    }
    return out;
}

QLogSeries QLogSeries::shifted(int s) const
{
    QLogSeries out;
    for (const auto &[key, body] : blocks_)
        out.blocks_.emplace(key, body.shifted(s));
    return out;
}

QLogSeries &QLogSeries::operator+=(const QLogSeries &o)
{
    for (const auto &[key, body] : o.blocks_)
        add_block(key.first, key.second, body);
    return *this;
}

QLogSeries &QLogSeries::operator-=(const QLogSeries &o)
{
    for (const auto &[key, body] : o.blocks_)
        add_block(key.first, key.second, -body);
    return *this;
}

QLogSeries &QLogSeries::operator*=(const Scalar &s)
{
    for (auto &[key, body] : blocks_)
        body *= s;
    return *this;
}

std::string QLogSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[key, body] : blocks_) {
        const auto &[r, k] = key;
        for (const auto &[n, c] : body.coeffs()) {
            if (!first)
                os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            if (k > 0)
                os << "*log(q)^" << k;
            os << "*q^(" << Rational(r + n).get_str() << ")";
        }
    }
    if (first)
        os << "0";
    return os.str();
}

nlohmann::json QLogSeries::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &[key, body] : blocks_) {
        nlohmann::json b;
        b["r"] = key.first.get_str();
        b["k"] = key.second;
        b["body"] = pt::to_json(body);
        arr.push_back(b);
    }
    return nlohmann::json{{"blocks", arr}};
}

} // namespace pt
