#include <pseudotrace/errors.hpp>
#include <pseudotrace/scalar.hpp>

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pt
{

Scalar::Scalar(int v) : Scalar(Rational(v)) {}

Scalar::Scalar(long v) : Scalar(Rational(v)) {}

Scalar::Scalar(const Rational &r)
{
    if (r != 0)
        terms_.emplace(0, r);
}

Scalar Scalar::monomial(const Rational &c, int e)
{
    Scalar s;
    if (c != 0)
        s.terms_.emplace(e, c);
    return s;
}

Scalar Scalar::kappa(int e)
{
    return monomial(Rational(1), e);
}

Scalar Scalar::pi_squared()
{
    return monomial(frac(-1, 4), 2);
}

bool Scalar::is_rational() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rational Scalar::to_rational() const
{
    if (!is_rational())
        throw DomainError("scalar is not rational: " + str());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Scalar::coeff(int e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Scalar::min_exponent() const
{
    return terms_.empty() ? 0 : terms_.begin()->first;
}

int Scalar::max_exponent() const
{
    return terms_.empty() ? 0 : terms_.rbegin()->first;
}

Scalar Scalar::inverse() const
{
    if (!is_monomial())
        throw DomainError("only nonzero monomials in k are invertible: " + str());
    auto [e, c] = *terms_.begin();
    return monomial(Rational(1) / c, -e);
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    for (const auto &[e, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
    for (const auto &[e, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(e, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }
    return *this;
}

Scalar operator*(const Scalar &a, const Scalar &b)
{
    Scalar out;
    if (a.is_zero() || b.is_zero())
        return out;
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            Rational p = ca * cb;
            auto [it, inserted] = out.terms_.emplace(ea + eb, p);
            if (!inserted) {
                it->second += p;
                if (it->second == 0)
                    out.terms_.erase(it);
            }
        }
    }
    return out;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
    *this = *this * o;
    return *this;
}

Scalar &Scalar::operator*=(const Rational &r)
{
    if (r == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, c] : terms_)
        c *= r;
    return *this;
}

Scalar Scalar::operator-() const
{
    Scalar s = *this;
    for (auto &[e, c] : s.terms_)
        c = -c;
    return s;
}

std::complex<double> Scalar::eval() const
{
    const double two_pi = 2.0 * std::numbers::pi;
    std::complex<double> acc(0.0, 0.0);
    for (const auto &[e, c] : terms_) {
        double mag = std::pow(two_pi, e) * c.get_d();
        switch (((e % 4) + 4) % 4) {
        case 0:
            acc += std::complex<double>(mag, 0.0);
            break;
        case 1:
            acc += std::complex<double>(0.0, mag);
            break;
        case 2:
            acc += std::complex<double>(-mag, 0.0);
            break;
        default:
            acc += std::complex<double>(0.0, -mag);
            break;
        }
    }
    return acc;
}

std::string Scalar::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << c.get_str();
        if (e != 0)
            os << "*k^" << e;
    }
    return os.str();
}

namespace
{

struct Cursor {
    std::string s;
    std::size_t i = 0;
    bool done() const
    {
        return i >= s.size();
    }
    char peek() const
    {
        return done() ? '\0' : s[i];
    }
};

long read_int(Cursor &c)
{
    std::size_t start = c.i;
    if (c.peek() == '-' || c.peek() == '+')
        ++c.i;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
        ++c.i;
    if (c.i == start || (c.i == start + 1 && !std::isdigit(static_cast<unsigned char>(c.s[start]))))
        throw std::invalid_argument("expected integer in scalar: " + c.s);
    return std::stol(c.s.substr(start, c.i - start));
}

} // namespace

Scalar Scalar::parse(std::string_view text)
{
    Cursor c;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            c.s.push_back(ch);
    if (c.s.empty())
        throw std::invalid_argument("empty scalar");
    Scalar out;
    bool expect_term = true;
    while (!c.done()) {
        int sign = 1;
        if (!expect_term) {
            if (c.peek() == '+') {
                ++c.i;
            } else if (c.peek() != '-') {
                throw std::invalid_argument("bad scalar: " + c.s);
            }
        }
        while (c.peek() == '+' || c.peek() == '-') {
            if (c.peek() == '-')
                sign = -sign;
            ++c.i;
        }
        Rational coef(1);
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            std::size_t start = c.i;
            while (!c.done() && (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '/'))
                ++c.i;
            coef = parse_rational(c.s.substr(start, c.i - start));
            have_coef = true;
        }
        int e = 0;
        if (have_coef && c.peek() == '*') {
            ++c.i;
            if (c.peek() != 'k')
                throw std::invalid_argument("expected k in scalar: " + c.s);
        }
        if (c.peek() == 'k') {
            ++c.i;
            e = 1;
            if (c.peek() == '^') {
                ++c.i;
                e = static_cast<int>(read_int(c));
            }
        } else if (!have_coef) {
            throw std::invalid_argument("bad scalar term: " + c.s);
        }
        out += monomial(sign * coef, e);
        expect_term = false;
    }
    return out;
}

std::ostream &operator<<(std::ostream &os, const Scalar &s)
{
    return os << s.str();
}

} // namespace pt
