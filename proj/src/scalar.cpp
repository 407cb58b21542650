#include "pt/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace pt {

namespace {

std::atomic<double> g_tolerance{1e-9};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b)
{
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// n = a^2 * r with r squarefree; false if n cannot be fully factored cheaply
bool split_square(const mpz_class& n, mpz_class& a, std::uint64_t& r)
{
    const unsigned long limit = 100000;
    mpz_class m = n;
    a = 1;
    mpz_class rr = 1;
    for (unsigned long p = 2; p <= limit && m > 1; ++p) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
            m /= p;
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) a *= p;
        if (e % 2) rr *= p;
    }
    if (m > 1) {
        if (mpz_perfect_square_p(m.get_mpz_t())) {
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
            a *= s;
        } else {
            mpz_class bound = mpz_class(limit) * limit * limit;
            if (m > bound) return false;
            // m has at most two prime factors above the limit, both distinct here
            rr *= m;
        }
    }
    if (!rr.fits_ulong_p()) return false;
    r = rr.get_ui();
    return true;
}

}  // namespace

double default_tolerance() { return g_tolerance.load(); }
void set_default_tolerance(double tol) { g_tolerance.store(tol); }

// --- Surd ---

Surd::Surd(long v)
{
    if (v != 0) terms_.emplace_back(1, mpq_class(v));
}

Surd::Surd(const mpq_class& q)
{
    if (q != 0) terms_.emplace_back(1, q);
}

Surd Surd::root(std::uint64_t n)
{
    mpz_class a;
    std::uint64_t r = 1;
    if (!split_square(mpz_class(std::to_string(n)), a, r))
        throw std::domain_error("radicand too large to factor");
    Surd s;
    s.add_term(r, mpq_class(a));
    return s;
}

void Surd::add_term(std::uint64_t r, const mpq_class& q)
{
    if (q == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), r,
                               [](const Term& t, std::uint64_t key) { return t.first < key; });
    if (it != terms_.end() && it->first == r) {
        it->second += q;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, Term(r, q));
    }
}

bool Surd::is_rational() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1);
}

mpq_class Surd::rational() const
{
    if (!is_rational()) throw std::domain_error("value is irrational: " + str());
    return terms_.empty() ? mpq_class(0) : terms_[0].second;
}

Surd Surd::operator-() const
{
    Surd r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Surd& Surd::operator+=(const Surd& o)
{
    for (const auto& t : o.terms_) add_term(t.first, t.second);
    return *this;
}

Surd& Surd::operator-=(const Surd& o)
{
    for (const auto& t : o.terms_) add_term(t.first, -t.second);
    return *this;
}

Surd& Surd::operator*=(const Surd& o)
{
    if (is_rational() && o.is_rational()) {
        if (terms_.empty() || o.terms_.empty()) {
            terms_.clear();
        } else {
            terms_[0].second *= o.terms_[0].second;
        }
        return *this;
    }
    Surd out;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            std::uint64_t g = gcd_u64(a.first, b.first);
            unsigned __int128 r = static_cast<unsigned __int128>(a.first / g) * (b.first / g);
            if (r > std::numeric_limits<std::uint64_t>::max())
                throw std::overflow_error("surd radicand overflow");
            out.add_term(static_cast<std::uint64_t>(r), a.second * b.second * mpq_class(std::to_string(g)));
        }
    }
    *this = std::move(out);
    return *this;
}

Surd Surd::inverse() const
{
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_rational()) return Surd(mpq_class(1) / terms_[0].second);
    std::vector<std::uint64_t> primes;
    for (const auto& t : terms_) {
        for (auto p : prime_factors(t.first)) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    Surd y = *this;
    Surd num(1);
    for (auto p : primes) {
        Surd c = y;
        for (auto& t : c.terms_) {
            if (t.first % p == 0) t.second = -t.second;
        }
        num *= c;
        y *= c;
    }
    mpq_class d = y.rational();
    return num * Surd(mpq_class(1) / d);
}

Surd& Surd::operator/=(const Surd& o)
{
    if (o.is_rational()) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        mpq_class q = o.terms_[0].second;
        for (auto& t : terms_) t.second /= q;
        return *this;
    }
    return *this *= o.inverse();
}

int Surd::sign() const
{
    if (terms_.empty()) return 0;
    if (is_rational()) return sgn(terms_[0].second);
    const mp_bitcnt_t prec = 512;
    mpf_class acc(0, prec);
    for (const auto& t : terms_) {
        mpf_class r(0, prec);
        r = mpz_class(std::to_string(t.first));
        mpf_class s(0, prec);
        mpf_sqrt(s.get_mpf_t(), r.get_mpf_t());
        mpf_class q(t.second, prec);
        acc += q * s;
    }
    return sgn(acc);
}

double Surd::to_double() const
{
    double acc = 0.0;
    for (const auto& t : terms_) acc += t.second.get_d() * std::sqrt(static_cast<double>(t.first));
    return acc;
}

std::string Surd::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        mpq_class q = t.second;
        if (!first) os << (q < 0 ? "-" : "+");
        else if (q < 0) os << "-";
        mpq_class a = abs(q);
        if (t.first == 1) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "sqrt(" << t.first << ")";
        }
        first = false;
    }
    return os.str();
}

// --- Scalar ---

Scalar Scalar::real(double d)
{
    Scalar s;
    s.exact_ = false;
    s.d_ = d;
    return s;
}

bool Scalar::is_zero() const { return is_zero(default_tolerance()); }

bool Scalar::is_zero(double tol) const
{
    if (exact_) return s_.is_zero();
    return std::fabs(d_) <= tol;
}

int Scalar::sign() const
{
    if (exact_) return s_.sign();
    if (is_zero()) return 0;
    return d_ > 0 ? 1 : -1;
}

Scalar Scalar::operator-() const
{
    if (exact_) return Scalar(-s_);
    return real(-d_);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (exact_ && o.exact_) {
        s_ += o.s_;
    } else {
        *this = real(to_double() + o.to_double());
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    if (exact_ && o.exact_) {
        s_ -= o.s_;
    } else {
        *this = real(to_double() - o.to_double());
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (exact_ && o.exact_) {
        s_ *= o.s_;
    } else {
        *this = real(to_double() * o.to_double());
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (exact_ && o.exact_) {
        s_ /= o.s_;
    } else {
        double den = o.to_double();
        if (den == 0.0) throw std::domain_error("division by zero");
        *this = real(to_double() / den);
    }
    return *this;
}

std::string Scalar::str() const
{
    if (exact_) return s_.str();
    std::ostringstream os;
    os.precision(17);
    os << d_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar sqrt(const Scalar& x)
{
    if (x.sign() < 0) throw std::domain_error("square root of a negative number");
    if (x.is_rational()) {
        mpq_class q = x.rational();
        if (q == 0) return Scalar(0);
        mpz_class nd = q.get_num() * q.get_den();
        mpz_class a;
        std::uint64_t r = 1;
        if (split_square(nd, a, r)) {
            mpq_class c(a, q.get_den());
            c.canonicalize();
            Surd s = Surd::root(r) * Surd(c);
            return Scalar(s);
        }
    }
    return Scalar::real(std::sqrt(std::max(0.0, x.to_double())));
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar square(const Scalar& x) { return x * x; }

Scalar convert(const Scalar& x, Backend b)
{
    if (b == Backend::floating) return x.to_float();
    if (x.exact()) return x;
    mpq_class q(x.to_double());
    return Scalar(q);
}

mpq_class parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw parse_error("empty number");
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    auto digits = [&](std::string& out) {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out.push_back(s[i++]);
        return i > start;
    };
    std::string ip, fp;
    bool has_int = digits(ip);
    bool has_frac = false;
    if (i < s.size() && s[i] == '.') {
        ++i;
        has_frac = digits(fp);
    }
    if (!has_int && !has_frac) throw parse_error("malformed number '" + text + "'");
    mpz_class num(ip.empty() ? std::string("0") : ip);
    mpz_class den = 1;
    for (char c : fp) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    if (i < s.size() && s[i] == '/') {
        ++i;
        std::string dd;
        if (!digits(dd) || !fp.empty()) throw parse_error("malformed fraction '" + text + "'");
        mpz_class d(dd);
        if (d == 0) throw parse_error("zero denominator in '" + text + "'");
        den *= d;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        std::string ed;
        if (!digits(ed) || ed.size() > 4) throw parse_error("malformed exponent in '" + text + "'");
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, std::stoul(ed));
        if (eneg) den *= p;
        else num *= p;
    }
    if (i != s.size()) throw parse_error("trailing characters in number '" + text + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

namespace {

class ScalarParser {
public:
    explicit ScalarParser(const std::string& s) : s_(s) {}

    Scalar parse()
    {
        Scalar v = expr();
        skip();
        if (i_ != s_.size()) throw parse_error("unexpected '" + s_.substr(i_) + "' in scalar");
        return v;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    Scalar expr()
    {
        Scalar v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    Scalar term()
    {
        Scalar v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) v /= factor();
            else return v;
        }
    }
    Scalar factor()
    {
        skip();
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            Scalar v = expr();
            if (!eat(')')) throw parse_error("missing ')'");
            return v;
        }
        if (s_.compare(i_, 4, "sqrt") == 0) {
            i_ += 4;
            if (!eat('(')) throw parse_error("expected '(' after sqrt");
            Scalar v = expr();
            if (!eat(')')) throw parse_error("missing ')'");
            return pt::sqrt(v);
        }
        std::size_t start = i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
        if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
            if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
                i_ = j;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            }
        }
        if (start == i_) throw parse_error("expected a number in '" + s_ + "'");
        return Scalar(parse_rational(s_.substr(start, i_ - start)));
    }
};

}  // namespace

Scalar parse_scalar(const std::string& text)
{
    ScalarParser p(text);
    try {
        return p.parse();
    } catch (const std::domain_error& e) {
        throw parse_error(std::string(e.what()) + " in \"" + text + "\"");
    }
}

}  // namespace pt
