#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pt {

// Element of Q(sqrt p_1, sqrt p_2, ...) stored as sum of q_r * sqrt(r),
// r squarefree, sorted by r, zero terms pruned.
class Surd {
public:
    using Term = std::pair<std::uint64_t, mpq_class>;

    Surd() = default;
    Surd(long v);
    Surd(const mpq_class& q);

    static Surd root(std::uint64_t n);  // sqrt(n) for a non-negative integer

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    mpq_class rational() const;  // throws unless is_rational()
    const std::vector<Term>& terms() const { return terms_; }

    Surd operator-() const;
    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Surd& o);
    Surd& operator/=(const Surd& o);
    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
    friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
    friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }

    Surd inverse() const;
    int sign() const;
    double to_double() const;
    std::string str() const;

private:
    std::vector<Term> terms_;
    void add_term(std::uint64_t r, const mpq_class& q);
};

// Either an exact surd or a double compared with a tolerance.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : s_(static_cast<long>(v)) {}
    Scalar(long v) : s_(v) {}
    Scalar(long long v) : s_(static_cast<long>(v)) {}
    Scalar(const mpq_class& q) : s_(q) {}
    Scalar(const Surd& s) : s_(s) {}

    static Scalar real(double d);
    static Scalar frac(long p, long q) { return Scalar(mpq_class(p, q)); }

    bool exact() const { return exact_; }
    const Surd& surd() const { return s_; }
    double to_double() const { return exact_ ? s_.to_double() : d_; }
    bool is_rational() const { return exact_ && s_.is_rational(); }
    mpq_class rational() const { return s_.rational(); }

    bool is_zero() const;
    bool is_zero(double tol) const;
    int sign() const;  // -1, 0, 1 (zero within tolerance on float)

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

    Scalar to_float() const { return real(to_double()); }
    std::string str() const;

private:
    bool exact_ = true;
    Surd s_;
    double d_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Exact whenever the radicand is a non-negative rational, otherwise a double.
Scalar sqrt(const Scalar& x);
Scalar abs(const Scalar& x);
Scalar square(const Scalar& x);

double default_tolerance();
void set_default_tolerance(double tol);

enum class Backend { rational, floating };
Scalar convert(const Scalar& x, Backend b);

// Rational or decimal literal: "3", "-1/2", "0.25", "1e-3".
mpq_class parse_rational(const std::string& text);

// Scalar expression: sums of products of rationals and sqrt(n), with parentheses.
Scalar parse_scalar(const std::string& text);

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pt
