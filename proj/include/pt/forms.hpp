#pragma once

#include "pt/linalg.hpp"
#include "pt/scalar.hpp"

#include <string>
#include <vector>

namespace pt {

constexpr int kDim = 6;

int binomial(int n, int k);

// Bit masks of the increasing index tuples of a degree, in lexicographic order.
const std::vector<unsigned>& degree_masks(int degree);
int mask_index(unsigned mask);
std::string mask_label(unsigned mask);  // "135"

class Form {
public:
    Form() : Form(0) {}
    explicit Form(int degree);

    // Monomial from 1-based digits, e.g. mono("125").
    static Form mono(const std::string& digits, const Scalar& c = Scalar(1));
    static Form from_mask(unsigned mask, const Scalar& c = Scalar(1));
    static Form from_vec(int degree, const Vec& v);

    int degree() const { return degree_; }
    int size() const { return static_cast<int>(c_.size()); }
    const Scalar& operator[](int idx) const { return c_[idx]; }
    Scalar& operator[](int idx) { return c_[idx]; }
    Scalar at(const std::string& digits) const;
    const Vec& vec() const { return c_; }

    bool is_zero() const;
    bool all_exact() const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Scalar& s);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, const Scalar& s) { return a *= s; }
    friend Form operator*(const Scalar& s, Form a) { return a *= s; }
    Form operator-() const;
    friend bool operator==(const Form& a, const Form& b);
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    std::string str() const;

private:
    int degree_;
    Vec c_;
};

Form basis_one_form(int i);  // e_{i+1}, 0-based
Form volume_form();
Form kaehler_form();  // e12 + e34 + e56

Form wedge(const Form& a, const Form& b);
Form contract(const Vec& v, const Form& a);
Form contract_basis(int i, const Form& a);  // e_{i+1} ⨼ a
Form hodge(const Form& a);
Scalar inner(const Form& a, const Form& b);
Scalar norm2(const Form& a);

// A e_col = sum_row A(row, col) e_row, and w(X, Y) = g(AX, Y).
Matrix endo_of_form(const Form& w);
Form form_of_endo(const Matrix& a);
Matrix complex_structure();  // endo of the Kaehler form

// Derivation action (A a)(X_1..X_k) = -sum a(.., A X_i, ..).
Form act(const Matrix& a, const Form& f);

// Pullback of a form by a linear map: (M^* a)(X_1..X_k) = a(M X_1, .., M X_k).
Form pullback(const Matrix& m, const Form& f);

// Value on vectors given as 6-component columns.
Scalar evaluate(const Form& f, const std::vector<Vec>& vectors);

Form convert(const Form& f, Backend b);

Form parse_form(const std::string& text, Backend b = Backend::rational);
std::string format_form(const Form& f);
std::ostream& operator<<(std::ostream& os, const Form& f);

}  // namespace pt
