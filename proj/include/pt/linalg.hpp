#pragma once

#include "pt/scalar.hpp"

#include <optional>
#include <vector>

namespace pt {

using Vec = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static Matrix identity(int n);
    static Matrix from_columns(const std::vector<Vec>& cols, int rows);
    static Matrix from_rows(const std::vector<Vec>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Vec col(int j) const;
    Vec row(int i) const;
    Matrix transpose() const;
    bool is_zero() const;
    bool all_exact() const;
    Scalar trace() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vec operator*(const Matrix& a, const Vec& v);
    friend bool operator==(const Matrix& a, const Matrix& b);
    Matrix operator-() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> a_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

struct Rref {
    Matrix r;
    std::vector<int> pivots;
};

Rref rref(Matrix m);
int rank(const Matrix& m);
std::vector<Vec> nullspace(const Matrix& m);
std::optional<Vec> solve(const Matrix& a, const Vec& b);
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& m);

// Indices of a maximal independent subset, scanning in order.
std::vector<int> independent_subset(const std::vector<Vec>& vs);

Scalar dot(const Vec& a, const Vec& b);
Vec axpy(const Scalar& s, const Vec& x, const Vec& y);  // s*x + y
bool is_zero(const Vec& v);

struct Inertia {
    int pos = 0;
    int neg = 0;
    int zero = 0;
    friend bool operator==(const Inertia& a, const Inertia& b)
    {
        return a.pos == b.pos && a.neg == b.neg && a.zero == b.zero;
    }
};

// Signature of a symmetric matrix by congruence elimination.
Inertia inertia(const Matrix& sym);

}  // namespace pt
