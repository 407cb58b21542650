#include "pt/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace pt {

Matrix Matrix::identity(int n)
{
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, int rows)
{
    Matrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols)
{
    Matrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec Matrix::col(int j) const
{
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::row(int i) const
{
    Vec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

bool Matrix::is_zero() const
{
    for (const auto& x : a_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

bool Matrix::all_exact() const
{
    for (const auto& x : a_) {
        if (!x.exact()) return false;
    }
    return true;
}

Scalar Matrix::trace() const
{
    Scalar t;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s)
{
    for (auto& x : a_) x *= s;
    return *this;
}

Matrix Matrix::operator-() const
{
    Matrix m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
            }
        }
    }
    return c;
}

Vec operator*(const Matrix& a, const Vec& v)
{
    if (a.cols_ != static_cast<int>(v.size())) throw std::invalid_argument("matrix shape mismatch");
    Vec out(a.rows_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
        }
    }
    return out;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.a_.size(); ++k) {
        if (a.a_[k] != b.a_[k]) return false;
    }
    return true;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Rref rref(Matrix m)
{
    Rref out;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int best = -1;
        double best_abs = -1.0;
        for (int i = r; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            double a = std::fabs(m(i, c).to_double());
            if (a > best_abs) {
                best_abs = a;
                best = i;
            }
        }
        if (best < 0) {
            for (int i = r; i < m.rows(); ++i) m(i, c) = Scalar(0);
            continue;
        }
        if (best != r) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
        }
        Scalar inv = Scalar(1) / m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        m(r, c) = Scalar(1);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) {
                if (i != r) m(i, c) = Scalar(0);
                continue;
            }
            Scalar f = m(i, c);
            for (int j = c; j < m.cols(); ++j) {
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
            }
            m(i, c) = Scalar(0);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.r = std::move(m);
    return out;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

std::vector<Vec> nullspace(const Matrix& m)
{
    Rref rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < rr.pivots.size(); ++k) v[rr.pivots[k]] = -rr.r(static_cast<int>(k), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    Matrix aug(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    Rref rr = rref(std::move(aug));
    Matrix x(a.cols(), b.cols());
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
        if (rr.pivots[k] >= a.cols()) return std::nullopt;
        for (int j = 0; j < b.cols(); ++j) x(rr.pivots[k], j) = rr.r(static_cast<int>(k), a.cols() + j);
    }
    for (int i = static_cast<int>(rr.pivots.size()); i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            if (!rr.r(i, a.cols() + j).is_zero()) return std::nullopt;
        }
    }
    return x;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b)
{
    auto x = solve(a, Matrix::from_columns({b}, a.rows()));
    if (!x) return std::nullopt;
    return x->col(0);
}

Matrix inverse(const Matrix& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    auto x = solve(m, Matrix::identity(m.rows()));
    if (!x || rank(m) < m.rows()) throw std::domain_error("singular matrix");
    return *x;
}

std::vector<int> independent_subset(const std::vector<Vec>& vs)
{
    std::vector<int> keep;
    if (vs.empty()) return keep;
    Matrix m = Matrix::from_columns(vs, static_cast<int>(vs[0].size()));
    Rref rr = rref(m);
    return rr.pivots;
}

Scalar dot(const Vec& a, const Vec& b)
{
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    }
    return s;
}

Vec axpy(const Scalar& s, const Vec& x, const Vec& y)
{
    Vec out = y;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i].is_zero()) out[i] += s * x[i];
    }
    return out;
}

bool is_zero(const Vec& v)
{
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Inertia inertia(const Matrix& sym)
{
    Matrix m = sym;
    const int n = m.rows();
    Inertia out;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int piv = -1;
        for (int i = 0; i < n && piv < 0; ++i) {
            if (!done[i] && !m(i, i).is_zero()) piv = i;
        }
        if (piv < 0) {
            int pi = -1, pj = -1;
            for (int i = 0; i < n && pi < 0; ++i) {
                if (done[i]) continue;
                for (int j = 0; j < n; ++j) {
                    if (j != i && !done[j] && !m(i, j).is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
                }
            }
            if (pi < 0) break;
            // congruence by x_i -> x_i + x_j makes the diagonal entry nonzero
            for (int k = 0; k < n; ++k) m(pi, k) += m(pj, k);
            for (int k = 0; k < n; ++k) m(k, pi) += m(k, pj);
            piv = pi;
        }
        Scalar d = m(piv, piv);
        if (d.sign() > 0) ++out.pos;
        else ++out.neg;
        done[piv] = true;
        for (int i = 0; i < n; ++i) {
            if (done[i] || m(i, piv).is_zero()) continue;
            Scalar f = m(i, piv) / d;
            for (int k = 0; k < n; ++k) m(i, k) -= f * m(piv, k);
        }
        for (int k = 0; k < n; ++k) {
            if (!done[k]) m(k, piv) = Scalar(0);
        }
        for (int k = 0; k < n; ++k) {
            if (!done[k]) m(piv, k) = Scalar(0);
        }
    }
    out.zero = n - out.pos - out.neg;
    return out;
}

}  // namespace pt
