#pragma once

#include "pt/forms.hpp"
#include "pt/orbits.hpp"
#include "pt/tables.hpp"
#include "pt/linalg.hpp"

#include <Eigen/Dense>

#include <random>

namespace pt_test {

using pt::Form;
using pt::Matrix;
using pt::Scalar;

inline std::mt19937& rng()
{
    static std::mt19937 g(20240611u);
    return g;
}

// small nonzero-denominator rational in [-n, n]
inline Scalar rand_q(int n = 5)
{
    std::uniform_int_distribution<int> num(-n * 4, n * 4), den(1, 4);
    return Scalar::frac(num(rng()), den(rng()));
}

inline Scalar rand_positive(int n = 5)
{
    std::uniform_int_distribution<int> num(1, n * 4), den(1, 4);
    return Scalar::frac(num(rng()), den(rng()));
}

inline Form rand_form(int degree)
{
    Form f(degree);
    for (int i = 0; i < f.size(); ++i) f[i] = rand_q(3);
    return f;
}

inline Matrix rand_skew(int n = 6)
{
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = rand_q(2);
            a(j, i) = -a(i, j);
        }
    return a;
}

inline Eigen::MatrixXd to_eigen(const Matrix& m)
{
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_double();
    return e;
}

// Cayley transform (1 - A)(1 + A)^{-1}: orthogonal, exact, and unitary when A is in u(3).
inline Matrix cayley(const Matrix& a)
{
    Matrix one = Matrix::identity(a.rows());
    return (one - a) * pt::inverse(one + a);
}

inline const std::vector<pt::Case>& all_cases()
{
    using pt::Case;
    static const std::vector<Case> c = {Case::I, Case::II, Case::III, Case::IV, Case::V, Case::VI,
                                        Case::VII, Case::VIII, Case::IX, Case::X, Case::XI};
    return c;
}

// Valid random point of a case: nonzero sample parameters are redrawn with the
// same sign until the conditions hold, else the sample is rescaled.
inline pt::TorsionFamily rand_family(pt::Case c)
{
    const auto& samples = pt::case_samples(c);
    std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
    auto base = samples[pick(rng())];
    for (int attempt = 0; attempt < 20; ++attempt) {
        auto p = base;
        for (auto& [k, v] : p)
            if (!v.is_zero()) v = v.sign() > 0 ? rand_positive(3) : -rand_positive(3);
        auto f = pt::TorsionFamily::from_params(c, p);
        // case III degenerates to so(3) isotropy on alpha1^2 = alpha3^2 + alpha4^2
        if (c == pt::Case::III && f.a1 * f.a1 == f.a3 * f.a3 + f.a4 * f.a4) continue;
        try {
            f.validate();
            return f;
        } catch (const std::invalid_argument&) {
        }
    }
    Scalar s = rand_positive(3);
    for (auto& [k, v] : base) v = v * s;
    auto f = pt::TorsionFamily::from_params(c, base);
    f.validate();
    return f;
}

}  // namespace pt_test
