#pragma once

#include "pt/forms.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pt {

// Element of Cl(R^6) with e_i e_j + e_j e_i = -2 delta_ij, keyed by index mask.
class CliffordElement {
public:
    CliffordElement() = default;
    static CliffordElement scalar(const Scalar& s);
    static CliffordElement generator(int i);  // e_{i+1}, 0-based
    static CliffordElement monomial(unsigned mask, const Scalar& c = Scalar(1));

    const std::map<unsigned, Scalar>& terms() const { return terms_; }
    Scalar coefficient(unsigned mask) const;
    Scalar scalar_part() const { return coefficient(0); }
    bool is_zero() const { return terms_.empty(); }
    // True when every coefficient except the scalar one vanishes (tolerance on floats).
    bool is_scalar(double tol = default_tolerance()) const;

    CliffordElement& operator+=(const CliffordElement& o);
    CliffordElement& operator*=(const Scalar& s);
    friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
    friend CliffordElement operator*(CliffordElement a, const Scalar& s) { return a *= s; }
    friend bool operator==(const CliffordElement& a, const CliffordElement& b);

    std::string str() const;

private:
    void add(unsigned mask, const Scalar& c);
    std::map<unsigned, Scalar> terms_;
};

CliffordElement cl_mul(const CliffordElement& a, const CliffordElement& b);
CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);
CliffordElement embed_form(const Form& a);

struct ScalarSquare {
    bool scalar = false;
    std::optional<Scalar> value;
};
ScalarSquare is_scalar_square(const Form& t, double tol = default_tolerance());

// --- spinors ---

using SpinorOperator = Eigen::MatrixXcd;

// gamma_i on C^8 with gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij, skew-hermitian.
const std::vector<SpinorOperator>& gammas();
SpinorOperator clifford_operator(const Form& a);
SpinorOperator clifford_operator(const CliffordElement& a);
// lambda(A) = 1/2 sum_{i<j} A(j, i) gamma_i gamma_j
SpinorOperator spin_lift(const Matrix& a);

struct ParallelSpinors {
    int complex_dim = 0;
    Eigen::MatrixXcd basis;  // orthonormal columns
};
ParallelSpinors parallel_spinors(const std::vector<Matrix>& hol, double tol = 1e-9);

// Eigenvalues of T on the parallel spinors, sorted.
std::vector<double> torsion_spinor_spectrum(const Form& t, const std::vector<Matrix>& hol, double tol = 1e-7);

}  // namespace pt
