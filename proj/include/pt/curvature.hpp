#pragma once

#include "pt/forms.hpp"

#include <vector>

namespace pt {

// R as a symmetric map on 2-forms: m(p, q) = R(e_i, e_j, e_k, e_l) for
// p = (ij), q = (kl) in lexicographic pair order, R(X,Y,Z,U) = g(R(X,Y)Z, U).
struct CurvatureRecord {
    Matrix m = Matrix(15, 15);
    std::vector<Matrix> values;  // declared value subalgebra (may be empty)

    Scalar at(int i, int j, int k, int l) const;  // 0-based, antisymmetry applied
    Matrix endo(int i, int j) const;             // R(e_i, e_j) as an endomorphism
    Form image(int i, int j) const;              // R(e_i, e_j) as a 2-form
    bool pair_symmetric() const;
    bool is_zero() const { return m.is_zero(); }
};

// R = sum_ab r_ab w_a ⊗ w_b
CurvatureRecord curvature_from_forms(const std::vector<Form>& w, const Matrix& r);
CurvatureRecord outer_curvature(const Form& w, const Scalar& s);  // s w ⊗ w

// Orthogonal projection onto the span of the given 2-forms, as a curvature record.
CurvatureRecord projection_curvature(const std::vector<Form>& span);

// Cyclic sum over the first three slots, as a 4-form.
Form bianchi_cyclic_sum(const CurvatureRecord& r);

// Image of R as a list of endomorphisms (one per basis 2-form).
std::vector<Matrix> curvature_image(const CurvatureRecord& r);

Matrix ricci_contraction(const CurvatureRecord& r);  // Ric(Y,Z) = sum_i R(e_i, Y, Z, e_i)

int pair_index(int i, int j);  // i < j, 0-based

}  // namespace pt
