#pragma once

#include "pt/forms.hpp"

#include <array>
#include <string>
#include <vector>

namespace pt {

struct So6Split {
    Matrix u3;
    Matrix m6;
    Matrix su3;
    Matrix center;  // multiple of J
};

So6Split split_so6(const Matrix& a);

std::vector<Matrix> so6_basis();  // endos of e_ij, lexicographic
std::vector<Matrix> u3_basis();
std::vector<Matrix> su3_basis();

// tau(T) = sum (e_i ⨼ Omega) ∧ (e_i ⨼ T)
Form tau(const Form& t, const Form& omega = kaehler_form());

// S = -hodge∘tau acts by 3, -1, 1 on the components of dimension 2, 12, 6.
Form splitting_operator(const Form& t, const Form& omega = kaehler_form());

struct TorsionComponents {
    Form t2{3};
    Form t12{3};
    Form t6{3};
    Vec x = Vec(kDim);  // t6 = Omega ∧ x
    Scalar n2;          // squared norms
    Scalar n12;
    Scalar n6;
};

Form proj2(const Form& t, const Form& omega = kaehler_form());
Form proj12(const Form& t, const Form& omega = kaehler_form());
Form proj6(const Form& t, const Form& omega = kaehler_form());
TorsionComponents project_l3(const Form& t, const Form& omega = kaehler_form());

// Basis of each summand as 3-forms (dims 2, 12, 6).
const std::vector<Form>& l3_basis(int which);

// Intrinsic torsion, one m6-valued endomorphism per frame vector.
std::vector<Matrix> theta(const Form& t);
Matrix theta_matrix();  // 36 x 20 coefficient matrix

struct TorsionType {
    bool w1 = false;
    bool w3 = false;
    bool w4 = false;
    std::string strict;  // "W1+W3", "W4", "Kaehler", ...
};

TorsionType torsion_type(const Form& t, double tol = 1e-12);
TorsionType torsion_type(const TorsionComponents& c, double tol = 1e-12);

// U(2)-splitting relative to the reduced frame with e5 the divergence direction.
Form i1_map(const Form& w);
Form i2_map(const Form& w);
Form i3_map(const Form& w3, const Form& w4);
Form i5_map(const Vec& y);

struct U2Split {
    Form om1{2};
    Form om2{2};
    Form om3{2};
    Form om4{2};
    Vec y = Vec(4);
};

U2Split u2_split(const Form& t2, const Form& t12);

const std::vector<Form>& m2_basis();               // e13-e24, e14+e23
const std::vector<Form>& anti_selfdual_basis();    // e12-e34, e13+e24, e14-e23

struct FixedDims {
    int d2 = 0;
    int d12 = 0;
    int d6 = 0;
    friend bool operator==(const FixedDims& a, const FixedDims& b)
    {
        return a.d2 == b.d2 && a.d12 == b.d12 && a.d6 == b.d6;
    }
};

FixedDims torus_fixed_dims(int k1, int k2, int k3);

struct DeltaClass {
    int tag = 0;  // 1..8
    std::array<int, 3> canonical{};
    bool was_canonical = true;
};

DeltaClass delta_class(int k1, int k2, int k3);

std::vector<Matrix> isotropy_algebra(const Form& t);

struct AlgebraLabel {
    std::string tag;  // su3, u2_-1, u2_0, u2_1, su2, so3, t2, t1, trivial, unknown
    int dim = 0;
    int derived_dim = 0;
    int center_dim = 0;
    int trivial_dim = 0;
    std::vector<double> center_weights;
};

AlgebraLabel identify_algebra(const std::vector<Matrix>& basis);

// Basis of the Lie algebra generated by a set of matrices.
std::vector<Matrix> lie_closure(const std::vector<Matrix>& generators);
bool bracket_closed(const std::vector<Matrix>& basis);
// Reduce a spanning list to a basis.
std::vector<Matrix> span_basis(const std::vector<Matrix>& mats);
bool in_span(const std::vector<Matrix>& basis, const Matrix& m);

struct Su2Twist {
    Matrix new_j;
    Form new_omega{2};
    Scalar alpha1;
    Scalar alpha5;
    TorsionComponents components;
};

// T = a1 (e14+e23)∧e5 + a5 (e12+e34)∧e5 with the twisted horizontal form
// q1 (e14+e23) + q2 (e13-e24) + q3 (e12+e34).
Su2Twist su2_twist(const Form& t, const std::array<Scalar, 3>& q);

}  // namespace pt
