#pragma once

#include "pt/curvature.hpp"
#include "pt/forms.hpp"
#include "pt/invariants.hpp"
#include "pt/unitary.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pt {

enum class Case { I, II, III, IV, V, VI, VII, VIII, IX, X, XI };

std::string case_name(Case c);
Case parse_case(const std::string& s);  // "I".."XI", case-insensitive
bool first_family(Case c);
std::string expected_iso_label(Case c);
std::string expected_strict_type(Case c);

struct TorsionFamily {
    Case kind = Case::I;
    Scalar a1, a2, a3, a4, a5, b1, b2;

    // Names: alpha1..alpha5, beta1, beta2 (a1.. and b1.. also accepted). In
    // cases X and XI a missing beta1 defaults to 2*beta2.
    static TorsionFamily from_params(Case c, const std::map<std::string, Scalar>& params);
    // Throws std::invalid_argument naming the first violated condition.
    void validate(double tol = default_tolerance()) const;
    std::map<std::string, Scalar> params() const;  // only the parameters of its family
};

Form first_family_form(const Scalar& a1, const Scalar& a3, const Scalar& a4, const Scalar& a5);
Form second_family_form(const Scalar& a1, const Scalar& a2, const Scalar& b1, const Scalar& b2);
Form make_torsion(const TorsionFamily& f);

// First-family form with the (e13+e24)∧e6 term switched on.
Form gamma_diagnostic_form(const Scalar& a1, const Scalar& a3, const Scalar& a4, const Scalar& a5, const Scalar& gamma);
// a1 psi+ + b1 psi- + (e12-e34)∧(a3 e5 + a4 e6), the reduced W1+W3 family.
Form reduced_w1w3_form(const Scalar& a1, const Scalar& b1, const Scalar& a3, const Scalar& a4);

Form sigma(const Form& t);
Form d_parallel(const Form& a, const Form& t);
Form codiff_gap(const Form& t, const Form& w);

struct So3Pair {
    Scalar lambda, mu1, mu2;
};
So3Pair so3_pair_reduce(const Vec& v, const Vec& w);

struct LieGroupCriterion {
    Scalar value;
    bool holds = false;
};
LieGroupCriterion lie_group_criterion(const Form& t, double tol = default_tolerance());

struct BianchiResult {
    bool feasible = false;
    std::optional<CurvatureRecord> witness;
    std::vector<Matrix> hol;
    Matrix coefficients;  // r_ab in R = sum r_ab w_a ⊗ w_b
};
// hol defaults to the isotropy algebra of t.
BianchiResult bianchi_feasible(const Form& t, const std::optional<std::vector<Matrix>>& hol = std::nullopt);

struct ClassificationReport {
    TorsionComponents components;
    TorsionType type;
    AlgebraLabel iso;
    std::vector<Matrix> iso_basis;
    std::string case_tag;  // "I".."XI", "ambiguous", "Kaehler", "non-singular or unrealizable"
    std::vector<std::map<std::string, Scalar>> candidates;
    std::string verdict;
    LieGroupCriterion lie_group;
    bool bianchi = false;
    std::vector<OrbitInvariant> invariants;
    std::vector<std::string> evidence;
};
ClassificationReport classify_form(const Form& t);

}  // namespace pt
