#pragma once

#include "pt/forms.hpp"
#include "pt/lie.hpp"
#include "pt/unitary.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pt {

// Form expression with parentheses, named parameters, scalar multiples and
// wedge products written as '*' or '^' between forms: "a3*(e12-e34) + a5*(e12+e34)".
Form parse_form_expression(const std::string& text, const std::map<std::string, Scalar>& params = {},
                           Backend b = Backend::rational);

// de_i for the left-invariant coframe, with de(X, Y) = -e([X, Y]).
struct StructureEquations {
    std::array<Form, kDim> de{Form(2), Form(2), Form(2), Form(2), Form(2), Form(2)};

    // "(0,0,0,0,12,34)" or lines "de5 = ..." (missing lines mean closed).
    static StructureEquations parse(const std::string& text, const std::map<std::string, Scalar>& params = {},
                                    Backend b = Backend::rational);
    static StructureEquations from_algebra(const LieAlgebraData& l);
    LieAlgebraData algebra() const;
    std::string short_form() const;
    bool nilpotent_filtration() const;  // de_i in Lambda^2(e_1..e_{i-1})
};

// Equations of the m-projected brackets; d on invariant forms of G/H.
StructureEquations projected_equations(const FramedSpace& s);

Form exterior_d(const StructureEquations& s, const Form& a);
bool d_squared_zero(const StructureEquations& s);
Matrix d_matrix(const StructureEquations& s, int k);  // Lambda^k -> Lambda^{k+1}
int ce_betti(const StructureEquations& s, int k);
std::array<int, 7> ce_betti_numbers(const StructureEquations& s);

struct NijenhuisResult {
    std::vector<Scalar> n;  // n[(i*6+j)*6+k] = g(N(e_i, e_j), e_k)
    bool zero = false;
    bool skew = false;
    Form as_form{3};  // valid when skew
};
// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] with m-projected brackets.
NijenhuisResult nijenhuis(const FramedSpace& s, const Matrix& j);
NijenhuisResult nijenhuis(const StructureEquations& s, const Matrix& j);

struct KaehlerTorsion {
    Form omega{2};
    Form d_omega{3};
    Form delta_omega{1};
    Form torsion{3};
    TorsionComponents components;
    bool hermitian = false;  // characteristic connection preserves J
};
// Orthonormal frame; j orthogonal with j^2 = -1.
KaehlerTorsion torsion_from_kaehler(const StructureEquations& s, const Matrix& j);

struct ParallelCheck {
    bool parallel = false;       // nabla^c T = 0
    bool dt_is_2sigma = false;   // dT = 2 sigma_T
    bool j_parallel = false;     // nabla^c Omega = 0
    Form dt{4};
    Form sigma{4};
};
ParallelCheck verify_parallel(const StructureEquations& s, const Matrix& j, const Form& t);

struct TwoFormChecks {
    bool de12_closed = false;
    bool de34_closed = false;
    bool selfdual_parallel = false;      // e12 + e34
    bool antiselfdual_parallel = false;  // e12 - e34
    bool all() const { return de12_closed && de34_closed && selfdual_parallel && antiselfdual_parallel; }
};
TwoFormChecks parallel_2form_checks(const StructureEquations& s, const Matrix& j);

// 2-step algebras with de_1..de_4 = 0 and de_5, de_6 in Lambda^2(e_1..e_4).
struct NilNormalization {
    std::string tag;              // short-hand structure, e.g. "(0,0,0,0,12,34)"
    std::optional<Matrix> coframe;  // rows: new coframe in the old one, when computed
};
std::optional<NilNormalization> normalize_two_step(const StructureEquations& s);

}  // namespace pt
