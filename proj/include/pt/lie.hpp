#pragma once

#include "pt/curvature.hpp"
#include "pt/forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pt {

// [e_i, e_j] = sum_k c(i, j, k) e_k
class LieAlgebraData {
public:
    LieAlgebraData() = default;
    explicit LieAlgebraData(int dim);

    int dim() const { return dim_; }
    Scalar& c(int i, int j, int k) { return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k]; }
    const Scalar& c(int i, int j, int k) const { return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k]; }
    // Sets c(i,j,k) and c(j,i,k) = -value.
    void set(int i, int j, int k, const Scalar& value);

    Vec bracket(const Vec& x, const Vec& y) const;
    Matrix ad(const Vec& x) const;
    Matrix ad(int i) const;
    bool antisymmetric() const;
    bool all_exact() const;
    // Structure constants in a new basis given by the columns of p.
    LieAlgebraData change_basis(const Matrix& p) const;

    std::vector<std::string> labels;

private:
    int dim_ = 0;
    std::vector<Scalar> c_;
};

bool operator==(const LieAlgebraData& a, const LieAlgebraData& b);

struct JacobiResult {
    bool ok = false;
    Scalar worst;
};
JacobiResult jacobi_check(const LieAlgebraData& l, double tol = default_tolerance());

// Text format: optional "dim = n", lines "c[i,j,k] = value" (1-based, i < j),
// optional metric lines "g[i,j] = value".
struct StructureText {
    LieAlgebraData algebra;
    std::optional<Matrix> metric;
};
StructureText parse_structure_constants(const std::string& text);
std::string format_structure_constants(const LieAlgebraData& l, const std::optional<Matrix>& metric = std::nullopt);

// --- structure ---

std::vector<Vec> derived_algebra(const LieAlgebraData& l, const std::vector<Vec>& sub);
std::vector<Vec> center(const LieAlgebraData& l);
Matrix killing_form(const LieAlgebraData& l);

struct StructuralInvariants {
    int dim = 0;
    std::vector<int> derived_series;
    std::vector<int> lower_central_series;
    int center_dim = 0;
    Inertia killing;
    friend bool operator==(const StructuralInvariants& a, const StructuralInvariants& b)
    {
        return a.dim == b.dim && a.derived_series == b.derived_series &&
               a.lower_central_series == b.lower_central_series && a.center_dim == b.center_dim &&
               a.killing == b.killing;
    }
};
StructuralInvariants structural_invariants(const LieAlgebraData& l);

// "isomorphic", "not isomorphic" or "undetermined". Each candidate alignment p
// (columns: images of the basis of b in a) is tried before giving up.
std::string compare_algebras(const LieAlgebraData& a, const LieAlgebraData& b,
                             const std::vector<Matrix>& alignments = {});

// --- homogeneous spaces ---

struct ReductiveModel {
    LieAlgebraData algebra;
    std::vector<Vec> h;  // basis of h in algebra coordinates
    std::vector<Vec> m;  // basis of m in algebra coordinates
    Matrix gm;           // metric on m in the m basis
    Matrix jm;           // almost complex structure on m in the m basis
    std::optional<std::vector<Vec>> frame;  // adapted orthonormal frame in m coordinates
};

// Algebra in the basis [h..., e_1..e_6] with the metric on the m part.
struct FramedSpace {
    LieAlgebraData algebra;
    int nh = 0;
    Matrix g = Matrix::identity(kDim);
    std::vector<Vec> frame;  // e_i in m coordinates (empty when built directly)

    int k() const { return algebra.dim() - nh; }
    Vec bracket_m(int i, int j) const;  // [e_i, e_j]_m, m indices 0-based
    Vec bracket_h(int i, int j) const;  // [e_i, e_j]_h
    Matrix ad_m(int a) const;           // ad(h_a) on m
};

FramedSpace frame_model(const ReductiveModel& m);
FramedSpace lie_group_space(const LieAlgebraData& l, const Matrix& g);

struct CanonicalData {
    Form torsion{3};
    CurvatureRecord curvature;
    bool naturally_reductive = false;
    FramedSpace space;
};
CanonicalData canonical_data(const ReductiveModel& m);
CanonicalData canonical_data(const FramedSpace& s);

// Invariant connection: lam[i] is the endomorphism Lambda(e_i) of m.
struct Connection {
    std::vector<Matrix> lam;
};

Connection levi_civita(const FramedSpace& s);
// Orthonormal frame required.
Connection characteristic_connection(const FramedSpace& s, const Form& t);
Connection canonical_connection(const FramedSpace& s);
CurvatureRecord curvature(const FramedSpace& s, const Connection& c);
// Torsion as a 3-form; throws if it is not totally skew.
Form connection_torsion(const FramedSpace& s, const Connection& c);
Form covariant_derivative(const Connection& c, int i, const Form& a);
bool is_parallel(const Connection& c, const Form& a);
Matrix ricci(const CurvatureRecord& r);
bool is_einstein(const Matrix& ric, double tol = default_tolerance());
// 1/4 g(T(X,Y), T(Z,U)) + 1/4 sigma_T(X,Y,Z,U)
CurvatureRecord curvature_gap(const Form& t);

std::vector<Matrix> holonomy_algebra(const Form& t, const CurvatureRecord& r);

// Algebra on [h, R^6] with h spanned by the given endomorphisms (default: the
// algebra generated by the curvature image).
LieAlgebraData nomizu(const Form& t, const CurvatureRecord& r, const std::optional<std::vector<Matrix>>& h = std::nullopt);

struct RoundTrip {
    LieAlgebraData algebra;
    JacobiResult jacobi;
    std::string verdict;  // compare_algebras against the source
};
// canonical_data followed by nomizu with h the isotropy representation.
RoundTrip nomizu_round_trip(const FramedSpace& s);

}  // namespace pt
