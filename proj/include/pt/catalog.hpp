#pragma once

#include "pt/lie.hpp"
#include "pt/nil.hpp"
#include "pt/orbits.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pt {

using Params = std::map<std::string, Scalar>;

struct ParamSpec {
    std::string name;
    std::string fallback;  // default value as text, empty when required
    std::string range;
};

struct CatalogEntry {
    std::string name;
    std::string manifold;
    std::string kind;  // "reductive" or "nil"
    std::vector<ParamSpec> params;
    std::vector<std::string> conditions;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& name);  // throws std::invalid_argument

// One expected-vs-computed comparison.
struct Check {
    std::string name;
    std::string expected;
    std::string computed;
    bool ok = false;
};

struct CatalogModel {
    std::string name;
    Params params;
    std::optional<ReductiveModel> reductive;
    std::optional<StructureEquations> equations;
    FramedSpace space;
    Form torsion{3};
    CurvatureRecord curvature;  // of the characteristic connection
    bool naturally_reductive = false;
    std::vector<Matrix> holonomy;
    Matrix ricci_g;
    ClassificationReport report;
    std::vector<Check> checks;

    bool ok() const;
};

// Fills defaults, validates (std::invalid_argument naming the condition) and
// builds the model with all expected invariants compared.
CatalogModel build(const std::string& name, const Params& params, Backend b = Backend::rational);

// Model only, without classification or checks.
CatalogModel build_model(const std::string& name, const Params& params, Backend b = Backend::rational);

struct SweepRow {
    Params params;
    std::optional<CatalogModel> model;
    std::string error;
};
std::vector<SweepRow> sweep(const std::string& name, const std::vector<Params>& grid, Backend b = Backend::rational);

// Cartesian product of per-parameter value lists, in key order.
std::vector<Params> grid_product(const std::map<std::string, std::vector<Scalar>>& axes);

// --- reference algebras ---

LieAlgebraData su2_sum(int copies, int abelian = 0);  // copies of su(2) then an abelian part
LieAlgebraData su3_algebra();                       // su(3) in the basis used by s5xs1
// Six-dimensional group algebras, named as in reference_groups().
LieAlgebraData reference_algebra(const std::string& group);
const std::vector<std::string>& reference_groups();
// Ideal of k complementary to the first nh basis vectors (derived algebra,
// enlarged by the center when short). Throws std::logic_error if none.
LieAlgebraData transitive_ideal(const LieAlgebraData& k, int nh);
// Reference groups whose structural invariants agree with g.
std::vector<std::string> matching_groups(const LieAlgebraData& g);

// Rows of the T^2 local-model table: orbit condition, group, sample (a3, a4, a5).
struct LocalModelRow {
    std::string condition;
    std::string group;
    Scalar a3, a4, a5;
};
const std::vector<LocalModelRow>& local_model_rows();
// Nomizu algebra of the T^2 normal form with R = lambda (e12-e34)⊗(e12-e34) and h = t1.
LieAlgebraData local_model_algebra(const Scalar& a3, const Scalar& a4, const Scalar& a5);

// Expected rows of the nilmanifold table.
struct NilTableRow {
    std::string family;
    std::string strict;
    int b1 = 0;
    int b2 = 0;
    std::string structure;
};
const std::vector<NilTableRow>& nil_table();

// Base scale of the S^5 factor for which Ric^g = 6 g - 2 eta⊗eta.
Scalar s5_sasaki_scale();

}  // namespace pt
