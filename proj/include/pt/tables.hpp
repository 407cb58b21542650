#pragma once

#include "pt/orbits.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace pt {

// Display name of an isotropy tag: "su3" -> "SU(3)", "trivial" -> "{e}".
std::string group_label(const std::string& tag);

// Three valid parameter points per case, used for table 2. Case III points avoid
// alpha1^2 = alpha3^2 + alpha4^2, where the isotropy is so(3).
const std::vector<std::map<std::string, Scalar>>& case_samples(Case c);

struct Norms {
    Scalar n2, n12, n6;
};
// Closed forms of the component norms in terms of the family parameters.
Norms family_norms(const TorsionFamily& f);

// Two torus generators per Delta class: the canonical tuple, then a second one.
const std::vector<std::array<int, 3>>& delta_samples(int tag);

struct TableRow {
    std::string key;
    std::vector<std::string> expected;
    std::vector<std::string> computed;
    bool ok = false;
    bool asserted = true;  // false: reported only
    std::string note;
};

struct TableReport {
    int number = 0;
    std::string title;
    std::vector<std::string> columns;
    std::vector<TableRow> rows;
    bool ok() const;
};

// 1: strict types and isotropy, 2: normal-form cases, 3: torus fixed dimensions,
// 4: spinors for SU(2) and SO(3), 5: local models and nilmanifolds, 6: spinors for T^2.
TableReport reproduce_table(int which);
std::vector<int> table_numbers();

// Distinct values of a spectrum, merged within tol.
std::vector<double> distinct_values(std::vector<double> v, double tol = 1e-7);

}  // namespace pt
