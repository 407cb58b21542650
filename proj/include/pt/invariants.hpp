#pragma once

#include "pt/forms.hpp"

#include <string>
#include <vector>

namespace pt {

struct DegreeDim {
    int degree = 0;
    int dim = 0;
};

// Dimensions of U(3)-invariant homogeneous polynomials on the 14-dimensional
// sum of the 2- and 12-dimensional summands of 3-forms.
std::vector<DegreeDim> invariant_poly_dims(int max_deg, Backend b = Backend::rational, bool allow_large = false);

struct OrbitInvariant {
    std::string name;
    int degree = 0;
    Scalar value;
};

// Contraction invariants of the 2- and 12-dimensional parts of T: a basis of
// the quadratic and quartic invariants.
std::vector<OrbitInvariant> orbit_invariants(const Form& t);

// Names of all candidate contractions and the indices selected as a basis.
const std::vector<std::string>& quartic_candidate_names();
const std::vector<int>& quartic_basis_indices();

}  // namespace pt
