#pragma once

#include "pt/catalog.hpp"
#include "pt/tables.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace pt {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);  // exact text, e.g. "1/2*sqrt(2)"
Json to_json(const Form& f);
Json to_json(const Matrix& m);
Json to_json(const CurvatureRecord& r);  // nonzero R_ijkl with i<j, k<l, (ij) <= (kl)
Json to_json(const LieAlgebraData& l);
Json to_json(const StructureEquations& s);
Json to_json(const ClassificationReport& r);
Json to_json(const CatalogModel& m);
Json to_json(const TableReport& t);
Json to_json(const std::vector<SweepRow>& rows);

Json norms_json(const TorsionComponents& c);
Json params_json(const std::map<std::string, Scalar>& p);
Json algebra_label_json(const AlgebraLabel& l, const std::vector<Matrix>& basis);
Json catalog_index();

std::string backend_name(Backend b);

// Envelope of every CLI result: command echo, backend, tolerance, status, result.
Json envelope(const std::vector<std::string>& command, Backend b, double tol, int status, const Json& result);

// Aligned "key  value" lines, nested keys joined with '.'.
std::string render_text(const Json& j);

}  // namespace pt
