#include "pt/report.hpp"

#include <algorithm>
#include <sstream>

namespace pt {

Json to_json(const Scalar& s) { return s.str(); }

Json to_json(const Form& f)
{
    Json terms = Json::object();
    const auto& masks = degree_masks(f.degree());
    for (int i = 0; i < f.size(); ++i)
        if (!f[i].is_zero()) terms[mask_label(masks[i])] = to_json(f[i]);
    return Json{{"degree", f.degree()}, {"text", format_form(f)}, {"terms", terms}};
}

Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

Json to_json(const CurvatureRecord& r)
{
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j) pairs.emplace_back(i, j);
    Json comps = Json::array();
    for (int p = 0; p < 15; ++p) {
        for (int q = p; q < 15; ++q) {
            if (r.m(p, q).is_zero()) continue;
            comps.push_back({{"i", pairs[p].first + 1},
                             {"j", pairs[p].second + 1},
                             {"k", pairs[q].first + 1},
                             {"l", pairs[q].second + 1},
                             {"value", to_json(r.m(p, q))}});
        }
    }
    return Json{{"zero", r.is_zero()}, {"pairSymmetric", r.pair_symmetric()}, {"components", comps}};
}

Json to_json(const LieAlgebraData& l)
{
    Json c = Json::array();
    for (int i = 0; i < l.dim(); ++i)
        for (int j = i + 1; j < l.dim(); ++j)
            for (int k = 0; k < l.dim(); ++k)
                if (!l.c(i, j, k).is_zero()) c.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", to_json(l.c(i, j, k))}});
    return Json{{"dim", l.dim()}, {"constants", c}};
}

Json to_json(const StructureEquations& s)
{
    Json de = Json::array();
    for (const auto& f : s.de) de.push_back(format_form(f));
    return Json{{"shortForm", s.short_form()}, {"de", de}};
}

Json norms_json(const TorsionComponents& c)
{
    return Json{{"T2", to_json(c.n2)}, {"T12", to_json(c.n12)}, {"T6", to_json(c.n6)}};
}

Json params_json(const std::map<std::string, Scalar>& p)
{
    Json j = Json::object();
    for (const auto& [k, v] : p) j[k] = to_json(v);
    return j;
}

Json algebra_label_json(const AlgebraLabel& l, const std::vector<Matrix>& basis)
{
    Json b = Json::array();
    for (const auto& m : basis) b.push_back(format_form(form_of_endo(m)));
    return Json{{"isoLabel", l.tag}, {"isoDim", l.dim}, {"group", group_label(l.tag)}, {"basis", b}};
}

Json to_json(const ClassificationReport& r)
{
    Json cand = Json::array();
    for (const auto& c : r.candidates) cand.push_back(params_json(c));
    Json inv = Json::array();
    for (const auto& i : r.invariants) inv.push_back({{"name", i.name}, {"degree", i.degree}, {"value", to_json(i.value)}});
    return Json{
        {"norms", norms_json(r.components)},
        {"strictType", r.type.strict},
        {"isoLabel", r.iso.tag},
        {"isoDim", r.iso.dim},
        {"caseTag", r.case_tag},
        {"parameters", cand},
        {"verdict", r.verdict},
        {"criteria",
         {{"lieGroup", {{"value", to_json(r.lie_group.value)}, {"holds", r.lie_group.holds}}}, {"bianchi", r.bianchi}}},
        {"invariants", inv},
        {"components",
         {{"T2", format_form(r.components.t2)}, {"T12", format_form(r.components.t12)}, {"T6", format_form(r.components.t6)}}},
        {"evidence", r.evidence},
    };
}

Json to_json(const CatalogModel& m)
{
    Json checks = Json::array();
    for (const auto& c : m.checks)
        checks.push_back({{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"ok", c.ok}});
    Json j{{"name", m.name}, {"params", params_json(m.params)}, {"torsion", to_json(m.torsion)}};
    if (m.equations) j["structureEquations"] = to_json(*m.equations);
    j["naturallyReductive"] = m.naturally_reductive;
    j["curvature"] = to_json(m.curvature);
    j["holonomy"] = algebra_label_json(identify_algebra(m.holonomy), m.holonomy);
    j["ricci"] = to_json(m.ricci_g);
    j["einstein"] = is_einstein(m.ricci_g);
    j["report"] = to_json(m.report);
    j["checks"] = checks;
    j["ok"] = m.ok();
    return j;
}

Json to_json(const TableReport& t)
{
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"key", r.key},
                        {"expected", r.expected},
                        {"computed", r.computed},
                        {"ok", r.ok},
                        {"asserted", r.asserted},
                        {"note", r.note}});
    return Json{{"table", t.number}, {"title", t.title}, {"columns", t.columns}, {"rows", rows}, {"ok", t.ok()}};
}

Json to_json(const std::vector<SweepRow>& rows)
{
    Json out = Json::array();
    for (const auto& r : rows) {
        Json j{{"params", params_json(r.params)}};
        if (r.model) {
            const auto& m = *r.model;
            j["norms"] = norms_json(m.report.components);
            j["strictType"] = m.report.type.strict;
            j["isoLabel"] = m.report.iso.tag;
            j["lieGroupValue"] = to_json(m.report.lie_group.value);
            j["einstein"] = is_einstein(m.ricci_g);
            j["ok"] = m.ok();
            Json failed = Json::array();
            for (const auto& c : m.checks)
                if (!c.ok) failed.push_back(c.name);
            j["failedChecks"] = failed;
        } else {
            j["error"] = r.error;
        }
        out.push_back(j);
    }
    return out;
}

Json catalog_index()
{
    Json out = Json::array();
    for (const auto& e : catalog_entries()) {
        Json params = Json::array();
        for (const auto& p : e.params) params.push_back({{"name", p.name}, {"default", p.fallback}, {"range", p.range}});
        out.push_back({{"name", e.name}, {"manifold", e.manifold}, {"kind", e.kind}, {"params", params}, {"conditions", e.conditions}});
    }
    return out;
}

std::string backend_name(Backend b) { return b == Backend::rational ? "rational" : "float"; }

Json envelope(const std::vector<std::string>& command, Backend b, double tol, int status, const Json& result)
{
    return Json{{"command", command}, {"backend", backend_name(b)}, {"tolerance", tol}, {"status", status}, {"result", result}};
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (j.is_object()) {
        if (j.empty()) out.emplace_back(prefix, "{}");
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
        if (flat) {
            std::string s;
            for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar(j[i]);
            out.emplace_back(prefix, "[" + s + "]");
        } else {
            for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else {
        out.emplace_back(prefix, scalar(j));
    }
}

}  // namespace

std::string render_text(const Json& j)
{
    std::vector<std::pair<std::string, std::string>> lines;
    flatten(j, "", lines);
    std::size_t w = 0;
    for (const auto& l : lines) w = std::max(w, l.first.size());
    std::ostringstream os;
    for (const auto& [k, v] : lines) os << k << std::string(w - k.size() + 2, ' ') << v << "\n";
    return os.str();
}

}  // namespace pt
