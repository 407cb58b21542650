#include "pt/catalog.hpp"
#include "pt/clifford.hpp"
#include "pt/invariants.hpp"
#include "pt/nil.hpp"
#include "pt/orbits.hpp"
#include "pt/report.hpp"
#include "pt/tables.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <stdexcept>

using namespace pt;

namespace {

struct Settings {
    std::string backend;
    double tol = 1e-9;
    bool json = false;
    Backend b() const { return backend == "float" ? Backend::floating : Backend::rational; }
};

struct TorsionInput {
    std::string form;
    std::string kase;
    std::map<std::string, std::string> params;
};

const char* kParamNames[] = {"alpha1", "alpha2", "alpha3", "alpha4", "alpha5", "beta1", "beta2"};

void add_family_options(CLI::App* sub, TorsionInput& in)
{
    sub->add_option("--case", in.kase, "normal-form case I..XI");
    for (const char* p : kParamNames) {
        sub->add_option_function<std::string>(
            std::string("--") + p, [&in, p](const std::string& v) { in.params[p] = v; }, std::string("parameter ") + p);
    }
}

void add_torsion_options(CLI::App* sub, TorsionInput& in)
{
    sub->add_option("--form", in.form, "3-form literal, e.g. \"e125+e345\"");
    add_family_options(sub, in);
}

std::map<std::string, Scalar> parse_params(const std::map<std::string, std::string>& raw, Backend b)
{
    std::map<std::string, Scalar> out;
    for (const auto& [k, v] : raw) out[k] = convert(parse_scalar(v), b);
    return out;
}

// key=value pairs
std::map<std::string, std::string> split_pairs(const std::vector<std::string>& items)
{
    std::map<std::string, std::string> out;
    for (const auto& it : items) {
        auto eq = it.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got \"" + it + "\"");
        out[it.substr(0, eq)] = it.substr(eq + 1);
    }
    return out;
}

TorsionFamily family_of(const TorsionInput& in, const Settings& s)
{
    auto fam = TorsionFamily::from_params(parse_case(in.kase), parse_params(in.params, s.b()));
    fam.validate(s.tol);
    return fam;
}

Form torsion_of(const TorsionInput& in, const Settings& s)
{
    if (!in.form.empty() && !in.kase.empty()) throw std::invalid_argument("give either --form or --case, not both");
    if (!in.form.empty()) {
        Form t = parse_form(in.form, s.b());
        if (t.degree() != 3) throw std::invalid_argument("torsion must be a 3-form");
        return t;
    }
    if (!in.kase.empty()) return make_torsion(family_of(in, s));
    throw std::invalid_argument("a torsion form is required: --form or --case");
}

double tidy(double x)
{
    double r = std::round(x * 1e9) / 1e9;
    return r == 0.0 ? 0.0 : r;
}

std::vector<Matrix> holonomy_of(const std::string& spec, const Form& t, const Settings& s)
{
    if (spec == "iso") return isotropy_algebra(t);
    if (spec == "trivial") return {};
    std::vector<Matrix> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        Form w = parse_form(item, s.b());
        if (w.degree() != 2) throw std::invalid_argument("holonomy generators must be 2-forms");
        out.push_back(endo_of_form(w));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Parallel-torsion toolkit for almost hermitian 6-manifolds"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings set;
    if (const char* env = std::getenv("PT_BACKEND")) set.backend = env;
    if (set.backend.empty()) set.backend = "rational";
    app.add_option("--backend", set.backend, "rational or float (default: $PT_BACKEND, else rational)")
        ->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--tol", set.tol, "tolerance for float comparisons")->check(CLI::PositiveNumber);
    app.add_flag("--json", set.json, "JSON output");

    TorsionInput tin;
    std::string hol = "iso";
    std::vector<std::string> params;
    std::string name, grid, equations, which;
    std::vector<int> table_list;
    bool all_tables = false, list = false, allow_large = false, with_bianchi = false;
    int max_degree = 4;

    auto* classify = app.add_subcommand("classify", "classify a torsion form");
    add_torsion_options(classify, tin);
    auto* family = app.add_subcommand("family", "normal form of a case");
    add_family_options(family, tin);
    auto* sigma_cmd = app.add_subcommand("sigma", "sigma_T and the Bianchi test");
    add_torsion_options(sigma_cmd, tin);
    sigma_cmd->add_flag("--bianchi", with_bianchi, "also solve cyc R = sigma_T on the isotropy algebra");
    auto* clifford = app.add_subcommand("clifford", "square of T in the Clifford algebra");
    add_torsion_options(clifford, tin);
    auto* spinors = app.add_subcommand("spinors", "parallel spinors and the torsion spectrum");
    add_torsion_options(spinors, tin);
    spinors->add_option("--hol", hol, "iso, trivial, or 2-forms separated by ';'");
    auto* isotropy = app.add_subcommand("isotropy", "isotropy algebra of T in u(3)");
    add_torsion_options(isotropy, tin);
    auto* example = app.add_subcommand("example", "build a catalog entry and compare");
    example->add_option("name", name, "entry name");
    example->add_option("--param", params, "key=value");
    example->add_flag("--list", list, "list entries and parameters");
    auto* sweep_cmd = app.add_subcommand("sweep", "catalog entry over a parameter grid");
    sweep_cmd->add_option("name", name, "entry name")->required();
    sweep_cmd->add_option("--grid", grid, "axes like \"b=-2,-1;d=0,1\"");
    auto* betti = app.add_subcommand("betti", "Chevalley-Eilenberg Betti numbers");
    betti->add_option("--equations", equations, "\"(0,0,0,0,12,34)\" or de-lines")->required();
    betti->add_option("--param", params, "key=value");
    auto* tables = app.add_subcommand("tables", "reproduce tables and diff");
    tables->add_option("which", table_list, "table numbers 1..6");
    tables->add_flag("--all", all_tables, "all tables");
    auto* invariants = app.add_subcommand("invariants", "invariant polynomial dimensions");
    invariants->add_option("--max-degree", max_degree, "highest degree (at most 4 without --allow-large)");
    invariants->add_flag("--allow-large", allow_large, "permit degrees above 4");
    add_torsion_options(invariants, tin);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::vector<std::string> command(argv + 1, argv + argc);
    int status = 0;
    Json result;
    try {
        set_default_tolerance(set.tol);
        const Backend b = set.b();
        if (classify->parsed()) {
            result = to_json(classify_form(torsion_of(tin, set)));
        } else if (family->parsed()) {
            auto fam = family_of(tin, set);
            Form t = make_torsion(fam);
            result = Json{{"case", case_name(fam.kind)},
                          {"params", params_json(fam.params())},
                          {"form", to_json(t)},
                          {"norms", norms_json(project_l3(t))},
                          {"strictType", expected_strict_type(fam.kind)},
                          {"isoLabel", expected_iso_label(fam.kind)}};
        } else if (sigma_cmd->parsed()) {
            Form t = torsion_of(tin, set);
            Form s = sigma(t);
            result = Json{{"torsion", format_form(t)}, {"sigma", to_json(s)}, {"twoSigma", to_json(s * Scalar(2))}};
            if (with_bianchi) {
                auto br = bianchi_feasible(t);
                result["bianchi"] = {{"feasible", br.feasible}, {"holonomyDim", br.hol.size()}};
                if (br.witness) result["bianchi"]["witness"] = to_json(*br.witness);
            }
        } else if (clifford->parsed()) {
            Form t = torsion_of(tin, set);
            auto sq = is_scalar_square(t, set.tol);
            auto lg = lie_group_criterion(t, set.tol);
            CliffordElement e = embed_form(t);
            result = Json{{"torsion", format_form(t)},
                          {"square", (e * e).str()},
                          {"scalarSquare", sq.scalar},
                          {"value", sq.value ? to_json(*sq.value) : Json()},
                          {"lieGroup", {{"value", to_json(lg.value)}, {"holds", lg.holds}}}};
        } else if (spinors->parsed()) {
            Form t = torsion_of(tin, set);
            auto h = holonomy_of(hol, t, set);
            auto par = parallel_spinors(h);
            Json spec = Json::array();
            for (double x : torsion_spinor_spectrum(t, h)) spec.push_back(tidy(x));
            result = Json{{"torsion", format_form(t)},
                          {"holonomy", algebra_label_json(identify_algebra(h), h)},
                          {"parallelSpinors", par.complex_dim},
                          {"spectrum", spec}};
        } else if (isotropy->parsed()) {
            Form t = torsion_of(tin, set);
            auto basis = isotropy_algebra(t);
            result = algebra_label_json(identify_algebra(basis), basis);
        } else if (example->parsed()) {
            if (list || name.empty()) {
                result = catalog_index();
            } else {
                auto m = build(name, parse_params(split_pairs(params), Backend::rational), b);
                result = to_json(m);
                status = m.ok() ? 0 : 1;
            }
        } else if (sweep_cmd->parsed()) {
            std::vector<Params> points;
            if (!grid.empty()) {
                std::map<std::string, std::vector<Scalar>> axes;
                std::stringstream ss(grid);
                std::string axis;
                while (std::getline(ss, axis, ';')) {
                    auto kv = split_pairs({axis});
                    std::stringstream vs(kv.begin()->second);
                    std::string v;
                    while (std::getline(vs, v, ',')) axes[kv.begin()->first].push_back(parse_scalar(v));
                }
                points = grid_product(axes);
            }
            result = to_json(sweep(name, points, b));
        } else if (betti->parsed()) {
            auto eq = StructureEquations::parse(equations, parse_params(split_pairs(params), b), b);
            Json bn = Json::array();
            for (int x : ce_betti_numbers(eq)) bn.push_back(x);
            auto norm = eq.nilpotent_filtration() ? normalize_two_step(eq) : std::nullopt;
            result = Json{{"structure", to_json(eq)},
                          {"dSquaredZero", d_squared_zero(eq)},
                          {"nilpotentFiltration", eq.nilpotent_filtration()},
                          {"betti", bn},
                          {"twoStep", norm ? Json(norm->tag) : Json()}};
        } else if (tables->parsed()) {
            if (all_tables) table_list = table_numbers();
            result = Json::array();
            for (int k : table_list) {
                auto t = reproduce_table(k);
                result.push_back(to_json(t));
                if (!t.ok()) status = 1;
            }
        } else if (invariants->parsed()) {
            Json dims = Json::array();
            int total = 0;
            for (const auto& d : invariant_poly_dims(max_degree, b, allow_large)) {
                dims.push_back({{"degree", d.degree}, {"dim", d.dim}});
                total += d.dim;
            }
            result = Json{{"degrees", dims}, {"total", total}};
            if (!tin.form.empty() || !tin.kase.empty()) {
                Json vals = Json::array();
                for (const auto& v : orbit_invariants(torsion_of(tin, set)))
                    vals.push_back({{"name", v.name}, {"degree", v.degree}, {"value", to_json(v.value)}});
                result["orbitInvariants"] = vals;
            }
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }

    Json out = envelope(command, set.b(), set.tol, status, result);
    if (set.json) std::cout << out.dump(2) << "\n";
    else std::cout << render_text(out);
    return status;
}
