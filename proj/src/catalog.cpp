#include "pt/catalog.hpp"

#include "pt/clifford.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace pt {

namespace {

Vec unit(int n, int i)
{
    Vec v(n);
    v[i] = Scalar(1);
    return v;
}

Vec combo(int n, std::initializer_list<std::pair<int, Scalar>> terms)
{
    Vec v(n);
    for (const auto& [i, c] : terms) v[i] += c;
    return v;
}

Vec scaled(const Scalar& s, Vec v)
{
    for (auto& x : v) x *= s;
    return v;
}

Matrix diag(const std::vector<Scalar>& d)
{
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
}

// J e_{2i-1} = e_{2i} on an orthonormal basis
Matrix standard_j()
{
    Matrix j(kDim, kDim);
    for (int i = 0; i < kDim; i += 2) {
        j(i + 1, i) = Scalar(1);
        j(i, i + 1) = Scalar(-1);
    }
    return j;
}

std::vector<Vec> identity_frame()
{
    std::vector<Vec> f;
    for (int i = 0; i < kDim; ++i) f.push_back(unit(kDim, i));
    return f;
}

// eps_{ijk} su(2) constants on a block of three basis vectors
void add_su2(LieAlgebraData& l, int off, const Scalar& scale = Scalar(1))
{
    for (int i = 0; i < 3; ++i) l.set(off + i, off + (i + 1) % 3, off + (i + 2) % 3, scale);
}

int eps(int i, int j, int k)
{
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

std::string show(const Scalar& s) { return s.str(); }

bool same(const Scalar& a, const Scalar& b)
{
    Scalar d = a - b;
    return d.exact() ? d.is_zero() : d.is_zero(1e-9);
}

bool same(const Form& a, const Form& b)
{
    for (int i = 0; i < a.size(); ++i) {
        if (!same(a[i], b[i])) return false;
    }
    return true;
}

bool same(const CurvatureRecord& a, const CurvatureRecord& b)
{
    for (int p = 0; p < 15; ++p)
        for (int q = 0; q < 15; ++q)
            if (!same(a.m(p, q), b.m(p, q))) return false;
    return true;
}

void expect(std::vector<Check>& out, const std::string& name, const Scalar& want, const Scalar& got)
{
    out.push_back({name, show(want), show(got), same(want, got)});
}

void expect(std::vector<Check>& out, const std::string& name, const Form& want, const Form& got)
{
    out.push_back({name, format_form(want), format_form(got), same(want, got)});
}

void expect(std::vector<Check>& out, const std::string& name, bool want, bool got)
{
    out.push_back({name, want ? "true" : "false", got ? "true" : "false", want == got});
}

void expect(std::vector<Check>& out, const std::string& name, const std::string& want, const std::string& got)
{
    out.push_back({name, want, got, want == got});
}

const Scalar& get(const Params& p, const std::string& k) { return p.at(k); }

bool positive(const Scalar& s) { return s.sign() > 0; }
bool nonzero(const Scalar& s) { return s.exact() ? !s.is_zero() : !s.is_zero(1e-12); }

void require(bool ok, const std::string& entry, const std::string& condition)
{
    if (!ok) throw std::invalid_argument(entry + " requires " + condition);
}

std::string canonical_key(std::string k)
{
    if (k.rfind("alpha", 0) == 0) k = "a" + k.substr(5);
    return k;
}

Form star_omega() { return hodge(kaehler_form()); }

// --- su(3) ---

struct Triple {
    int i, j, k, v;
};

// Basis: h = (diag(i,-i,0), E12-E21, i(E12+E21)), then E13-E31, i(E13+E31),
// E23-E32, i(E23+E32), xi = diag(i,i,-2i).
const Triple su3_table[] = {
    {0, 1, 2, 2}, {0, 2, 1, -2}, {0, 3, 4, 1}, {0, 4, 3, -1}, {0, 5, 6, -1}, {0, 6, 5, 1}, {1, 2, 0, 2},
    {1, 3, 5, -1}, {1, 4, 6, -1}, {1, 5, 3, 1}, {1, 6, 4, 1}, {2, 3, 6, 1}, {2, 4, 5, -1}, {2, 5, 4, 1},
    {2, 6, 3, -1}, {3, 4, 0, 1}, {3, 4, 7, 1}, {3, 5, 1, -1}, {3, 6, 2, 1}, {3, 7, 4, -3}, {4, 5, 2, -1},
    {4, 6, 1, -1}, {4, 7, 3, 3}, {5, 6, 0, -1}, {5, 6, 7, 1}, {5, 7, 6, -3}, {6, 7, 5, 3},
};

// --- builders ---

using Builder = std::function<CatalogModel(const Params&)>;

CatalogModel from_reductive(ReductiveModel m)
{
    CatalogModel out;
    out.space = frame_model(m);
    out.reductive = std::move(m);
    CanonicalData cd = canonical_data(out.space);
    out.torsion = cd.torsion;
    out.curvature = cd.curvature;
    out.naturally_reductive = cd.naturally_reductive;
    return out;
}

CatalogModel lie_group_model(LieAlgebraData l, std::vector<Vec> basis)
{
    ReductiveModel m;
    m.algebra = std::move(l);
    m.m = std::move(basis);
    m.gm = Matrix::identity(kDim);
    m.jm = standard_j();
    m.frame = identity_frame();
    return from_reductive(std::move(m));
}

CatalogModel build_s3xs3_t2(const Params& p)
{
    const Scalar& s = get(p, "s");
    const Scalar& t = get(p, "t");
    // e = (s X0, s X1, t Y0, t Y1, s X2, t Y2)
    return lie_group_model(su2_sum(2), {scaled(s, unit(6, 0)), scaled(s, unit(6, 1)), scaled(t, unit(6, 3)),
                                        scaled(t, unit(6, 4)), scaled(s, unit(6, 2)), scaled(t, unit(6, 5))});
}

CatalogModel build_s3xt3_t2(const Params& p)
{
    const Scalar& s = get(p, "s");
    const bool plus = get(p, "sign").sign() > 0;
    Vec x0 = scaled(s, unit(6, 0)), x1 = scaled(s, unit(6, 1)), x2 = scaled(-s, unit(6, 2));
    if (plus) return lie_group_model(su2_sum(1, 3), {x0, x1, unit(6, 3), unit(6, 4), x2, unit(6, 5)});
    return lie_group_model(su2_sum(1, 3), {unit(6, 3), unit(6, 4), x0, x1, x2, unit(6, 5)});
}

CatalogModel build_t2bundle(const Params& p)
{
    const Scalar& a3 = get(p, "a3");
    const Scalar& a4 = get(p, "a4");
    const Scalar& a5 = get(p, "a5");
    const Scalar lam = a3 * a3 + a4 * a4 - a5 * a5;
    const Scalar s2 = Scalar(2) * a5 * (a3 + a5);
    const Scalar t2 = Scalar(-2) * a5 * (a3 - a5);
    const Scalar s = sqrt(s2), t = sqrt(t2);
    // z, A0..A2, B0..B2
    LieAlgebraData l(7);
    add_su2(l, 1);
    add_su2(l, 4);
    ReductiveModel m;
    m.algebra = l;
    m.h = {combo(7, {{0, 1}, {3, 1}, {6, -1}})};
    Vec e5 = combo(7, {{3, s2}, {6, t2}});
    e5 = scaled(Scalar(-1) / (Scalar(2) * a5), e5);
    Vec e6 = combo(7, {{0, Scalar(-2) * lam},
                       {3, (a3 / a5 - Scalar(1)) * s2 - Scalar(2) * lam},
                       {6, (a3 / a5 + Scalar(1)) * t2 + Scalar(2) * lam}});
    e6 = scaled(Scalar(1) / (Scalar(2) * a4), e6);
    m.m = {scaled(s, unit(7, 1)), scaled(s, unit(7, 2)), scaled(t, unit(7, 4)), scaled(t, unit(7, 5)), e5, e6};
    m.gm = Matrix::identity(kDim);
    m.jm = standard_j();
    m.frame = identity_frame();
    return from_reductive(std::move(m));
}

struct So3Coefficients {
    Scalar a, c;
};

So3Coefficients so3_coefficients(const Scalar& b, const Scalar& d, const Scalar& k1, const Scalar& k2)
{
    const Scalar w = d * k1 + b * k2;
    return {-(d - Scalar(1)) * w / ((b - d) * k2), (b - Scalar(1)) * w / ((b - d) * k1)};
}

CatalogModel build_s3xs3_so3(const Params& p)
{
    const Scalar& b = get(p, "b");
    const Scalar& d = get(p, "d");
    const Scalar& k1 = get(p, "k1");
    const Scalar& k2 = get(p, "k2");
    auto [a, c] = so3_coefficients(b, d, k1, k2);
    ReductiveModel m;
    m.algebra = su2_sum(3);
    auto triple = [](int i, const Scalar& x, const Scalar& y, const Scalar& z) {
        return combo(9, {{i, x}, {3 + i, y}, {6 + i, z}});
    };
    for (int i = 0; i < 3; ++i) m.h.push_back(triple(i, 1, 1, 1));
    for (int i = 0; i < 3; ++i) m.m.push_back(triple(i, 1, a, b));
    for (int i = 0; i < 3; ++i) m.m.push_back(triple(i, 1, c, d));
    // B(X_i, X_i) = 1/4 for [X_i, X_{i+1}] = X_{i+2}
    const Scalar q = Scalar::frac(1, 4);
    m.gm = diag({k1 * q, k1 * q, k1 * q, k2 * q, k2 * q, k2 * q});
    m.jm = Matrix(kDim, kDim);
    const Scalar r12 = sqrt(k1 / k2);
    const Scalar r21 = sqrt(k2 / k1);
    for (int i = 0; i < 3; ++i) {
        m.jm(3 + i, i) = r12;
        m.jm(i, 3 + i) = -r21;
    }
    return from_reductive(std::move(m));
}

CatalogModel build_sl2c_so3(const Params& prm)
{
    const Scalar& p = get(prm, "p");
    // A0 (su2), X = su2 inside sl2c, Y = i X
    LieAlgebraData l(9);
    add_su2(l, 0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                const int e = eps(i, j, k);
                if (!e || i > j) continue;
                l.set(3 + i, 3 + j, 3 + k, Scalar(e));
                l.set(6 + i, 6 + j, 3 + k, Scalar(-e));
            }
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (eps(i, j, k)) l.set(3 + i, 6 + j, 6 + k, Scalar(eps(i, j, k)));
    ReductiveModel m;
    m.algebra = l;
    const Scalar inv = Scalar(1) / (p + Scalar(1));
    for (int k = 0; k < 3; ++k) m.h.push_back(combo(9, {{k, 1}, {3 + k, 1}}));
    for (int k = 0; k < 3; ++k) m.m.push_back(combo(9, {{k, 1}, {3 + k, inv}}));
    for (int k = 0; k < 3; ++k) m.m.push_back(unit(9, 6 + k));
    const Scalar q = Scalar::frac(1, 4);
    const Scalar w = (p + Scalar(1)) * (p + Scalar(1)) / p * q;
    m.gm = diag({q, q, q, w, w, w});
    m.jm = Matrix(kDim, kDim);
    const Scalar rp = sqrt(p);
    for (int k = 0; k < 3; ++k) {
        m.jm(3 + k, k) = rp / (p + Scalar(1));
        m.jm(k, 3 + k) = -(p + Scalar(1)) / rp;
    }
    return from_reductive(std::move(m));
}

CatalogModel build_e3_so3(const Params&)
{
    // A0, A1 (su2), v (R^3) with [A1_i, v_b] = (e_i x e_b)
    LieAlgebraData l(9);
    add_su2(l, 0);
    add_su2(l, 3);
    for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 3; ++a)
                if (eps(a, i, b)) l.set(3 + i, 6 + b, 6 + a, Scalar(eps(a, i, b)));
    ReductiveModel m;
    m.algebra = l;
    for (int k = 0; k < 3; ++k) m.h.push_back(combo(9, {{k, 1}, {3 + k, 1}}));
    for (int k = 0; k < 3; ++k) m.m.push_back(unit(9, 6 + k));
    for (int k = 0; k < 3; ++k) m.m.push_back(unit(9, k));
    m.gm = Matrix::identity(kDim);
    m.jm = Matrix(kDim, kDim);
    for (int k = 0; k < 3; ++k) {
        m.jm(3 + k, k) = Scalar(-1);
        m.jm(k, 3 + k) = Scalar(1);
    }
    return from_reductive(std::move(m));
}

CatalogModel build_n6_so3(const Params&)
{
    // A (su2), v, w with [v, v'] = v x v' in w
    LieAlgebraData l(9);
    add_su2(l, 0);
    for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 3; ++a)
                if (eps(a, i, b))
                    for (int off : {3, 6}) l.set(i, off + b, off + a, Scalar(eps(a, i, b)));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (eps(i, j, k)) l.set(3 + i, 3 + j, 6 + k, Scalar(eps(i, j, k)));
    ReductiveModel m;
    m.algebra = l;
    for (int k = 0; k < 3; ++k) m.h.push_back(unit(9, k));
    for (int k = 0; k < 3; ++k) m.m.push_back(unit(9, 3 + k));
    for (int k = 0; k < 3; ++k) m.m.push_back(combo(9, {{k, 1}, {6 + k, 1}}));
    m.gm = Matrix::identity(kDim);
    m.jm = Matrix(kDim, kDim);
    for (int k = 0; k < 3; ++k) {
        m.jm(3 + k, k) = Scalar(1);
        m.jm(k, 3 + k) = Scalar(-1);
    }
    return from_reductive(std::move(m));
}

ReductiveModel s5_model(const Scalar& r)
{
    LieAlgebraData su3 = su3_algebra();
    LieAlgebraData l(9);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) l.c(i, j, k) = su3.c(i, j, k);
    ReductiveModel m;
    m.algebra = l;
    for (int i = 0; i < 3; ++i) m.h.push_back(unit(9, i));
    for (int i = 3; i < 9; ++i) m.m.push_back(unit(9, i));
    m.gm = diag({r, r, r, r, Scalar(3) * r, Scalar(1)});
    m.jm = Matrix(kDim, kDim);
    // horizontal part: -ad(xi)/3
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.jm(i, j) = -l.c(7, 3 + j, 3 + i) / Scalar(3);
    const Scalar n = sqrt(Scalar(3) * r);
    m.jm(5, 4) = n;
    m.jm(4, 5) = Scalar(-1) / n;
    return m;
}

CatalogModel build_s5xs1(const Params& p) { return from_reductive(s5_model(get(p, "r"))); }

StructureEquations nil_equations(const Scalar& a3, const Scalar& a4, const Scalar& a5)
{
    StructureEquations s;
    Form plus = Form::mono("12") + Form::mono("34");
    Form minus = Form::mono("12") - Form::mono("34");
    s.de[4] = minus * a3 + plus * a5;
    s.de[5] = minus * a4;
    return s;
}

CatalogModel build_nil(const Params& p)
{
    CatalogModel out;
    StructureEquations eq = nil_equations(get(p, "a3"), get(p, "a4"), get(p, "a5"));
    out.space = lie_group_space(eq.algebra(), Matrix::identity(kDim));
    out.torsion = torsion_from_kaehler(eq, complex_structure()).torsion;
    out.curvature = curvature(out.space, characteristic_connection(out.space, out.torsion));
    out.naturally_reductive = canonical_data(out.space).naturally_reductive;
    out.equations = std::move(eq);
    return out;
}

// --- checks ---

void common_checks(CatalogModel& m)
{
    auto& c = m.checks;
    if (m.reductive) {
        expect(c, "naturally reductive", true, m.naturally_reductive);
        RoundTrip rt = nomizu_round_trip(m.space);
        expect(c, "nomizu round trip", std::string("isomorphic"), rt.verdict);
        expect(c, "nomizu jacobi", true, rt.jacobi.ok);
    }
    Connection ch = characteristic_connection(m.space, m.torsion);
    expect(c, "torsion parallel", true, is_parallel(ch, m.torsion));
    expect(c, "J parallel", true, is_parallel(ch, kaehler_form()));
    CurvatureRecord gap = curvature_gap(m.torsion);
    CurvatureRecord rg = curvature(m.space, levi_civita(m.space));
    CurvatureRecord diff;
    diff.m = m.curvature.m - rg.m;
    expect(c, "curvature gap", true, same(diff, gap));
    expect(c, "first bianchi", sigma(m.torsion), bianchi_cyclic_sum(m.curvature));
}

Scalar lambda_so3(const TorsionComponents& t) { return t.n2 - t.n12 / Scalar(3); }

void so3_checks(CatalogModel& m, const Scalar& want_lambda)
{
    auto& c = m.checks;
    const Scalar lam = lambda_so3(m.report.components);
    expect(c, "lambda = |T2|^2 - |T12|^2/3", want_lambda, lam);
    std::vector<Form> so3;
    for (int a = 0; a < m.space.nh; ++a) so3.push_back(form_of_endo(m.space.ad_m(a)));
    CurvatureRecord want = projection_curvature(so3);
    want.m *= -lam;
    expect(c, "curvature = -lambda pr_so3", true, same(want, m.curvature));
    Form dt = exterior_d(projected_equations(m.space), m.torsion);
    expect(c, "dT = lambda *Omega", star_omega() * lam, dt);
    expect(c, "holonomy", std::string(lam.is_zero(1e-12) ? "trivial" : "so3"), identify_algebra(m.holonomy).tag);
    expect(c, "so3 in isotropy", true, identify_algebra(m.report.iso_basis).dim >= 3);
}

Scalar candidate(const ClassificationReport& r, const std::string& k)
{
    if (r.candidates.empty() || !r.candidates.front().count(k)) return Scalar(0);
    return r.candidates.front().at(k);
}

void check_s3xs3_t2(CatalogModel& m)
{
    auto& c = m.checks;
    const Scalar& s = get(m.params, "s");
    const Scalar& t = get(m.params, "t");
    expect(c, "torsion", Form::mono("125", -s) - Form::mono("346", t), m.torsion);
    const Scalar q = s * s + t * t;
    expect(c, "|T2|^2", Scalar(0), m.report.components.n2);
    expect(c, "|T12|^2", q / Scalar(2), m.report.components.n12);
    expect(c, "|T6|^2", q / Scalar(2), m.report.components.n6);
    const Scalar a3 = (s * s - t * t) / (Scalar(2) * sqrt(q));
    const Scalar a4 = -s * t / sqrt(q);
    const Scalar a5 = sqrt(q) / Scalar(2);
    expect(c, "alpha5", a5, candidate(m.report, "alpha5"));
    // (alpha3, alpha4) and (-alpha3, -alpha4) give the same orbit
    const Scalar g3 = candidate(m.report, "alpha3"), g4 = candidate(m.report, "alpha4");
    const bool pair = (same(a3, g3) && same(a4, g4)) || (same(a3, -g3) && same(a4, -g4));
    c.push_back({"(alpha3, alpha4) up to sign", "(" + show(a3) + ", " + show(a4) + ")",
                 "(" + show(g3) + ", " + show(g4) + ")", pair});
    expect(c, "lie group criterion", Scalar(0), m.report.lie_group.value);
    expect(c, "holonomy", std::string("trivial"), identify_algebra(m.holonomy).tag);
    expect(c, "einstein iff s = t", same(s, t), is_einstein(m.ricci_g));
}

void check_s3xt3_t2(CatalogModel& m)
{
    auto& c = m.checks;
    const Scalar& s = get(m.params, "s");
    const bool plus = get(m.params, "sign").sign() > 0;
    expect(c, "torsion", Form::mono(plus ? "125" : "345", s), m.torsion);
    expect(c, "alpha4", Scalar(0), candidate(m.report, "alpha4"));
    const Scalar a3 = candidate(m.report, "alpha3"), a5 = candidate(m.report, "alpha5");
    c.push_back({"alpha3 = +-alpha5", show(a5), show(a3), same(a3, a5) || same(a3, -a5)});
    expect(c, "lie group criterion", Scalar(0), m.report.lie_group.value);
    expect(c, "holonomy", std::string("trivial"), identify_algebra(m.holonomy).tag);
}

void check_t2bundle(CatalogModel& m)
{
    auto& c = m.checks;
    const Scalar& a3 = get(m.params, "a3");
    const Scalar& a4 = get(m.params, "a4");
    const Scalar& a5 = get(m.params, "a5");
    const Scalar lam = a3 * a3 + a4 * a4 - a5 * a5;
    expect(c, "torsion", first_family_form(0, a3, a4, a5), m.torsion);
    Form w = Form::mono("12") - Form::mono("34");
    expect(c, "curvature = lambda (e12-e34)^2", true, same(outer_curvature(w, lam), m.curvature));
    expect(c, "holonomy", std::string(lam.is_zero(1e-12) ? "trivial" : "t1"), identify_algebra(m.holonomy).tag);
    expect(c, "|T12|^2", Scalar(2) * (a3 * a3 + a4 * a4), m.report.components.n12);
    expect(c, "|T6|^2", Scalar(2) * a5 * a5, m.report.components.n6);
    // first-principles Ricci blocks
    const Scalar hp = ((a3 + a5) * (a3 + a5) + a4 * a4) / Scalar(2) - lam;
    const Scalar hm = ((a3 - a5) * (a3 - a5) + a4 * a4) / Scalar(2) - lam;
    bool ok = true;
    std::string got;
    const Scalar want[6][6] = {{hp, 0, 0, 0, 0, 0},
                               {0, hp, 0, 0, 0, 0},
                               {0, 0, hm, 0, 0, 0},
                               {0, 0, 0, hm, 0, 0},
                               {0, 0, 0, 0, a3 * a3 + a5 * a5, a3 * a4},
                               {0, 0, 0, 0, a3 * a4, a4 * a4}};
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) ok = ok && same(want[i][j], m.ricci_g(i, j));
    for (int i = 0; i < kDim; ++i) got += (i ? ", " : "") + show(m.ricci_g(i, i));
    c.push_back({"ricci blocks", show(hp) + ", " + show(hm) + ", [[a3^2+a5^2, a3a4], [a3a4, a4^2]]", got, ok});
    if (lam.is_zero(1e-12)) {
        LieAlgebraData flat = nomizu(m.torsion, CurvatureRecord{}, std::vector<Matrix>{});
        expect(c, "lambda = 0 gives S3xS3", true,
               structural_invariants(flat) == structural_invariants(su2_sum(2)));
    }
}

void check_s3xs3_so3(CatalogModel& m)
{
    auto& c = m.checks;
    const Scalar& b = get(m.params, "b");
    const Scalar& d = get(m.params, "d");
    const Scalar& k1 = get(m.params, "k1");
    const Scalar& k2 = get(m.params, "k2");
    const Scalar one(1);
    const Scalar n2 = (k1 + k2) / ((b - d) * (b - d)) * ((d - one) * (d - one) / k2 + (b - one) * (b - one) / k1) *
                      (d * d / k2 + b * b / k1);
    expect(c, "|T2|^2", n2, m.report.components.n2);
    expect(c, "|T6|^2", Scalar(0), m.report.components.n6);
    so3_checks(m, Scalar(-8) * (b / k1 + d / k2));
    if (same(b, Scalar(-2)) && same(d, Scalar(0)) && same(k1, Scalar(3)) && same(k2, Scalar(1))) {
        expect(c, "nearly Kaehler |T2|^2", Scalar::frac(16, 3), m.report.components.n2);
        expect(c, "nearly Kaehler |T12|^2", Scalar(0), m.report.components.n12);
        expect(c, "strict type", std::string("W1"), m.report.type.strict);
    }
    const bool nk = m.report.components.n12.is_zero(1e-12);
    const bool product = same(k1, k2) && same(b, -d) && same(b * b, one);
    expect(c, "einstein iff nearly Kaehler or product", nk || product, is_einstein(m.ricci_g));
}

void check_sl2c_so3(CatalogModel& m)
{
    auto& c = m.checks;
    const Scalar& p = get(m.params, "p");
    const Scalar p1 = p + Scalar(1);
    expect(c, "|T2|^2", (p - Scalar(1)) * (p - Scalar(1)) / (p1 * p1), m.report.components.n2);
    expect(c, "|T12|^2", Scalar(3) * (p + Scalar(3)) * (p + Scalar(3)) / (p1 * p1), m.report.components.n12);
    so3_checks(m, Scalar(-8) / p1);
    expect(c, "strict type", std::string(same(p, Scalar(1)) ? "W3" : "W1+W3"), m.report.type.strict);
}

void check_e3_so3(CatalogModel& m)
{
    auto& c = m.checks;
    expect(c, "|T2|^2", Scalar::frac(1, 4), m.report.components.n2);
    expect(c, "|T12|^2", Scalar::frac(3, 4), m.report.components.n12);
    so3_checks(m, Scalar(0));
    expect(c, "curvature vanishes", true, m.curvature.is_zero());
}

void check_n6_so3(CatalogModel& m)
{
    auto& c = m.checks;
    expect(c, "|T2|^2", Scalar::frac(1, 4), m.report.components.n2);
    expect(c, "|T12|^2", Scalar::frac(27, 4), m.report.components.n12);
    so3_checks(m, Scalar(-2));
}

void check_s5xs1(CatalogModel& m)
{
    auto& c = m.checks;
    expect(c, "strict type", std::string("W4"), m.report.type.strict);
    expect(c, "holonomy", std::string("su2"), identify_algebra(m.holonomy).tag);
    expect(c, "einstein", false, is_einstein(m.ricci_g));
    if (same(get(m.params, "r"), s5_sasaki_scale())) {
        expect(c, "torsion", (Form::mono("125") + Form::mono("345")) * Scalar(2), m.torsion);
        bool ok = true;
        std::string got;
        const int want[kDim] = {6, 6, 6, 6, 4, 0};
        for (int i = 0; i < kDim; ++i) {
            for (int j = 0; j < kDim; ++j) ok = ok && same(m.ricci_g(i, j), Scalar(i == j ? want[i] : 0));
            got += (i ? "," : "") + show(m.ricci_g(i, i));
        }
        c.push_back({"ricci", "6,6,6,6,4,0", got, ok});
    }
}

void check_nil(CatalogModel& m, const std::string& family)
{
    auto& c = m.checks;
    const Scalar& a3 = get(m.params, "a3");
    const Scalar& a4 = get(m.params, "a4");
    const Scalar& a5 = get(m.params, "a5");
    const StructureEquations& eq = *m.equations;
    const Matrix j = complex_structure();
    expect(c, "nijenhuis zero", true, nijenhuis(eq, j).zero);
    Form plus = Form::mono("12") + Form::mono("34");
    Form minus = Form::mono("12") - Form::mono("34");
    KaehlerTorsion kt = torsion_from_kaehler(eq, j);
    expect(c, "dOmega", wedge(minus, basis_one_form(5) * a3 - basis_one_form(4) * a4) + wedge(plus, basis_one_form(5)) * a5,
           kt.d_omega);
    expect(c, "torsion", wedge(minus, basis_one_form(4) * a3 + basis_one_form(5) * a4) + wedge(plus, basis_one_form(4)) * a5,
           m.torsion);
    ParallelCheck pc = verify_parallel(eq, j, m.torsion);
    expect(c, "torsion parallel", true, pc.parallel);
    expect(c, "dT = 2 sigma", true, pc.dt_is_2sigma);
    expect(c, "dT", Form::mono("1234", Scalar(-2) * (a3 * a3 + a4 * a4 - a5 * a5)), pc.dt);
    expect(c, "|T12|^2", Scalar(2) * (a3 * a3 + a4 * a4), m.report.components.n12);
    expect(c, "|T6|^2", Scalar(2) * a5 * a5, m.report.components.n6);
    for (const auto& row : nil_table()) {
        if (row.family.find("(" + family + ")") == std::string::npos) continue;
        auto b = ce_betti_numbers(eq);
        expect(c, "strict type", row.strict, m.report.type.strict);
        expect(c, "b1", Scalar(row.b1), Scalar(b[1]));
        expect(c, "b2", Scalar(row.b2), Scalar(b[2]));
        auto norm = normalize_two_step(eq);
        expect(c, "structure", row.structure, norm ? norm->tag : std::string("?"));
    }
}

// --- entry table ---

struct EntryImpl {
    CatalogEntry entry;
    std::function<void(const Params&)> validate;
    Builder build;
    std::function<void(CatalogModel&)> check;
};

std::vector<ParamSpec> nil_params(const char* a3, const char* a4, const char* a5)
{
    return {{"a3", a3, "real"}, {"a4", a4, "real"}, {"a5", a5, "real"}};
}

std::function<void(const Params&)> nil_validator(const std::string& fam)
{
    return [fam](const Params& p) {
        const Scalar& a3 = get(p, "a3");
        const Scalar& a4 = get(p, "a4");
        const Scalar& a5 = get(p, "a5");
        const std::string e = "nil-" + fam;
        const bool pm = !nonzero(a3 - a5) || !nonzero(a3 + a5);
        if (fam == "i") {
            require(pm, e, "a3 = +-a5");
            require(!nonzero(a4), e, "a4 = 0");
            require(positive(a5), e, "a5 > 0");
        } else if (fam == "ii") {
            require(!pm, e, "a3 != +-a5");
            require(nonzero(a3), e, "a3 != 0");
            require(!nonzero(a4), e, "a4 = 0");
            require(positive(a5), e, "a5 > 0");
        } else if (fam == "iii") {
            require(nonzero(a3), e, "a3 != 0");
            require(nonzero(a4), e, "a4 != 0");
            require(positive(a5), e, "a5 > 0");
        } else if (fam == "iv") {
            require(!nonzero(a3), e, "a3 = 0");
            require(nonzero(a4), e, "a4 != 0");
            require(positive(a5), e, "a5 > 0");
        } else if (fam == "v") {
            require(!nonzero(a3) && !nonzero(a4), e, "a3 = a4 = 0");
            require(positive(a5), e, "a5 > 0");
        } else {
            require(positive(a3), e, "a3 > 0");
            require(!nonzero(a4) && !nonzero(a5), e, "a4 = a5 = 0");
        }
    };
}

const std::vector<EntryImpl>& impls()
{
    static const std::vector<EntryImpl> table = [] {
        std::vector<EntryImpl> v;
        auto none = [](const Params&) {};
        v.push_back({{"s3xs3-t2", "S3xS3", "reductive", {{"s", "1", "> 0"}, {"t", "1", "> 0"}}, {"s > 0", "t > 0"}},
                     [](const Params& p) {
                         require(positive(get(p, "s")), "s3xs3-t2", "s > 0");
                         require(positive(get(p, "t")), "s3xs3-t2", "t > 0");
                     },
                     build_s3xs3_t2, check_s3xs3_t2});
        v.push_back({{"s3xt3-t2", "S3xT3", "reductive", {{"s", "1", "> 0"}, {"sign", "1", "+1 or -1"}},
                      {"s > 0", "sign = +-1"}},
                     [](const Params& p) {
                         require(positive(get(p, "s")), "s3xt3-t2", "s > 0");
                         const Scalar& sg = get(p, "sign");
                         require(same(sg * sg, Scalar(1)), "s3xt3-t2", "sign = +-1");
                     },
                     build_s3xt3_t2, check_s3xt3_t2});
        v.push_back({{"s3xs3-t2bundle", "S3xS3", "reductive",
                      {{"a3", "1/4", "real"}, {"a4", "1", "!= 0"}, {"a5", "1", "> 0"}},
                      {"a3 + a5 > 0", "a3 - a5 < 0", "a5 > 0", "a4 != 0"}},
                     [](const Params& p) {
                         const Scalar& a3 = get(p, "a3");
                         const Scalar& a5 = get(p, "a5");
                         require(positive(a3 + a5), "s3xs3-t2bundle", "a3 + a5 > 0");
                         require((a3 - a5).sign() < 0, "s3xs3-t2bundle", "a3 - a5 < 0");
                         require(positive(a5), "s3xs3-t2bundle", "a5 > 0");
                         require(nonzero(get(p, "a4")), "s3xs3-t2bundle", "a4 != 0");
                     },
                     build_t2bundle, check_t2bundle});
        v.push_back({{"s3xs3-so3", "S3xS3", "reductive",
                      {{"b", "-2", "!= d"}, {"d", "0", "!= b"}, {"k1", "3", "> 0"}, {"k2", "1", "> 0"}},
                      {"b != d", "k1 > 0", "k2 > 0", "ad + b + c - a - bc - d != 0"}},
                     [](const Params& p) {
                         const Scalar& b = get(p, "b");
                         const Scalar& d = get(p, "d");
                         require(nonzero(b - d), "s3xs3-so3", "b != d");
                         require(positive(get(p, "k1")), "s3xs3-so3", "k1 > 0");
                         require(positive(get(p, "k2")), "s3xs3-so3", "k2 > 0");
                         auto [a, c] = so3_coefficients(b, d, get(p, "k1"), get(p, "k2"));
                         require(nonzero(a * d + b + c - a - b * c - d), "s3xs3-so3", "ad + b + c - a - bc - d != 0");
                     },
                     build_s3xs3_so3, check_s3xs3_so3});
        v.push_back({{"sl2c-so3", "SL(2,C)", "reductive", {{"p", "1", "> 0"}}, {"p > 0"}},
                     [](const Params& p) { require(positive(get(p, "p")), "sl2c-so3", "p > 0"); }, build_sl2c_so3,
                     check_sl2c_so3});
        v.push_back({{"e3-so3", "E3", "reductive", {}, {}}, none, build_e3_so3, check_e3_so3});
        v.push_back({{"n6-so3", "N6", "reductive", {}, {}}, none, build_n6_so3, check_n6_so3});
        const std::vector<std::pair<std::string, std::vector<ParamSpec>>> fams = {
            {"i", nil_params("1", "0", "1")},  {"ii", nil_params("2", "0", "1")}, {"iii", nil_params("1", "1", "1")},
            {"iv", nil_params("0", "1", "1")}, {"v", nil_params("0", "0", "1")},  {"vi", nil_params("1", "0", "0")}};
        const std::map<std::string, std::vector<std::string>> conds = {
            {"i", {"a3 = +-a5", "a4 = 0", "a5 > 0"}},
            {"ii", {"a3 != +-a5", "a3 != 0", "a4 = 0", "a5 > 0"}},
            {"iii", {"a3 != 0", "a4 != 0", "a5 > 0"}},
            {"iv", {"a3 = 0", "a4 != 0", "a5 > 0"}},
            {"v", {"a3 = a4 = 0", "a5 > 0"}},
            {"vi", {"a3 > 0", "a4 = a5 = 0"}}};
        for (const auto& [fam, ps] : fams) {
            v.push_back({{"nil-" + fam, "nilmanifold", "nil", ps, conds.at(fam)}, nil_validator(fam), build_nil,
                         [f = fam](CatalogModel& m) { check_nil(m, f); }});
        }
        v.push_back({{"s5xs1", "S5xS1", "reductive", {{"r", "", "> 0, default: Sasaki scale"}}, {"r > 0"}},
                     [](const Params& p) { require(positive(get(p, "r")), "s5xs1", "r > 0"); }, build_s5xs1,
                     check_s5xs1});
        return v;
    }();
    return table;
}

const EntryImpl& impl(const std::string& name)
{
    for (const auto& e : impls()) {
        if (e.entry.name == name) return e;
    }
    throw std::invalid_argument("unknown catalog entry: " + name);
}

Params complete(const EntryImpl& e, const Params& given, Backend b)
{
    Params p;
    for (const auto& [k, v] : given) {
        const std::string key = canonical_key(k);
        bool known = false;
        for (const auto& s : e.entry.params) known = known || s.name == key;
        if (!known) throw std::invalid_argument(e.entry.name + " has no parameter " + k);
        p[key] = convert(v, b);
    }
    for (const auto& s : e.entry.params) {
        if (p.count(s.name)) continue;
        if (e.entry.name == "s5xs1" && s.name == "r") p["r"] = convert(s5_sasaki_scale(), b);
        else p[s.name] = convert(parse_scalar(s.fallback), b);
    }
    return p;
}

}  // namespace

bool CatalogModel::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

const std::vector<CatalogEntry>& catalog_entries()
{
    static const std::vector<CatalogEntry> list = [] {
        std::vector<CatalogEntry> v;
        for (const auto& e : impls()) v.push_back(e.entry);
        return v;
    }();
    return list;
}

const CatalogEntry& catalog_entry(const std::string& name) { return impl(name).entry; }

CatalogModel build_model(const std::string& name, const Params& params, Backend b)
{
    const EntryImpl& e = impl(name);
    Params p = complete(e, params, b);
    e.validate(p);
    CatalogModel m = e.build(p);
    m.name = name;
    m.params = p;
    return m;
}

CatalogModel build(const std::string& name, const Params& params, Backend b)
{
    CatalogModel m = build_model(name, params, b);
    m.report = classify_form(m.torsion);
    m.ricci_g = ricci(curvature(m.space, levi_civita(m.space)));
    try {
        m.holonomy = holonomy_algebra(m.torsion, m.curvature);
    } catch (const std::logic_error& ex) {
        m.checks.push_back({"holonomy inside isotropy", "true", ex.what(), false});
    }
    common_checks(m);
    impl(name).check(m);
    return m;
}

std::vector<SweepRow> sweep(const std::string& name, const std::vector<Params>& grid, Backend b)
{
    impl(name);
    std::vector<SweepRow> rows;
    for (const auto& p : grid) {
        SweepRow r;
        r.params = p;
        try {
            r.model = build(name, p, b);
            r.params = r.model->params;
        } catch (const std::exception& ex) {
            r.error = ex.what();
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<Params> grid_product(const std::map<std::string, std::vector<Scalar>>& axes)
{
    std::vector<Params> out;
    if (axes.empty()) return out;
    out.push_back({});
    for (const auto& [k, values] : axes) {
        std::vector<Params> next;
        for (const auto& p : out) {
            for (const auto& v : values) {
                Params q = p;
                q[k] = v;
                next.push_back(q);
            }
        }
        out = std::move(next);
    }
    return out;
}

// --- reference algebras ---

LieAlgebraData su2_sum(int copies, int abelian)
{
    LieAlgebraData l(3 * copies + abelian);
    for (int a = 0; a < copies; ++a) add_su2(l, 3 * a);
    return l;
}

LieAlgebraData su3_algebra()
{
    LieAlgebraData l(8);
    for (const auto& t : su3_table) l.set(t.i, t.j, t.k, Scalar(t.v));
    return l;
}

LieAlgebraData reference_algebra(const std::string& group)
{
    LieAlgebraData l(6);
    auto sl2r = [&](int off) {
        l.set(off, off + 1, off + 1, Scalar(2));
        l.set(off, off + 2, off + 2, Scalar(-2));
        l.set(off + 1, off + 2, off, Scalar(1));
    };
    auto n11 = [&](int off) {
        l.set(off, off + 1, off + 1, Scalar(1));
        l.set(off, off + 2, off + 2, Scalar(-1));
    };
    auto e2 = [&](int off) {
        l.set(off, off + 1, off + 2, Scalar(1));
        l.set(off, off + 2, off + 1, Scalar(-1));
    };
    if (group == "S3xS3") {
        add_su2(l, 0);
        add_su2(l, 3);
    } else if (group == "S3xSL2R") {
        add_su2(l, 0);
        sl2r(3);
    } else if (group == "S3xN11") {
        add_su2(l, 0);
        n11(3);
    } else if (group == "T3xN11") {
        n11(3);
    } else if (group == "S3xE2") {
        add_su2(l, 0);
        e2(3);
    } else if (group == "T3xE2") {
        e2(3);
    } else if (group == "S3xNil3") {
        add_su2(l, 0);
        l.set(3, 4, 5, Scalar(1));
    } else if (group == "RxH5") {
        l.set(1, 2, 5, Scalar(1));
        l.set(3, 4, 5, Scalar(1));
    } else {
        throw std::invalid_argument("unknown reference group: " + group);
    }
    return l;
}

const std::vector<std::string>& reference_groups()
{
    static const std::vector<std::string> g = {"S3xS3", "S3xSL2R", "S3xN11", "T3xN11",
                                               "S3xE2", "T3xE2",   "S3xNil3", "RxH5"};
    return g;
}

LieAlgebraData transitive_ideal(const LieAlgebraData& k, int nh)
{
    const int n = k.dim();
    std::vector<Vec> all;
    for (int i = 0; i < n; ++i) all.push_back(unit(n, i));
    auto span = derived_algebra(k, all);
    if (static_cast<int>(span.size()) < n - nh) {
        auto c = center(k);
        span.insert(span.end(), c.begin(), c.end());
        std::vector<Vec> b;
        for (int i : independent_subset(span)) b.push_back(span[i]);
        span = b;
    }
    auto with_h = span;
    for (int a = 0; a < nh; ++a) with_h.push_back(all[a]);
    if (static_cast<int>(span.size()) != n - nh || rank(Matrix::from_columns(with_h, n)) != n)
        throw std::logic_error("no ideal complementary to the isotropy algebra");
    const int m = n - nh;
    Matrix basis = Matrix::from_columns(span, n);
    LieAlgebraData g(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            auto x = solve(basis, k.bracket(span[i], span[j]));
            if (!x) throw std::logic_error("complementary ideal is not closed");
            for (int l = 0; l < m; ++l) g.set(i, j, l, (*x)[l]);
        }
    }
    return g;
}

std::vector<std::string> matching_groups(const LieAlgebraData& g)
{
    auto inv = structural_invariants(g);
    std::vector<std::string> out;
    for (const auto& name : reference_groups())
        if (structural_invariants(reference_algebra(name)) == inv) out.push_back(name);
    return out;
}

const std::vector<LocalModelRow>& local_model_rows()
{
    static const std::vector<LocalModelRow> rows = {
        {"a3 + a5 < 0", "S3xSL2R", Scalar(-2), Scalar(1), Scalar(1)},
        {"a3 + a5 > 0, a3 - a5 < 0", "S3xS3", Scalar::frac(1, 2), Scalar(1), Scalar(1)},
        {"a3 - a5 > 0", "S3xSL2R", Scalar(2), Scalar(1), Scalar(1)},
        {"a3 = +-a5", "S3xN11", Scalar(1), Scalar(1), Scalar(1)},
        {"a3 = +-a5", "S3xN11", Scalar(-1), Scalar(1), Scalar(1)},
        {"a5 = 0", "T3xN11", Scalar(1), Scalar(0), Scalar(0)},
        {"a5 = 0", "T3xN11", Scalar(2), Scalar(1), Scalar(0)},
    };
    return rows;
}

LieAlgebraData local_model_algebra(const Scalar& a3, const Scalar& a4, const Scalar& a5)
{
    Form w = Form::mono("12") - Form::mono("34");
    const Scalar lam = a3 * a3 + a4 * a4 - a5 * a5;
    return nomizu(first_family_form(0, a3, a4, a5), outer_curvature(w, lam), std::vector<Matrix>{endo_of_form(w)});
}

const std::vector<NilTableRow>& nil_table()
{
    static const std::vector<NilTableRow> rows = {
        {"(i)", "W3+W4", 5, 11, "(0,0,0,0,0,12)"},
        {"(ii), (iii)", "W3+W4", 4, 8, "(0,0,0,0,12,34)"},
        {"(iv)", "W3+W4", 5, 9, "(0,0,0,0,0,12+34)"},
        {"(v)", "W4", 5, 9, "(0,0,0,0,0,12+34)"},
        {"(vi)", "W3", 5, 9, "(0,0,0,0,0,12+34)"},
    };
    return rows;
}

Scalar s5_sasaki_scale()
{
    // eigenvalues of Ric^g scale like 1/r; solve the horizontal one = 6
    FramedSpace s = frame_model(s5_model(Scalar(1)));
    Matrix ric = ricci(curvature(s, levi_civita(s)));
    return ric(0, 0) / Scalar(6);
}

}  // namespace pt
