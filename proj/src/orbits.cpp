#include "pt/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pt {

// --- cases ---

namespace {

const char* const kCaseNames[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI"};

bool zero(const Scalar& x, double tol) { return x.exact() ? x.is_zero() : x.is_zero(tol); }
bool positive(const Scalar& x, double tol) { return !zero(x, tol) && x.sign() > 0; }

void require(bool ok, Case c, const std::string& what)
{
    if (!ok) throw std::invalid_argument("case " + case_name(c) + " requires " + what);
}

}  // namespace

std::string case_name(Case c) { return kCaseNames[static_cast<int>(c)]; }

Case parse_case(const std::string& s)
{
    std::string up;
    for (char ch : s) up += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (int k = 0; k < 11; ++k) {
        if (up == kCaseNames[k]) return static_cast<Case>(k);
    }
    throw std::invalid_argument("unknown case '" + s + "'");
}

bool first_family(Case c) { return static_cast<int>(c) <= static_cast<int>(Case::VI); }

std::string expected_iso_label(Case c)
{
    switch (c) {
    case Case::I: return "u2_0";
    case Case::II: return "su2";
    case Case::III: return "t1";
    case Case::IV: return "t2";
    case Case::V: return "su2";
    case Case::VI: return "t1";
    case Case::VII: return "su3";
    case Case::VIII: return "u2_1";
    case Case::IX: return "t2";
    case Case::X: return "so3";
    case Case::XI: return "so3";
    }
    return "";
}

std::string expected_strict_type(Case c)
{
    switch (c) {
    case Case::I: return "W4";
    case Case::II:
    case Case::III: return "W1+W3";
    case Case::IV: return "W3+W4";
    case Case::V:
    case Case::VI: return "W1+W3+W4";
    case Case::VII: return "W1";
    case Case::VIII:
    case Case::IX:
    case Case::X: return "W3";
    case Case::XI: return "W1+W3";
    }
    return "";
}

TorsionFamily TorsionFamily::from_params(Case c, const std::map<std::string, Scalar>& params)
{
    TorsionFamily f;
    f.kind = c;
    bool have_b1 = false;
    for (const auto& [name, v] : params) {
        if (name == "alpha1" || name == "a1") f.a1 = v;
        else if (name == "alpha2" || name == "a2") f.a2 = v;
        else if (name == "alpha3" || name == "a3") f.a3 = v;
        else if (name == "alpha4" || name == "a4") f.a4 = v;
        else if (name == "alpha5" || name == "a5") f.a5 = v;
        else if (name == "beta1" || name == "b1") f.b1 = v, have_b1 = true;
        else if (name == "beta2" || name == "b2") f.b2 = v;
        else throw std::invalid_argument("unknown parameter '" + name + "'");
    }
    if (!have_b1 && (c == Case::X || c == Case::XI)) f.b1 = Scalar(2) * f.b2;
    f.validate();
    return f;
}

void TorsionFamily::validate(double tol) const
{
    const Case c = kind;
    auto z = [&](const Scalar& x) { return zero(x, tol); };
    auto p = [&](const Scalar& x) { return positive(x, tol); };
    if (first_family(c)) {
        require(z(a2), c, "alpha2 = 0 (not a parameter of the first family)");
        require(z(b1), c, "beta1 = 0 (not a parameter of the first family)");
        require(z(b2), c, "beta2 = 0 (not a parameter of the first family)");
    } else {
        require(z(a3), c, "alpha3 = 0 (not a parameter of the second family)");
        require(z(a4), c, "alpha4 = 0 (not a parameter of the second family)");
        require(z(a5), c, "alpha5 = 0 (not a parameter of the second family)");
    }
    const bool a34 = p(a3) || (z(a3) && p(a4));
    const char* a34_msg = "alpha3 > 0, or alpha3 = 0 and alpha4 > 0";
    switch (c) {
    case Case::I:
        require(z(a1), c, "alpha1 = 0");
        require(z(a3) && z(a4), c, "alpha3 = alpha4 = 0");
        require(p(a5), c, "alpha5 > 0");
        break;
    case Case::II:
        require(p(a1), c, "alpha1 > 0");
        require(z(a3) && z(a4), c, "alpha3 = alpha4 = 0");
        require(z(a5), c, "alpha5 = 0");
        break;
    case Case::III:
        require(p(a1), c, "alpha1 > 0");
        require(a34, c, a34_msg);
        require(z(a5), c, "alpha5 = 0");
        break;
    case Case::IV:
        require(z(a1), c, "alpha1 = 0");
        require(a34, c, a34_msg);
        require(p(a5), c, "alpha5 > 0");
        break;
    case Case::V:
        require(p(a1), c, "alpha1 > 0");
        require(z(a3) && z(a4), c, "alpha3 = alpha4 = 0");
        require(p(a5), c, "alpha5 > 0");
        break;
    case Case::VI:
        require(p(a1), c, "alpha1 > 0");
        require(a34, c, a34_msg);
        require(p(a5), c, "alpha5 > 0");
        break;
    case Case::VII:
        require(p(a1), c, "alpha1 > 0");
        require(z(a2), c, "alpha2 = 0");
        require(z(b1) && z(b2), c, "beta1 = beta2 = 0");
        break;
    case Case::VIII:
        require(z(a1) && z(a2), c, "alpha1 = alpha2 = 0");
        require(z(b1), c, "beta1 = 0");
        require(!z(b2), c, "beta2 != 0");
        break;
    case Case::IX:
        require(z(a1) && z(a2), c, "alpha1 = alpha2 = 0");
        require(!z(b1), c, "beta1 != 0");
        require(z(b2), c, "beta2 = 0");
        break;
    case Case::X:
        require(z(a1) && z(a2), c, "alpha1 = alpha2 = 0");
        require(z(b1 - Scalar(2) * b2) && !z(b2), c, "beta1 = 2 beta2 != 0");
        break;
    case Case::XI:
        require(!(z(a1) && z(a2)), c, "(alpha1, alpha2) != (0, 0)");
        require(z(b1 - Scalar(2) * b2) && !z(b2), c, "beta1 = 2 beta2 != 0");
        break;
    }
}

std::map<std::string, Scalar> TorsionFamily::params() const
{
    if (first_family(kind)) return {{"alpha1", a1}, {"alpha3", a3}, {"alpha4", a4}, {"alpha5", a5}};
    return {{"alpha1", a1}, {"alpha2", a2}, {"beta1", b1}, {"beta2", b2}};
}

// --- normal forms ---

namespace {

Form f(const char* text) { return parse_form(text); }

}  // namespace

Form first_family_form(const Scalar& a1, const Scalar& a3, const Scalar& a4, const Scalar& a5)
{
    static const Form p1 = f("e145 + e235");
    static const Form p3 = f("e125 - e345");
    static const Form p4 = f("e126 - e346");
    static const Form p5 = f("e125 + e345");
    return a1 * p1 + a3 * p3 + a4 * p4 + a5 * p5;
}

Form second_family_form(const Scalar& a1, const Scalar& a2, const Scalar& b1, const Scalar& b2)
{
    static const Form q1 = f("e145 + e235 + e136 - e246");
    static const Form q2 = f("-e135 + e245 + e146 + e236");
    static const Form q3 = f("e125 - e345");
    static const Form q4 = f("e135 - e245 + e146 + e236");
    return a1 * q1 + a2 * q2 + b1 * q3 + b2 * q4;
}

Form make_torsion(const TorsionFamily& fam)
{
    fam.validate();
    if (first_family(fam.kind)) return first_family_form(fam.a1, fam.a3, fam.a4, fam.a5);
    return second_family_form(fam.a1, fam.a2, fam.b1, fam.b2);
}

Form gamma_diagnostic_form(const Scalar& a1, const Scalar& a3, const Scalar& a4, const Scalar& a5, const Scalar& gamma)
{
    static const Form g = f("e136 + e246");
    return first_family_form(a1, a3, a4, a5) + gamma * g;
}

Form reduced_w1w3_form(const Scalar& a1, const Scalar& b1, const Scalar& a3, const Scalar& a4)
{
    static const Form plus = f("e145 + e235 + e136 - e246");
    static const Form minus = f("e145 + e235 - e136 + e246");
    return a1 * plus + b1 * minus + first_family_form(Scalar(0), a3, a4, Scalar(0));
}

// --- sigma and friends ---

Form sigma(const Form& t)
{
    if (t.degree() != 3) throw std::invalid_argument("sigma needs a 3-form");
    Form out(4);
    for (int i = 0; i < kDim; ++i) {
        Form c = contract_basis(i, t);
        out += wedge(c, c);
    }
    return out * Scalar::frac(1, 2);
}

Form d_parallel(const Form& a, const Form& t)
{
    if (t.degree() != 3) throw std::invalid_argument("d_parallel needs a 3-form torsion");
    Form out(a.degree() + 1);
    if (a.degree() == 0) return out;
    for (int i = 0; i < kDim; ++i) out += wedge(contract_basis(i, a), contract_basis(i, t));
    return out;
}

Form codiff_gap(const Form& t, const Form& w)
{
    if (t.degree() != 3) throw std::invalid_argument("codiff_gap needs a 3-form torsion");
    if (w.degree() < 2) throw std::invalid_argument("codiff_gap needs a form of degree at least 2");
    Form out(w.degree() - 1);
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < kDim; ++j) {
            if (i == j) continue;
            out += wedge(contract_basis(j, contract_basis(i, t)), contract_basis(j, contract_basis(i, w)));
        }
    }
    return out * Scalar::frac(1, 2);
}

So3Pair so3_pair_reduce(const Vec& v, const Vec& w)
{
    if (v.size() != 3 || w.size() != 3) throw std::invalid_argument("so3_pair_reduce needs two 3-vectors");
    So3Pair out;
    out.lambda = sqrt(dot(v, v));
    if (out.lambda.is_zero()) {
        out.mu1 = sqrt(dot(w, w));
        out.mu2 = Scalar(0);
        return out;
    }
    out.mu1 = dot(v, w) / out.lambda;
    Vec r = axpy(-(out.mu1 / out.lambda), v, w);
    out.mu2 = sqrt(dot(r, r));
    return out;
}

LieGroupCriterion lie_group_criterion(const Form& t, double tol)
{
    if (t.degree() != 3) throw std::invalid_argument("lie_group_criterion needs a 3-form");
    auto c = project_l3(t);
    LieGroupCriterion out;
    out.value = Scalar(3) * c.n2 - c.n12 + c.n6;
    out.holds = zero(out.value, tol);
    return out;
}

// --- Bianchi feasibility ---

BianchiResult bianchi_feasible(const Form& t, const std::optional<std::vector<Matrix>>& hol_in)
{
    if (t.degree() != 3) throw std::invalid_argument("bianchi_feasible needs a 3-form");
    BianchiResult out;
    const Matrix j = complex_structure();
    if (hol_in) {
        for (const auto& a : *hol_in) {
            if (!commutator(a, j).is_zero() || !act(a, t).is_zero() || !(a + a.transpose()).is_zero()) {
                throw std::invalid_argument("holonomy candidate is not inside the isotropy algebra of T");
            }
        }
        out.hol = span_basis(*hol_in);
    } else {
        out.hol = isotropy_algebra(t);
    }
    const Form s = sigma(t);
    const int n = static_cast<int>(out.hol.size());
    if (n == 0) {
        out.feasible = s.is_zero();
        if (out.feasible) out.witness = CurvatureRecord{};
        return out;
    }
    std::vector<Form> w;
    for (const auto& a : out.hol) w.push_back(form_of_endo(a));
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) pairs.emplace_back(a, b);
    }
    const int m = static_cast<int>(pairs.size());
    Matrix sys(15, m);
    for (int col = 0; col < m; ++col) {
        Matrix r(n, n);
        r(pairs[col].first, pairs[col].second) = Scalar(1);
        r(pairs[col].second, pairs[col].first) = Scalar(1);
        Form cyc = bianchi_cyclic_sum(curvature_from_forms(w, r));
        for (int row = 0; row < 15; ++row) sys(row, col) = cyc[row];
    }
    auto x = solve(sys, s.vec());
    out.feasible = x.has_value();
    if (x) {
        Matrix r(n, n);
        for (int col = 0; col < m; ++col) {
            r(pairs[col].first, pairs[col].second) = (*x)[col];
            r(pairs[col].second, pairs[col].first) = (*x)[col];
        }
        out.coefficients = r;
        CurvatureRecord rec = curvature_from_forms(w, r);
        rec.values = out.hol;
        out.witness = rec;
    }
    return out;
}

// --- classification ---

namespace {

std::vector<double> invariant_values(const Form& t)
{
    std::vector<double> out;
    for (const auto& v : orbit_invariants(convert(t, Backend::floating))) out.push_back(v.value.to_double());
    return out;
}

double mismatch(const std::vector<double>& a, const std::vector<double>& b)
{
    double r = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double scale = std::max(1.0, std::abs(b[k]));
        double d = (a[k] - b[k]) / scale;
        r += d * d;
    }
    return r;
}

// Parameters in [lo, hi] where the invariants of make(p) match the target.
std::vector<double> search_1d(const std::function<Form(double)>& make, const std::vector<double>& target,
                              double lo, double hi)
{
    const int n = 360;
    std::vector<double> xs(n + 1), rs(n + 1);
    for (int k = 0; k <= n; ++k) {
        xs[k] = lo + (hi - lo) * k / n;
        rs[k] = mismatch(invariant_values(make(xs[k])), target);
    }
    std::vector<double> found;
    for (int k = 0; k <= n; ++k) {
        bool left = k == 0 || rs[k] <= rs[k - 1];
        bool right = k == n || rs[k] <= rs[k + 1];
        if (!left || !right) continue;
        double a = xs[std::max(k - 1, 0)], b = xs[std::min(k + 1, n)];
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - g * (b - a), d = a + g * (b - a);
        double fc = mismatch(invariant_values(make(c)), target);
        double fd = mismatch(invariant_values(make(d)), target);
        for (int it = 0; it < 80; ++it) {
            if (fc < fd) {
                b = d, d = c, fd = fc;
                c = b - g * (b - a);
                fc = mismatch(invariant_values(make(c)), target);
            } else {
                a = c, c = d, fc = fd;
                d = a + g * (b - a);
                fd = mismatch(invariant_values(make(d)), target);
            }
        }
        double x = 0.5 * (a + b);
        if (mismatch(invariant_values(make(x)), target) > 1e-12) continue;
        bool dup = false;
        for (double y : found) dup = dup || std::abs(x - y) < 1e-5;
        if (!dup) found.push_back(x);
    }
    return found;
}

Scalar num(double d) { return Scalar::real(d); }

// Adapted frame with e5 along x and e6 = J e5, columns of the returned matrix.
Matrix reduced_frame(const Vec& x)
{
    const Matrix j = complex_structure();
    std::vector<Vec> frame;
    auto add_pair = [&](Vec v) {
        Scalar len = sqrt(dot(v, v));
        for (auto& c : v) c /= len;
        frame.push_back(v);
        frame.push_back(j * v);
    };
    add_pair(x);
    std::vector<Vec> horiz;
    for (int k = 0; k < kDim && frame.size() < 6; ++k) {
        Vec v(kDim);
        v[k] = Scalar(1);
        for (const auto& f : frame) v = axpy(-dot(v, f), f, v);
        if (is_zero(v)) continue;
        bool small = true;
        for (const auto& c : v) small = small && c.is_zero(1e-6);
        if (small) continue;
        add_pair(v);
    }
    std::vector<Vec> cols = {frame[2], frame[3], frame[4], frame[5], frame[0], frame[1]};
    return Matrix::from_columns(cols, kDim);
}

Vec asd_coords(const Form& w)
{
    Vec v;
    for (const auto& b : anti_selfdual_basis()) v.push_back(inner(w, b) / norm2(b));
    return v;
}

bool vec_small(const Vec& v)
{
    for (const auto& c : v) {
        if (!c.is_zero(1e-8)) return false;
    }
    return true;
}

bool form_zero(const Form& f) { return f.all_exact() ? f.is_zero() : norm2(f).to_double() < 1e-16; }

void set_case(ClassificationReport& rep, Case c, const std::map<std::string, Scalar>& params)
{
    rep.case_tag = case_name(c);
    rep.candidates = {params};
    rep.verdict = "normal form, case " + case_name(c);
}

// Compare the candidate normal form with t.
bool confirm(ClassificationReport& rep, const Form& t, const Form& candidate)
{
    auto a = invariant_values(t);
    auto b = invariant_values(candidate);
    auto ca = project_l3(t);
    auto cb = project_l3(candidate);
    a.push_back(ca.n6.to_double());
    b.push_back(cb.n6.to_double());
    double r = mismatch(a, b);
    bool iso_ok = identify_algebra(isotropy_algebra(candidate)).tag == rep.iso.tag;
    if (r > 1e-12) rep.evidence.push_back("invariants of the candidate normal form differ (mismatch " + std::to_string(r) + ")");
    if (!iso_ok) rep.evidence.push_back("isotropy of the candidate normal form differs");
    return r <= 1e-12 && iso_ok;
}

void unmatched(ClassificationReport& rep, const std::string& why)
{
    rep.case_tag = "non-singular or unrealizable";
    rep.candidates.clear();
    rep.verdict = "non-singular or unrealizable";
    rep.evidence.push_back(why);
}

void classify_first_family(ClassificationReport& rep, const Form& t)
{
    Matrix frame = reduced_frame(rep.components.x);
    Form tr = pullback(frame, t);
    auto c = project_l3(tr);
    U2Split sp = u2_split(c.t2, c.t12);
    Scalar a5 = c.t6.at("125");
    Scalar a1 = sqrt(Scalar(2) * norm2(sp.om1));
    Vec v = asd_coords(sp.om3);
    Vec w = asd_coords(sp.om4);
    So3Pair pr = so3_pair_reduce(v, w);
    Scalar a3 = pr.lambda, a4 = pr.mu1, gamma = pr.mu2;
    rep.evidence.push_back("reduced frame: alpha1 = " + a1.str() + ", alpha5 = " + a5.str() + ", (lambda, mu1, mu2) = (" +
                           a3.str() + ", " + a4.str() + ", " + gamma.str() + ")");
    if (!form_zero(sp.om1 - sp.om2)) return unmatched(rep, "Omega1 != Omega2 in the reduced frame");
    if (!vec_small(sp.y)) return unmatched(rep, "Y != 0 in the reduced frame");
    if (!zero(gamma, 1e-8)) return unmatched(rep, "gamma != 0 in the reduced frame");
    a3 = zero(a3, 1e-10) ? Scalar(0) : a3;
    a4 = zero(a4, 1e-10) ? Scalar(0) : a4;
    const bool has1 = !zero(a1, 1e-10);
    const bool has34 = !a3.is_zero() || !a4.is_zero();
    Case k = has1 ? (has34 ? Case::VI : Case::V) : (has34 ? Case::IV : Case::I);
    TorsionFamily fam;
    fam.kind = k;
    fam.a1 = has1 ? a1 : Scalar(0);
    fam.a3 = a3;
    fam.a4 = a4;
    fam.a5 = a5;
    try {
        fam.validate(1e-9);
    } catch (const std::invalid_argument& e) {
        return unmatched(rep, e.what());
    }
    if (!confirm(rep, t, make_torsion(fam))) return unmatched(rep, "reduced frame normal form does not reproduce T");
    set_case(rep, k, fam.params());
}

void classify_no_divergence(ClassificationReport& rep, const Form& t)
{
    const auto& c = rep.components;
    const std::string& type = rep.type.strict;
    const std::string& iso = rep.iso.tag;
    auto target = invariant_values(t);
    auto attempt = [&](Case k, std::map<std::string, Scalar> params) {
        TorsionFamily fam;
        try {
            fam = TorsionFamily::from_params(k, params);
        } catch (const std::invalid_argument& e) {
            unmatched(rep, e.what());
            return;
        }
        if (confirm(rep, t, make_torsion(fam))) set_case(rep, k, fam.params());
        else unmatched(rep, "no normal form matches the invariants");
    };
    if (type == "W1" && iso == "su3") return attempt(Case::VII, {{"alpha1", sqrt(c.n2) / Scalar(2)}});
    if (type == "W3" && iso == "u2_1") return attempt(Case::VIII, {{"beta2", sqrt(c.n12) / Scalar(2)}});
    if (type == "W3" && iso == "t2") return attempt(Case::IX, {{"beta1", sqrt(c.n12 / Scalar(2))}});
    if (type == "W3" && iso == "so3") return attempt(Case::X, {{"beta2", sqrt(c.n12 / Scalar(12))}});
    if (type == "W1+W3" && iso == "su2") {
        return attempt(Case::II, {{"alpha1", sqrt(c.n2)}});
    }
    if (type == "W1+W3" && iso == "so3") {
        double rho = std::sqrt(c.n2.to_double()) / 2.0;
        Scalar b2 = sqrt(c.n12 / Scalar(12));
        auto make = [&](double phi) {
            return second_family_form(num(rho * std::cos(phi)), num(rho * std::sin(phi)), Scalar(2) * b2, b2);
        };
        auto hits = search_1d(make, target, 0.0, 2.0 * M_PI);
        for (auto& h : hits) {
            if (std::abs(h - 2.0 * M_PI) < 1e-5) h = 0.0;
        }
        std::sort(hits.begin(), hits.end());
        hits.erase(std::unique(hits.begin(), hits.end(), [](double x, double y) { return std::abs(x - y) < 1e-5; }), hits.end());
        if (hits.empty()) return unmatched(rep, "no phase of (alpha1, alpha2) matches the invariants");
        std::vector<std::map<std::string, Scalar>> cands;
        for (double phi : hits) {
            cands.push_back({{"alpha1", num(rho * std::cos(phi))}, {"alpha2", num(rho * std::sin(phi))},
                             {"beta1", Scalar(2) * b2}, {"beta2", b2}});
        }
        rep.candidates = cands;
        if (hits.size() == 1) {
            rep.case_tag = "XI";
            rep.verdict = "normal form, case XI";
        } else {
            rep.case_tag = "ambiguous";
            rep.verdict = "several normal forms of case XI share the invariants";
        }
        return;
    }
    if (type == "W1+W3" && iso == "t1") {
        double a1 = std::sqrt(c.n2.to_double());
        double rho2 = (c.n12.to_double() - c.n2.to_double()) / 2.0;
        if (rho2 <= 1e-12) return unmatched(rep, "|T12|^2 <= |T2|^2 leaves no room for alpha3, alpha4");
        double rho = std::sqrt(rho2);
        auto make = [&](double phi) {
            return first_family_form(num(a1), num(rho * std::cos(phi)), num(rho * std::sin(phi)), Scalar(0));
        };
        auto hits = search_1d(make, target, -M_PI / 2.0, M_PI / 2.0);
        for (auto& h : hits) {
            if (std::abs(h + M_PI / 2.0) < 1e-5) h = M_PI / 2.0;
        }
        std::sort(hits.begin(), hits.end());
        hits.erase(std::unique(hits.begin(), hits.end(), [](double x, double y) { return std::abs(x - y) < 1e-5; }), hits.end());
        if (hits.empty()) return unmatched(rep, "no angle of (alpha3, alpha4) matches the invariants");
        rep.candidates.clear();
        for (double phi : hits) {
            double a3 = rho * std::cos(phi), a4 = rho * std::sin(phi);
            if (std::abs(a3) < 1e-9) a3 = 0.0;
            rep.candidates.push_back({{"alpha1", c.n2.is_rational() ? sqrt(c.n2) : num(a1)},
                                      {"alpha3", num(a3)}, {"alpha4", num(a4)}, {"alpha5", Scalar(0)}});
        }
        rep.case_tag = rep.candidates.size() == 1 ? "III" : "ambiguous";
        rep.verdict = rep.candidates.size() == 1 ? "normal form, case III" : "several normal forms of case III share the invariants";
        return;
    }
    if (type == "W3" && iso == "t1") {
        double r1 = std::sqrt(c.n12.to_double() / 2.0), r2 = std::sqrt(c.n12.to_double() / 4.0);
        auto make = [&](double th) { return second_family_form(Scalar(0), Scalar(0), num(r1 * std::cos(th)), num(r2 * std::sin(th))); };
        auto hits = search_1d(make, target, 0.0, M_PI / 2.0);
        rep.candidates.clear();
        for (double th : hits) {
            rep.candidates.push_back({{"alpha1", Scalar(0)}, {"alpha2", Scalar(0)},
                                      {"beta1", num(r1 * std::cos(th))}, {"beta2", num(r2 * std::sin(th))}});
        }
        rep.case_tag = "ambiguous";
        rep.verdict = "strict W3 with one-dimensional isotropy: excluded by the Bianchi identity, " +
                      std::to_string(hits.size()) + " candidate normal form(s)";
        return;
    }
    unmatched(rep, "no normal form with strict type " + type + " and isotropy " + iso);
}

}  // namespace

ClassificationReport classify_form(const Form& t)
{
    if (t.degree() != 3) throw std::invalid_argument("classify_form needs a 3-form");
    ClassificationReport rep;
    rep.components = project_l3(t);
    rep.type = torsion_type(rep.components);
    rep.iso_basis = isotropy_algebra(t);
    rep.iso = identify_algebra(rep.iso_basis);
    rep.lie_group = lie_group_criterion(t);
    rep.bianchi = bianchi_feasible(t).feasible;
    rep.invariants = orbit_invariants(t);
    if (rep.type.strict == "Kaehler") {
        rep.case_tag = "Kaehler";
        rep.verdict = "vanishing torsion";
        return rep;
    }
    if (rep.iso.dim == 0) {
        rep.case_tag = "non-singular orbit";
        rep.verdict = "not a parallel-torsion orbit candidate";
        rep.evidence.push_back("isotropy algebra is trivial");
        return rep;
    }
    if (rep.type.w4) classify_first_family(rep, t);
    else classify_no_divergence(rep, t);
    return rep;
}

}  // namespace pt
