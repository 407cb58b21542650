#include "pt/unitary.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace pt {

namespace {

Vec flatten(const Matrix& m)
{
    Vec v;
    v.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    }
    return v;
}

Matrix combine(const std::vector<Matrix>& basis, const Vec& coeffs)
{
    Matrix out(kDim, kDim);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!coeffs[k].is_zero()) out += basis[k] * coeffs[k];
    }
    return out;
}

std::vector<Form> image_basis(Form (*proj)(const Form&, const Form&))
{
    std::vector<Form> imgs;
    std::vector<Vec> vs;
    for (unsigned m : degree_masks(3)) {
        Form f = proj(Form::from_mask(m), kaehler_form());
        imgs.push_back(f);
        vs.push_back(f.vec());
    }
    std::vector<Form> out;
    for (int idx : independent_subset(vs)) out.push_back(imgs[idx]);
    return out;
}

}  // namespace

So6Split split_so6(const Matrix& a)
{
    Matrix j = complex_structure();
    So6Split s;
    Matrix jaj = j * a * j;
    s.u3 = (a - jaj) * Scalar::frac(1, 2);
    s.m6 = (a + jaj) * Scalar::frac(1, 2);
    Scalar c = Scalar(0);
    for (int r = 0; r < kDim; ++r) {
        for (int q = 0; q < kDim; ++q) {
            if (!j(r, q).is_zero()) c += s.u3(r, q) * j(r, q);
        }
    }
    s.center = j * (c / Scalar(6));
    s.su3 = s.u3 - s.center;
    return s;
}

std::vector<Matrix> so6_basis()
{
    std::vector<Matrix> out;
    for (unsigned m : degree_masks(2)) out.push_back(endo_of_form(Form::from_mask(m)));
    return out;
}

std::vector<Matrix> u3_basis()
{
    static const std::vector<Matrix> basis = [] {
        std::vector<Matrix> b;
        for (const char* s : {"12", "34", "56"}) b.push_back(endo_of_form(Form::mono(s)));
        const char* pairs[][2] = {{"13", "24"}, {"15", "26"}, {"35", "46"}};
        const char* twists[][2] = {{"14", "23"}, {"16", "25"}, {"36", "45"}};
        for (int k = 0; k < 3; ++k) {
            b.push_back(endo_of_form(Form::mono(pairs[k][0]) + Form::mono(pairs[k][1])));
            b.push_back(endo_of_form(Form::mono(twists[k][0]) - Form::mono(twists[k][1])));
        }
        return b;
    }();
    return basis;
}

std::vector<Matrix> su3_basis()
{
    std::vector<Matrix> b = u3_basis();
    std::vector<Matrix> out;
    out.push_back(b[0] - b[1]);
    out.push_back(b[1] - b[2]);
    for (std::size_t k = 3; k < b.size(); ++k) out.push_back(b[k]);
    return out;
}

Form tau(const Form& t, const Form& omega)
{
    if (t.degree() != 3) throw std::invalid_argument("tau expects a 3-form");
    Form out(3);
    for (int i = 0; i < kDim; ++i) out += wedge(contract_basis(i, omega), contract_basis(i, t));
    return out;
}

Form splitting_operator(const Form& t, const Form& omega) { return -hodge(tau(t, omega)); }

Form proj2(const Form& t, const Form& omega)
{
    Form s2 = splitting_operator(splitting_operator(t, omega), omega);
    return (s2 - t) * Scalar::frac(1, 8);
}

Form proj12(const Form& t, const Form& omega)
{
    Form s1 = splitting_operator(t, omega);
    Form s2 = splitting_operator(s1, omega);
    return (s2 - s1 * Scalar(4) + t * Scalar(3)) * Scalar::frac(1, 8);
}

Form proj6(const Form& t, const Form& omega)
{
    Form s1 = splitting_operator(t, omega);
    Form s2 = splitting_operator(s1, omega);
    return (s2 - s1 * Scalar(2) - t * Scalar(3)) * Scalar::frac(-1, 4);
}

TorsionComponents project_l3(const Form& t, const Form& omega)
{
    if (t.degree() != 3) throw std::invalid_argument("project_l3 expects a 3-form");
    TorsionComponents c;
    Form s1 = splitting_operator(t, omega);
    Form s2 = splitting_operator(s1, omega);
    c.t2 = (s2 - t) * Scalar::frac(1, 8);
    c.t12 = (s2 - s1 * Scalar(4) + t * Scalar(3)) * Scalar::frac(1, 8);
    c.t6 = (s2 - s1 * Scalar(2) - t * Scalar(3)) * Scalar::frac(-1, 4);
    std::vector<Vec> cols;
    for (int i = 0; i < kDim; ++i) cols.push_back(wedge(omega, basis_one_form(i)).vec());
    auto x = solve(Matrix::from_columns(cols, 20), c.t6.vec());
    if (!x) throw std::logic_error("six-dimensional component is not of the form Omega ∧ X");
    c.x = *x;
    c.n2 = norm2(c.t2);
    c.n12 = norm2(c.t12);
    c.n6 = norm2(c.t6);
    return c;
}

const std::vector<Form>& l3_basis(int which)
{
    static const std::vector<Form> b2 = image_basis(&proj2);
    static const std::vector<Form> b12 = image_basis(&proj12);
    static const std::vector<Form> b6 = image_basis(&proj6);
    switch (which) {
    case 2: return b2;
    case 12: return b12;
    case 6: return b6;
    default: throw std::invalid_argument("l3_basis expects 2, 12 or 6");
    }
}

namespace {

const std::vector<Form>& m6_forms()
{
    static const std::vector<Form> b = {
        Form::mono("13") - Form::mono("24"), Form::mono("14") + Form::mono("23"),
        Form::mono("15") - Form::mono("26"), Form::mono("16") + Form::mono("25"),
        Form::mono("35") - Form::mono("46"), Form::mono("36") + Form::mono("45"),
    };
    return b;
}

}  // namespace

std::vector<Matrix> theta(const Form& t)
{
    std::vector<Matrix> g;
    for (int i = 0; i < kDim; ++i) {
        Matrix a = endo_of_form(contract_basis(i, t));
        g.push_back(split_so6(a).m6 * Scalar::frac(-1, 2));
    }
    return g;
}

Matrix theta_matrix()
{
    Matrix m(36, 20);
    const auto& ms = degree_masks(3);
    for (int c = 0; c < 20; ++c) {
        auto g = theta(Form::from_mask(ms[c]));
        for (int i = 0; i < kDim; ++i) {
            Form w = form_of_endo(g[i]);
            for (int k = 0; k < 6; ++k) m(6 * i + k, c) = inner(w, m6_forms()[k]) * Scalar::frac(1, 2);
        }
    }
    return m;
}

TorsionType torsion_type(const TorsionComponents& c, double tol)
{
    auto present = [&](const Scalar& n) { return n.exact() ? !n.is_zero() : n.to_double() > tol; };
    TorsionType t;
    t.w1 = present(c.n2);
    t.w3 = present(c.n12);
    t.w4 = present(c.n6);
    std::vector<std::string> parts;
    if (t.w1) parts.push_back("W1");
    if (t.w3) parts.push_back("W3");
    if (t.w4) parts.push_back("W4");
    if (parts.empty()) {
        t.strict = "Kaehler";
    } else {
        t.strict = parts[0];
        for (std::size_t k = 1; k < parts.size(); ++k) t.strict += "+" + parts[k];
    }
    return t;
}

TorsionType torsion_type(const Form& t, double tol) { return torsion_type(project_l3(t), tol); }

// --- U(2) splitting ---

namespace {

Form horizontal_kaehler() { return Form::mono("12") + Form::mono("34"); }

Form f_map(const Form& w)
{
    Matrix a = endo_of_form(horizontal_kaehler());
    Matrix b = endo_of_form(w);
    return form_of_endo(commutator(a, b) * Scalar::frac(1, 2));
}

}  // namespace

const std::vector<Form>& m2_basis()
{
    static const std::vector<Form> b = {Form::mono("13") - Form::mono("24"), Form::mono("14") + Form::mono("23")};
    return b;
}

const std::vector<Form>& anti_selfdual_basis()
{
    static const std::vector<Form> b = {Form::mono("12") - Form::mono("34"), Form::mono("13") + Form::mono("24"),
                                        Form::mono("14") - Form::mono("23")};
    return b;
}

Form i1_map(const Form& w)
{
    return wedge(w, basis_one_form(4)) - wedge(f_map(w), basis_one_form(5));
}

Form i2_map(const Form& w)
{
    return wedge(w, basis_one_form(4)) + wedge(f_map(w), basis_one_form(5));
}

Form i3_map(const Form& w3, const Form& w4)
{
    return wedge(w3, basis_one_form(4)) + wedge(w4, basis_one_form(5));
}

Form i5_map(const Vec& y)
{
    Form v(1);
    for (int i = 0; i < 4; ++i) v[i] = y[i];
    return wedge(horizontal_kaehler() - Form::mono("56"), v);
}

U2Split u2_split(const Form& t2, const Form& t12)
{
    if (t2.degree() != 3 || t12.degree() != 3) throw std::invalid_argument("u2_split expects 3-forms");
    if (proj2(t2) != t2) throw std::invalid_argument("first argument is not in the 2-dimensional summand");
    if (proj12(t12) != t12) throw std::invalid_argument("second argument is not in the 12-dimensional summand");
    U2Split out;
    {
        std::vector<Vec> cols;
        for (const auto& b : m2_basis()) cols.push_back(i1_map(b).vec());
        auto x = solve(Matrix::from_columns(cols, 20), t2.vec());
        if (!x) throw std::invalid_argument("first argument is not in the image of i1");
        out.om1 = m2_basis()[0] * (*x)[0] + m2_basis()[1] * (*x)[1];
    }
    std::vector<Vec> cols;
    for (const auto& b : m2_basis()) cols.push_back(i2_map(b).vec());
    for (const auto& b : anti_selfdual_basis()) cols.push_back(i3_map(b, Form(2)).vec());
    for (const auto& b : anti_selfdual_basis()) cols.push_back(i3_map(Form(2), b).vec());
    for (int k = 0; k < 4; ++k) {
        Vec y(4);
        y[k] = Scalar(1);
        cols.push_back(i5_map(y).vec());
    }
    auto x = solve(Matrix::from_columns(cols, 20), t12.vec());
    if (!x) throw std::invalid_argument("second argument is not in the image of the U(2) maps");
    const Vec& c = *x;
    out.om2 = m2_basis()[0] * c[0] + m2_basis()[1] * c[1];
    out.om3 = Form(2);
    out.om4 = Form(2);
    for (int k = 0; k < 3; ++k) {
        out.om3 += anti_selfdual_basis()[k] * c[2 + k];
        out.om4 += anti_selfdual_basis()[k] * c[5 + k];
    }
    for (int k = 0; k < 4; ++k) out.y[k] = c[8 + k];
    return out;
}

// --- tori ---

FixedDims torus_fixed_dims(int k1, int k2, int k3)
{
    if (k1 == 0 && k2 == 0 && k3 == 0) throw std::invalid_argument("torus generator must be nonzero");
    Matrix xi = endo_of_form(Form::mono("12", Scalar(k1)) + Form::mono("34", Scalar(k2)) + Form::mono("56", Scalar(k3)));
    auto kernel_dim = [&](int which) {
        const auto& b = l3_basis(which);
        std::vector<Vec> cols;
        for (const auto& f : b) cols.push_back(act(xi, f).vec());
        return static_cast<int>(b.size()) - rank(Matrix::from_columns(cols, 20));
    };
    return FixedDims{kernel_dim(2), kernel_dim(12), kernel_dim(6)};
}

DeltaClass delta_class(int k1, int k2, int k3)
{
    std::array<int, 3> in{k1, k2, k3};
    if (k1 == 0 && k2 == 0 && k3 == 0) throw std::invalid_argument("torus generator must be nonzero");
    int g = std::gcd(std::gcd(std::abs(k1), std::abs(k2)), std::abs(k3));
    int zeros = static_cast<int>(std::count(in.begin(), in.end(), 0));
    std::array<int, 3> best{};
    bool found = false;
    std::array<int, 3> perm{0, 1, 2};
    do {
        for (int s : {1, -1}) {
            std::array<int, 3> t{s * in[perm[0]] / g, s * in[perm[1]] / g, s * in[perm[2]] / g};
            bool ok = false;
            if (zeros == 2) ok = t[0] > 0 && t[1] == 0 && t[2] == 0;
            else if (zeros == 1) ok = t[0] > 0 && t[1] != 0 && t[2] == 0;
            else ok = t[0] >= t[1] && t[1] > 0 && t[1] >= t[2];
            if (ok && (!found || t > best)) {
                best = t;
                found = true;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    DeltaClass d;
    d.canonical = best;
    d.was_canonical = (best == in);
    int a = best[0], b = best[1], c = best[2];
    if (zeros == 2) d.tag = 1;
    else if (zeros == 1) d.tag = (b == a) ? 2 : (b == -a) ? 3 : 4;
    else if (a > b && b > c && c == -(a - b)) d.tag = 5;
    else if (a > b && b > c && c == (a - b)) d.tag = 6;
    else if (c != (a - b) && c != -(a - b) && c == -(a + b)) d.tag = 7;
    else d.tag = 8;
    return d;
}

// --- isotropy ---

std::vector<Matrix> isotropy_algebra(const Form& t)
{
    if (t.degree() != 3) throw std::invalid_argument("isotropy_algebra expects a 3-form");
    const auto& b = u3_basis();
    std::vector<Vec> cols;
    for (const auto& a : b) cols.push_back(act(a, t).vec());
    auto ker = nullspace(Matrix::from_columns(cols, 20));
    std::vector<Matrix> out;
    for (const auto& v : ker) out.push_back(combine(b, v));
    return out;
}

std::vector<Matrix> span_basis(const std::vector<Matrix>& mats)
{
    std::vector<Vec> vs;
    for (const auto& m : mats) vs.push_back(flatten(m));
    std::vector<Matrix> out;
    for (int idx : independent_subset(vs)) out.push_back(mats[idx]);
    return out;
}

bool in_span(const std::vector<Matrix>& basis, const Matrix& m)
{
    if (m.is_zero()) return true;
    if (basis.empty()) return false;
    std::vector<Vec> vs;
    for (const auto& b : basis) vs.push_back(flatten(b));
    return solve(Matrix::from_columns(vs, static_cast<int>(vs[0].size())), flatten(m)).has_value();
}

bool bracket_closed(const std::vector<Matrix>& basis)
{
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (!in_span(basis, commutator(basis[i], basis[j]))) return false;
        }
    }
    return true;
}

std::vector<Matrix> lie_closure(const std::vector<Matrix>& generators)
{
    std::vector<Matrix> basis = span_basis(generators);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t n = basis.size();
        for (std::size_t i = 0; i < n && !grew; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                Matrix c = commutator(basis[i], basis[j]);
                if (!in_span(basis, c)) {
                    basis.push_back(c);
                    grew = true;
                    break;
                }
            }
        }
    }
    return basis;
}

AlgebraLabel identify_algebra(const std::vector<Matrix>& basis_in)
{
    std::vector<Matrix> basis = span_basis(basis_in);
    if (!bracket_closed(basis)) throw std::invalid_argument("not closed under the bracket");
    AlgebraLabel lab;
    const int n = static_cast<int>(basis.size());
    lab.dim = n;
    std::vector<Matrix> brackets;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) brackets.push_back(commutator(basis[i], basis[j]));
    }
    lab.derived_dim = static_cast<int>(span_basis(brackets).size());
    Matrix cen(n * kDim * kDim, std::max(n, 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Vec v = flatten(commutator(basis[i], basis[j]));
            for (std::size_t r = 0; r < v.size(); ++r) cen(j * kDim * kDim + static_cast<int>(r), i) = v[r];
        }
    }
    auto center = n ? nullspace(cen) : std::vector<Vec>{};
    lab.center_dim = static_cast<int>(center.size());
    Matrix stack(std::max(n, 1) * kDim, kDim);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < kDim; ++i) {
            for (int j = 0; j < kDim; ++j) stack(k * kDim + i, j) = basis[k](i, j);
        }
    }
    lab.trivial_dim = kDim - (n ? rank(stack) : 0);
    if (lab.center_dim == 1) {
        Matrix z = combine(basis, center[0]);
        Eigen::Matrix3cd c;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) c(a, b) = {z(2 * a, 2 * b).to_double(), z(2 * a + 1, 2 * b).to_double()};
        }
        Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(c);
        for (int k = 0; k < 3; ++k) lab.center_weights.push_back(es.eigenvalues()(k).imag());
        std::sort(lab.center_weights.begin(), lab.center_weights.end());
    }
    if (n == 0) lab.tag = "trivial";
    else if (n == 8 && lab.derived_dim == 8) lab.tag = "su3";
    else if (n == 4 && lab.derived_dim == 3 && lab.center_dim == 1) {
        // weights (w, w, 2kw) on C^3
        const auto& w = lab.center_weights;
        const double eps = 1e-7;
        lab.tag = "unknown";
        for (int rep = 0; rep < 3; ++rep) {
            int a = (rep + 1) % 3, b = (rep + 2) % 3;
            if (std::fabs(w[a] - w[b]) < eps && std::fabs(w[a]) > eps) {
                double ratio = w[rep] / w[a];
                for (int k : {-1, 0, 1}) {
                    if (std::fabs(ratio - 2.0 * k) < eps) lab.tag = "u2_" + std::to_string(k);
                }
            }
        }
    } else if (n == 3 && lab.derived_dim == 3) {
        lab.tag = lab.trivial_dim == 2 ? "su2" : lab.trivial_dim == 0 ? "so3" : "unknown";
    } else if (n == 2 && lab.derived_dim == 0) lab.tag = "t2";
    else if (n == 1) lab.tag = "t1";
    else lab.tag = "unknown";
    return lab;
}

// --- twist ---

Su2Twist su2_twist(const Form& t, const std::array<Scalar, 3>& q)
{
    Scalar qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    if (qq != Scalar(1)) throw std::invalid_argument("twist parameter is not a unit vector");
    Form e5 = basis_one_form(4);
    Form b1 = wedge(Form::mono("14") + Form::mono("23"), e5);
    Form b5 = wedge(Form::mono("12") + Form::mono("34"), e5);
    auto c = solve(Matrix::from_columns({b1.vec(), b5.vec()}, 20), t.vec());
    if (!c) throw std::invalid_argument("torsion is not of the form a1 (e14+e23)∧e5 + a5 (e12+e34)∧e5");
    Su2Twist out;
    Form omh = (Form::mono("14") + Form::mono("23")) * q[0] + (Form::mono("13") - Form::mono("24")) * q[1] +
               (Form::mono("12") + Form::mono("34")) * q[2];
    out.new_omega = omh + Form::mono("56");
    out.new_j = endo_of_form(out.new_omega);
    out.components = project_l3(t, out.new_omega);
    out.alpha1 = sqrt(out.components.n2);
    out.alpha5 = sqrt(out.components.n6 * Scalar::frac(1, 2));
    return out;
}

}  // namespace pt
