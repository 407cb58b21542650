#include "pt/invariants.hpp"

#include "pt/unitary.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace pt {

namespace {

// --- weight method ---

struct Module {
    std::vector<Matrix> raise;           // E_01, E_12 on W
    std::vector<std::array<int, 3>> wt;  // weight of each basis vector
};

Matrix gl3_generator(int p, int q)
{
    Matrix g(kDim, kDim);
    g(p, q) += Scalar(1);
    g(3 + q, 3 + p) -= Scalar(1);
    return g;
}

Form u(int i) { return basis_one_form(i); }

Form u3(int a, int b, int c) { return wedge(wedge(u(a), u(b)), u(c)); }

const Module& module_w()
{
    static const Module mod = [] {
        std::vector<Form> w;
        w.push_back(u3(0, 1, 2));
        w.push_back(u3(3, 4, 5));
        for (int c = 0; c < 3; ++c) {
            int a = (c + 1) % 3, b = (c + 2) % 3;
            w.push_back(u3(std::min(a, b), std::max(a, b), 3 + c));
            w.push_back(u3(3 + std::min(a, b), 3 + std::max(a, b), c));
        }
        for (int k = 0; k < 3; ++k) {
            int j = (k + 1) % 3, l = (k + 2) % 3;
            w.push_back(u3(k, j, 3 + j) - u3(k, l, 3 + l));
            w.push_back(u3(3 + k, 3 + j, j) - u3(3 + k, 3 + l, l));
        }
        std::vector<Vec> cols;
        for (const auto& f : w) cols.push_back(f.vec());
        Matrix basis = Matrix::from_columns(cols, 20);
        auto rep = [&](const Matrix& g) {
            std::vector<Vec> img;
            for (const auto& f : w) img.push_back(act(g, f).vec());
            auto x = solve(basis, Matrix::from_columns(img, 20));
            if (!x) throw std::logic_error("invariant module is not gl(3)-stable");
            return *x;
        };
        Module m;
        m.raise = {rep(gl3_generator(0, 1)), rep(gl3_generator(1, 2))};
        std::array<Matrix, 3> h = {rep(gl3_generator(0, 0)), rep(gl3_generator(1, 1)), rep(gl3_generator(2, 2))};
        for (int i = 0; i < 14; ++i) {
            std::array<int, 3> wt{};
            for (int p = 0; p < 3; ++p) wt[p] = static_cast<int>(h[p](i, i).rational().get_num().get_si());
            m.wt.push_back(wt);
        }
        return m;
    }();
    return mod;
}

using Monomial = std::vector<int>;  // sorted variable indices

void enumerate(int d, int start, Monomial& cur, std::vector<Monomial>& out)
{
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < 14; ++i) {
        cur.push_back(i);
        enumerate(d - 1, i, cur, out);
        cur.pop_back();
    }
}

std::array<int, 3> weight_of(const Monomial& m)
{
    const auto& mod = module_w();
    std::array<int, 3> w{};
    for (int i : m) {
        for (int p = 0; p < 3; ++p) w[p] += mod.wt[i][p];
    }
    return w;
}

}  // namespace

std::vector<DegreeDim> invariant_poly_dims(int max_deg, Backend b, bool allow_large)
{
    if (max_deg > 4 && !allow_large) throw std::invalid_argument("max_deg above 4 needs the override flag");
    const auto& mod = module_w();
    std::vector<DegreeDim> out;
    for (int d = 1; d <= max_deg; ++d) {
        std::vector<Monomial> all;
        Monomial cur;
        enumerate(d, 0, cur, all);
        std::vector<Monomial> zero;
        std::map<Monomial, int> target_index[2];
        std::vector<Monomial> targets[2];
        for (const auto& m : all) {
            auto w = weight_of(m);
            if (w == std::array<int, 3>{0, 0, 0}) zero.push_back(m);
        }
        if (zero.empty()) {
            out.push_back({d, 0});
            continue;
        }
        // rows: images under E_01 and E_12
        std::map<std::pair<int, int>, Scalar> entries;
        for (int g = 0; g < 2; ++g) {
            const Matrix& rho = mod.raise[g];
            for (std::size_t c = 0; c < zero.size(); ++c) {
                const Monomial& m = zero[c];
                for (std::size_t k = 0; k < m.size(); ++k) {
                    if (k > 0 && m[k] == m[k - 1]) continue;
                    int mult = static_cast<int>(std::count(m.begin(), m.end(), m[k]));
                    for (int j = 0; j < 14; ++j) {
                        const Scalar& coef = rho(j, m[k]);
                        if (coef.is_zero()) continue;
                        Monomial t = m;
                        t.erase(t.begin() + static_cast<long>(k));
                        t.insert(std::upper_bound(t.begin(), t.end(), j), j);
                        auto it = target_index[g].find(t);
                        int r;
                        if (it == target_index[g].end()) {
                            r = static_cast<int>(targets[g].size());
                            target_index[g][t] = r;
                            targets[g].push_back(t);
                        } else {
                            r = it->second;
                        }
                        entries[{(g << 20) | r, static_cast<int>(c)}] += coef * Scalar(mult);
                    }
                }
            }
        }
        int rows = static_cast<int>(targets[0].size() + targets[1].size());
        Matrix mat(std::max(rows, 1), static_cast<int>(zero.size()));
        for (const auto& [key, v] : entries) {
            int g = key.first >> 20;
            int r = key.first & ((1 << 20) - 1);
            int row = g == 0 ? r : static_cast<int>(targets[0].size()) + r;
            mat(row, key.second) = convert(v, b);
        }
        out.push_back({d, static_cast<int>(zero.size()) - rank(mat)});
    }
    return out;
}

// --- contraction invariants ---

namespace {

Form sigma2(const Form& a, const Form& b)
{
    Form out(4);
    for (int i = 0; i < kDim; ++i) {
        Form x = contract_basis(i, a);
        Form y = contract_basis(i, b);
        out += wedge(x, y) + wedge(y, x);
    }
    return out * Scalar::frac(1, 4);
}

Matrix quad(const Form& a, const Form& b)
{
    Matrix q(kDim, kDim);
    for (int k = 0; k < kDim; ++k) {
        Form ak = contract_basis(k, a);
        for (int l = 0; l < kDim; ++l) q(k, l) = inner(ak, contract_basis(l, b));
    }
    return q;
}

struct Parts {
    std::array<Form, 4> f;  // T2, J T2, T12, J T12
    std::array<std::string, 4> n{"T2", "JT2", "T12", "JT12"};
};

Parts parts_of(const Form& t)
{
    auto c = project_l3(t);
    Matrix j = complex_structure();
    Parts p;
    p.f = {c.t2, act(j, c.t2), c.t12, act(j, c.t12)};
    return p;
}

Scalar frob(const Matrix& a, const Matrix& b)
{
    Scalar s;
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            if (!a(i, k).is_zero() && !b(i, k).is_zero()) s += a(i, k) * b(i, k);
        }
    }
    return s;
}

// Candidate quartic contractions: <sigma(A,B), sigma(C,D)> and <Q(A,B), Q(C,D)>,
// plus products of the quadratic invariants.
struct Candidates {
    std::vector<std::string> names;
    std::vector<std::array<int, 5>> spec;  // kind, a, b, c, d
};

const Candidates& candidates()
{
    static const Candidates cand = [] {
        Candidates c;
        const std::array<std::string, 4> n{"T2", "JT2", "T12", "JT12"};
        c.names.push_back("|T2|^4");
        c.spec.push_back({0, 0, 0, 0, 0});
        c.names.push_back("|T2|^2|T12|^2");
        c.spec.push_back({0, 0, 0, 2, 2});
        c.names.push_back("|T12|^4");
        c.spec.push_back({0, 2, 2, 2, 2});
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < 4; ++a) {
            for (int b = a; b < 4; ++b) pairs.emplace_back(a, b);
        }
        for (int kind = 1; kind <= 2; ++kind) {
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                for (std::size_t q = p; q < pairs.size(); ++q) {
                    auto [a, b] = pairs[p];
                    auto [cc, d] = pairs[q];
                    std::string fn = kind == 1 ? "sigma" : "Q";
                    c.names.push_back("<" + fn + "(" + n[a] + "," + n[b] + ")," + fn + "(" + n[cc] + "," + n[d] + ")>");
                    c.spec.push_back({kind, a, b, cc, d});
                }
            }
        }
        return c;
    }();
    return cand;
}

Scalar eval_candidate(const Parts& p, const std::array<int, 5>& s)
{
    if (s[0] == 0) return norm2(p.f[s[1]]) * norm2(p.f[s[3]]);
    if (s[0] == 1) return inner(sigma2(p.f[s[1]], p.f[s[2]]), sigma2(p.f[s[3]], p.f[s[4]]));
    return frob(quad(p.f[s[1]], p.f[s[2]]), quad(p.f[s[3]], p.f[s[4]]));
}

Form random_w(std::mt19937& rng)
{
    std::uniform_int_distribution<int> dist(-4, 4);
    Form t(3);
    for (const auto& f : l3_basis(2)) t += f * Scalar(dist(rng));
    for (const auto& f : l3_basis(12)) t += f * Scalar(dist(rng));
    return t;
}

}  // namespace

const std::vector<std::string>& quartic_candidate_names() { return candidates().names; }

const std::vector<int>& quartic_basis_indices()
{
    static const std::vector<int> idx = [] {
        std::mt19937 rng(20240611u);
        const auto& c = candidates();
        const int points = 24;
        std::vector<Parts> ps;
        for (int k = 0; k < points; ++k) ps.push_back(parts_of(random_w(rng)));
        std::vector<Vec> rows;
        for (const auto& s : c.spec) {
            Vec v;
            for (const auto& p : ps) v.push_back(eval_candidate(p, s));
            rows.push_back(v);
        }
        return independent_subset(rows);
    }();
    return idx;
}

std::vector<OrbitInvariant> orbit_invariants(const Form& t)
{
    Parts p = parts_of(t);
    std::vector<OrbitInvariant> out;
    out.push_back({"|T2|^2", 2, norm2(p.f[0])});
    out.push_back({"|T12|^2", 2, norm2(p.f[2])});
    const auto& c = candidates();
    for (int i : quartic_basis_indices()) out.push_back({c.names[i], 4, eval_candidate(p, c.spec[i])});
    return out;
}

}  // namespace pt
