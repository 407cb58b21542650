#include "pt/lie.hpp"

#include "pt/orbits.hpp"
#include "pt/unitary.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace pt {

// --- algebra ---

LieAlgebraData::LieAlgebraData(int dim) : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim) {}

void LieAlgebraData::set(int i, int j, int k, const Scalar& value)
{
    c(i, j, k) = value;
    c(j, i, k) = -value;
}

Vec LieAlgebraData::bracket(const Vec& x, const Vec& y) const
{
    Vec out(dim_);
    for (int i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < dim_; ++j) {
            if (y[j].is_zero()) continue;
            Scalar xy = x[i] * y[j];
            for (int k = 0; k < dim_; ++k) {
                const Scalar& s = c(i, j, k);
                if (!s.is_zero()) out[k] += xy * s;
            }
        }
    }
    return out;
}

Matrix LieAlgebraData::ad(const Vec& x) const
{
    Matrix a(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
        Vec e(dim_);
        e[j] = Scalar(1);
        Vec b = bracket(x, e);
        for (int k = 0; k < dim_; ++k) a(k, j) = b[k];
    }
    return a;
}

Matrix LieAlgebraData::ad(int i) const
{
    Matrix a(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
        for (int k = 0; k < dim_; ++k) a(k, j) = c(i, j, k);
    }
    return a;
}

bool LieAlgebraData::antisymmetric() const
{
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            for (int k = 0; k < dim_; ++k) {
                if (!(c(i, j, k) + c(j, i, k)).is_zero()) return false;
            }
        }
    }
    return true;
}

bool LieAlgebraData::all_exact() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.exact(); });
}

LieAlgebraData LieAlgebraData::change_basis(const Matrix& p) const
{
    const int n = dim_;
    std::vector<Vec> cols;
    for (int a = 0; a < n; ++a) cols.push_back(p.col(a));
    std::vector<Vec> images;
    std::vector<std::pair<int, int>> idx;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            images.push_back(bracket(cols[a], cols[b]));
            idx.emplace_back(a, b);
        }
    }
    LieAlgebraData out(n);
    if (images.empty()) return out;
    auto x = solve(p, Matrix::from_columns(images, n));
    if (!x) throw std::invalid_argument("change of basis matrix is singular");
    for (std::size_t t = 0; t < idx.size(); ++t) {
        for (int k = 0; k < n; ++k) out.set(idx[t].first, idx[t].second, k, (*x)(k, static_cast<int>(t)));
    }
    return out;
}

bool operator==(const LieAlgebraData& a, const LieAlgebraData& b)
{
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            for (int k = 0; k < a.dim(); ++k) {
                if (a.c(i, j, k) != b.c(i, j, k)) return false;
            }
        }
    }
    return true;
}

JacobiResult jacobi_check(const LieAlgebraData& l, double tol)
{
    const int n = l.dim();
    JacobiResult out;
    out.worst = Scalar(0);
    bool exact = l.all_exact();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                for (int r = 0; r < n; ++r) {
                    Scalar s;
                    for (int q = 0; q < n; ++q) {
                        s += l.c(i, j, q) * l.c(q, k, r) + l.c(j, k, q) * l.c(q, i, r) + l.c(k, i, q) * l.c(q, j, r);
                    }
                    if (abs(s) > out.worst) out.worst = abs(s);
                }
            }
        }
    }
    out.ok = exact ? out.worst.is_zero() : out.worst.to_double() <= tol;
    return out;
}

StructureText parse_structure_constants(const std::string& text)
{
    static const std::regex dim_re(R"(^\s*dim\s*=\s*(\d+)\s*$)");
    static const std::regex c_re(R"(^\s*c\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.+?)\s*$)");
    static const std::regex g_re(R"(^\s*g\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.+?)\s*$)");
    struct CEntry {
        int i, j, k;
        Scalar v;
    };
    struct GEntry {
        int i, j;
        Scalar v;
    };
    std::vector<CEntry> cs;
    std::vector<GEntry> gs;
    int dim = 0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::smatch m;
        if (std::regex_match(line, m, dim_re)) {
            dim = std::stoi(m[1]);
        } else if (std::regex_match(line, m, c_re)) {
            cs.push_back({std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), parse_scalar(m[4])});
        } else if (std::regex_match(line, m, g_re)) {
            gs.push_back({std::stoi(m[1]), std::stoi(m[2]), parse_scalar(m[3])});
        } else {
            throw parse_error("line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
        }
    }
    int top = dim;
    for (const auto& e : cs) top = std::max({top, e.i, e.j, e.k});
    for (const auto& e : gs) top = std::max({top, e.i, e.j});
    if (dim == 0) dim = top;
    if (top > dim) throw parse_error("index exceeds the declared dimension");
    StructureText out;
    out.algebra = LieAlgebraData(dim);
    for (const auto& e : cs) {
        if (e.i < 1 || e.j < 1 || e.k < 1) throw parse_error("indices are 1-based");
        if (e.i == e.j) {
            if (!e.v.is_zero()) throw parse_error("c[i,i,k] must vanish");
            continue;
        }
        out.algebra.set(e.i - 1, e.j - 1, e.k - 1, e.v);
    }
    if (!gs.empty()) {
        Matrix g(dim, dim);
        for (const auto& e : gs) {
            g(e.i - 1, e.j - 1) = e.v;
            g(e.j - 1, e.i - 1) = e.v;
        }
        out.metric = g;
    }
    return out;
}

std::string format_structure_constants(const LieAlgebraData& l, const std::optional<Matrix>& metric)
{
    std::ostringstream os;
    os << "dim = " << l.dim() << "\n";
    for (int i = 0; i < l.dim(); ++i) {
        for (int j = i + 1; j < l.dim(); ++j) {
            for (int k = 0; k < l.dim(); ++k) {
                if (!l.c(i, j, k).is_zero()) os << "c[" << i + 1 << "," << j + 1 << "," << k + 1 << "] = " << l.c(i, j, k) << "\n";
            }
        }
    }
    if (metric) {
        for (int i = 0; i < metric->rows(); ++i) {
            for (int j = i; j < metric->cols(); ++j) {
                if (!(*metric)(i, j).is_zero()) os << "g[" << i + 1 << "," << j + 1 << "] = " << (*metric)(i, j) << "\n";
            }
        }
    }
    return os.str();
}

// --- structure ---

namespace {

std::vector<Vec> reduce(const std::vector<Vec>& vs)
{
    std::vector<Vec> out;
    for (int i : independent_subset(vs)) out.push_back(vs[i]);
    return out;
}

std::vector<Vec> unit_basis(int n)
{
    std::vector<Vec> out;
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = Scalar(1);
        out.push_back(e);
    }
    return out;
}

std::vector<Vec> bracket_span(const LieAlgebraData& l, const std::vector<Vec>& a, const std::vector<Vec>& b)
{
    std::vector<Vec> out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            Vec z = l.bracket(x, y);
            if (!is_zero(z)) out.push_back(z);
        }
    }
    return reduce(out);
}

}  // namespace

std::vector<Vec> derived_algebra(const LieAlgebraData& l, const std::vector<Vec>& sub) { return bracket_span(l, sub, sub); }

std::vector<Vec> center(const LieAlgebraData& l)
{
    const int n = l.dim();
    if (n == 0) return {};
    Matrix m(n * n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) m(i * n + k, j) = l.c(i, j, k);
        }
    }
    return nullspace(m);
}

Matrix killing_form(const LieAlgebraData& l)
{
    const int n = l.dim();
    std::vector<Matrix> ads;
    for (int i = 0; i < n; ++i) ads.push_back(l.ad(i));
    Matrix k(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            k(i, j) = (ads[i] * ads[j]).trace();
            k(j, i) = k(i, j);
        }
    }
    return k;
}

StructuralInvariants structural_invariants(const LieAlgebraData& l)
{
    StructuralInvariants s;
    s.dim = l.dim();
    std::vector<Vec> cur = unit_basis(l.dim());
    while (true) {
        std::vector<Vec> next = derived_algebra(l, cur);
        s.derived_series.push_back(static_cast<int>(next.size()));
        if (next.size() == cur.size() || next.empty()) break;
        cur = next;
    }
    const std::vector<Vec> all = unit_basis(l.dim());
    cur = all;
    while (true) {
        std::vector<Vec> next = bracket_span(l, all, cur);
        s.lower_central_series.push_back(static_cast<int>(next.size()));
        if (next.size() == cur.size() || next.empty()) break;
        cur = next;
    }
    s.center_dim = static_cast<int>(center(l).size());
    s.killing = inertia(killing_form(l));
    return s;
}

std::string compare_algebras(const LieAlgebraData& a, const LieAlgebraData& b, const std::vector<Matrix>& alignments)
{
    if (a.dim() != b.dim()) return "not isomorphic";
    if (a == b) return "isomorphic";
    if (!(structural_invariants(a) == structural_invariants(b))) return "not isomorphic";
    for (const auto& p : alignments) {
        if (p.rows() != a.dim() || p.cols() != a.dim() || rank(p) != a.dim()) continue;
        if (a.change_basis(p) == b) return "isomorphic";
    }
    return "undetermined";
}

// --- homogeneous spaces ---

Vec FramedSpace::bracket_m(int i, int j) const
{
    Vec v(k());
    for (int r = 0; r < k(); ++r) v[r] = algebra.c(nh + i, nh + j, nh + r);
    return v;
}

Vec FramedSpace::bracket_h(int i, int j) const
{
    Vec v(nh);
    for (int a = 0; a < nh; ++a) v[a] = algebra.c(nh + i, nh + j, a);
    return v;
}

Matrix FramedSpace::ad_m(int a) const
{
    Matrix m(k(), k());
    for (int j = 0; j < k(); ++j) {
        for (int l = 0; l < k(); ++l) m(l, j) = algebra.c(a, nh + j, nh + l);
    }
    return m;
}

namespace {

Scalar gdot(const Matrix& g, const Vec& a, const Vec& b) { return dot(a, g * b); }

std::vector<Vec> adapted_frame(const Matrix& g, const Matrix& j)
{
    const int k = g.rows();
    std::vector<Vec> frame;
    for (int c = 0; c < k && static_cast<int>(frame.size()) < k; ++c) {
        Vec v(k);
        v[c] = Scalar(1);
        for (const auto& f : frame) v = axpy(-gdot(g, v, f), f, v);
        Scalar n2 = gdot(g, v, v);
        if (n2.is_zero(1e-10)) continue;
        Scalar len = sqrt(n2);
        for (auto& x : v) x /= len;
        frame.push_back(v);
        frame.push_back(j * v);
    }
    return frame;
}

void check_frame(const Matrix& g, const Matrix& j, const std::vector<Vec>& frame)
{
    const int k = g.rows();
    if (static_cast<int>(frame.size()) != k) throw std::invalid_argument("frame has the wrong length");
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            Scalar v = gdot(g, frame[a], frame[b]);
            if (!(v - Scalar(a == b ? 1 : 0)).is_zero(1e-9)) throw std::invalid_argument("frame is not orthonormal");
        }
    }
    for (int a = 0; a + 1 < k; a += 2) {
        Vec d = axpy(Scalar(-1), frame[a + 1], j * frame[a]);
        for (const auto& x : d) {
            if (!x.is_zero(1e-9)) throw std::invalid_argument("frame is not adapted: J e_{2i-1} != e_{2i}");
        }
    }
}

}  // namespace

FramedSpace frame_model(const ReductiveModel& mdl)
{
    const int n = mdl.algebra.dim();
    const int nh = static_cast<int>(mdl.h.size());
    const int k = static_cast<int>(mdl.m.size());
    if (nh + k != n) throw std::invalid_argument("h and m do not span the algebra");
    if (mdl.gm.rows() != k || mdl.jm.rows() != k) throw std::invalid_argument("metric or J has the wrong size");
    Inertia in = inertia(mdl.gm);
    if (in.pos != k) throw std::invalid_argument("metric on m is not positive definite");
    if (!(mdl.jm * mdl.jm + Matrix::identity(k)).is_zero()) {
        bool small = true;
        Matrix d = mdl.jm * mdl.jm + Matrix::identity(k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) small = small && d(a, b).is_zero(1e-9);
        if (!small) throw std::invalid_argument("J does not square to -1");
    }
    std::vector<Vec> frame = mdl.frame ? *mdl.frame : adapted_frame(mdl.gm, mdl.jm);
    check_frame(mdl.gm, mdl.jm, frame);

    std::vector<Vec> cols = mdl.h;
    for (const auto& f : frame) {
        Vec v(n);
        for (int b = 0; b < k; ++b) v = axpy(f[b], mdl.m[b], v);
        cols.push_back(v);
    }
    Matrix p = Matrix::from_columns(cols, n);
    FramedSpace s;
    s.algebra = mdl.algebra.change_basis(p);
    s.nh = nh;
    s.g = Matrix::identity(k);
    s.frame = frame;
    for (int a = 0; a < nh; ++a) {
        for (int b = 0; b < n; ++b) {
            // [h, m] in m and [h, h] in h
            const int lo = b >= nh ? 0 : nh;
            const int hi = b >= nh ? nh : n;
            for (int c = lo; c < hi; ++c) {
                if (s.algebra.c(a, b, c).is_zero(1e-10)) continue;
                throw std::invalid_argument(b >= nh ? "decomposition is not reductive: [h, m] not in m" : "h is not a subalgebra");
            }
        }
    }
    return s;
}

FramedSpace lie_group_space(const LieAlgebraData& l, const Matrix& g)
{
    if (g.rows() != l.dim()) throw std::invalid_argument("metric has the wrong size");
    if (inertia(g).pos != l.dim()) throw std::invalid_argument("metric is not positive definite");
    FramedSpace s;
    s.algebra = l;
    s.nh = 0;
    s.g = g;
    return s;
}

namespace {

// T(e_i, e_j, e_k) for arbitrary distinct indices.
Scalar comp(const Form& f, std::vector<int> idx)
{
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b]) return Scalar(0);
            if (idx[a] > idx[b]) sign = -sign;
        }
    }
    unsigned mask = 0;
    for (int i : idx) mask |= 1u << i;
    Scalar v = f[mask_index(mask)];
    return sign > 0 ? v : -v;
}

CurvatureRecord record_from_endos(const std::vector<std::vector<Matrix>>& r, const Matrix& g)
{
    CurvatureRecord rec;
    const auto& pairs = degree_masks(2);
    auto split = [](unsigned m, int& i, int& j) {
        i = -1;
        for (int b = 0; b < kDim; ++b) {
            if (m & (1u << b)) {
                if (i < 0) i = b;
                else j = b;
            }
        }
    };
    for (int p = 0; p < 15; ++p) {
        int i, j;
        split(pairs[p], i, j);
        Matrix gr = g.transpose() * r[i][j];
        for (int q = 0; q < 15; ++q) {
            int k, l;
            split(pairs[q], k, l);
            rec.m(p, q) = gr(l, k);
        }
    }
    return rec;
}

}  // namespace

CanonicalData canonical_data(const FramedSpace& s)
{
    if (s.k() != kDim) throw std::invalid_argument("canonical_data needs a 6-dimensional m");
    CanonicalData out;
    out.space = s;
    const int k = s.k();
    std::vector<std::vector<Vec>> brm(k, std::vector<Vec>(k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) brm[i][j] = s.g * s.bracket_m(i, j);  // lowered
    }
    out.naturally_reductive = true;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            for (int l = 0; l < k; ++l) {
                if (!(brm[i][j][l] + brm[i][l][j]).is_zero(1e-10)) out.naturally_reductive = false;
            }
        }
    }
    Form t(3);
    const auto& ms = degree_masks(3);
    for (int idx = 0; idx < t.size(); ++idx) {
        int a[3], n = 0;
        for (int b = 0; b < kDim; ++b) {
            if (ms[idx] & (1u << b)) a[n++] = b;
        }
        t[idx] = -brm[a[0]][a[1]][a[2]];
    }
    out.torsion = t;
    std::vector<std::vector<Matrix>> r(k, std::vector<Matrix>(k, Matrix(k, k)));
    std::vector<Matrix> ads;
    for (int a = 0; a < s.nh; ++a) ads.push_back(s.ad_m(a));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            Vec h = s.bracket_h(i, j);
            Matrix m(k, k);
            for (int a = 0; a < s.nh; ++a) {
                if (!h[a].is_zero()) m -= ads[a] * h[a];
            }
            r[i][j] = m;
        }
    }
    out.curvature = record_from_endos(r, s.g);
    out.curvature.values = span_basis(ads);
    return out;
}

CanonicalData canonical_data(const ReductiveModel& m) { return canonical_data(frame_model(m)); }

Connection levi_civita(const FramedSpace& s)
{
    const int k = s.k();
    if (inertia(s.g).pos != k) throw std::invalid_argument("metric is degenerate");
    Matrix gi = inverse(s.g);
    Connection c;
    std::vector<std::vector<Vec>> brm(k, std::vector<Vec>(k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) brm[i][j] = s.bracket_m(i, j);
    }
    for (int i = 0; i < k; ++i) {
        Matrix lam(k, k);
        for (int j = 0; j < k; ++j) {
            Vec rhs(k);
            for (int z = 0; z < k; ++z) {
                Scalar a = dot(brm[z][i], s.g.col(j));
                Scalar b = dot(s.g.row(i), brm[z][j]);
                rhs[z] = (a + b) * Scalar::frac(1, 2);
            }
            Vec u = gi * rhs;
            for (int l = 0; l < k; ++l) lam(l, j) = brm[i][j][l] * Scalar::frac(1, 2) + u[l];
        }
        c.lam.push_back(lam);
    }
    return c;
}

Connection characteristic_connection(const FramedSpace& s, const Form& t)
{
    if (t.degree() != 3) throw std::invalid_argument("torsion must be a 3-form");
    if (!(s.g == Matrix::identity(s.k()))) throw std::invalid_argument("characteristic connection needs an orthonormal frame");
    Connection c = levi_civita(s);
    for (int i = 0; i < s.k(); ++i) {
        for (int j = 0; j < s.k(); ++j) {
            for (int l = 0; l < s.k(); ++l) {
                Scalar v = comp(t, {i, j, l});
                if (!v.is_zero()) c.lam[i](l, j) += v * Scalar::frac(1, 2);
            }
        }
    }
    return c;
}

Connection canonical_connection(const FramedSpace& s)
{
    Connection c;
    for (int i = 0; i < s.k(); ++i) c.lam.push_back(Matrix(s.k(), s.k()));
    return c;
}

CurvatureRecord curvature(const FramedSpace& s, const Connection& c)
{
    const int k = s.k();
    if (k != kDim) throw std::invalid_argument("curvature needs a 6-dimensional m");
    std::vector<Matrix> ads;
    for (int a = 0; a < s.nh; ++a) ads.push_back(s.ad_m(a));
    std::vector<std::vector<Matrix>> r(k, std::vector<Matrix>(k, Matrix(k, k)));
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            Matrix m = commutator(c.lam[i], c.lam[j]);
            Vec bm = s.bracket_m(i, j);
            for (int l = 0; l < k; ++l) {
                if (!bm[l].is_zero()) m -= c.lam[l] * bm[l];
            }
            Vec bh = s.bracket_h(i, j);
            for (int a = 0; a < s.nh; ++a) {
                if (!bh[a].is_zero()) m -= ads[a] * bh[a];
            }
            r[i][j] = m;
            r[j][i] = -m;
        }
    }
    return record_from_endos(r, s.g);
}

Form connection_torsion(const FramedSpace& s, const Connection& c)
{
    const int k = s.k();
    std::vector<Scalar> t(static_cast<std::size_t>(k) * k * k);
    auto at = [&](int i, int j, int l) -> Scalar& { return t[(static_cast<std::size_t>(i) * k + j) * k + l]; };
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            Vec v = axpy(Scalar(-1), c.lam[j].col(i), c.lam[i].col(j));
            v = axpy(Scalar(-1), s.bracket_m(i, j), v);
            Vec low = s.g * v;
            for (int l = 0; l < k; ++l) at(i, j, l) = low[l];
        }
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            for (int l = 0; l < k; ++l) {
                if (!(at(i, j, l) + at(i, l, j)).is_zero(1e-10)) throw std::invalid_argument("torsion is not totally skew-symmetric");
            }
        }
    }
    Form out(3);
    const auto& ms = degree_masks(3);
    for (int idx = 0; idx < out.size(); ++idx) {
        int a[3], n = 0;
        for (int b = 0; b < kDim; ++b) {
            if (ms[idx] & (1u << b)) a[n++] = b;
        }
        out[idx] = at(a[0], a[1], a[2]);
    }
    return out;
}

Form covariant_derivative(const Connection& c, int i, const Form& a) { return act(c.lam[i], a); }

bool is_parallel(const Connection& c, const Form& a)
{
    for (std::size_t i = 0; i < c.lam.size(); ++i) {
        Form d = covariant_derivative(c, static_cast<int>(i), a);
        if (d.all_exact() ? !d.is_zero() : norm2(d).to_double() > 1e-16) return false;
    }
    return true;
}

Matrix ricci(const CurvatureRecord& r) { return ricci_contraction(r); }

bool is_einstein(const Matrix& ric, double tol)
{
    const int n = ric.rows();
    Scalar c = ric.trace() / Scalar(n);
    Matrix d = ric - Matrix::identity(n) * c;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Scalar& x = d(i, j);
            if (x.exact() ? !x.is_zero() : !x.is_zero(tol)) return false;
        }
    }
    return true;
}

CurvatureRecord curvature_gap(const Form& t)
{
    CurvatureRecord rec;
    const Form s = sigma(t);
    const auto& pairs = degree_masks(2);
    std::vector<std::array<int, 2>> ij;
    for (unsigned m : pairs) {
        std::array<int, 2> a{};
        int n = 0;
        for (int b = 0; b < kDim; ++b) {
            if (m & (1u << b)) a[n++] = b;
        }
        ij.push_back(a);
    }
    for (int p = 0; p < 15; ++p) {
        for (int q = 0; q < 15; ++q) {
            Scalar v;
            for (int r = 0; r < kDim; ++r) v += comp(t, {ij[p][0], ij[p][1], r}) * comp(t, {ij[q][0], ij[q][1], r});
            v += comp(s, {ij[p][0], ij[p][1], ij[q][0], ij[q][1]});
            rec.m(p, q) = v * Scalar::frac(1, 4);
        }
    }
    return rec;
}

std::vector<Matrix> holonomy_algebra(const Form& t, const CurvatureRecord& r)
{
    std::vector<Matrix> hol = lie_closure(curvature_image(r));
    const Matrix j = complex_structure();
    for (const auto& a : hol) {
        bool ok = commutator(a, j).is_zero() && act(a, t).is_zero();
        if (!ok && !a.all_exact()) {
            Matrix c = commutator(a, j);
            Form d = act(a, t);
            ok = norm2(d).to_double() < 1e-16;
            for (int x = 0; x < kDim; ++x)
                for (int y = 0; y < kDim; ++y) ok = ok && c(x, y).is_zero(1e-8);
        }
        if (!ok) throw std::logic_error("holonomy algebra is not inside the isotropy algebra of T");
    }
    return hol;
}

LieAlgebraData nomizu(const Form& t, const CurvatureRecord& r, const std::optional<std::vector<Matrix>>& h_in)
{
    std::vector<Matrix> h = h_in ? span_basis(*h_in) : lie_closure(curvature_image(r));
    const int nh = static_cast<int>(h.size());
    const int n = nh + kDim;
    auto flat = [](const Matrix& m) {
        Vec v;
        for (int a = 0; a < m.rows(); ++a)
            for (int b = 0; b < m.cols(); ++b) v.push_back(m(a, b));
        return v;
    };
    std::vector<Vec> hv;
    for (const auto& a : h) hv.push_back(flat(a));
    Matrix hm = nh ? Matrix::from_columns(hv, kDim * kDim) : Matrix(kDim * kDim, 0);
    auto coords = [&](const Matrix& m, const char* what) {
        Vec v = flat(m);
        if (nh == 0) {
            if (!is_zero(v)) throw std::invalid_argument(std::string("not an infinitesimal model: ") + what + " not in h");
            return Vec{};
        }
        auto x = solve(hm, v);
        if (!x) throw std::invalid_argument(std::string("not an infinitesimal model: ") + what + " not in h");
        return *x;
    };
    LieAlgebraData l(n);
    for (int a = 0; a < nh; ++a) {
        for (int b = a + 1; b < nh; ++b) {
            Vec x = coords(commutator(h[a], h[b]), "[h, h]");
            for (int c = 0; c < nh; ++c) l.set(a, b, c, x[c]);
        }
        for (int j = 0; j < kDim; ++j) {
            for (int q = 0; q < kDim; ++q) l.set(a, nh + j, nh + q, h[a](q, j));
        }
    }
    for (int i = 0; i < kDim; ++i) {
        for (int j = i + 1; j < kDim; ++j) {
            Vec x = coords(-r.endo(i, j), "curvature value");
            for (int c = 0; c < nh; ++c) l.set(nh + i, nh + j, c, x[c]);
            for (int q = 0; q < kDim; ++q) l.set(nh + i, nh + j, nh + q, -comp(t, {i, j, q}));
        }
    }
    if (!jacobi_check(l).ok) throw std::invalid_argument("not an infinitesimal model: Jacobi identity fails");
    return l;
}

RoundTrip nomizu_round_trip(const FramedSpace& s)
{
    CanonicalData cd = canonical_data(s);
    std::vector<Matrix> ads;
    for (int a = 0; a < s.nh; ++a) ads.push_back(s.ad_m(a));
    RoundTrip out;
    out.algebra = nomizu(cd.torsion, cd.curvature, ads);
    out.jacobi = jacobi_check(out.algebra);
    const int n = s.algebra.dim();
    std::vector<Matrix> align;
    if (out.algebra.dim() == n) {
        // h_a goes to ad(h_a) written in the Nomizu h basis
        auto flat = [](const Matrix& m) {
            Vec v;
            for (int x = 0; x < m.rows(); ++x)
                for (int y = 0; y < m.cols(); ++y) v.push_back(m(x, y));
            return v;
        };
        std::vector<Vec> cols;
        for (const auto& b : span_basis(ads)) cols.push_back(flat(b));
        Matrix p = Matrix::identity(n);
        bool solved = true;
        if (s.nh > 0) {
            Matrix hm = Matrix::from_columns(cols, kDim * kDim);
            for (int a = 0; a < s.nh && solved; ++a) {
                auto c = solve(hm, flat(ads[a]));
                solved = c.has_value();
                for (int b = 0; solved && b < s.nh; ++b) p(b, a) = (*c)[b];
            }
        }
        if (solved) align.push_back(p);
    }
    out.verdict = compare_algebras(out.algebra, s.algebra, align);
    return out;
}

}  // namespace pt
