#include "pt/nil.hpp"

#include "pt/orbits.hpp"
#include "pt/unitary.hpp"

#include <cctype>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace pt {

// --- form expressions ---

namespace {

struct Token {
    enum Kind { num, ident, op, end } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            out.push_back({Token::num, s.substr(i, j - i)});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::ident, s.substr(i, j - i)});
            i = j;
        } else if (std::string("+-*/^()").find(c) != std::string::npos) {
            out.push_back({Token::op, std::string(1, c)});
            ++i;
        } else {
            throw parse_error(std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::end, ""});
    return out;
}

class ExprParser {
public:
    ExprParser(const std::string& text, const std::map<std::string, Scalar>& params) : toks_(tokenize(text)), params_(params) {}

    Form run()
    {
        Form f = expr();
        if (peek().kind != Token::end) throw parse_error("trailing input at '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool is_op(const char* o) const { return peek().kind == Token::op && peek().text == o; }
    Token take() { return toks_[pos_++]; }

    static Form scalar(const Scalar& s) { return Form::from_mask(0, s); }

    static Form add(const Form& a, const Form& b, int sign)
    {
        Form bb = sign < 0 ? -b : b;
        if (a.degree() == bb.degree()) return a + bb;
        if (a.is_zero()) return bb;
        if (bb.is_zero()) return a;
        throw parse_error("sum of forms of different degrees");
    }

    static Form mul(const Form& a, const Form& b)
    {
        if (a.degree() == 0) return b * a[0];
        if (b.degree() == 0) return a * b[0];
        return wedge(a, b);
    }

    Form expr()
    {
        Form acc(0);
        int sign = 1;
        if (is_op("+")) take();
        else if (is_op("-")) take(), sign = -1;
        acc = add(acc, term(), sign);
        while (is_op("+") || is_op("-")) {
            int s = take().text == "+" ? 1 : -1;
            acc = add(acc, term(), s);
        }
        return acc;
    }

    bool starts_primary() const
    {
        return peek().kind == Token::num || peek().kind == Token::ident || is_op("(");
    }

    Form term()
    {
        Form acc = unary();
        while (true) {
            if (is_op("*") || is_op("^")) {
                take();
                acc = mul(acc, unary());
            } else if (is_op("/")) {
                take();
                Form d = unary();
                if (d.degree() != 0) throw parse_error("division by a form");
                if (d[0].is_zero()) throw parse_error("division by zero");
                acc = acc * (Scalar(1) / d[0]);
            } else if (starts_primary()) {
                acc = mul(acc, unary());
            } else {
                return acc;
            }
        }
    }

    Form unary()
    {
        if (is_op("-")) {
            take();
            return -unary();
        }
        if (is_op("+")) {
            take();
            return unary();
        }
        return primary();
    }

    Form primary()
    {
        Token t = take();
        if (t.kind == Token::num) return scalar(Scalar(parse_rational(t.text)));
        if (t.kind == Token::op && t.text == "(") {
            Form f = expr();
            if (!is_op(")")) throw parse_error("missing ')'");
            take();
            return f;
        }
        if (t.kind == Token::ident) {
            static const std::regex mono(R"(e([1-6]+))");
            std::smatch m;
            if (std::regex_match(t.text, m, mono)) return Form::mono(m[1]);
            if (t.text == "sqrt") {
                if (!is_op("(")) throw parse_error("sqrt needs parentheses");
                take();
                Form f = expr();
                if (!is_op(")")) throw parse_error("missing ')'");
                take();
                if (f.degree() != 0) throw parse_error("sqrt of a form");
                return scalar(sqrt(f[0]));
            }
            auto it = params_.find(t.text);
            if (it == params_.end()) throw parse_error("unknown symbol '" + t.text + "'");
            return scalar(it->second);
        }
        throw parse_error("unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const std::map<std::string, Scalar>& params_;
};

// "12+34" -> "e12+e34", coefficients kept when followed by '*' or '/' or after '/'.
std::string short_entry_to_expr(const std::string& s)
{
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            std::string run = s.substr(i, j - i);
            std::size_t k = j;
            while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
            bool coeff = run.find('.') != std::string::npos || (k < s.size() && (s[k] == '*' || s[k] == '/')) ||
                         (!out.empty() && out.back() == '/');
            if (!coeff && run.size() == 2) out += "e" + run;
            else out += run;
            i = j;
        } else {
            out += s[i++];
        }
    }
    return out;
}

std::vector<int> indices(unsigned mask)
{
    std::vector<int> out;
    for (int b = 0; b < kDim; ++b) {
        if (mask & (1u << b)) out.push_back(b);
    }
    return out;
}

bool form_is_zero(const Form& f) { return f.all_exact() ? f.is_zero() : norm2(f).to_double() < 1e-16; }

}  // namespace

Form parse_form_expression(const std::string& text, const std::map<std::string, Scalar>& params, Backend b)
{
    ExprParser p(text, params);
    return convert(p.run(), b);
}

// --- structure equations ---

StructureEquations StructureEquations::parse(const std::string& text, const std::map<std::string, Scalar>& params, Backend b)
{
    StructureEquations s;
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r\n") + 1);
    auto set = [&](int i, const Form& f) {
        if (f.is_zero()) {
            s.de[i] = Form(2);
            return;
        }
        if (f.degree() != 2) throw parse_error("de" + std::to_string(i + 1) + " is not a 2-form");
        s.de[i] = f;
    };
    if (!trimmed.empty() && trimmed.front() == '(') {
        if (trimmed.back() != ')') throw parse_error("missing ')' in short form");
        std::string body = trimmed.substr(1, trimmed.size() - 2);
        std::vector<std::string> parts;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        if (parts.size() != kDim) throw parse_error("short form needs 6 entries");
        for (int i = 0; i < kDim; ++i) set(i, parse_form_expression(short_entry_to_expr(parts[i]), params, b));
        return s;
    }
    static const std::regex line_re(R"(^\s*de([1-6])\s*=\s*(.+?)\s*$)");
    std::string norm = text;
    for (auto& c : norm) {
        if (c == ';') c = '\n';
    }
    std::istringstream in(norm);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::smatch m;
        if (!std::regex_match(line, m, line_re)) throw parse_error("cannot parse '" + line + "'");
        set(std::stoi(m[1]) - 1, parse_form_expression(m[2], params, b));
    }
    return s;
}

StructureEquations StructureEquations::from_algebra(const LieAlgebraData& l)
{
    if (l.dim() != kDim) throw std::invalid_argument("structure equations need a 6-dimensional algebra");
    StructureEquations s;
    const auto& ms = degree_masks(2);
    for (int k = 0; k < kDim; ++k) {
        for (int p = 0; p < 15; ++p) {
            auto ij = indices(ms[p]);
            s.de[k][p] = -l.c(ij[0], ij[1], k);
        }
    }
    return s;
}

LieAlgebraData StructureEquations::algebra() const
{
    LieAlgebraData l(kDim);
    const auto& ms = degree_masks(2);
    for (int k = 0; k < kDim; ++k) {
        for (int p = 0; p < 15; ++p) {
            auto ij = indices(ms[p]);
            l.set(ij[0], ij[1], k, -de[k][p]);
        }
    }
    return l;
}

std::string StructureEquations::short_form() const
{
    std::string out = "(";
    for (int i = 0; i < kDim; ++i) {
        if (i) out += ",";
        if (de[i].is_zero()) {
            out += "0";
            continue;
        }
        std::string entry;
        const auto& ms = degree_masks(2);
        for (int p = 0; p < 15; ++p) {
            const Scalar& c = de[i][p];
            if (c.is_zero()) continue;
            std::string cs = c.str();
            bool neg = c.sign() < 0;
            if (neg) cs = (-c).str();
            if (!entry.empty() || neg) entry += neg ? "-" : "+";
            if (cs != "1") entry += (cs.find_first_of("+-*") != std::string::npos ? "(" + cs + ")" : cs) + "*";
            entry += mask_label(ms[p]);
        }
        out += entry;
    }
    return out + ")";
}

bool StructureEquations::nilpotent_filtration() const
{
    const auto& ms = degree_masks(2);
    for (int i = 0; i < kDim; ++i) {
        for (int p = 0; p < 15; ++p) {
            if (!de[i][p].is_zero() && (ms[p] >> i) != 0) return false;
        }
    }
    return true;
}

StructureEquations projected_equations(const FramedSpace& sp)
{
    if (sp.k() != kDim) throw std::invalid_argument("structure equations need a 6-dimensional m");
    StructureEquations s;
    const auto& ms = degree_masks(2);
    for (int p = 0; p < 15; ++p) {
        auto ij = indices(ms[p]);
        Vec b = sp.bracket_m(ij[0], ij[1]);
        for (int k = 0; k < kDim; ++k) s.de[k][p] = -b[k];
    }
    return s;
}

Form exterior_d(const StructureEquations& s, const Form& a)
{
    const int k = a.degree();
    Form out(k + 1);
    if (k >= kDim) return out;
    const auto& ms = degree_masks(k);
    for (int idx = 0; idx < a.size(); ++idx) {
        if (a[idx].is_zero()) continue;
        auto ix = indices(ms[idx]);
        for (int r = 0; r < k; ++r) {
            Form left = Form::from_mask(0, (r % 2) ? Scalar(-1) : Scalar(1));
            for (int q = 0; q < r; ++q) left = wedge(left, basis_one_form(ix[q]));
            Form term = wedge(left, s.de[ix[r]]);
            for (int q = r + 1; q < k; ++q) term = wedge(term, basis_one_form(ix[q]));
            out += term * a[idx];
        }
    }
    return out;
}

bool d_squared_zero(const StructureEquations& s)
{
    for (int i = 0; i < kDim; ++i) {
        if (!form_is_zero(exterior_d(s, s.de[i]))) return false;
    }
    return true;
}

Matrix d_matrix(const StructureEquations& s, int k)
{
    const int rows = k + 1 <= kDim ? binomial(kDim, k + 1) : 0;
    const int cols = binomial(kDim, k);
    Matrix m(std::max(rows, 1), cols);
    if (rows == 0) return m;
    const auto& ms = degree_masks(k);
    for (int c = 0; c < cols; ++c) {
        Form d = exterior_d(s, Form::from_mask(ms[c]));
        for (int r = 0; r < rows; ++r) m(r, c) = d[r];
    }
    return m;
}

int ce_betti(const StructureEquations& s, int k)
{
    if (k < 0 || k > kDim) throw std::invalid_argument("degree out of range");
    if (!d_squared_zero(s)) throw std::invalid_argument("structure equations violate d^2 = 0");
    int rk_out = k < kDim ? rank(d_matrix(s, k)) : 0;
    int rk_in = k > 0 ? rank(d_matrix(s, k - 1)) : 0;
    return binomial(kDim, k) - rk_out - rk_in;
}

std::array<int, 7> ce_betti_numbers(const StructureEquations& s)
{
    if (!d_squared_zero(s)) throw std::invalid_argument("structure equations violate d^2 = 0");
    std::array<int, 8> rk{};
    for (int k = 0; k < kDim; ++k) rk[k + 1] = rank(d_matrix(s, k));
    std::array<int, 7> b{};
    for (int k = 0; k <= kDim; ++k) b[k] = binomial(kDim, k) - rk[k + 1] - rk[k];
    return b;
}

// --- Nijenhuis tensor ---

NijenhuisResult nijenhuis(const FramedSpace& s, const Matrix& j)
{
    const int k = s.k();
    auto br = [&](const Vec& x, const Vec& y) {
        Vec out(k);
        for (int a = 0; a < k; ++a) {
            if (x[a].is_zero()) continue;
            for (int b = 0; b < k; ++b) {
                if (y[b].is_zero()) continue;
                out = axpy(x[a] * y[b], s.bracket_m(a, b), out);
            }
        }
        return out;
    };
    NijenhuisResult r;
    r.n.assign(static_cast<std::size_t>(k) * k * k, Scalar(0));
    for (int a = 0; a < k; ++a) {
        Vec ea(k);
        ea[a] = Scalar(1);
        for (int b = 0; b < k; ++b) {
            Vec eb(k);
            eb[b] = Scalar(1);
            Vec ja = j * ea, jb = j * eb;
            Vec v = br(ja, jb);
            v = axpy(Scalar(-1), j * br(ja, eb), v);
            v = axpy(Scalar(-1), j * br(ea, jb), v);
            v = axpy(Scalar(-1), br(ea, eb), v);
            Vec low = s.g * v;
            for (int c = 0; c < k; ++c) r.n[(static_cast<std::size_t>(a) * k + b) * k + c] = low[c];
        }
    }
    auto at = [&](int a, int b, int c) { return r.n[(static_cast<std::size_t>(a) * k + b) * k + c]; };
    auto small = [](const Scalar& x) { return x.exact() ? x.is_zero() : x.is_zero(1e-9); };
    r.zero = std::all_of(r.n.begin(), r.n.end(), small);
    r.skew = true;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c) r.skew = r.skew && small(at(a, b, c) + at(a, c, b));
    if (r.skew && k == kDim) {
        const auto& ms = degree_masks(3);
        for (int idx = 0; idx < r.as_form.size(); ++idx) {
            auto ix = indices(ms[idx]);
            r.as_form[idx] = at(ix[0], ix[1], ix[2]);
        }
    }
    return r;
}

NijenhuisResult nijenhuis(const StructureEquations& s, const Matrix& j)
{
    return nijenhuis(lie_group_space(s.algebra(), Matrix::identity(kDim)), j);
}

// --- torsion ---

KaehlerTorsion torsion_from_kaehler(const StructureEquations& s, const Matrix& j)
{
    if (!d_squared_zero(s)) throw std::invalid_argument("structure equations violate d^2 = 0");
    if (!(j * j + Matrix::identity(kDim)).is_zero() || !(j + j.transpose()).is_zero()) {
        throw std::invalid_argument("J must be orthogonal with J^2 = -1");
    }
    FramedSpace space = lie_group_space(s.algebra(), Matrix::identity(kDim));
    if (!nijenhuis(space, j).skew) throw std::invalid_argument("characteristic connection does not exist");
    KaehlerTorsion out;
    out.omega = form_of_endo(j);
    out.d_omega = exterior_d(s, out.omega);
    Form sd = hodge(out.d_omega);
    out.torsion = proj2(sd, out.omega) * Scalar::frac(-1, 3) + proj12(sd, out.omega) - proj6(sd, out.omega);
    out.components = project_l3(out.torsion, out.omega);
    Connection lc = levi_civita(space);
    Form delta(1);
    for (int i = 0; i < kDim; ++i) delta -= contract_basis(i, covariant_derivative(lc, i, out.omega));
    out.delta_omega = delta;
    out.hermitian = is_parallel(characteristic_connection(space, out.torsion), out.omega);
    return out;
}

ParallelCheck verify_parallel(const StructureEquations& s, const Matrix& j, const Form& t)
{
    FramedSpace space = lie_group_space(s.algebra(), Matrix::identity(kDim));
    Connection c = characteristic_connection(space, t);
    ParallelCheck out;
    out.j_parallel = is_parallel(c, form_of_endo(j));
    out.parallel = out.j_parallel && is_parallel(c, t);
    out.dt = exterior_d(s, t);
    out.sigma = sigma(t);
    out.dt_is_2sigma = form_is_zero(out.dt - out.sigma * Scalar(2));
    return out;
}

TwoFormChecks parallel_2form_checks(const StructureEquations& s, const Matrix& j)
{
    TwoFormChecks out;
    const Form e12 = Form::mono("12"), e34 = Form::mono("34");
    out.de12_closed = form_is_zero(exterior_d(s, e12));
    out.de34_closed = form_is_zero(exterior_d(s, e34));
    KaehlerTorsion kt = torsion_from_kaehler(s, j);
    Connection c = characteristic_connection(lie_group_space(s.algebra(), Matrix::identity(kDim)), kt.torsion);
    out.selfdual_parallel = is_parallel(c, e12 + e34);
    out.antiselfdual_parallel = is_parallel(c, e12 - e34);
    return out;
}

// --- normalization ---

namespace {

Scalar top(const Form& four) { return four.at("1234"); }

// w = c * u ∧ v for a decomposable 2-form on e_1..e_4; returns (c u, v).
std::pair<Form, Form> factor(const Form& w)
{
    std::vector<Form> images;
    for (int p = 0; p < 4; ++p) {
        Form x = contract_basis(p, w);
        if (!x.is_zero()) images.push_back(x);
    }
    if (images.empty()) throw std::logic_error("factor of a zero 2-form");
    Form u = images[0], v;
    for (std::size_t q = 1; q < images.size(); ++q) {
        if (!wedge(u, images[q]).is_zero()) {
            v = images[q];
            break;
        }
    }
    Form uv = wedge(u, v);
    for (int p = 0; p < uv.size(); ++p) {
        if (!uv[p].is_zero()) return {u * (w[p] / uv[p]), v};
    }
    throw std::logic_error("2-form is not decomposable");
}

}  // namespace

std::optional<NilNormalization> normalize_two_step(const StructureEquations& s)
{
    for (int i = 0; i < 4; ++i) {
        if (!s.de[i].is_zero()) return std::nullopt;
    }
    const auto& ms = degree_masks(2);
    for (int i = 4; i < kDim; ++i) {
        for (int p = 0; p < 15; ++p) {
            if (!s.de[i][p].is_zero() && (ms[p] & 0x30u)) return std::nullopt;
        }
    }
    const Form& a = s.de[4];
    const Form& b = s.de[5];
    std::vector<Vec> vs = {a.vec(), b.vec()};
    const int rk = static_cast<int>(independent_subset(vs).size());
    NilNormalization out;
    if (rk == 0) {
        out.tag = "(0,0,0,0,0,0)";
        return out;
    }
    if (rk == 1) {
        const Form& w = a.is_zero() ? b : a;
        out.tag = wedge(w, w).is_zero() ? "(0,0,0,0,0,12)" : "(0,0,0,0,0,12+34)";
        return out;
    }
    Scalar qa = top(wedge(a, a)), qb = top(wedge(a, b)), qc = top(wedge(b, b));
    Scalar disc = qb * qb - qa * qc;
    if (disc.is_zero()) {
        out.tag = qa.is_zero() && qb.is_zero() && qc.is_zero() ? "(0,0,0,0,12,13)" : "(0,0,0,0,12,14+23)";
        return out;
    }
    if (disc.sign() < 0) {
        out.tag = "(0,0,0,0,13-24,14+23)";
        return out;
    }
    Scalar root = sqrt(disc);
    std::array<std::pair<Scalar, Scalar>, 2> st;
    if (!qa.is_zero()) {
        st = {{{(-qb + root) / qa, Scalar(1)}, {(-qb - root) / qa, Scalar(1)}}};
    } else {
        st = {{{Scalar(1), Scalar(0)}, {-qc / (Scalar(2) * qb), Scalar(1)}}};
    }
    Matrix m(kDim, kDim);
    int row = 0;
    for (int r = 0; r < 2; ++r) {
        Form w = a * st[r].first + b * st[r].second;
        auto [u, v] = factor(w);
        for (int c = 0; c < kDim; ++c) {
            m(row, c) = u[c];
            m(row + 1, c) = v[c];
        }
        row += 2;
        m(4 + r, 4) = st[r].first;
        m(4 + r, 5) = st[r].second;
    }
    Matrix minv = inverse(m);
    StructureEquations ns;
    for (int r = 0; r < kDim; ++r) {
        Form d(2);
        for (int c = 0; c < kDim; ++c) {
            if (!m(r, c).is_zero()) d += s.de[c] * m(r, c);
        }
        ns.de[r] = pullback(minv, d);
    }
    StructureEquations target = StructureEquations::parse("(0,0,0,0,12,34)");
    for (int r = 0; r < kDim; ++r) {
        Form d = ns.de[r] - target.de[r];
        for (int p = 0; p < d.size(); ++p) {
            if (!d[p].is_zero(1e-9)) throw std::logic_error("normalization failed: " + ns.short_form());
        }
    }
    out.tag = "(0,0,0,0,12,34)";
    out.coframe = m;
    return out;
}

}  // namespace pt
