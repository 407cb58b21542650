#include "pt/forms.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pt {

namespace {

struct MaskTables {
    std::array<std::vector<unsigned>, kDim + 1> by_degree;
    std::array<int, 1u << kDim> index{};

    MaskTables()
    {
        for (int d = 0; d <= kDim; ++d) {
            std::vector<int> t(d);
            for (int i = 0; i < d; ++i) t[i] = i;
            for (;;) {
                unsigned m = 0;
                for (int x : t) m |= 1u << x;
                index[m] = static_cast<int>(by_degree[d].size());
                by_degree[d].push_back(m);
                int i = d - 1;
                while (i >= 0 && t[i] == kDim - d + i) --i;
                if (i < 0) break;
                ++t[i];
                for (int j = i + 1; j < d; ++j) t[j] = t[j - 1] + 1;
            }
        }
    }
};

const MaskTables& tables()
{
    static const MaskTables t;
    return t;
}

// sign of e_a ∧ e_b relative to the sorted monomial
int wedge_sign(unsigned a, unsigned b)
{
    int inv = 0;
    for (int j = 0; j < kDim; ++j) {
        if (b & (1u << j)) inv += std::popcount(a & ~((2u << j) - 1));
    }
    return (inv % 2) ? -1 : 1;
}

unsigned mask_of_digits(const std::string& digits)
{
    unsigned m = 0;
    int last = 0;
    for (char ch : digits) {
        if (ch < '1' || ch > '6') throw parse_error("index '" + std::string(1, ch) + "' out of range 1..6");
        int d = ch - '0';
        if (d <= last) throw parse_error("indices must be strictly increasing in e" + digits);
        last = d;
        m |= 1u << (d - 1);
    }
    return m;
}

}  // namespace

int binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

const std::vector<unsigned>& degree_masks(int degree)
{
    if (degree < 0 || degree > kDim) throw std::invalid_argument("degree out of range");
    return tables().by_degree[degree];
}

int mask_index(unsigned mask) { return tables().index[mask]; }

std::string mask_label(unsigned mask)
{
    std::string s;
    for (int i = 0; i < kDim; ++i) {
        if (mask & (1u << i)) s.push_back(static_cast<char>('1' + i));
    }
    return s;
}

Form::Form(int degree) : degree_(degree)
{
    if (degree < 0 || degree > kDim) throw std::invalid_argument("form degree out of range");
    c_.assign(binomial(kDim, degree), Scalar(0));
}

Form Form::mono(const std::string& digits, const Scalar& c)
{
    return from_mask(mask_of_digits(digits), c);
}

Form Form::from_mask(unsigned mask, const Scalar& c)
{
    Form f(std::popcount(mask));
    f.c_[mask_index(mask)] = c;
    return f;
}

Form Form::from_vec(int degree, const Vec& v)
{
    Form f(degree);
    if (static_cast<int>(v.size()) != f.size()) throw std::invalid_argument("coefficient vector size mismatch");
    f.c_ = v;
    return f;
}

Scalar Form::at(const std::string& digits) const
{
    unsigned m = mask_of_digits(digits);
    if (std::popcount(m) != degree_) return Scalar(0);
    return c_[mask_index(m)];
}

bool Form::is_zero() const
{
    for (const auto& x : c_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

bool Form::all_exact() const
{
    for (const auto& x : c_) {
        if (!x.exact()) return false;
    }
    return true;
}

Form& Form::operator+=(const Form& o)
{
    if (o.degree_ != degree_) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        throw std::invalid_argument("adding forms of different degree");
    }
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form& Form::operator*=(const Scalar& s)
{
    for (auto& x : c_) x *= s;
    return *this;
}

Form Form::operator-() const
{
    Form f = *this;
    for (auto& x : f.c_) x = -x;
    return f;
}

bool operator==(const Form& a, const Form& b)
{
    if (a.degree_ != b.degree_) return a.is_zero() && b.is_zero();
    for (int i = 0; i < a.size(); ++i) {
        if (a.c_[i] != b.c_[i]) return false;
    }
    return true;
}

std::string Form::str() const { return format_form(*this); }

Form basis_one_form(int i) { return Form::from_mask(1u << i); }

Form volume_form() { return Form::from_mask((1u << kDim) - 1); }

Form kaehler_form() { return Form::mono("12") + Form::mono("34") + Form::mono("56"); }

Form wedge(const Form& a, const Form& b)
{
    int d = a.degree() + b.degree();
    if (d > kDim) return Form(kDim);
    Form out(d);
    const auto& ma = degree_masks(a.degree());
    const auto& mb = degree_masks(b.degree());
    for (int i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < b.size(); ++j) {
            if (b[j].is_zero() || (ma[i] & mb[j])) continue;
            Scalar v = a[i] * b[j];
            if (wedge_sign(ma[i], mb[j]) < 0) v = -v;
            out[mask_index(ma[i] | mb[j])] += v;
        }
    }
    return out;
}

Form contract_basis(int i, const Form& a)
{
    if (a.degree() == 0) return Form(0);
    Form out(a.degree() - 1);
    const auto& ms = degree_masks(a.degree());
    for (int k = 0; k < a.size(); ++k) {
        if (!(ms[k] & (1u << i)) || a[k].is_zero()) continue;
        int before = std::popcount(ms[k] & ((1u << i) - 1));
        Scalar v = (before % 2) ? -a[k] : a[k];
        out[mask_index(ms[k] & ~(1u << i))] += v;
    }
    return out;
}

Form contract(const Vec& v, const Form& a)
{
    if (a.degree() == 0) return Form(0);
    Form out(a.degree() - 1);
    for (int i = 0; i < kDim; ++i) {
        if (!v[i].is_zero()) out += contract_basis(i, a) * v[i];
    }
    return out;
}

Form hodge(const Form& a)
{
    Form out(kDim - a.degree());
    const auto& ms = degree_masks(a.degree());
    const unsigned full = (1u << kDim) - 1;
    for (int k = 0; k < a.size(); ++k) {
        if (a[k].is_zero()) continue;
        unsigned c = full & ~ms[k];
        out[mask_index(c)] = wedge_sign(ms[k], c) < 0 ? -a[k] : a[k];
    }
    return out;
}

Scalar inner(const Form& a, const Form& b)
{
    if (a.degree() != b.degree()) throw std::invalid_argument("inner product of forms of different degree");
    return dot(a.vec(), b.vec());
}

Scalar norm2(const Form& a) { return inner(a, a); }

Matrix endo_of_form(const Form& w)
{
    if (w.degree() != 2) throw std::invalid_argument("endo_of_form expects a 2-form");
    Matrix a(kDim, kDim);
    const auto& ms = degree_masks(2);
    for (int k = 0; k < w.size(); ++k) {
        if (w[k].is_zero()) continue;
        int i = std::countr_zero(ms[k]);
        int j = 31 - std::countl_zero(ms[k]);
        a(j, i) += w[k];
        a(i, j) -= w[k];
    }
    return a;
}

Form form_of_endo(const Matrix& a)
{
    if (a.rows() != kDim || a.cols() != kDim) throw std::invalid_argument("form_of_endo expects a 6x6 matrix");
    Form w(2);
    const auto& ms = degree_masks(2);
    for (int k = 0; k < w.size(); ++k) {
        int i = std::countr_zero(ms[k]);
        int j = 31 - std::countl_zero(ms[k]);
        if (a(i, j) != -a(j, i)) throw std::invalid_argument("endomorphism is not skew-symmetric");
        w[k] = a(j, i);
    }
    return w;
}

Matrix complex_structure() { return endo_of_form(kaehler_form()); }

Form act(const Matrix& a, const Form& f)
{
    Form out(f.degree());
    const auto& ms = degree_masks(f.degree());
    for (int k = 0; k < f.size(); ++k) {
        if (f[k].is_zero()) continue;
        unsigned m = ms[k];
        for (int i = 0; i < kDim; ++i) {
            if (!(m & (1u << i))) continue;
            unsigned rest = m & ~(1u << i);
            for (int j = 0; j < kDim; ++j) {
                if (a(j, i).is_zero()) continue;
                if (rest & (1u << j)) continue;
                // move e_j from the slot of e_i to its sorted place
                int lo = std::min(i, j), hi = std::max(i, j);
                unsigned between = rest & ((1u << hi) - 1) & ~((2u << lo) - 1);
                Scalar v = f[k] * a(j, i);
                if (std::popcount(between) % 2) v = -v;
                out[mask_index(rest | (1u << j))] += v;
            }
        }
    }
    return out;
}

Scalar evaluate(const Form& f, const std::vector<Vec>& vectors)
{
    const int d = f.degree();
    if (static_cast<int>(vectors.size()) != d) throw std::invalid_argument("evaluate: wrong number of vectors");
    Form acc = f;
    for (int k = 0; k < d; ++k) acc = contract(vectors[k], acc);
    return acc[0];
}

Form pullback(const Matrix& m, const Form& f)
{
    Form out(f.degree());
    const auto& ms = degree_masks(f.degree());
    for (int k = 0; k < f.size(); ++k) {
        std::vector<Vec> cols;
        for (int i = 0; i < kDim; ++i) {
            if (ms[k] & (1u << i)) cols.push_back(m.col(i));
        }
        out[k] = evaluate(f, cols);
    }
    return out;
}

Form convert(const Form& f, Backend b)
{
    Form out(f.degree());
    for (int k = 0; k < f.size(); ++k) out[k] = convert(f[k], b);
    return out;
}

std::string format_form(const Form& f)
{
    std::ostringstream os;
    const auto& ms = degree_masks(f.degree());
    bool first = true;
    for (int k = 0; k < f.size(); ++k) {
        const Scalar& c = f[k];
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        Scalar a = neg ? -c : c;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        std::string label = mask_label(ms[k]);
        bool unit = a.exact() && a.is_rational() && a.rational() == 1;
        std::string cs;
        if (!unit) {
            if (a.is_rational() && a.rational().get_den() == 1 && !label.empty()) {
                cs = a.str();
            } else if (a.exact() && a.surd().terms().size() > 1) {
                cs = "(" + a.str() + ")*";
            } else {
                cs = a.str() + (label.empty() ? "" : "*");
            }
        }
        if (label.empty()) os << (unit ? "1" : a.str());
        else os << cs << "e" << label;
        first = false;
    }
    if (first) return "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Form& f) { return os << format_form(f); }

namespace {

std::vector<std::pair<int, std::string>> split_terms(const std::string& text)
{
    std::vector<std::pair<int, std::string>> terms;
    std::string cur;
    int sign = 1;
    int depth = 0;
    auto flush = [&]() {
        std::string t;
        for (char ch : cur) {
            if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
        }
        if (!t.empty()) terms.emplace_back(sign, t);
        else if (!terms.empty() || sign < 0) throw parse_error("dangling sign in form '" + text + "'");
        cur.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth < 0) throw parse_error("unbalanced parentheses in '" + text + "'");
        bool exponent_sign = i > 0 && (text[i - 1] == 'e' || text[i - 1] == 'E') && i >= 2 &&
                             (std::isdigit(static_cast<unsigned char>(text[i - 2])) || text[i - 2] == '.') &&
                             i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
                             depth > 0;
        if ((ch == '+' || ch == '-') && depth == 0 && !exponent_sign) {
            std::string t;
            for (char c2 : cur) {
                if (!std::isspace(static_cast<unsigned char>(c2))) t.push_back(c2);
            }
            if (t.empty()) {
                if (!terms.empty()) throw parse_error("dangling sign in form '" + text + "'");
                if (ch == '-') sign = -sign;
                continue;
            }
            flush();
            sign = (ch == '-') ? -1 : 1;
            continue;
        }
        cur.push_back(ch);
    }
    if (depth != 0) throw parse_error("unbalanced parentheses in '" + text + "'");
    flush();
    return terms;
}

}  // namespace

Form parse_form(const std::string& text, Backend b)
{
    auto terms = split_terms(text);
    if (terms.empty()) throw parse_error("empty form");
    bool have = false;
    Form out(0);
    for (const auto& [sign, t] : terms) {
        std::size_t pos = t.size();
        while (pos > 0 && std::isdigit(static_cast<unsigned char>(t[pos - 1]))) --pos;
        std::string coeff_text;
        std::string digits;
        if (pos > 0 && pos < t.size() && t[pos - 1] == 'e' && (pos < 2 || t[pos - 2] != '.')) {
            digits = t.substr(pos);
            coeff_text = t.substr(0, pos - 1);
            if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text.pop_back();
            if (!coeff_text.empty() && !std::isdigit(static_cast<unsigned char>(coeff_text.back())) &&
                coeff_text.back() != ')') {
                throw parse_error("malformed coefficient in term '" + t + "'");
            }
        } else if (t.find('e') != std::string::npos && t.find("sqrt") == std::string::npos) {
            throw parse_error("malformed term '" + t + "'");
        } else {
            coeff_text = t;
        }
        Scalar c = coeff_text.empty() ? Scalar(1) : parse_scalar(coeff_text);
        if (sign < 0) c = -c;
        Form term = digits.empty() ? Form::from_mask(0, c) : Form::mono(digits, c);
        if (have && term.degree() != out.degree()) throw parse_error("mixed degrees in form '" + text + "'");
        if (!have) out = Form(term.degree());
        out += term;
        have = true;
    }
    return convert(out, b);
}

}  // namespace pt
