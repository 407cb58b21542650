#include "pt/clifford.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace pt {

namespace {

// e_I e_J = sign e_{I xor J}
int mask_product_sign(unsigned a, unsigned b)
{
    int swaps = 0;
    for (int j = 0; j < kDim; ++j) {
        if (b & (1u << j)) swaps += std::popcount(a >> (j + 1));
    }
    swaps += std::popcount(a & b);
    return swaps % 2 ? -1 : 1;
}

}  // namespace

CliffordElement CliffordElement::scalar(const Scalar& s) { return monomial(0, s); }

CliffordElement CliffordElement::generator(int i) { return monomial(1u << i); }

CliffordElement CliffordElement::monomial(unsigned mask, const Scalar& c)
{
    CliffordElement e;
    e.add(mask, c);
    return e;
}

Scalar CliffordElement::coefficient(unsigned mask) const
{
    auto it = terms_.find(mask);
    return it == terms_.end() ? Scalar(0) : it->second;
}

bool CliffordElement::is_scalar(double tol) const
{
    for (const auto& [m, c] : terms_) {
        if (m != 0 && !(c.exact() ? c.is_zero() : c.is_zero(tol))) return false;
    }
    return true;
}

void CliffordElement::add(unsigned mask, const Scalar& c)
{
    if (c.is_zero()) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        terms_.emplace(mask, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o)
{
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

CliffordElement& CliffordElement::operator*=(const Scalar& s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

bool operator==(const CliffordElement& a, const CliffordElement& b)
{
    CliffordElement d = a + b * Scalar(-1);
    return d.is_zero();
}

std::string CliffordElement::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        if (neg) cs = cs.substr(1);
        first = false;
        bool compound = cs.find_first_of("+-*") != std::string::npos;
        if (m == 0) {
            os << cs;
            continue;
        }
        if (cs != "1") os << (compound ? "(" + cs + ")*" : cs);
        os << "e" << mask_label(m);
    }
    return os.str();
}

CliffordElement cl_mul(const CliffordElement& a, const CliffordElement& b)
{
    CliffordElement out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            out += CliffordElement::monomial(ma ^ mb, ca * cb * Scalar(mask_product_sign(ma, mb)));
        }
    }
    return out;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) { return cl_mul(a, b); }

CliffordElement embed_form(const Form& a)
{
    CliffordElement out;
    const auto& ms = degree_masks(a.degree());
    for (int k = 0; k < a.size(); ++k) {
        if (!a[k].is_zero()) out += CliffordElement::monomial(ms[k], a[k]);
    }
    return out;
}

ScalarSquare is_scalar_square(const Form& t, double tol)
{
    if (t.degree() != 3) throw std::invalid_argument("is_scalar_square needs a 3-form");
    CliffordElement c = embed_form(t);
    CliffordElement sq = c * c;
    ScalarSquare out;
    out.scalar = sq.is_scalar(tol);
    if (out.scalar) out.value = sq.scalar_part();
    return out;
}

// --- spinors ---

const std::vector<SpinorOperator>& gammas()
{
    static const std::vector<SpinorOperator> g = [] {
        using C = std::complex<double>;
        Eigen::Matrix2cd s1, s2, s3, id;
        s1 << 0, 1, 1, 0;
        s2 << 0, C(0, -1), C(0, 1), 0;
        s3 << 1, 0, 0, -1;
        id.setIdentity();
        auto kron3 = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, const Eigen::Matrix2cd& c) {
            SpinorOperator out(8, 8);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        for (int p = 0; p < 2; ++p)
                            for (int q = 0; q < 2; ++q)
                                for (int r = 0; r < 2; ++r) out(4 * i + 2 * j + k, 4 * p + 2 * q + r) = a(i, p) * b(j, q) * c(k, r);
            return out;
        };
        std::vector<SpinorOperator> out = {kron3(s1, id, id), kron3(s2, id, id), kron3(s3, s1, id),
                                           kron3(s3, s2, id), kron3(s3, s3, s1), kron3(s3, s3, s2)};
        for (auto& m : out) m *= C(0, 1);
        return out;
    }();
    return g;
}

SpinorOperator clifford_operator(const CliffordElement& a)
{
    SpinorOperator out = SpinorOperator::Zero(8, 8);
    for (const auto& [m, c] : a.terms()) {
        SpinorOperator p = SpinorOperator::Identity(8, 8);
        for (int i = 0; i < kDim; ++i) {
            if (m & (1u << i)) p = p * gammas()[i];
        }
        out += c.to_double() * p;
    }
    return out;
}

SpinorOperator clifford_operator(const Form& a) { return clifford_operator(embed_form(a)); }

SpinorOperator spin_lift(const Matrix& a)
{
    SpinorOperator out = SpinorOperator::Zero(8, 8);
    for (int i = 0; i < kDim; ++i) {
        for (int j = i + 1; j < kDim; ++j) {
            double c = a(j, i).to_double();
            if (c != 0.0) out += 0.5 * c * gammas()[i] * gammas()[j];
        }
    }
    return out;
}

ParallelSpinors parallel_spinors(const std::vector<Matrix>& hol, double tol)
{
    ParallelSpinors out;
    if (hol.empty()) {
        out.complex_dim = 8;
        out.basis = Eigen::MatrixXcd::Identity(8, 8);
        return out;
    }
    Eigen::MatrixXcd stacked(8 * static_cast<int>(hol.size()), 8);
    for (std::size_t k = 0; k < hol.size(); ++k) stacked.block(8 * static_cast<int>(k), 0, 8, 8) = spin_lift(hol[k]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int k = 0; k < s.size(); ++k) r += s(k) > tol ? 1 : 0;
    out.complex_dim = 8 - r;
    out.basis = svd.matrixV().rightCols(8 - r);
    return out;
}

std::vector<double> torsion_spinor_spectrum(const Form& t, const std::vector<Matrix>& hol, double tol)
{
    if (t.degree() != 3) throw std::invalid_argument("torsion_spinor_spectrum needs a 3-form");
    ParallelSpinors ps = parallel_spinors(hol);
    if (ps.complex_dim == 0) return {};
    SpinorOperator op = clifford_operator(t);
    const Eigen::MatrixXcd& p = ps.basis;
    Eigen::MatrixXcd leak = op * p - p * (p.adjoint() * op * p);
    if (leak.norm() > tol * std::max(1.0, op.norm())) {
        throw std::logic_error("torsion does not preserve the parallel spinors");
    }
    Eigen::MatrixXcd m = p.adjoint() * op * p;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (auto& x : out) {
        if (std::abs(x) < tol) x = 0.0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pt
