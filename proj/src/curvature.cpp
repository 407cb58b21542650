#include "pt/curvature.hpp"

#include <stdexcept>

namespace pt {

int pair_index(int i, int j) { return mask_index((1u << i) | (1u << j)); }

Scalar CurvatureRecord::at(int i, int j, int k, int l) const
{
    if (i == j || k == l) return Scalar(0);
    Scalar s = m(pair_index(std::min(i, j), std::max(i, j)), pair_index(std::min(k, l), std::max(k, l)));
    if ((i > j) != (k > l)) s = -s;
    return s;
}

Form CurvatureRecord::image(int i, int j) const
{
    Form w(2);
    if (i == j) return w;
    int p = pair_index(std::min(i, j), std::max(i, j));
    for (int q = 0; q < 15; ++q) w[q] = m(p, q);
    return i < j ? w : -w;
}

Matrix CurvatureRecord::endo(int i, int j) const { return endo_of_form(image(i, j)); }

bool CurvatureRecord::pair_symmetric() const { return m == m.transpose(); }

CurvatureRecord curvature_from_forms(const std::vector<Form>& w, const Matrix& r)
{
    CurvatureRecord out;
    for (std::size_t a = 0; a < w.size(); ++a) {
        for (std::size_t b = 0; b < w.size(); ++b) {
            const Scalar& c = r(static_cast<int>(a), static_cast<int>(b));
            if (c.is_zero()) continue;
            for (int p = 0; p < 15; ++p) {
                if (w[a][p].is_zero()) continue;
                for (int q = 0; q < 15; ++q) {
                    if (!w[b][q].is_zero()) out.m(p, q) += c * w[a][p] * w[b][q];
                }
            }
        }
    }
    return out;
}

CurvatureRecord outer_curvature(const Form& w, const Scalar& s)
{
    Matrix r(1, 1);
    r(0, 0) = s;
    return curvature_from_forms({w}, r);
}

CurvatureRecord projection_curvature(const std::vector<Form>& span)
{
    std::vector<Vec> vs;
    for (const auto& f : span) vs.push_back(f.vec());
    std::vector<Form> basis;
    for (int idx : independent_subset(vs)) basis.push_back(span[idx]);
    const int n = static_cast<int>(basis.size());
    Matrix gram(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) gram(a, b) = inner(basis[a], basis[b]);
    }
    CurvatureRecord out = n ? curvature_from_forms(basis, inverse(gram)) : CurvatureRecord{};
    for (const auto& f : basis) out.values.push_back(endo_of_form(f));
    return out;
}

Form bianchi_cyclic_sum(const CurvatureRecord& r)
{
    Form out(4);
    const auto& ms = degree_masks(4);
    for (int k = 0; k < out.size(); ++k) {
        int idx[4];
        int n = 0;
        for (int b = 0; b < kDim; ++b) {
            if (ms[k] & (1u << b)) idx[n++] = b;
        }
        int i = idx[0], j = idx[1], l = idx[2], u = idx[3];
        out[k] = r.at(i, j, l, u) + r.at(j, l, i, u) + r.at(l, i, j, u);
    }
    return out;
}

std::vector<Matrix> curvature_image(const CurvatureRecord& r)
{
    std::vector<Matrix> out;
    for (int p = 0; p < 15; ++p) {
        Form w(2);
        for (int q = 0; q < 15; ++q) w[q] = r.m(p, q);
        if (!w.is_zero()) out.push_back(endo_of_form(w));
    }
    return out;
}

Matrix ricci_contraction(const CurvatureRecord& r)
{
    Matrix ric(kDim, kDim);
    for (int y = 0; y < kDim; ++y) {
        for (int z = 0; z < kDim; ++z) {
            Scalar s;
            for (int i = 0; i < kDim; ++i) s += r.at(i, y, z, i);
            ric(y, z) = s;
        }
    }
    return ric;
}

}  // namespace pt
