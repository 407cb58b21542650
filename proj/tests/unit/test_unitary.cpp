#include "doctest.h"
#include "support.hpp"

#include "pt/unitary.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

using namespace pt;
using namespace pt_test;

namespace {

// matrix of a linear map on 3-forms in the monomial basis
Matrix matrix_on_3forms(Form (*op)(const Form&, const Form&))
{
    Matrix m(20, 20);
    for (int j = 0; j < 20; ++j) {
        Form e(3);
        e[j] = Scalar(1);
        Form img = op(e, kaehler_form());
        for (int i = 0; i < 20; ++i) m(i, j) = img[i];
    }
    return m;
}

std::vector<double> real_spectrum(const Matrix& m)
{
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(m));
    std::vector<double> out;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        CHECK(std::abs(es.eigenvalues()[i].imag()) < 1e-9);
        out.push_back(std::round(es.eigenvalues()[i].real() * 1e6) / 1e6);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool commutes_with_j(const Matrix& a) { return commutator(a, complex_structure()).is_zero(); }

}  // namespace

TEST_SUITE("unitary")
{
    TEST_CASE("so(6) splits into u(3) and its complement")
    {
        CHECK(so6_basis().size() == 15);
        CHECK(u3_basis().size() == 9);
        CHECK(su3_basis().size() == 8);
        for (const auto& a : u3_basis()) CHECK(commutes_with_j(a));
        for (int k = 0; k < 5; ++k) {
            Matrix a = rand_skew();
            auto s = split_so6(a);
            CHECK(s.u3 + s.m6 == a);
            CHECK(commutes_with_j(s.u3));
            // m6 anticommutes with J
            CHECK((s.m6 * complex_structure() + complex_structure() * s.m6).is_zero());
            CHECK(s.su3 + s.center == s.u3);
            CHECK(s.su3.trace() == Scalar(0));
            CHECK((s.su3 * complex_structure()).trace() == Scalar(0));
        }
    }

    TEST_CASE("the three summands of 3-forms")
    {
        CHECK(l3_basis(2).size() == 2);
        CHECK(l3_basis(12).size() == 12);
        CHECK(l3_basis(6).size() == 6);
        std::vector<Vec> all;
        for (int w : {2, 12, 6})
            for (const auto& f : l3_basis(w)) all.push_back(f.vec());
        CHECK(rank(Matrix::from_columns(all, 20)) == 20);
        for (int k = 0; k < 5; ++k) {
            Form t = rand_form(3);
            auto c = project_l3(t);
            CHECK(c.t2 + c.t12 + c.t6 == t);
            CHECK(proj2(c.t2) == c.t2);
            CHECK(proj12(c.t2).is_zero());
            CHECK(inner(c.t2, c.t12) == Scalar(0));
            CHECK(inner(c.t12, c.t6) == Scalar(0));
            CHECK(c.n2 == norm2(c.t2));
            CHECK(c.n12 == norm2(c.t12));
            CHECK(c.n6 == norm2(c.t6));
            CHECK(wedge(kaehler_form(), [&] {
                      Form x(1);
                      for (int i = 0; i < kDim; ++i) x[i] = c.x[i];
                      return x;
                  }()) == c.t6);
        }
    }

    TEST_CASE("summands are invariant under u(3)")
    {
        for (const auto& a : u3_basis()) {
            for (int w : {2, 12, 6}) {
                std::vector<Vec> span;
                for (const auto& f : l3_basis(w)) span.push_back(f.vec());
                int r = rank(Matrix::from_columns(span, 20));
                for (const auto& f : l3_basis(w)) {
                    auto s = span;
                    s.push_back(act(a, f).vec());
                    CHECK(rank(Matrix::from_columns(s, 20)) == r);
                }
            }
        }
    }

    TEST_CASE("tau squared spectrum by an independent float eigen-solver")
    {
        auto spec = real_spectrum(matrix_on_3forms(&tau) * matrix_on_3forms(&tau));
        CHECK(std::count(spec.begin(), spec.end(), -9.0) == 2);
        CHECK(std::count(spec.begin(), spec.end(), -1.0) == 18);
        CHECK(spec.size() == 20);
        // tau^2 acts on each summand by a scalar
        for (const auto& f : l3_basis(2)) CHECK(tau(tau(f)) == Scalar(-9) * f);
        for (const auto& f : l3_basis(12)) CHECK(tau(tau(f)) == -f);
        for (const auto& f : l3_basis(6)) CHECK(tau(tau(f)) == -f);
    }

    TEST_CASE("splitting operator eigenvalues 3, -1, 1")
    {
        for (const auto& f : l3_basis(2)) CHECK(splitting_operator(f) == Scalar(3) * f);
        for (const auto& f : l3_basis(12)) CHECK(splitting_operator(f) == -f);
        for (const auto& f : l3_basis(6)) CHECK(splitting_operator(f) == f);
    }

    TEST_CASE("intrinsic torsion map")
    {
        CHECK(rank(theta_matrix()) == 20);
        auto th = theta(parse_form("e135-e146-e236-e245"));
        CHECK(th.size() == 6);
        for (const auto& m : th) CHECK((m * complex_structure() + complex_structure() * m).is_zero());
    }

    TEST_CASE("strict types")
    {
        CHECK(torsion_type(parse_form("e135-e146-e236-e245")).strict == "W1");
        CHECK(torsion_type(parse_form("e125+e345")).strict == "W4");
        CHECK(torsion_type(Form(3)).strict == "Kaehler");
        CHECK(torsion_type(parse_form("e125-e345")).strict == "W3");
        CHECK(torsion_type(parse_form("e125-e345+e135-e146-e236-e245")).strict == "W1+W3");
    }

    TEST_CASE("U(2)-splitting maps land in the right summands and reconstruct")
    {
        for (const auto& w : m2_basis()) {
            CHECK(proj2(i1_map(w)) == i1_map(w));
            CHECK(proj12(i2_map(w)) == i2_map(w));
        }
        for (int k = 0; k < 4; ++k) {
            Vec y(4);
            for (auto& v : y) v = rand_q();
            CHECK(proj12(i5_map(y)) == i5_map(y));
        }
        for (int k = 0; k < 4; ++k) {
            Form t2 = proj2(rand_form(3)), t12 = proj12(rand_form(3));
            auto s = u2_split(t2, t12);
            CHECK(i1_map(s.om1) == t2);
            CHECK(i2_map(s.om2) + i3_map(s.om3, s.om4) + i5_map(s.y) == t12);
        }
    }

    TEST_CASE("torus fixed dimensions are invariant under permutations and sign flips")
    {
        for (int k = 0; k < 12; ++k) {
            std::uniform_int_distribution<int> d(-4, 4);
            int a = d(rng()), b = d(rng()), c = d(rng());
            if (a == 0 && b == 0 && c == 0) a = 1;
            auto ref = torus_fixed_dims(a, b, c);
            CHECK(torus_fixed_dims(b, a, c) == ref);
            CHECK(torus_fixed_dims(c, b, a) == ref);
            CHECK(torus_fixed_dims(-a, -b, -c) == ref);
            CHECK(torus_fixed_dims(2 * a, 2 * b, 2 * c) == ref);
            CHECK(delta_class(a, b, c).tag == delta_class(c, a, b).tag);
        }
        CHECK(torus_fixed_dims(1, 0, 0) == FixedDims{0, 4, 4});
        CHECK(delta_class(1, 1, 1).tag == 8);
        CHECK(delta_class(1, 1, -2).tag == 7);
        CHECK(delta_class(1, 0, 0).tag == 1);
    }

    TEST_CASE("isotropy algebras are closed subalgebras of u(3) fixing T")
    {
        for (const char* lit : {"e135-e146-e236-e245", "e125+e345", "e145+e235+e136-e246", "3e135+e146+e236+e245"}) {
            Form t = parse_form(lit);
            auto iso = isotropy_algebra(t);
            CHECK(bracket_closed(iso));
            for (const auto& a : iso) {
                CHECK(commutes_with_j(a));
                CHECK(act(a, t).is_zero());
            }
        }
        CHECK(identify_algebra(isotropy_algebra(parse_form("e135-e146-e236-e245"))).tag == "su3");
        CHECK(identify_algebra(isotropy_algebra(parse_form("e125+e345"))).tag == "u2_0");
        CHECK(identify_algebra(isotropy_algebra(parse_form("3e135+e146+e236+e245"))).tag == "so3");
        CHECK(identify_algebra(u3_basis()).dim == 9);
        CHECK(identify_algebra({}).tag == "trivial");
    }

    TEST_CASE("isotropy dimension is invariant under unitary rotation")
    {
        Matrix a = split_so6(rand_skew()).u3;
        Matrix g = cayley(a);
        CHECK(g * g.transpose() == Matrix::identity(6));
        CHECK(commutes_with_j(g));
        for (const char* lit : {"e125+e345", "3e135+e146+e236+e245", "e145+e235+e136-e246"}) {
            Form t = parse_form(lit);
            auto c0 = project_l3(t), c1 = project_l3(pullback(g, t));
            CHECK(c0.n2 == c1.n2);
            CHECK(c0.n12 == c1.n12);
            CHECK(c0.n6 == c1.n6);
            CHECK(identify_algebra(isotropy_algebra(t)).tag == identify_algebra(isotropy_algebra(pullback(g, t))).tag);
        }
    }

    TEST_CASE("twisted almost complex structure")
    {
        Form t = parse_form("e145+e235+e125+e345");
        auto tw = su2_twist(t, {Scalar(0), Scalar::frac(3, 5), Scalar::frac(4, 5)});
        CHECK(tw.new_j * tw.new_j == -Matrix::identity(6));
        CHECK(tw.new_j * tw.new_j.transpose() == Matrix::identity(6));
    }
}
