#include "doctest.h"
#include "support.hpp"

#include "pt/catalog.hpp"
#include "pt/nil.hpp"
#include "pt/orbits.hpp"
#include "pt/unitary.hpp"

#include <Eigen/LU>

using namespace pt;
using namespace pt_test;

namespace {

// d on a monomial by the Leibniz rule over its 1-form factors
Form leibniz_d(const StructureEquations& s, unsigned mask)
{
    std::vector<int> idx;
    for (int b = 0; b < kDim; ++b)
        if ((mask >> b) & 1u) idx.push_back(b);
    Form out(static_cast<int>(idx.size()) + 1);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        Form term(0);
        term[0] = Scalar(r % 2 ? -1 : 1);
        for (std::size_t q = 0; q < idx.size(); ++q) term = wedge(term, q == r ? s.de[idx[q]] : basis_one_form(idx[q]));
        out += term;
    }
    return out;
}

int float_rank(const StructureEquations& s, int k)
{
    if (k < 0 || k >= kDim) return 0;
    const auto& src = degree_masks(k);
    Eigen::MatrixXd m(binomial(kDim, k + 1), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        Form img = leibniz_d(s, src[j]);
        for (int i = 0; i < img.size(); ++i) m(i, j) = img[i].to_double();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

std::array<int, 7> oracle_betti(const StructureEquations& s)
{
    std::array<int, 7> b{};
    for (int k = 0; k <= kDim; ++k) b[k] = binomial(kDim, k) - float_rank(s, k) - float_rank(s, k - 1);
    return b;
}

StructureEquations nil_family(const Scalar& a3, const Scalar& a4, const Scalar& a5)
{
    return StructureEquations::parse("de5 = a3*(e12-e34) + a5*(e12+e34)\nde6 = a4*(e12-e34)",
                                     {{"a3", a3}, {"a4", a4}, {"a5", a5}});
}

}  // namespace

TEST_SUITE("nil")
{
    TEST_CASE("structure equation text")
    {
        auto h = StructureEquations::parse("(0,0,0,0,12,34)");
        CHECK(h.de[4] == Form::mono("12"));
        CHECK(h.de[0].is_zero());
        CHECK(h.short_form() == "(0,0,0,0,12,34)");
        CHECK(h.nilpotent_filtration());
        auto l = nil_family(1, 0, 2);
        CHECK(l.de[4] == Scalar(3) * Form::mono("12") + Form::mono("34"));
        CHECK(StructureEquations::parse("de6 = e13 ; de5 = -e12").de[5] == Form::mono("13"));
        CHECK(StructureEquations::from_algebra(h.algebra()).de[5] == h.de[5]);
        CHECK_THROWS_AS(StructureEquations::parse("de7 = e12"), parse_error);
        CHECK_THROWS_AS(StructureEquations::parse("(0,0,0,0,12)"), parse_error);
        CHECK_FALSE(StructureEquations::parse("(23,0,0,0,0,0)").nilpotent_filtration());
    }

    TEST_CASE("d squared vanishes exactly for Lie algebras")
    {
        CHECK(d_squared_zero(StructureEquations::from_algebra(su2_sum(2))));
        CHECK(d_squared_zero(nil_family(rand_q(), rand_q(), rand_q())));
        CHECK_FALSE(d_squared_zero(StructureEquations::parse("de1 = e24\nde2 = e13")));
        CHECK_THROWS(ce_betti(StructureEquations::parse("de1 = e24\nde2 = e13"), 1));
    }

    TEST_CASE("exterior derivative agrees with the Leibniz oracle")
    {
        auto s = nil_family(rand_q(), rand_q(), rand_q());
        for (int k = 0; k < kDim; ++k)
            for (unsigned m : degree_masks(k)) CHECK(exterior_d(s, Form::from_mask(m)) == leibniz_d(s, m));
    }

    TEST_CASE("Betti numbers against a float rank oracle")
    {
        std::vector<StructureEquations> cases = {
            StructureEquations::parse("(0,0,0,0,0,0)"),
            StructureEquations::parse("(0,0,0,0,12,34)"),
            StructureEquations::parse("(0,0,0,0,0,12+34)"),
            StructureEquations::parse("(0,0,12,13,14,15)"),
            StructureEquations::from_algebra(su2_sum(2)),
        };
        for (int k = 0; k < 4; ++k) cases.push_back(nil_family(rand_q(), rand_q(), rand_q()));
        for (const auto& s : cases) {
            auto b = ce_betti_numbers(s);
            CHECK(b == oracle_betti(s));
            int chi = 0;
            for (int k = 0; k <= kDim; ++k) {
                CHECK(b[k] == b[kDim - k]);
                chi += (k % 2 ? -1 : 1) * b[k];
            }
            CHECK(chi == 0);
        }
        CHECK(ce_betti_numbers(StructureEquations::parse("(0,0,0,0,0,0)")) == std::array<int, 7>{1, 6, 15, 20, 15, 6, 1});
        auto h = ce_betti_numbers(StructureEquations::parse("(0,0,0,0,12,34)"));
        CHECK(h[1] == 4);
        CHECK(h[2] == 8);
    }

    TEST_CASE("nil family: Nijenhuis, torsion and parallelism")
    {
        const Matrix j = complex_structure();
        for (int k = 0; k < 6; ++k) {
            Scalar a3 = rand_q(), a4 = rand_q(), a5 = rand_positive();
            auto s = nil_family(a3, a4, a5);
            CHECK(nijenhuis(s, j).zero);
            auto kt = torsion_from_kaehler(s, j);
            Form e12m34 = Form::mono("12") - Form::mono("34"), e12p34 = Form::mono("12") + Form::mono("34");
            CHECK(kt.d_omega == wedge(e12m34, a3 * Form::mono("6") - a4 * Form::mono("5")) + a5 * wedge(e12p34, Form::mono("6")));
            CHECK(kt.torsion == wedge(e12m34, a3 * Form::mono("5") + a4 * Form::mono("6")) + a5 * wedge(e12p34, Form::mono("5")));
            CHECK(kt.hermitian);
            auto pc = verify_parallel(s, j, kt.torsion);
            CHECK(pc.parallel);
            CHECK(pc.dt_is_2sigma);
            CHECK(pc.j_parallel);
            CHECK(pc.dt == Scalar(-2) * (a3 * a3 + a4 * a4 - a5 * a5) * Form::mono("1234"));
            CHECK(parallel_2form_checks(s, j).all());
        }
    }

    TEST_CASE("closed torsion exactly on the light cone")
    {
        const Matrix j = complex_structure();
        auto closed = nil_family(3, 4, 5);
        CHECK(verify_parallel(closed, j, torsion_from_kaehler(closed, j).torsion).dt.is_zero());
        auto open = nil_family(3, 4, 6);
        CHECK_FALSE(verify_parallel(open, j, torsion_from_kaehler(open, j).torsion).dt.is_zero());
    }

    TEST_CASE("strict types of the nil families")
    {
        const Matrix j = complex_structure();
        auto type = [&](int a3, int a4, int a5) { return torsion_type(torsion_from_kaehler(nil_family(a3, a4, a5), j).components).strict; };
        CHECK(type(1, 0, 1) == "W3+W4");
        CHECK(type(2, 0, 1) == "W3+W4");
        CHECK(type(1, 1, 1) == "W3+W4");
        CHECK(type(0, 1, 1) == "W3+W4");
        CHECK(type(0, 0, 1) == "W4");
        CHECK(type(1, 0, 0) == "W3");
        CHECK(type(0, 0, 0) == "Kaehler");
    }

    TEST_CASE("perturbed almost complex structure is not parallel")
    {
        auto s = nil_family(1, 2, 1);
        Matrix j = complex_structure();
        Matrix g = cayley(endo_of_form(Form::mono("15")));
        Matrix j2 = g * j * g.transpose();
        CHECK(j2 * j2 == -Matrix::identity(6));
        auto t = torsion_from_kaehler(s, j).torsion;
        CHECK_FALSE(verify_parallel(s, j2, t).j_parallel);
    }

    TEST_CASE("Nijenhuis tensor of a nearly Kaehler model")
    {
        auto m = build_model("s3xs3-so3", {});
        auto n = nijenhuis(m.space, complex_structure());
        CHECK_FALSE(n.zero);
        CHECK(n.skew);
        auto ab = nijenhuis(StructureEquations::parse("(0,0,0,0,0,0)"), complex_structure());
        CHECK(ab.zero);
    }

    TEST_CASE("2-form checks fail individually on generic equations")
    {
        auto c = parallel_2form_checks(StructureEquations::parse("(0,0,12,0,0,0)"), complex_structure());
        CHECK(c.de12_closed);
        CHECK_FALSE(c.de34_closed);
        CHECK_FALSE(c.all());
    }

    TEST_CASE("two-step normal forms")
    {
        CHECK(normalize_two_step(nil_family(1, 1, 1))->tag == "(0,0,0,0,12,34)");
        CHECK(normalize_two_step(nil_family(2, 0, 1))->tag == "(0,0,0,0,0,12+34)");
        CHECK(normalize_two_step(nil_family(1, 0, 1))->tag == "(0,0,0,0,0,12)");
        CHECK(normalize_two_step(nil_family(0, 1, 1))->tag == "(0,0,0,0,12,34)");
        CHECK(normalize_two_step(StructureEquations::parse("(0,0,0,0,0,0)"))->tag == "(0,0,0,0,0,0)");
        CHECK_FALSE(normalize_two_step(StructureEquations::parse("(0,0,12,13,0,0)")));
        // normalized coframe gives the normal form
        auto nn = normalize_two_step(nil_family(3, -1, 2));
        REQUIRE(nn);
        CHECK(ce_betti_numbers(StructureEquations::parse(nn->tag)) == ce_betti_numbers(nil_family(3, -1, 2)));
    }

    TEST_CASE("form expressions")
    {
        CHECK(parse_form_expression("a*(e1^e2) + e34", {{"a", 2}}) == Scalar(2) * Form::mono("12") + Form::mono("34"));
        CHECK(parse_form_expression("(e1+e2)*(e3)") == Form::mono("13") + Form::mono("23"));
        CHECK_THROWS_AS(parse_form_expression("b*e12"), parse_error);
        CHECK_THROWS_AS(parse_form_expression("e12 + e3"), parse_error);
    }
}
