#include "doctest.h"
#include "support.hpp"

#include "pt/clifford.hpp"
#include "pt/orbits.hpp"
#include "pt/tables.hpp"
#include "pt/unitary.hpp"

using namespace pt;
using namespace pt_test;

namespace {

// sigma_T = 1/2 sum (e_i ⨼ T) ∧ (e_i ⨼ T), written out directly
Form sigma_oracle(const Form& t)
{
    Form s(4);
    for (int i = 0; i < kDim; ++i) s += wedge(contract_basis(i, t), contract_basis(i, t));
    return s * Scalar::frac(1, 2);
}

}  // namespace

TEST_SUITE("orbits")
{
    TEST_CASE("case names and expected labels")
    {
        for (Case c : all_cases()) CHECK(parse_case(case_name(c)) == c);
        CHECK(parse_case("xi") == Case::XI);
        CHECK_THROWS_AS(parse_case("XII"), std::invalid_argument);
        CHECK(expected_iso_label(Case::I) == "u2_0");
        CHECK(expected_strict_type(Case::VII) == "W1");
        CHECK(first_family(Case::VI));
        CHECK_FALSE(first_family(Case::VIII));
    }

    TEST_CASE("component norms follow the closed forms on random family points")
    {
        for (Case c : all_cases()) {
            for (int k = 0; k < 4; ++k) {
                auto f = rand_family(c);
                auto comp = project_l3(make_torsion(f));
                auto n = family_norms(f);
                CHECK(comp.n2 == n.n2);
                CHECK(comp.n12 == n.n12);
                CHECK(comp.n6 == n.n6);
            }
        }
    }

    TEST_CASE("strict type and isotropy of each case")
    {
        for (Case c : all_cases()) {
            auto f = rand_family(c);
            Form t = make_torsion(f);
            CAPTURE(case_name(c));
            CHECK(torsion_type(t).strict == expected_strict_type(c));
            CHECK(identify_algebra(isotropy_algebra(t)).tag == expected_iso_label(c));
        }
    }

    TEST_CASE("sigma against the contraction oracle and dT = 2 sigma")
    {
        for (Case c : all_cases()) {
            Form t = make_torsion(rand_family(c));
            CHECK(sigma(t) == sigma_oracle(t));
            CHECK(d_parallel(t, t) == Scalar(2) * sigma(t));
        }
        Form r = rand_form(3);
        CHECK(sigma(r) == sigma_oracle(r));
    }

    TEST_CASE("displayed sigma formulas")
    {
        for (int k = 0; k < 5; ++k) {
            Scalar b1 = rand_q(), b2 = rand_q();
            Form want = (b2 * b2 * Scalar(2) - b1 * b1) * Form::mono("1234") -
                        Scalar(2) * b2 * b2 * (Form::mono("1256") + Form::mono("3456"));
            CHECK(sigma(second_family_form(0, 0, b1, b2)) == want);

            Scalar a1 = rand_q(), c1 = rand_q(), a3 = rand_q(), a4 = rand_q();
            Form want2 = (Scalar(2) * a1 * a1 + Scalar(2) * c1 * c1 - a3 * a3 - a4 * a4) * Form::mono("1234") +
                         Scalar(2) * (a1 * a1 - c1 * c1) * (Form::mono("1256") + Form::mono("3456"));
            CHECK(sigma(reduced_w1w3_form(a1, c1, a3, a4)) == want2);
        }
    }

    TEST_CASE("Lie-group criterion matches the Clifford square")
    {
        std::vector<Form> pts;
        for (Case c : all_cases())
            for (int k = 0; k < 3; ++k) pts.push_back(make_torsion(rand_family(c)));
        // the so(3) locus inside case III, where the criterion vanishes
        pts.push_back(first_family_form(1, 1, 0, 0));
        pts.push_back(first_family_form(5, 3, 4, 0));
        for (int k = 0; k < 5; ++k) pts.push_back(rand_form(3));
        int holds = 0;
        for (const Form& t : pts) {
            auto lg = lie_group_criterion(t);
            auto sq = is_scalar_square(t);
            CHECK(lg.holds == sq.scalar);
            CHECK(lg.holds == sigma(t).is_zero());
            holds += lg.holds;
        }
        CHECK(holds >= 2);
    }

    TEST_CASE("SO(3)-pair reduction keeps the Gram invariants")
    {
        for (int k = 0; k < 6; ++k) {
            Vec v = {rand_q(), rand_q(), rand_q()}, w = {rand_q(), rand_q(), rand_q()};
            auto p = so3_pair_reduce(v, w);
            CHECK(p.lambda * p.lambda == dot(v, v));
            if (!p.lambda.is_zero()) CHECK(p.lambda * p.mu1 == dot(v, w));
            CHECK(p.mu1 * p.mu1 + p.mu2 * p.mu2 == dot(w, w));
            CHECK(p.mu2 >= Scalar(0));
        }
        auto z = so3_pair_reduce({0, 0, 0}, {0, 3, 4});
        CHECK(z.mu1 == Scalar(5));
        CHECK_THROWS_AS(so3_pair_reduce({1, 2}, {1, 2, 3}), std::invalid_argument);
    }

    TEST_CASE("classification survives a unitary change of frame")
    {
        Matrix g = cayley(split_so6(rand_skew()).u3);
        for (Case c : {Case::I, Case::II, Case::VII, Case::IX, Case::X}) {
            Form t = make_torsion(rand_family(c));
            auto r0 = classify_form(t), r1 = classify_form(pullback(g, t));
            CAPTURE(case_name(c));
            CHECK(r0.case_tag == case_name(c));
            CHECK(r1.case_tag == r0.case_tag);
            CHECK(r1.iso.tag == r0.iso.tag);
            CHECK(r1.type.strict == r0.type.strict);
        }
    }

    TEST_CASE("classifier recovers each case from its normal form")
    {
        for (Case c : all_cases()) {
            for (const auto& p : case_samples(c)) {
                auto r = classify_form(make_torsion(TorsionFamily::from_params(c, p)));
                CAPTURE(case_name(c));
                CHECK(r.case_tag == case_name(c));
            }
        }
        CHECK(classify_form(Form(3)).case_tag == "Kaehler");
    }

    TEST_CASE("so(3) locus of the first family")
    {
        for (auto v : std::vector<std::array<int, 3>>{{1, 1, 0}, {5, 3, 4}, {5, 4, -3}}) {
            Form t = first_family_form(v[0], v[1], v[2], 0);
            CHECK(identify_algebra(isotropy_algebra(t)).tag == "so3");
            CHECK(classify_form(t).case_tag == "XI");
        }
        CHECK(identify_algebra(isotropy_algebra(first_family_form(2, 1, 1, 0))).tag == "t1");
    }

    TEST_CASE("Bianchi exclusions")
    {
        // strict W3 with one-dimensional isotropy
        Form w3 = second_family_form(0, 0, 1, Scalar::frac(3, 10));
        CHECK(identify_algebra(isotropy_algebra(w3)).tag == "t1");
        CHECK_FALSE(bianchi_feasible(w3).feasible);
        // the reduced W1+W3 family is feasible only with alpha1 = beta1
        for (int k = 0; k < 4; ++k) {
            Scalar a = rand_positive(), b = rand_positive(), a3 = rand_positive(), a4 = rand_q();
            if (a == b) b += Scalar(1);
            CHECK_FALSE(bianchi_feasible(reduced_w1w3_form(a, b, a3, a4)).feasible);
            CHECK(bianchi_feasible(reduced_w1w3_form(a, a, a3, a4)).feasible);
        }
        // so(3) torsion cannot have holonomy t1
        Form s = make_torsion(TorsionFamily::from_params(Case::X, {{"beta2", 1}}));
        auto br = bianchi_feasible(s);
        CHECK(br.feasible);
        REQUIRE(br.witness);
        CHECK(bianchi_cyclic_sum(*br.witness) == sigma(s));
        CHECK_FALSE(bianchi_feasible(s, std::vector<Matrix>{endo_of_form(parse_form("e12-e34"))}).feasible);
        CHECK_FALSE(bianchi_feasible(s, std::vector<Matrix>{isotropy_algebra(s)[0]}).feasible);
    }

    TEST_CASE("parameter validation")
    {
        CHECK_THROWS_AS(TorsionFamily::from_params(Case::I, {{"alpha5", 0}}).validate(), std::invalid_argument);
        CHECK_THROWS_AS(TorsionFamily::from_params(Case::II, {{"alpha1", -1}}).validate(), std::invalid_argument);
        CHECK_THROWS_AS(TorsionFamily::from_params(Case::III, {{"alpha1", 1}}).validate(),
                        std::invalid_argument);
        CHECK_THROWS_AS(TorsionFamily::from_params(Case::I, {{"gamma", 1}}), std::invalid_argument);
        auto x = TorsionFamily::from_params(Case::X, {{"beta2", 3}});
        CHECK(x.b1 == Scalar(6));
        CHECK_NOTHROW(x.validate());
    }
}
