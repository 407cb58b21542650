#include "doctest.h"
#include "support.hpp"

#include "pt/scalar.hpp"

using namespace pt;
using pt_test::rand_q;

TEST_SUITE("scalars")
{
    TEST_CASE("surd arithmetic")
    {
        Scalar r2 = sqrt(Scalar(2));
        CHECK(r2 * r2 == Scalar(2));
        CHECK(sqrt(Scalar(8)) == Scalar(2) * r2);
        CHECK(sqrt(Scalar(6)) == r2 * sqrt(Scalar(3)));
        CHECK((Scalar(1) + r2) * (Scalar(1) - r2) == Scalar(-1));
        CHECK(Scalar(1) / (Scalar(1) + r2) == r2 - Scalar(1));
        CHECK(sqrt(Scalar::frac(9, 4)) == Scalar::frac(3, 2));
        CHECK(sqrt(Scalar::frac(1, 2)).str() == "1/2*sqrt(2)");
    }

    TEST_CASE("sign and ordering of surds")
    {
        Scalar r2 = sqrt(Scalar(2)), r3 = sqrt(Scalar(3));
        CHECK((r2 - Scalar::frac(141421, 100000)).sign() == 1);
        CHECK((r2 - Scalar::frac(141422, 100000)).sign() == -1);
        CHECK(r2 + r3 < sqrt(Scalar(10)));
        CHECK(r2 + r3 > sqrt(Scalar(10)) - Scalar::frac(2, 100));
        Scalar nested = sqrt(Scalar(5) + Scalar(2) * sqrt(Scalar(6)));
        CHECK_FALSE(nested.exact());
        CHECK((r2 + r3 - nested).is_zero(1e-12));
        CHECK(r3 - r2 > Scalar(0));
    }

    TEST_CASE("field axioms on random surds")
    {
        for (int k = 0; k < 40; ++k) {
            Scalar a = rand_q() + rand_q() * sqrt(Scalar(2)) + rand_q() * sqrt(Scalar(15));
            Scalar b = rand_q() + rand_q() * sqrt(Scalar(3));
            Scalar c = rand_q() * sqrt(Scalar(5));
            CHECK((a + b) - b == a);
            CHECK(a * (b + c) == a * b + a * c);
            if (!b.is_zero()) CHECK((a * b) / b == a);
            CHECK(parse_scalar(a.str()) == a);
            CHECK(std::abs((a * b).to_double() - a.to_double() * b.to_double()) < 1e-9);
        }
    }

    TEST_CASE("non-rational radicands fall back to double")
    {
        Scalar x = sqrt(Scalar(1) + sqrt(Scalar(2)));
        CHECK_FALSE(x.exact());
        CHECK(std::abs(x.to_double() * x.to_double() - (1 + std::sqrt(2.0))) < 1e-12);
    }

    TEST_CASE("float scalars compare with tolerance")
    {
        Scalar a = Scalar::real(0.1) + Scalar::real(0.2);
        CHECK(a == Scalar::real(0.3));
        CHECK(a.is_zero(1e-9) == false);
        CHECK((a - Scalar::real(0.3)).is_zero(1e-12));
        CHECK(convert(Scalar::frac(1, 3), Backend::floating).exact() == false);
    }

    TEST_CASE("rational literals")
    {
        CHECK(parse_rational("3") == mpq_class(3));
        CHECK(parse_rational("-1/2") == mpq_class(-1, 2));
        CHECK(parse_rational("0.25") == mpq_class(1, 4));
        CHECK(parse_rational("1e-3") == mpq_class(1, 1000));
        CHECK(parse_scalar("1/2*sqrt(8) + (1 - sqrt(2))") == Scalar(1));
        CHECK_THROWS_AS(parse_scalar("abc"), parse_error);
        CHECK_THROWS_AS(parse_scalar("1/0"), parse_error);
        CHECK_THROWS_AS(parse_scalar("(1+2"), parse_error);
    }
}
