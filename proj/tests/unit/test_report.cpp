#include "doctest.h"
#include "schema_check.hpp"
#include "support.hpp"

#include "pt/catalog.hpp"
#include "pt/report.hpp"
#include "pt/tables.hpp"

using namespace pt;
using namespace pt_test;

TEST_SUITE("report")
{
    TEST_CASE("scalars and forms serialize exactly")
    {
        CHECK(to_json(sqrt(Scalar::frac(1, 2))) == "1/2*sqrt(2)");
        auto f = to_json(parse_form("e125 - 1/2*e346"));
        CHECK(f["degree"] == 3);
        CHECK(f["terms"]["346"] == "-1/2");
        CHECK(f["text"] == "e125 - 1/2*e346");
    }

    TEST_CASE("classification reports match the schema")
    {
        auto sc = SchemaCheck::load();
        for (const char* lit : {"e125+e345", "e135-e146-e236-e245", "3e135+e146+e236+e245", "e123"}) {
            auto j = to_json(classify_form(parse_form(lit)));
            CHECK(sc.validate(j, sc.def("classification")) == "");
        }
        Json broken = to_json(classify_form(parse_form("e125+e345")));
        broken.erase("caseTag");
        CHECK(sc.validate(broken, sc.def("classification")) != "");
    }

    TEST_CASE("catalog models and tables match the schema")
    {
        auto sc = SchemaCheck::load();
        for (const char* name : {"s3xs3-so3", "nil-iii", "s5xs1"})
            CHECK(sc.validate(to_json(build(name, {})), sc.def("catalogModel")) == "");
        CHECK(sc.validate(to_json(reproduce_table(3)), sc.def("table")) == "");
        Json env = envelope({"classify"}, Backend::rational, 1e-9, 0, Json::object());
        CHECK(sc.validate(env, sc.root()) == "");
        env["backend"] = "quad";
        CHECK(sc.validate(env, sc.root()) != "");
    }

    TEST_CASE("serialization is deterministic")
    {
        auto a = to_json(build("s3xs3-t2", {{"s", 2}, {"t", 1}})).dump();
        auto b = to_json(build("s3xs3-t2", {{"s", 2}, {"t", 1}})).dump();
        CHECK(a == b);
        auto keys = to_json(classify_form(parse_form("e125+e345")));
        std::vector<std::string> order;
        for (const auto& [k, v] : keys.items()) order.push_back(k);
        CHECK(order.front() == "norms");
        CHECK(order[1] == "strictType");
    }

    TEST_CASE("text rendering")
    {
        Json j{{"a", 1}, {"b", {{"c", "x"}, {"d", Json::array({1, 2})}}}, {"e", Json::array({Json{{"f", true}}})}};
        auto txt = render_text(j);
        CHECK(txt.find("a       1\n") != std::string::npos);
        CHECK(txt.find("b.c     x\n") != std::string::npos);
        CHECK(txt.find("b.d     [1, 2]\n") != std::string::npos);
        CHECK(txt.find("e[0].f  true\n") != std::string::npos);
    }

    TEST_CASE("catalog index lists every entry")
    {
        auto idx = catalog_index();
        CHECK(idx.size() == catalog_entries().size());
        CHECK(idx[0].contains("params"));
    }
}
