#include "doctest.h"
#include "schema_check.hpp"
#include "support.hpp"

#include "pt/orbits.hpp"
#include "pt/report.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>

using namespace pt;
using namespace pt_test;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string(PT_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

Json run_json(const std::string& args, int want_status = 0)
{
    auto r = run("--json " + args);
    CHECK(r.status == want_status);
    return Json::parse(r.out);
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("classify output equals the library report")
    {
        auto j = run_json("classify --form \"e125+e345\"");
        CHECK(j["result"] == to_json(classify_form(parse_form("e125+e345"))));
        CHECK(j["backend"] == "rational");
        CHECK(j["status"] == 0);
        auto sc = SchemaCheck::load();
        CHECK(sc.validate(j, sc.root()) == "");
        CHECK(sc.validate(j["result"], sc.def("classification")) == "");
    }

    TEST_CASE("output is byte-identical across runs")
    {
        for (const char* args : {"--json example s3xs3-so3", "classify --case X --beta2 1", "--json tables 3"}) {
            auto a = run(args), b = run(args);
            CHECK(a.status == 0);
            CHECK(a.out == b.out);
            CHECK_FALSE(a.out.empty());
        }
    }

    TEST_CASE("exit codes")
    {
        CHECK(run("classify --form e999").status == 2);
        CHECK(run("classify --bogus").status == 2);
        CHECK(run("").status == 2);
        CHECK(run("classify").status == 2);
        CHECK(run("example s3xs3-so3 --param b=1 --param d=1").status == 2);
        CHECK(run("example nil-ii").status == 1);
        CHECK(run("tables 5").status == 1);
        CHECK(run("tables 3").status == 0);
        CHECK(run("--backend quad classify --form e125").status == 2);
    }

    TEST_CASE("subcommands")
    {
        CHECK(run_json("isotropy --case X --beta2 1")["result"]["isoLabel"] == "so3");
        CHECK(run_json("family --case II --alpha1 2")["result"]["norms"]["T2"] == "4");
        auto sig = run_json("sigma --case VIII --beta2 1 --bianchi")["result"];
        CHECK(sig["sigma"]["text"] == "2e1234 - 2e1256 - 2e3456");
        CHECK(sig["bianchi"]["feasible"] == true);
        CHECK(run_json("clifford --form \"-e125-e346\"")["result"]["scalarSquare"] == true);
        auto sp = run_json("spinors --case II --alpha1 1")["result"];
        CHECK(sp["parallelSpinors"] == 4);
        CHECK(sp["spectrum"] == Json::array({-2.0, -2.0, 2.0, 2.0}));
        CHECK(run_json("betti --equations \"(0,0,0,0,12,34)\"")["result"]["betti"] == Json::array({1, 4, 8, 10, 8, 4, 1}));
        auto sw = run_json("sweep s3xs3-t2 --grid \"s=1,2;t=1\"")["result"];
        CHECK(sw.size() == 2);
        CHECK(run_json("sweep s3xs3-t2")["result"].empty());
        auto inv = run_json("invariants")["result"];
        CHECK(inv["total"] == 8);
        CHECK(run_json("example --list")["result"].size() >= 14);
    }

    TEST_CASE("float backend from the command line and the environment")
    {
        auto j = run_json("--backend float classify --form \"e125+e345\"");
        CHECK(j["backend"] == "float");
        CHECK(j["result"]["strictType"] == "W4");
        auto e = run("--json classify --form e125");
        CHECK(Json::parse(e.out)["backend"] == "rational");
        auto env = run("--json classify --form e125 2>/dev/null; PT_BACKEND=float " + std::string(PT_CLI) + " --json classify --form e125");
        CHECK(env.out.find("\"float\"") != std::string::npos);
    }

    TEST_CASE("text output")
    {
        auto r = run("classify --form \"e125+e345\"");
        CHECK(r.status == 0);
        CHECK(r.out.find("result.strictType") != std::string::npos);
        CHECK(r.out.find("W4") != std::string::npos);
    }
}
