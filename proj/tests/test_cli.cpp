#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run cli(const std::string& args, const std::string& env = "NISHIDA_CAP=")
{
    Run r;
    std::string cmd = env + " " + NISHIDA_CLI + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), got);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

int count_lines(const std::string& s, const std::string& needle)
{
    int n = 0;
    for (std::size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("table commands")
{
    Run r = cli("coproduct --algebra B --gen 1");
    CHECK(r.status == 0);
    CHECK(r.out == "h0⊗h1 + h1⊗h0^2\n");

    r = cli("coproduct --algebra A --gen 1 --output json");
    CHECK(r.out == "{\"schema\":1,\"algebra\":\"A\",\"generator\":1,\"coproduct\":[[\"ξ0\",\"ξ1\"],[\"ξ1\",\"ξ0^2\"]]}\n");

    r = cli("qstruct --algebra A --gen 0 --cap 8");
    CHECK(r.status == 0);
    CHECK(r.out == "Q_t(ξ0) = ξ0^2 + (ξ0·ξ1)·t + (ξ0·ξ2)·t^3 + (ξ0·ξ3)·t^7 + O(t^9)\n");

    r = cli("fgl dump --deg 4");
    CHECK(r.out == "a1,2 = m2\nrank 0 = 1\nrank 1 = 0\nrank 2 = 1\nrank 3 = 0\nrank 4 = 2\n");

    r = cli("charnum beta --manifold RP2 --variant tangential");
    CHECK(r.out == "h0·h2 + h1^2\n");
    r = cli("charnum beta --manifold RP2xRP2 --variant normal");
    CHECK(r.out == "h0^-6·h2^2\n");
}

TEST_CASE("options may follow the subcommand or precede it")
{
    CHECK(cli("--cap 6 qstruct --gen 0").out == cli("qstruct --gen 0 --cap 6").out);
    CHECK(cli("--output json dring solve --fgl additive --cap 6").out ==
          cli("dstruct --fgl additive --cap 6 --output json").out);
}

TEST_CASE("verification commands report per case")
{
    Run r = cli("verify --suite hopf --cap 12");
    CHECK(r.status == 0);
    // xi0..xi3 and h0..h12
    CHECK(count_lines(r.out, "coassociativity") == 4 + 13);
    CHECK(count_lines(r.out, "\nfail") == 0);

    r = cli("verify --suite fgl --output json");
    CHECK(r.status == 0);
    CHECK(count_lines(r.out, "\n") == count_lines(r.out, "{\"schema\":1,\"suite\":\"fgl\""));

    r = cli("nishida check --side bordism --maxdeg 2 --maxweight 2 --cap 4");
    CHECK(r.status == 0);
    CHECK(count_lines(r.out, "\"status\":\"pass\"") > 0);
    CHECK(count_lines(r.out, "\"status\":\"fail\"") == 0);

    r = cli("charnum thm4 --cap 4 --reading literal");
    CHECK(r.status == 0);
    CHECK(r.out.find("theorem4:literal") != std::string::npos);
}

TEST_CASE("default cap from the environment")
{
    CHECK(cli("qstruct --gen 0", "NISHIDA_CAP=3").out == "Q_t(ξ0) = ξ0^2 + (ξ0·ξ1)·t + (ξ0·ξ2)·t^3 + O(t^4)\n");
    CHECK(cli("qstruct --gen 0 --cap 1", "NISHIDA_CAP=3").status == 2);
    CHECK(cli("qstruct --gen 0", "NISHIDA_CAP=x").status == 2);
}

TEST_CASE("exit codes")
{
    CHECK(cli("").status == 2);
    CHECK(cli("coproduct --gen 1 --bogus").status == 2);
    CHECK(cli("frobnicate").status == 2);
    CHECK(cli("coproduct").status == 2);
    CHECK(cli("coproduct --algebra C --gen 1").status == 2);
    CHECK(cli("verify --suite nope").status == 2);
    CHECK(cli("dstruct --fgl multiplicative").status == 2);
    CHECK(cli("verify --suite hopf --cap 64").status == 3);
    CHECK(cli("coaction --maxdeg 40").status == 3);
    CHECK(cli("--help").status == 0);
}
