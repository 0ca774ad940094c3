// One line per acceptance criterion; exit status 0 iff all pass.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "nishida/commands.hpp"

using namespace nishida;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

void suite(Outcome& o, const std::string& name, const SessionConfig& cfg = {})
{
    Report r = run_suite(name, cfg);
    int n = 0;
    for (const auto& l : r.lines)
        n += l.status == Status::Pass;
    o.require(r.all_pass(), "suite " + name + " failed at degree " + std::to_string(r.first_failure_degree()));
    if (o.ok)
        o.detail = std::to_string(n) + " checks";
}

// Partitions of n into parts not of the form 2^k - 1, by direct enumeration.
int brute_partitions(int n, int largest)
{
    if (n == 0)
        return 1;
    int count = 0;
    for (int p = std::min(n, largest); p >= 1; --p) {
        if (((p + 1) & p) == 0)
            continue;
        count += brute_partitions(n - p, p);
    }
    return count;
}

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args)
{
    Run r;
    std::string cmd = std::string(NISHIDA_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), got);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

    criteria.emplace_back("Hopf axioms and antipode through grade 12", [] {
        Outcome o;
        suite(o, "hopf");
        SessionConfig c;
        o.require(cmd_coproduct(c, "B", 1).output == "h0⊗h1 + h1⊗h0^2\n", "coproduct of h1");
        return o;
    });

    criteria.emplace_back("closed form of Q_t(xi0) and zero residual", [] {
        Outcome o;
        suite(o, "qstruct");
        SessionConfig c;
        c.cap = 7;
        o.require(cmd_qstruct(c, "A", 0).output == "Q_t(ξ0) = ξ0^2 + (ξ0·ξ1)·t + (ξ0·ξ2)·t^3 + (ξ0·ξ3)·t^7 + O(t^8)\n",
                  "printed series");
        return o;
    });

    criteria.emplace_back("interchange symmetry with negative control", [] {
        Outcome o;
        suite(o, "interchange");
        return o;
    });

    criteria.emplace_back("epsilon is a bialgebra map", [] {
        Outcome o;
        suite(o, "epsilon");
        return o;
    });

    criteria.emplace_back("Lazard model axioms and ranks", [] {
        Outcome o;
        const std::vector<int> listed{1, 0, 1, 0, 2, 1, 3, 1, 5};
        for (int n = 0; n <= 8; ++n)
            o.require(brute_partitions(n, n) == listed[n], "enumeration disagrees with the listed rank " + std::to_string(n));
        auto F = build_universal_fgl(9);
        for (int n = 0; n <= 8; ++n)
            o.require(lazard_rank(*F, n) == listed[n], "rank " + std::to_string(n));
        suite(o, "fgl");
        return o;
    });

    criteria.emplace_back("additive collapse at cap 8", [] {
        Outcome o;
        SessionConfig c;
        c.cap = 8;
        suite(o, "collapse", c);
        return o;
    });

    criteria.emplace_back("coaction extension: comodule and rewrite consistency", [] {
        Outcome o;
        suite(o, "coaction");
        return o;
    });

    criteria.emplace_back("Nishida squares on both sides", [] {
        Outcome o;
        suite(o, "nishida");
        return o;
    });

    criteria.emplace_back("Thom reduction matches the homology side", [] {
        Outcome o;
        suite(o, "thom");
        return o;
    });

    criteria.emplace_back("characteristic numbers", [] {
        Outcome o;
        SessionConfig c;
        o.require(cmd_charnum_beta(c, "RP1", Variant::Tangential).output == "0\n", "RP1");
        o.require(cmd_charnum_beta(c, "RP2", Variant::Tangential).output == "h0·h2 + h1^2\n", "RP2");
        suite(o, "charnum");
        return o;
    });

    criteria.emplace_back("substitution laws and reading comparison", [] {
        Outcome o;
        suite(o, "substitution");
        Report r = run_suite("substitution", {});
        bool literal = false;
        for (const auto& l : r.lines)
            literal |= l.status == Status::Info && l.name.rfind("literal reading", 0) == 0;
        o.require(literal, "literal-reading comparison missing");
        return o;
    });

    criteria.emplace_back("determinism of verify --suite all --cap 8", [] {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        Run a = run_cli("verify --suite all --cap 8");
        Run b = run_cli("verify --suite all --cap 8");
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(a.status == 0 && b.status == 0, "exit " + std::to_string(a.status) + "/" + std::to_string(b.status));
        o.require(!a.out.empty() && a.out == b.out, "reports differ");
        o.require(secs < 600.0, "too slow");
        Run j = run_cli("verify --suite all --cap 8 --output json");
        Run k = run_cli("verify --suite all --cap 8 --output json");
        o.require(j.status == 0 && j.out == k.out, "json reports differ");
        if (o.ok) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%zu bytes, %.1f s", a.out.size(), secs);
            o.detail = buf;
        }
        return o;
    });

    bool all = true;
    int n = 0;
    for (const auto& [title, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        all &= o.ok;
        std::printf("criterion %2d: %s  %s", ++n, o.ok ? "PASS" : "FAIL", title.c_str());
        if (!o.detail.empty())
            std::printf("  (%s)", o.detail.c_str());
        std::printf("\n");
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
