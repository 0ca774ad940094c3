#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nishida/nishida.h"

namespace {

constexpr int kUsage = 2;

using Session = std::unique_ptr<nishida_session, decltype(&nishida_session_free)>;

struct Globals {
    std::optional<int> cap, maxweight;
    std::optional<std::string> fgl, quadratic, reading, output;
};

void add_globals(CLI::App& app, Globals& g)
{
    app.add_option("--cap", g.cap, "Truncation degree (default NISHIDA_CAP or 8)");
    app.add_option("--maxweight", g.maxweight, "Largest operation weight");
    app.add_option("--fgl", g.fgl, "universal|additive");
    app.add_option("--quadratic", g.quadratic, "xf|xxt");
    app.add_option("--reading", g.reading, "Substitution reading: whole|literal");
    app.add_option("--output", g.output, "text|json");
}

nishida_status configure(nishida_session* s, const Globals& g)
{
    auto set = [&](const char* key, const std::string& v) { return nishida_session_set(s, key, v.c_str()); };
    std::pair<const char*, std::optional<std::string>> opts[] = {
        {"cap", g.cap ? std::optional(std::to_string(*g.cap)) : std::nullopt},
        {"maxweight", g.maxweight ? std::optional(std::to_string(*g.maxweight)) : std::nullopt},
        {"fgl", g.fgl},
        {"quadratic", g.quadratic},
        {"reading", g.reading},
        {"output", g.output},
    };
    for (const auto& [key, v] : opts)
        if (v) {
            nishida_status st = set(key, *v);
            if (st != NISHIDA_OK)
                return st;
        }
    return NISHIDA_OK;
}

int finish(nishida_session* s, nishida_status st)
{
    if (st == NISHIDA_OK || st == NISHIDA_VERIFY_FAILED) {
        std::fputs(nishida_output(s), stdout);
        return st;
    }
    std::fprintf(stderr, "error: %s (%s)\n", nishida_last_error(s), nishida_status_string(st));
    return st;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact mod 2 computations with Q-rings, D-rings and their coactions"};
    app.require_subcommand(1);
    Globals g;
    add_globals(app, g);

    std::string algebra = "A", side = "homology", manifold, variant = "tangential", suite = "all";
    int gen = 0, maxdeg = 4;
    std::optional<int> deg;
    std::function<nishida_status(nishida_session*)> run;

    auto sub = [&](CLI::App& parent, const char* name, const char* desc) {
        CLI::App* c = parent.add_subcommand(name, desc);
        c->fallthrough();
        return c;
    };

    CLI::App* cop = sub(app, "coproduct", "Coproduct of a generator");
    cop->add_option("--algebra", algebra, "A (Milnor) or B (Faa di Bruno)");
    cop->add_option("--gen", gen, "Generator index")->required();
    cop->callback([&] { run = [&](nishida_session* s) { return nishida_coproduct(s, algebra.c_str(), gen); }; });

    CLI::App* ant = sub(app, "antipode", "Antipode of a generator");
    ant->add_option("--algebra", algebra, "A or B");
    ant->add_option("--gen", gen, "Generator index")->required();
    ant->callback([&] { run = [&](nishida_session* s) { return nishida_antipode(s, algebra.c_str(), gen); }; });

    CLI::App* qs = sub(app, "qstruct", "Q-structure series of a generator");
    qs->add_option("--algebra", algebra, "A or B");
    qs->add_option("--gen", gen, "Generator index")->required();
    qs->callback([&] { run = [&](nishida_session* s) { return nishida_qstruct(s, algebra.c_str(), gen); }; });

    CLI::App* ds = sub(app, "dstruct", "D-structure table with residual report");
    ds->callback([&] { run = nishida_dstruct; });

    CLI::App* dring = sub(app, "dring", "D-ring commands");
    dring->require_subcommand(1);
    CLI::App* solve = sub(*dring, "solve", "D-structure table with residual report");
    solve->callback([&] { run = nishida_dstruct; });

    CLI::App* co = sub(app, "coaction", "Extended coaction on the free ring basis");
    co->add_option("--side", side, "homology|bordism");
    co->add_option("--maxdeg", maxdeg, "Largest degree");
    co->callback([&] {
        run = [&](nishida_session* s) { return nishida_coaction(s, side.c_str(), maxdeg, g.maxweight.value_or(4)); };
    });

    CLI::App* ni = sub(app, "nishida", "Nishida relation checks");
    ni->require_subcommand(1);
    CLI::App* check = sub(*ni, "check", "Square check matrix as JSON lines");
    check->add_option("--side", side, "homology|bordism");
    check->add_option("--maxdeg", maxdeg, "Largest degree");
    check->callback([&] {
        run = [&](nishida_session* s) { return nishida_check(s, side.c_str(), maxdeg, g.maxweight.value_or(4)); };
    });

    CLI::App* fgl = sub(app, "fgl", "Formal group law commands");
    fgl->require_subcommand(1);
    CLI::App* dump = sub(*fgl, "dump", "Coefficient table and Lazard ranks");
    dump->add_option("--deg", deg, "Total degree (overrides --cap)");
    dump->callback([&] {
        run = [&](nishida_session* s) {
            if (deg) {
                nishida_status st = nishida_session_set(s, "cap", std::to_string(*deg).c_str());
                if (st != NISHIDA_OK)
                    return st;
            }
            return nishida_fgl_dump(s);
        };
    });

    CLI::App* cn = sub(app, "charnum", "Characteristic numbers");
    cn->require_subcommand(1);
    CLI::App* beta = sub(*cn, "beta", "Boardman image of a manifold");
    beta->add_option("--manifold", manifold, "e.g. RP2xRP3 or RP2+RP4")->required();
    beta->add_option("--variant", variant, "tangential|normal");
    beta->callback([&] {
        run = [&](nishida_session* s) { return nishida_charnum_beta(s, manifold.c_str(), variant.c_str()); };
    });
    CLI::App* thm4 = sub(*cn, "thm4", "Substitution compatibility report");
    thm4->callback([&] { run = nishida_charnum_thm4; });

    std::string suite_help = "all";
    for (size_t i = 0; i < nishida_suite_count(); ++i)
        suite_help += std::string("|") + nishida_suite_name(i);
    CLI::App* ver = sub(app, "verify", "Run verification suites");
    ver->add_option("--suite", suite, suite_help);
    ver->callback([&] { run = [&](nishida_session* s) { return nishida_verify(s, suite.c_str()); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    Session s(nishida_session_new(), nishida_session_free);
    if (!s) {
        std::fputs("error: out of memory\n", stderr);
        return NISHIDA_INTERNAL;
    }
    if (*nishida_last_error(s.get())) {
        std::fprintf(stderr, "error: %s\n", nishida_last_error(s.get()));
        return kUsage;
    }
    nishida_status st = configure(s.get(), g);
    if (st != NISHIDA_OK)
        return finish(s.get(), st);
    return finish(s.get(), run(s.get()));
}
