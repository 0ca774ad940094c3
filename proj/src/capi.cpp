#include "nishida/nishida.h"

#include <functional>
#include <new>
#include <string>

#include "nishida/commands.hpp"

using namespace nishida;

struct nishida_session {
    SessionConfig cfg;
    std::string output;
    std::string error;
};

namespace {

int parse_int(const std::string& v, const char* what)
{
    try {
        std::size_t used = 0;
        int n = std::stoi(v, &used);
        if (used == v.size())
            return n;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("invalid ") + what + " '" + v + "'");
}

nishida_status guarded(nishida_session* s, const std::function<CommandResult()>& f)
{
    if (!s)
        return NISHIDA_USAGE;
    s->error.clear();
    try {
        CommandResult r = f();
        s->output = std::move(r.output);
        return r.status == 0 ? NISHIDA_OK : NISHIDA_VERIFY_FAILED;
    } catch (const UsageError& e) {
        s->error = e.what();
        return NISHIDA_USAGE;
    } catch (const BudgetError& e) {
        s->error = e.what();
        return NISHIDA_BUDGET;
    } catch (const TruncationError& e) {
        s->error = e.what();
        return NISHIDA_BUDGET;
    } catch (const AlgebraError& e) {
        s->error = e.what();
        return NISHIDA_ALGEBRA;
    } catch (const std::exception& e) {
        s->error = e.what();
        return NISHIDA_INTERNAL;
    } catch (...) {
        s->error = "unknown failure";
        return NISHIDA_INTERNAL;
    }
}

std::string str(const char* p) { return p ? p : ""; }

}  // namespace

extern "C" {

nishida_session* nishida_session_new(void)
{
    auto* s = new (std::nothrow) nishida_session;
    if (s) {
        try {
            s->cfg.cap = default_cap();
        } catch (const std::exception& e) {
            s->error = e.what();
        }
    }
    return s;
}

void nishida_session_free(nishida_session* s) { delete s; }

nishida_status nishida_session_set(nishida_session* s, const char* key, const char* value)
{
    return guarded(s, [&]() -> CommandResult {
        std::string k = str(key), v = str(value);
        SessionConfig c = s->cfg;
        if (k == "cap")
            c.cap = parse_int(v, "cap");
        else if (k == "maxweight")
            c.maxweight = parse_int(v, "maxweight");
        else if (k == "fgl")
            c.fgl = parse_fgl(v);
        else if (k == "quadratic")
            c.quadratic = parse_quadratic(v);
        else if (k == "reading")
            c.reading = parse_reading(v);
        else if (k == "output")
            c.output = parse_output(v);
        else
            throw UsageError("unknown option '" + k + "'");
        c.validate();
        s->cfg = c;
        return {0, s->output};
    });
}

const char* nishida_last_error(const nishida_session* s) { return s ? s->error.c_str() : "null session"; }

const char* nishida_output(const nishida_session* s) { return s ? s->output.c_str() : ""; }

nishida_status nishida_coproduct(nishida_session* s, const char* algebra, int gen)
{
    return guarded(s, [&] { return cmd_coproduct(s->cfg, str(algebra), gen); });
}

nishida_status nishida_antipode(nishida_session* s, const char* algebra, int gen)
{
    return guarded(s, [&] { return cmd_antipode(s->cfg, str(algebra), gen); });
}

nishida_status nishida_qstruct(nishida_session* s, const char* algebra, int gen)
{
    return guarded(s, [&] { return cmd_qstruct(s->cfg, str(algebra), gen); });
}

nishida_status nishida_dstruct(nishida_session* s)
{
    return guarded(s, [&] { return cmd_dstruct(s->cfg); });
}

nishida_status nishida_coaction(nishida_session* s, const char* side, int maxdeg, int maxweight)
{
    return guarded(s, [&] { return cmd_coaction(s->cfg, parse_side(str(side)), maxdeg, maxweight); });
}

nishida_status nishida_check(nishida_session* s, const char* side, int maxdeg, int maxweight)
{
    return guarded(s, [&] { return cmd_nishida_check(s->cfg, parse_side(str(side)), maxdeg, maxweight); });
}

nishida_status nishida_fgl_dump(nishida_session* s)
{
    return guarded(s, [&] { return cmd_fgl_dump(s->cfg); });
}

nishida_status nishida_charnum_beta(nishida_session* s, const char* manifold, const char* variant)
{
    return guarded(s, [&] { return cmd_charnum_beta(s->cfg, str(manifold), parse_variant(str(variant))); });
}

nishida_status nishida_charnum_thm4(nishida_session* s)
{
    return guarded(s, [&] { return cmd_charnum_thm4(s->cfg); });
}

nishida_status nishida_verify(nishida_session* s, const char* suite)
{
    return guarded(s, [&] { return cmd_verify(s->cfg, str(suite)); });
}

size_t nishida_suite_count(void) { return suite_names().size(); }

const char* nishida_suite_name(size_t i)
{
    const auto& n = suite_names();
    return i < n.size() ? n[i].c_str() : nullptr;
}

const char* nishida_status_string(nishida_status st)
{
    switch (st) {
    case NISHIDA_OK: return "ok";
    case NISHIDA_VERIFY_FAILED: return "verification failed";
    case NISHIDA_USAGE: return "usage error";
    case NISHIDA_BUDGET: return "budget exceeded";
    case NISHIDA_ALGEBRA: return "algebra error";
    case NISHIDA_INTERNAL: return "internal error";
    }
    return "unknown";
}

}  // extern "C"
