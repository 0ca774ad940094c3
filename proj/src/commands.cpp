#include "nishida/commands.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace nishida {

namespace {

using Json = nlohmann::ordered_json;

Json header(const std::string& command)
{
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
}

std::string line(const Json& j) { return j.dump() + "\n"; }

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Coefficients t^k of a univariate series in increasing k.
Json series_terms(const PowerSeries& s)
{
    Json arr = Json::array();
    for (int k = 0; k <= s.cap(); ++k) {
        Poly c = s.coeff(k);
        if (!c.is_zero())
            arr.push_back(Json{{"t", k}, {"coeff", c.to_string()}});
    }
    return arr;
}

FreeOperationRing q_ring(int maxdeg, int maxweight)
{
    FreeOperationRing::Options o;
    o.gens = {{"x", 0, 1}};
    o.maxdeg = maxdeg;
    o.maxweight = maxweight;
    return FreeOperationRing(o);
}

void check_gen(int gen)
{
    if (gen < 0)
        throw UsageError("generator index must be non-negative");
}

void check_range(const SessionConfig& cfg, int maxdeg, int maxweight)
{
    if (maxdeg < 0 || maxweight < 1)
        throw UsageError("maxdeg must be >= 0 and maxweight >= 1");
    if (maxdeg > cfg.max_cap || maxweight > 8)
        throw BudgetError("bidegree range exceeds the budget");
}

}  // namespace

HopfPresentation parse_algebra(const std::string& s)
{
    std::string l = lower(s);
    if (l == "a" || l == "milnor")
        return HopfPresentation::milnor();
    if (l == "b" || l == "faa_di_bruno" || l == "faadibruno")
        return HopfPresentation::faa_di_bruno();
    throw UsageError("unknown algebra '" + s + "'");
}

Side parse_side(const std::string& s)
{
    if (lower(s) == "homology")
        return Side::Homology;
    if (lower(s) == "bordism")
        return Side::Bordism;
    throw UsageError("unknown side '" + s + "'");
}

Variant parse_variant(const std::string& s)
{
    if (lower(s) == "tangential")
        return Variant::Tangential;
    if (lower(s) == "normal")
        return Variant::Normal;
    throw UsageError("unknown variant '" + s + "'");
}

CommandResult cmd_coproduct(const SessionConfig& cfg, const std::string& algebra, int gen)
{
    cfg.validate();
    check_gen(gen);
    HopfPresentation H = parse_algebra(algebra);
    if (H.grade(gen) > 4 * cfg.max_cap)
        throw BudgetError("generator beyond the budget");
    Poly delta = coproduct(H, gen);
    if (cfg.output == OutputFormat::Json) {
        Json pairs = Json::array();
        for (const Mono& t : delta.canonical_terms()) {
            auto [left, right] =
                t.split([](VarId u) { return SymbolTable::instance().info(u).slot == 0; });
            pairs.push_back(Json::array({left.empty() ? "1" : left.to_string(),
                                         right.empty() ? "1" : right.to_string()}));
        }
        Json j;
        j["schema"] = 1;
        j["algebra"] = std::string(1, H.letter());
        j["generator"] = gen;
        j["coproduct"] = pairs;
        return {0, line(j)};
    }
    return {0, delta.to_string(2) + "\n"};
}

CommandResult cmd_antipode(const SessionConfig& cfg, const std::string& algebra, int gen)
{
    cfg.validate();
    check_gen(gen);
    HopfPresentation H = parse_algebra(algebra);
    if (H.grade(gen) > 4 * cfg.max_cap)
        throw BudgetError("generator beyond the budget");
    std::string v = antipode(H, gen).to_string();
    if (cfg.output == OutputFormat::Json) {
        Json j = header("antipode");
        j["algebra"] = std::string(1, H.letter());
        j["gen"] = gen;
        j["value"] = v;
        return {0, line(j)};
    }
    return {0, v + "\n"};
}

CommandResult cmd_qstruct(const SessionConfig& cfg, const std::string& algebra, int gen)
{
    cfg.validate();
    check_gen(gen);
    HopfPresentation H = parse_algebra(algebra);
    auto table = solve_generator_qstructure(H);
    PowerSeries s = table->entry(gen, cfg.cap);
    std::string sym = Poly::var(H.gen(gen)).to_string();
    if (cfg.output == OutputFormat::Json) {
        Json j = header("qstruct");
        j["algebra"] = std::string(1, H.letter());
        j["gen"] = gen;
        j["cap"] = cfg.cap;
        j["terms"] = series_terms(s);
        return {0, line(j)};
    }
    return {0, "Q_t(" + sym + ") = " + s.to_string({"t"}) + " + O(t^" + std::to_string(cfg.cap + 1) + ")\n"};
}

CommandResult cmd_dstruct(const SessionConfig& cfg)
{
    cfg.validate();
    auto F = build_fgl(cfg.fgl, 2 * cfg.cap + 4);
    auto ds = solve_tensor_dstructure(F, cfg.quadratic);
    Report rep = dstructure_report(*ds, cfg.cap);
    rep.suite = std::string("dstruct:") + fgl_name(cfg.fgl) + ":" + quadratic_name(cfg.quadratic);
    std::ostringstream os;
    for (int n = 0; 2 * (n + 1) <= cfg.cap; ++n) {
        int k = cfg.cap - 2 * (n + 1);
        PowerSeries e = ds->entry(n, k);
        if (cfg.output == OutputFormat::Json) {
            Json j = header("dstruct");
            j["fgl"] = fgl_name(cfg.fgl);
            j["quadratic"] = quadratic_name(cfg.quadratic);
            j["gen"] = n;
            j["precision"] = k;
            j["terms"] = series_terms(e);
            os << line(j);
        } else {
            os << "D_t(h" << n << ") = " << e.to_string({"t"}) << " + O(t^" << k + 1 << ")\n";
        }
    }
    os << format_report(rep, cfg.output);
    return {rep.all_pass() ? 0 : 1, os.str()};
}

CommandResult cmd_coaction(const SessionConfig& cfg, Side side, int maxdeg, int maxweight)
{
    cfg.validate();
    check_range(cfg, maxdeg, maxweight);
    std::ostringstream os;
    auto emit = [&](const ExtendedCoaction& ec, const FreeOperationRing& R) {
        for (int w = 1; w <= maxweight; ++w)
            for (int d = 0; d <= maxdeg; ++d)
                for (const Poly& b : R.basis(d, w)) {
                    std::string v = ec(b).to_string(2);
                    if (cfg.output == OutputFormat::Json) {
                        Json j = header("coaction");
                        j["side"] = side_name(side);
                        j["degree"] = d;
                        j["weight"] = w;
                        j["element"] = b.to_string();
                        j["value"] = v;
                        os << line(j);
                    } else {
                        os << "(" << d << "," << w << ")  " << b.to_string() << "  ->  " << v << "\n";
                    }
                }
    };
    if (side == Side::Homology) {
        auto Q = q_ring(maxdeg, maxweight);
        ExtendedCoaction ec(Q, identity_generator_values(Q));
        emit(ec, Q);
    } else {
        auto F = build_fgl(cfg.fgl, std::max(16, 2 * maxdeg + 4));
        auto D = build_free_dring({{"x", 0, 1}}, F, maxdeg, maxweight);
        ExtendedCoaction ec(D, solve_tensor_dstructure(F), identity_generator_values(D));
        emit(ec, D);
    }
    return {0, os.str()};
}

CommandResult cmd_nishida_check(const SessionConfig& cfg, Side side, int maxdeg, int maxweight)
{
    cfg.validate();
    check_range(cfg, maxdeg, maxweight);
    const int ringdeg = 2 * maxdeg + cfg.cap, ringweight = 2 * maxweight;
    check_range(cfg, std::min(ringdeg, cfg.max_cap), std::min(ringweight, 8));
    Report r;
    if (side == Side::Homology) {
        auto Q = q_ring(ringdeg, ringweight);
        ExtendedCoaction ec(Q, identity_generator_values(Q));
        r = nishida_square_check(ec, basis_elements(Q, maxdeg, maxweight), cfg.cap);
    } else {
        auto F = build_fgl(cfg.fgl, ringdeg + 4);
        auto D = build_free_dring({{"x", 0, 1}}, F, ringdeg, ringweight);
        ExtendedCoaction ec(D, solve_tensor_dstructure(F), identity_generator_values(D));
        r = nishida_square_check(ec, basis_elements(D, maxdeg, maxweight), cfg.cap);
        r.suite += std::string(":") + fgl_name(cfg.fgl);
    }
    return {r.all_pass() ? 0 : 1, format_report(r, OutputFormat::Json)};
}

CommandResult cmd_fgl_dump(const SessionConfig& cfg)
{
    cfg.validate();
    auto F = build_fgl(cfg.fgl, cfg.cap + 1);
    std::ostringstream os;
    for (int i = 1; i <= cfg.cap; ++i)
        for (int j = i; i + j <= cfg.cap; ++j) {
            Poly c = F->coeff(i, j);
            if (c.is_zero())
                continue;
            if (cfg.output == OutputFormat::Json) {
                Json o = header("fgl");
                o["fgl"] = fgl_name(cfg.fgl);
                o["i"] = i;
                o["j"] = j;
                o["coeff"] = c.to_string();
                os << line(o);
            } else {
                os << "a" << i << "," << j << " = " << c.to_string() << "\n";
            }
        }
    for (int n = 0; n <= cfg.cap; ++n) {
        if (cfg.output == OutputFormat::Json) {
            Json o = header("fgl");
            o["fgl"] = fgl_name(cfg.fgl);
            o["degree"] = n;
            o["rank"] = F->rank(n);
            os << line(o);
        } else {
            os << "rank " << n << " = " << F->rank(n) << "\n";
        }
    }
    return {0, os.str()};
}

CommandResult cmd_charnum_beta(const SessionConfig& cfg, const std::string& manifold, Variant variant)
{
    cfg.validate();
    Manifold M;
    try {
        M = parse_manifold(manifold);
    } catch (const AlgebraError& e) {
        throw UsageError(e.what());
    }
    for (const auto& X : M)
        if (X.dimension() > cfg.max_cap)
            throw BudgetError("manifold dimension beyond the budget");
    std::string v = boardman(M, variant).to_string();
    if (v.empty())
        v = "0";
    if (cfg.output == OutputFormat::Json) {
        Json j = header("charnum beta");
        j["manifold"] = manifold_name(M);
        j["variant"] = variant_name(variant);
        j["value"] = v;
        return {0, line(j)};
    }
    return {0, v + "\n"};
}

CommandResult cmd_charnum_thm4(const SessionConfig& cfg)
{
    cfg.validate();
    Report r = theorem4_check(std::min(cfg.cap, 8), cfg.reading);
    return {r.all_pass() ? 0 : 1, format_report(r, cfg.output)};
}

CommandResult cmd_verify(const SessionConfig& cfg, const std::string& suite)
{
    std::vector<Report> rs = run_suites(suite, cfg);
    return {all_pass(rs) ? 0 : 1, format_reports(rs, cfg.output)};
}

}  // namespace nishida
