#include "nishida/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace nishida {

namespace {

const HopfPresentation kA = HopfPresentation::milnor();
const HopfPresentation kB = HopfPresentation::faa_di_bruno();

void merge(Report& into, const Report& part, const std::string& prefix)
{
    for (CheckLine line : part.lines) {
        line.name = prefix + line.name;
        into.lines.push_back(std::move(line));
    }
}

void set_range(Report& r)
{
    if (r.lines.empty())
        return;
    r.degree_lo = r.degree_hi = r.lines.front().degree;
    for (const auto& l : r.lines) {
        r.degree_lo = std::min(r.degree_lo, l.degree);
        r.degree_hi = std::max(r.degree_hi, l.degree);
    }
}

std::string transport_name(std::string s)
{
    std::replace(s.begin(), s.end(), 'D', 'Q');
    return s;
}

std::string bidegree_name(int d, int w) { return "(" + std::to_string(d) + "," + std::to_string(w) + ")"; }

FreeOperationRing q_ring(int maxdeg, int maxweight)
{
    FreeOperationRing::Options o;
    o.gens = {{"x", 0, 1}};
    o.maxdeg = maxdeg;
    o.maxweight = maxweight;
    return FreeOperationRing(o);
}

// Tangential numbers of RP^n from multinomial parities: a multinomial
// coefficient is odd iff its parts have disjoint binary digits.
Poly rp_tangential_by_parity(int n)
{
    Poly out;
    std::vector<int> r(n + 1, 0);
    std::function<void(int, int, int, unsigned)> walk = [&](int i, int left, int weight, unsigned used) {
        if (i > n) {
            if (left == 0 && weight == n) {
                Poly term = Poly::one();
                for (int k = 0; k <= n; ++k)
                    term *= Poly::var(h(k)).pow(r[k] - (k == 0 ? 1 : 0));
                out += term;
            }
            return;
        }
        for (int c = 0; c <= left && weight + c * i <= n; ++c) {
            if (used & static_cast<unsigned>(c))
                continue;
            r[i] = c;
            walk(i + 1, left - c, weight + c * i, used | static_cast<unsigned>(c));
        }
        r[i] = 0;
    };
    walk(0, n + 1, 0, 0);
    return out;
}

// --------------------------------------------------------------------------

Report suite_hopf(const SessionConfig& cfg)
{
    Report r;
    int g = std::max(12, cfg.cap);
    merge(r, hopf_axioms_check(kA, g), "A ");
    merge(r, hopf_axioms_check(kB, g), "B ");
    return r;
}

Report suite_qstruct(const SessionConfig& cfg)
{
    Report r;
    auto qa = solve_generator_qstructure(kA);
    int k = std::max(7, cfg.cap);
    Poly x0 = Poly::var(xi(0));
    PowerSeries expected(1, k);
    for (int i = 0; (1 << i) - 1 <= k; ++i)
        expected.add_term({(1 << i) - 1}, x0 * Poly::var(xi(i)));
    PowerSeries got = qa->entry(0, k);
    r.add("closed form Q_t(xi0)", k, got == expected, got == expected ? "" : got.to_string({"t"}));
    int b = std::max(16, 2 * cfg.cap);
    r.add("residual A", b, qa->residual(b).is_zero());
    auto qb = solve_generator_qstructure(kB);
    r.add("residual B", b, qb->residual(b).is_zero());
    for (int n = 0; n <= 3; ++n) {
        PowerSeries e = qb->entry(n, 2);
        r.add("squaring h" + std::to_string(n), 2 * n, e.coeff(0) == Poly::var(h(n)).pow(2));
    }
    return r;
}

Report suite_interchange(const SessionConfig& cfg)
{
    Report r;
    int d = std::max(10, cfg.cap);
    OperationSpec sa = hopf_qspec(solve_generator_qstructure(kA));
    OperationSpec sb = hopf_qspec(solve_generator_qstructure(kB));
    for (int n = 0; n <= 2; ++n)
        merge(r, interchange_check(sa, Poly::var(xi(n)), d, "xi" + std::to_string(n)), "");
    for (int n = 0; n <= 3; ++n)
        merge(r, interchange_check(sb, Poly::var(h(n)), d, "h" + std::to_string(n)), "");
    auto bad = perturbed_spec(sa, xi(1), 2, Poly::var(xi(0)) * Poly::var(xi(1)).pow(2));
    Report neg = interchange_check(bad, Poly::var(xi(1)), d, "xi1");
    r.add("negative control perturbed xi1 fails", neg.first_failure_degree(), !neg.all_pass());
    return r;
}

Report suite_epsilon(const SessionConfig& cfg)
{
    Report r;
    merge(r, epsilon_bialgebra_check(std::max(12, cfg.cap)), "");
    merge(r, epsilon_operation_check(cfg.cap, cfg.cap), "");
    return r;
}

Report suite_fgl(const SessionConfig& cfg)
{
    Report r;
    int d = std::max(10, cfg.cap);
    auto F = build_universal_fgl(d + 1);
    merge(r, fgl_axioms_check(*F, d), "");
    for (int n = 0; n <= std::max(8, cfg.cap); ++n) {
        int got = lazard_rank(*F, n), want = count_non_dyadic_partitions(n);
        r.add("rank " + std::to_string(n), n, got == want, std::to_string(got) + " vs " + std::to_string(want));
    }
    merge(r, fgl_axioms_check(*build_fgl(FglKind::Additive, d + 1), d), "additive ");
    return r;
}

Report suite_dstruct(const SessionConfig& cfg)
{
    Report r;
    auto F = build_fgl(cfg.fgl, 2 * cfg.cap + 4);
    auto ds = solve_tensor_dstructure(F, cfg.quadratic);
    merge(r, dstructure_report(*ds, cfg.cap), std::string(fgl_name(cfg.fgl)) + " ");
    if (cfg.quadratic == Quadratic::XF) {
        int d = std::min(cfg.cap, 6);
        merge(r, interchange_check(ds->spec, Poly::var(h(0)), d, "D h0"), "");
        merge(r, interchange_check(ds->spec, Poly::var(h(1)), d - 1, "D h1"), "");
    }
    return r;
}

Report suite_collapse(const SessionConfig& cfg)
{
    Report r;
    const int c = cfg.cap;
    auto add = build_fgl(FglKind::Additive, 2 * c + 4);
    auto qb = solve_generator_qstructure(kB);
    for (Quadratic quad : {Quadratic::XF, Quadratic::XXT}) {
        auto ds = solve_tensor_dstructure(add, quad);
        for (int n = 0; 2 * (n + 1) <= c; ++n) {
            int k = c - 2 * (n + 1);
            r.add(std::string("table ") + quadratic_name(quad) + " h" + std::to_string(n), 2 * n + k,
                  ds->entry(n, k) == qb->entry(n, k));
        }
        r.add(std::string("residual ") + quadratic_name(quad), c, ds->residual(c).is_zero());
    }

    auto D = build_free_dring({{"x", 0, 1}}, add, c, cfg.maxweight);
    auto Q = q_ring(c, cfg.maxweight);
    for (int w = 1; w <= cfg.maxweight; ++w)
        for (int d = 0; d <= c; ++d) {
            bool same = D.dimension(d, w) == Q.dimension(d, w);
            const auto& bd = D.basis(d, w);
            const auto& bq = Q.basis(d, w);
            for (std::size_t k = 0; same && k < bd.size(); ++k)
                same = transport_words(bd[k], Q) == bq[k];
            r.add("basis " + bidegree_name(d, w), d, same);
        }

    auto Ds = build_free_dring({{"x", 0, 1}}, add, 12, 8);
    auto Qs = q_ring(12, 8);
    ExtendedCoaction phi(Ds, solve_tensor_dstructure(add), identity_generator_values(Ds));
    ExtendedCoaction alpha(Qs, identity_generator_values(Qs));
    Report rb = nishida_square_check(phi, basis_elements(Ds, 6, 4), 6);
    Report ra = nishida_square_check(alpha, basis_elements(Qs, 6, 4), 6);
    bool same = rb.lines.size() == ra.lines.size();
    for (std::size_t k = 0; same && k < ra.lines.size(); ++k)
        same = rb.lines[k].status == ra.lines[k].status && rb.lines[k].degree == ra.lines[k].degree &&
               transport_name(rb.lines[k].name) == ra.lines[k].name;
    r.add("square reports", 12, same, std::to_string(rb.lines.size()) + " lines");
    for (const Poly& p : basis_elements(Ds, 6, 4)) {
        auto [d, w] = bidegree(p.terms().at(0));
        r.add("coaction " + p.to_string(), d, transport_words(phi(p), Qs) == alpha(transport_words(p, Qs)));
    }
    return r;
}

Report suite_coaction(const SessionConfig& cfg)
{
    (void)cfg;
    Report r;
    auto Q = q_ring(6, 4);
    ExtendedCoaction alpha(Q, identity_generator_values(Q));
    for (int w = 1; w <= 4; ++w)
        merge(r, comodule_check(alpha.coaction(w), 6), "homology ");
    AdemRewriter rw(Q);
    merge(r, rewrite_consistency_check(alpha, 6, 4, [&](const Poly& p) { return rw.rewrite(p); }),
          "homology adem ");

    auto F = build_universal_fgl(16);
    auto D = build_free_dring({{"x", 0, 1}}, F, 6, 4);
    ExtendedCoaction phi(D, solve_tensor_dstructure(F), identity_generator_values(D));
    for (int w = 1; w <= 4; ++w)
        merge(r, comodule_check(phi.coaction(w), 6), "bordism ");
    merge(r, rewrite_consistency_check(phi, 6, 4, [&](const Poly& p) { return D.normal_form(p); }),
          "bordism relations ");
    return r;
}

Report suite_nishida(const SessionConfig& cfg)
{
    (void)cfg;
    Report r;
    auto Q = q_ring(12, 8);
    ExtendedCoaction alpha(Q, identity_generator_values(Q));
    merge(r, nishida_square_check(alpha, basis_elements(Q, 6, 4), 4), "homology ");
    merge(r, nishida_square_check(alpha, {Poly::one()}, 4), "homology ");
    for (auto [kind, cap] : {std::pair{FglKind::Universal, 4}, std::pair{FglKind::Additive, 6}}) {
        auto F = build_fgl(kind, 16);
        auto D = build_free_dring({{"x", 0, 1}}, F, 8, 8);
        ExtendedCoaction phi(D, solve_tensor_dstructure(F), identity_generator_values(D));
        merge(r, nishida_square_check(phi, basis_elements(D, 4, 4), cap),
              std::string("bordism ") + fgl_name(kind) + " ");
    }
    return r;
}

Report suite_thom(const SessionConfig& cfg)
{
    (void)cfg;
    Report r;
    auto F = build_universal_fgl(16);
    auto D = build_free_dring({{"x", 0, 1}}, F, 6, 4);
    ExtendedCoaction phi(D, solve_tensor_dstructure(F), identity_generator_values(D));
    auto Q = q_ring(6, 4);
    ExtendedCoaction alpha(Q, identity_generator_values(Q));
    merge(r, thom_comparison(phi, alpha, 4, 4), "");
    ThomReduction T = thom_reduce(lazard_module(build_universal_fgl(10)));
    for (int d = 0; d <= 8; ++d)
        r.add("T(N) dimension " + std::to_string(d), d, T.dimension(d) == (d == 0 ? 1 : 0));
    merge(r, comodule_check(T.coaction(), 8), "T(N) ");
    return r;
}

Report suite_charnum(const SessionConfig& cfg)
{
    (void)cfg;
    Report r;
    auto rp = [](int n) { return SpaceDescriptor({n}); };
    r.add("tangential RP1 = 0", 1, boardman(rp(1), Variant::Tangential).is_zero());
    Poly rp2 = Poly::var(h(0)) * Poly::var(h(2)) + Poly::var(h(1)).pow(2);
    r.add("tangential RP2 = h0 h2 + h1^2", 2, boardman(rp(2), Variant::Tangential) == rp2);
    for (int n = 1; n <= 6; ++n) {
        Poly t = boardman(rp(n), Variant::Tangential);
        r.add("parity oracle RP" + std::to_string(n), n, t == rp_tangential_by_parity(n));
        for (Variant v : {Variant::Tangential, Variant::Normal}) {
            Poly b = boardman(rp(n), v);
            bool ok = b.is_homogeneous() && (b.is_zero() || *b.grade() == n);
            r.add(std::string("homogeneous ") + variant_name(v) + " RP" + std::to_string(n), n, ok);
        }
    }
    const std::vector<int> small{1, 2, 3};
    for (Variant v : {Variant::Tangential, Variant::Normal})
        for (int a : small)
            for (int b : small) {
                std::string pair = "RP" + std::to_string(a) + ",RP" + std::to_string(b);
                Poly ba = boardman(rp(a), v), bb = boardman(rp(b), v);
                r.add(std::string("product ") + variant_name(v) + " " + pair, a + b,
                      boardman(rp(a) * rp(b), v) == ba * bb);
                Manifold u{rp(a), rp(b)};
                r.add(std::string("union ") + variant_name(v) + " " + pair, std::max(a, b), boardman(u, v) == ba + bb);
                if (v == Variant::Tangential)
                    r.add("product parity oracle " + pair, a + b,
                          boardman(rp(a) * rp(b), v) == rp_tangential_by_parity(a) * rp_tangential_by_parity(b));
            }
    return r;
}

Report suite_substitution(const SessionConfig& cfg)
{
    Report r;
    SigmaRing S(8, 4);
    Poly x = S.ring().generator(0);
    Poly q1 = S.ring().word(0, {1}), q2 = S.ring().word(0, {2});
    Poly H0 = Poly::var(h(0)), H1 = Poly::var(h(1)), H2 = Poly::var(h(2));
    std::vector<Poly> outer{x * x, H0.pow(-1) * q1, q2 + H1 * q1, H0 * x * x + q1};
    std::vector<Poly> inner{x * H1, H0 * x + H2 * x, H0.pow(-2) * x};
    const char* rd = reading_name(cfg.reading);
    for (const Poly& q : outer) {
        int d = 0;
        for (const Mono& mono : q.terms())
            d = std::max(d, mono.grade());
        r.add(std::string("identity left ") + rd + " " + q.to_string(2), d, S.substitute(x, q, cfg.reading) == q);
        r.add(std::string("identity right ") + rd + " " + q.to_string(2), d, S.substitute(q, x, cfg.reading) == q);
    }
    int k = 0;
    for (const Poly& p : outer)
        for (const Poly& q : outer)
            for (const Poly& s : inner) {
                Poly left = S.substitute(S.substitute(p, q, cfg.reading), s, cfg.reading);
                Poly right = S.substitute(p, S.substitute(q, s, cfg.reading), cfg.reading);
                r.add(std::string("associative ") + rd + " #" + std::to_string(k++), 4, left == right);
            }
    Report whole = theorem4_check(std::min(cfg.cap, 4), SubstitutionReading::Whole);
    merge(r, whole, "theorem4 ");
    Report literal = theorem4_check(std::min(cfg.cap, 4), SubstitutionReading::Literal);
    for (const auto& l : literal.lines)
        r.info("literal reading " + l.name, l.degree, status_name(l.status));
    return r;
}

using SuiteFn = Report (*)(const SessionConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& suites()
{
    static const std::vector<std::pair<std::string, SuiteFn>> s{
        {"hopf", suite_hopf},         {"qstruct", suite_qstruct},   {"interchange", suite_interchange},
        {"epsilon", suite_epsilon},   {"fgl", suite_fgl},           {"dstruct", suite_dstruct},
        {"collapse", suite_collapse}, {"coaction", suite_coaction}, {"nishida", suite_nishida},
        {"thom", suite_thom},         {"charnum", suite_charnum},   {"substitution", suite_substitution},
    };
    return s;
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

// --------------------------------------------------------------------------

void SessionConfig::validate() const
{
    if (cap < 2)
        throw UsageError("cap must be at least 2");
    if (maxweight < 1)
        throw UsageError("maxweight must be positive");
    if (cap > max_cap)
        throw BudgetError("cap " + std::to_string(cap) + " exceeds the budget " + std::to_string(max_cap));
}

int default_cap()
{
    const char* env = std::getenv("NISHIDA_CAP");
    if (!env || !*env)
        return 8;
    try {
        std::size_t used = 0;
        int v = std::stoi(env, &used);
        if (used != std::string(env).size())
            throw UsageError("");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("NISHIDA_CAP is not an integer: ") + env);
    }
}

FglKind parse_fgl(const std::string& s)
{
    if (lower(s) == "universal")
        return FglKind::Universal;
    if (lower(s) == "additive")
        return FglKind::Additive;
    throw UsageError("unknown formal group law '" + s + "'");
}

Quadratic parse_quadratic(const std::string& s)
{
    if (lower(s) == "xf")
        return Quadratic::XF;
    if (lower(s) == "xxt")
        return Quadratic::XXT;
    throw UsageError("unknown quadratic '" + s + "'");
}

SubstitutionReading parse_reading(const std::string& s)
{
    if (lower(s) == "whole")
        return SubstitutionReading::Whole;
    if (lower(s) == "literal")
        return SubstitutionReading::Literal;
    throw UsageError("unknown substitution reading '" + s + "'");
}

OutputFormat parse_output(const std::string& s)
{
    if (lower(s) == "text")
        return OutputFormat::Text;
    if (lower(s) == "json")
        return OutputFormat::Json;
    throw UsageError("unknown output format '" + s + "'");
}

const char* fgl_name(FglKind k) { return k == FglKind::Universal ? "universal" : "additive"; }

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : suites())
            n.push_back(name);
        return n;
    }();
    return names;
}

Report run_suite(const std::string& name, const SessionConfig& cfg)
{
    cfg.validate();
    for (const auto& [n, fn] : suites())
        if (n == name) {
            Report r = fn(cfg);
            r.suite = name;
            set_range(r);
            return r;
        }
    throw UsageError("unknown suite '" + name + "'");
}

std::vector<Report> run_suites(const std::string& name, const SessionConfig& cfg)
{
    std::vector<Report> out;
    if (name == "all") {
        for (const auto& n : suite_names())
            out.push_back(run_suite(n, cfg));
    } else {
        out.push_back(run_suite(name, cfg));
    }
    return out;
}

std::string format_report(const Report& r, OutputFormat format)
{
    std::ostringstream os;
    if (format == OutputFormat::Json) {
        for (const auto& l : r.lines) {
            nlohmann::ordered_json j;
            j["schema"] = 1;
            j["suite"] = r.suite;
            j["degree_lo"] = r.degree_lo;
            j["degree_hi"] = r.degree_hi;
            j["case"] = l.name;
            j["degree"] = l.degree;
            j["status"] = status_name(l.status);
            if (!l.detail.empty())
                j["detail"] = l.detail;
            os << j.dump() << '\n';
        }
        return os.str();
    }
    int counts[4] = {0, 0, 0, 0};
    os << "# suite " << r.suite << " degrees " << r.degree_lo << ".." << r.degree_hi << '\n';
    for (const auto& l : r.lines) {
        ++counts[static_cast<int>(l.status)];
        os << status_name(l.status) << "  " << l.name << "  [" << l.degree << "]";
        if (!l.detail.empty())
            os << "  " << l.detail;
        os << '\n';
    }
    os << "# " << r.suite << ": " << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " skipped, "
       << counts[3] << " info\n";
    return os.str();
}

std::string format_reports(const std::vector<Report>& rs, OutputFormat format)
{
    std::string s;
    for (const auto& r : rs)
        s += format_report(r, format);
    return s;
}

bool all_pass(const std::vector<Report>& rs)
{
    return std::all_of(rs.begin(), rs.end(), [](const Report& r) { return r.all_pass(); });
}

int count_non_dyadic_partitions(int n)
{
    std::vector<int> parts;
    for (int p = 1; p <= n; ++p)
        if (((p + 1) & p) != 0)
            parts.push_back(p);
    // brute force: enumerate nonincreasing part sequences
    std::function<int(int, std::size_t)> count = [&](int left, std::size_t maxIndex) -> int {
        if (left == 0)
            return 1;
        int total = 0;
        for (std::size_t k = 0; k < maxIndex; ++k)
            if (parts[k] <= left)
                total += count(left - parts[k], k + 1);
        return total;
    };
    return count(n, parts.size());
}

}  // namespace nishida
