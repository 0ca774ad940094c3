#include "nishida/hopf.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace nishida {

int HopfPresentation::exponent(int n) const
{
    if (n < 0)
        throw AlgebraError("negative generator index");
    if (kind == HopfKind::Milnor) {
        if (n > 30)
            throw AlgebraError("Milnor generator index out of range");
        return 1 << n;
    }
    return n + 1;
}

VarId HopfPresentation::gen(int n, int slot) const { return kind == HopfKind::Milnor ? xi(n, slot) : h(n, slot); }

std::optional<int> HopfPresentation::index_of(VarId v) const
{
    const SymbolInfo& s = SymbolTable::instance().info(v);
    Family want = kind == HopfKind::Milnor ? Family::Xi : Family::H;
    if (s.family != want)
        return std::nullopt;
    return s.key.at(0);
}

int HopfPresentation::max_generator(int cap) const
{
    int n = 0;
    while (exponent(n + 1) <= cap)
        ++n;
    return n;
}

PowerSeries HopfPresentation::series(int cap, int slot) const
{
    PowerSeries s(1, cap);
    for (int n = 0; exponent(n) <= cap; ++n)
        s.add_term({exponent(n), 0, 0}, Poly::var(gen(n, slot)));
    return s;
}

namespace {

std::mutex cacheMutex;

// Compositional inverse of g in slot 0, at least to `cap`.
PowerSeries inverse_series(const HopfPresentation& H, int cap)
{
    static std::map<HopfKind, PowerSeries> cache;
    std::lock_guard<std::mutex> lock(cacheMutex);
    auto it = cache.find(H.kind);
    if (it == cache.end() || it->second.cap() < cap) {
        PowerSeries inv = series_comp_inverse(H.series(cap, 0));
        it = cache.insert_or_assign(H.kind, inv).first;
    }
    return it->second.truncate(cap);
}

Poly base_coproduct(const HopfPresentation& H, int n)
{
    static std::map<std::pair<HopfKind, int>, Poly> cache;
    {
        std::lock_guard<std::mutex> lock(cacheMutex);
        if (auto it = cache.find({H.kind, n}); it != cache.end())
            return it->second;
    }
    int e = H.exponent(n);
    Poly c = series_compose(H.series(e, 0), H.series(e, 1)).coeff(e);
    std::lock_guard<std::mutex> lock(cacheMutex);
    cache.emplace(std::make_pair(H.kind, n), c);
    return c;
}

}  // namespace

Poly coproduct(const HopfPresentation& H, int n, int left, int right)
{
    Poly c = base_coproduct(H, n);
    if (left == 0 && right == 1)
        return c;
    // Route through a scratch slot so the two moves cannot collide.
    c = remap_slots(c, {{0, 97}, {1, 98}});
    return remap_slots(c, {{97, left}, {98, right}});
}

Poly apply_coproduct(const HopfPresentation& H, const Poly& p, int from, int left, int right)
{
    auto& tab = SymbolTable::instance();
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        auto n = H.index_of(v);
        if (!n || tab.info(v).slot != from)
            return std::nullopt;
        return coproduct(H, *n, left, right);
    });
}

Poly antipode(const HopfPresentation& H, int n, int slot)
{
    Poly c = inverse_series(H, H.exponent(n)).coeff(H.exponent(n));
    return slot == 0 ? c : remap_slots(c, {{0, slot}});
}

Poly apply_antipode(const HopfPresentation& H, const Poly& p, int slot)
{
    auto& tab = SymbolTable::instance();
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        auto n = H.index_of(v);
        if (!n || tab.info(v).slot != slot)
            return std::nullopt;
        return antipode(H, *n, slot);
    });
}

Poly apply_counit(const HopfPresentation& H, const Poly& p, int slot)
{
    auto& tab = SymbolTable::instance();
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        auto n = H.index_of(v);
        if (!n || tab.info(v).slot != slot)
            return std::nullopt;
        return *n == 0 ? Poly::one() : Poly();
    });
}

Poly specialize_unit(const HopfPresentation& H, const Poly& p, int slot)
{
    VarId g0 = H.gen(0, slot);
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        if (v == g0)
            return Poly::one();
        return std::nullopt;
    });
}

Poly epsilon_reduce(const Poly& p)
{
    auto& tab = SymbolTable::instance();
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        const SymbolInfo& s = tab.info(v);
        if (s.family != Family::H)
            return std::nullopt;
        int n = s.key[0] + 1;
        if (n & (n - 1))
            return Poly();
        int i = 0;
        while ((1 << i) < n)
            ++i;
        return Poly::var(xi(i, s.slot));
    });
}

Poly coaction_rp_infinity(const HopfPresentation& H, int i)
{
    if (i < 0)
        throw AlgebraError("negative basis index");
    if (i == 0)
        return Poly::var(rp_b(0));
    PowerSeries inv = inverse_series(H, i);
    PowerSeries power = PowerSeries::constant(1, i, Poly::one());
    Poly out;
    for (int j = 1; j <= i; ++j) {
        power = power * inv;
        out += power.coeff(i) * Poly::var(rp_b(j));
    }
    return out;
}

Coaction rp_infinity_coaction(const HopfPresentation& H, bool unitSpecialized)
{
    Coaction c;
    c.base = H;
    c.unit_specialized = unitSpecialized;
    c.name = std::string("rp-infinity-") + H.letter() + (unitSpecialized ? "-unit" : "");
    c.basis = [](int d) { return std::vector<Poly>{Poly::var(rp_b(d))}; };
    c.map = [H, unitSpecialized](const Poly& p) {
        auto& tab = SymbolTable::instance();
        Poly out;
        for (const Mono& mono : p.terms()) {
            if (mono.size() != 1 || mono.exp_at(0) != 1 || tab.info(mono.var_at(0)).family != Family::RPB)
                throw AlgebraError("element is not in the span of the b_i");
            Poly v = coaction_rp_infinity(H, tab.info(mono.var_at(0)).key[0]);
            out += unitSpecialized ? specialize_unit(H, v) : v;
        }
        return out;
    };
    return c;
}

Report comodule_check(const Coaction& c, int maxdeg)
{
    Report r;
    r.suite = "comodule:" + c.name;
    r.degree_lo = 0;
    r.degree_hi = maxdeg;
    const HopfPresentation& H = c.base;
    for (int d = 0; d <= maxdeg; ++d) {
        std::string counitBad, coassocBad, gradeBad;
        for (const Poly& b : c.basis(d)) {
            Poly phi = c.map(b);
            if (apply_counit(H, phi, 0) != b)
                counitBad += b.to_string() + " ";

            Poly lhs = apply_coproduct(H, phi, 0, 0, 2);
            Poly rhs;
            for (auto& [rest, part] : split_by_rest(phi, 1))
                rhs += remap_slots(c.map(part), {{0, 2}}) * rest;
            if (c.unit_specialized) {
                lhs = specialize_unit(H, specialize_unit(H, lhs, 0), 2);
                rhs = specialize_unit(H, specialize_unit(H, rhs, 0), 2);
            }
            if (lhs != rhs)
                coassocBad += b.to_string() + " ";

            for (const Mono& mono : phi.terms())
                if (mono.grade() != d) {
                    gradeBad += b.to_string() + " ";
                    break;
                }
        }
        auto trim = [](std::string s) {
            if (!s.empty())
                s.pop_back();
            return s;
        };
        r.add("counit", d, counitBad.empty(), trim(counitBad));
        r.add("coassociativity", d, coassocBad.empty(), trim(coassocBad));
        r.add("grading", d, gradeBad.empty(), trim(gradeBad));
    }
    return r;
}

Report hopf_axioms_check(const HopfPresentation& H, int maxGrade)
{
    Report r;
    r.suite = std::string("hopf:") + H.letter();
    r.degree_lo = 0;
    r.degree_hi = maxGrade;
    for (int n = 0; H.grade(n) <= maxGrade; ++n) {
        int d = H.grade(n);
        std::string g = Poly::var(H.gen(n)).to_string();
        Poly delta = coproduct(H, n);

        Poly lhs = apply_coproduct(H, coproduct(H, n, 0, 2), 0, 0, 1);
        Poly rhs = apply_coproduct(H, delta, 1, 1, 2);
        r.add("coassociativity " + g, d, lhs == rhs);

        Poly gen = Poly::var(H.gen(n));
        bool counit = remap_slots(apply_counit(H, delta, 0), {{1, 0}}) == gen && apply_counit(H, delta, 1) == gen;
        r.add("counit " + g, d, counit);

        Poly eps = n == 0 ? Poly::one() : Poly();
        Poly leftConv = remap_slots(apply_antipode(H, delta, 0), {{1, 0}});
        Poly rightConv = remap_slots(apply_antipode(H, delta, 1), {{1, 0}});
        r.add("antipode " + g, d, leftConv == eps && rightConv == eps);

        bool homogeneous = true;
        for (const Mono& mono : delta.terms())
            homogeneous = homogeneous && mono.grade() == d;
        r.add("grading " + g, d, homogeneous);

        // algebra map on the products g_n g_k with grade(g_k) <= grade(g_n)
        bool mult = true;
        for (int k = 0; k <= n; ++k) {
            Poly prod = gen * Poly::var(H.gen(k)) * Poly::var(H.gen(0), -1);
            mult = mult && apply_coproduct(H, prod, 0, 0, 1) ==
                               delta * coproduct(H, k) * coproduct(H, 0).unit_inverse();
        }
        r.add("algebra map " + g, d, mult);
    }
    return r;
}

Report epsilon_bialgebra_check(int maxn)
{
    Report r;
    r.suite = "epsilon";
    r.degree_lo = 0;
    r.degree_hi = maxn;
    auto A = HopfPresentation::milnor();
    auto B = HopfPresentation::faa_di_bruno();
    for (int n = 0; n <= maxn; ++n) {
        Poly lhs = epsilon_reduce(coproduct(B, n));
        Poly rhs = apply_coproduct(A, epsilon_reduce(Poly::var(h(n))), 0, 0, 1);
        r.add("bialgebra h" + std::to_string(n), n, lhs == rhs);
    }
    return r;
}

}  // namespace nishida
