#pragma once

// The Milnor and Faa di Bruno Hopf algebras presented by generator series, the
// reduction between them, and comodule checks.

#include <functional>
#include <string>
#include <vector>

#include "nishida/f2series.hpp"
#include "nishida/report.hpp"

namespace nishida {

enum class HopfKind { Milnor, FaaDiBruno };

struct HopfPresentation {
    HopfKind kind = HopfKind::Milnor;

    static HopfPresentation milnor() { return {HopfKind::Milnor}; }
    static HopfPresentation faa_di_bruno() { return {HopfKind::FaaDiBruno}; }

    /// Power of x carried by generator n: 2^n or n+1.
    int exponent(int n) const;
    int grade(int n) const { return exponent(n) - 1; }
    VarId gen(int n, int slot = 0) const;
    /// Generator index of a symbol of this algebra (any slot), if it is one.
    std::optional<int> index_of(VarId v) const;
    /// Largest n with exponent(n) <= cap.
    int max_generator(int cap) const;
    /// g(x) = sum_n g_n x^{exponent(n)} truncated at cap.
    PowerSeries series(int cap, int slot = 0) const;
    char letter() const { return kind == HopfKind::Milnor ? 'A' : 'B'; }
};

/// delta(g_n) with the left factor in `left` and the right factor in `right`.
Poly coproduct(const HopfPresentation& H, int n, int left = 0, int right = 1);

/// Extends the coproduct multiplicatively to the slot-`from` generators of p.
Poly apply_coproduct(const HopfPresentation& H, const Poly& p, int from, int left, int right);

/// Coefficient of x^{exponent(n)} in the compositional inverse of g.
Poly antipode(const HopfPresentation& H, int n, int slot = 0);
Poly apply_antipode(const HopfPresentation& H, const Poly& p, int slot = 0);

/// Counit on the slot-`slot` generators: g_0 -> 1, g_{>0} -> 0.
Poly apply_counit(const HopfPresentation& H, const Poly& p, int slot = 0);

/// Sets g_0 = 1 in the given slot (the classical normalisation).
Poly specialize_unit(const HopfPresentation& H, const Poly& p, int slot = 0);

/// h_n -> xi_i when n = 2^i - 1, h_n -> 0 otherwise, in every slot.
Poly epsilon_reduce(const Poly& p);

/// Coaction on the basis b_i of the homology (or bordism) of RP^infinity:
/// coefficient of x^i in b(g^{-1}(x)). Hopf part in slot 0, b in slot 1.
Poly coaction_rp_infinity(const HopfPresentation& H, int i);

/// Coassociativity, counit, algebra-map, antipode and grading axioms on every
/// generator of grade <= maxGrade.
Report hopf_axioms_check(const HopfPresentation& H, int maxGrade);

/// (eps x eps) delta_B(h_n) = delta_A(eps h_n) for n <= maxn.
Report epsilon_bialgebra_check(int maxn);

/// A left comodule with carrier in slot 1 and Hopf factor in slot 0.
struct Coaction {
    HopfPresentation base;
    std::string name;
    /// Carrier basis in the given degree (elements in slot 1).
    std::function<std::vector<Poly>(int degree)> basis;
    /// Coaction of a carrier element.
    std::function<Poly(const Poly&)> map;
    /// When set, the Hopf algebra is read with g_0 = 1.
    bool unit_specialized = false;
};

Coaction rp_infinity_coaction(const HopfPresentation& H, bool unitSpecialized = false);

/// Counit, coassociativity and grading per degree in [0, maxdeg].
Report comodule_check(const Coaction& c, int maxdeg);

}  // namespace nishida
