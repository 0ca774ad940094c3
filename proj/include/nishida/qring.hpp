#pragma once

// Total operations Q_t (and their bordism analogues D_t) given by generator
// tables, the interchange axiom, solved structures on the Hopf algebras, and
// free operation rings.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nishida/f2linalg.hpp"
#include "nishida/hopf.hpp"
#include "nishida/report.hpp"

namespace nishida {

/// A ring homomorphism R -> R[[t]] known on symbols.
struct OperationSpec {
    std::string name;
    char letter = 'Q';
    /// Op_t(v) through t^cap, or nullopt when v is not registered.
    std::function<std::optional<PowerSeries>(VarId, int cap)> table;
    /// Op_s(t) as a series in (s, t): t(t+s) for Q, t F(t,s) for D.
    std::function<PowerSeries(int cap)> t_rule;
};

/// t(t+s) in the variables (s, t).
PowerSeries additive_t_rule(int cap);

/// Op_t(a) through t^cap; throws AlgebraError on unregistered symbols.
PowerSeries op_eval(const OperationSpec& spec, const Poly& a, int cap);
/// Coefficient of t^i in Op_t(a).
Poly op_coefficient(const OperationSpec& spec, const Poly& a, int i);
/// Op_s(Op_t(a)) in the variables (s, t) with Op_s(t) given by the t rule.
PowerSeries op_twice(const OperationSpec& spec, const Poly& a, int cap);

/// Op_s Op_t(a) + (s <-> t) through total degree maxdeg, one line per degree.
/// `normalize` maps coefficients to canonical form in a quotient ring.
Report interchange_check(const OperationSpec& spec, const Poly& a, int maxdeg, const std::string& label,
                         const std::function<Poly(const Poly&)>& normalize = {});

/// Q_t(g_n) for a Hopf presentation, solved from Q_t(g)(q) = rhs.
class GeneratorTable {
public:
    using SeriesRule = std::function<PowerSeries(int cap)>;
    /// rhs(cap) and quadratic(cap) are series in (x, t).
    GeneratorTable(HopfPresentation H, SeriesRule rhs, SeriesRule quadratic, std::string label);

    const HopfPresentation& presentation() const { return H_; }
    /// Q_t(g_n) through t^cap (slot 0 symbols).
    PowerSeries entry(int n, int cap) const;
    /// Residual of the functional equation solved at the given cap.
    PowerSeries residual(int cap) const;
    const std::string& label() const { return label_; }
    /// Largest precision the right-hand side supports (unbounded when < 0).
    void set_cap_limit(int limit) { limit_ = limit; }

private:
    struct Solved {
        int cap = -1;
        std::vector<PowerSeries> entries;
        PowerSeries residual{2, 0};
    };
    Solved solve(int cap) const;

    HopfPresentation H_;
    SeriesRule rhs_, quadratic_;
    std::string label_;
    int limit_ = -1;
    mutable std::mutex mutex_;
    mutable Solved best_;
};

/// g(x) g(x+t) for the presentation, in (x, t).
PowerSeries symmetric_product(const HopfPresentation& H, int cap);
/// x(x+t).
PowerSeries additive_quadratic(int cap);

/// Table solved from Q_t(g)(x(x+t)) = g(x) g(x+t); throws if the residual
/// is nonzero at the requested precision.
std::shared_ptr<GeneratorTable> solve_generator_qstructure(const HopfPresentation& H);

/// The Q-structure on the Hopf algebra alone (slot-0 generators).
OperationSpec hopf_qspec(std::shared_ptr<const GeneratorTable> table, char letter = 'Q');

/// H (x) R: Hopf symbols in slot 0 use the table, everything else R.
OperationSpec tensor_spec(const OperationSpec& hopfPart, const OperationSpec& R);

/// Swaps in a corrupted coefficient for negative controls.
OperationSpec perturbed_spec(const OperationSpec& spec, VarId v, int power, const Poly& delta);

// --------------------------------------------------------------------------
// Free operation rings

struct FreeGenerator {
    std::string name;
    int degree = 0;
    int weight = 1;
};

/// Graded scalar ring for D-rings: basis per grade and the operation on its
/// symbols. Absent for Q-rings (scalars F2).
struct ScalarRing {
    std::function<std::vector<Poly>(int grade)> basis;
    std::function<std::optional<PowerSeries>(VarId, int cap)> op;
};

/// Order used to pick pivots: a before b when a is the larger monomial.
/// Words compare shorter first then lexicographically; monomials compare
/// their word lists sorted in decreasing order, then the scalar parts.
bool word_monomial_greater(const Mono& a, const Mono& b);

class FreeOperationRing {
public:
    struct Options {
        char letter = 'Q';
        std::vector<FreeGenerator> gens;
        int maxdeg = 6;
        int maxweight = 4;
        std::function<PowerSeries(int cap)> t_rule = additive_t_rule;
        std::optional<ScalarRing> scalars;
        /// Shuffles relation rows before reduction (0 keeps the natural order).
        unsigned shuffle_seed = 0;
        int slot = 1;
    };

    explicit FreeOperationRing(Options opts);

    const Options& options() const { return opts_; }
    char letter() const { return opts_.letter; }
    int maxdeg() const { return opts_.maxdeg; }
    int maxweight() const { return opts_.maxweight; }

    Poly generator(int k) const;
    /// L_{i1} ... L_{ik}(g) with indices outer first; Q_0 = squaring is applied.
    Poly word(int gen, const std::vector<int>& indices) const;

    /// The pre-ring operation: words are free symbols, Op_t(w) = w^2 + sum Op_i(w) t^i.
    OperationSpec pre_ring_spec() const;
    /// The operation on the quotient: pre-ring values reduced to normal form.
    OperationSpec quotient_spec() const;

    /// Word monomials (pure, no scalars) of the given bidegree.
    std::vector<Mono> word_monomials(int degree, int weight) const;
    /// F2-spanning set of the ambient bidegree component (scalars times words).
    std::vector<Poly> ambient(int degree, int weight) const;
    /// Relations in the bidegree, reduced.
    const Echelon& relations(int degree, int weight) const;
    /// F2-basis of the quotient in the bidegree.
    const std::vector<Poly>& basis(int degree, int weight) const;
    int dimension(int degree, int weight) const { return static_cast<int>(basis(degree, weight).size()); }

    /// Canonical representative modulo relations (bidegree-wise).
    Poly normal_form(const Poly& p) const;
    /// Op_i applied in the quotient.
    Poly apply_op(const Poly& p, int i) const;
    /// Rewrite table: each pivot monomial and its normal form.
    std::vector<std::pair<Mono, Poly>> rewrite_table(int degree, int weight) const;

    /// True when every relation lies in the ambient span.
    bool relations_in_ambient(int degree, int weight) const;

private:
    struct Component {
        bool built = false;
        Echelon rel;
        std::vector<Poly> basis;
    };
    Component& component(int degree, int weight) const;
    void build(int degree, int weight, Component& c) const;
    std::vector<Poly> generating_relations(int degree, int weight) const;

    Options opts_;
    std::vector<VarId> genSymbols_;
    mutable std::map<std::pair<int, int>, Component> components_;
    mutable std::map<std::pair<int, int>, std::vector<Mono>> monomials_;
    mutable std::recursive_mutex mutex_;
};

/// Bidegree of a homogeneous monomial (grade, weight).
std::pair<int, int> bidegree(const Mono& mono);

/// Q<x>-style cross-check: normal forms from Adem pair rewriting, with the
/// pair rules extracted from the weight-4 relations of a formal generator.
class AdemRewriter {
public:
    explicit AdemRewriter(const FreeOperationRing& ring);
    Poly rewrite(const Poly& p) const;
    /// Admissible word monomials in the bidegree.
    std::vector<Mono> admissible_monomials(int degree, int weight) const;
    bool admissible(VarId word) const;

private:
    Poly rewrite_word(VarId w, int depth) const;
    Poly rewrite_at(const Poly& p, int depth) const;
    const FreeOperationRing& ring_;
    // (j, i) -> Op_j Op_i(a) expressed in admissible terms of the formal a
    std::map<std::pair<int, int>, Poly> rules_;
    VarId formal_;
};

/// Image of p in Q<x> under the Q-ring map x -> a into the target.
Poly eval_unary_operation(const FreeOperationRing& source, const Poly& p, const OperationSpec& target,
                          const Poly& a);

/// Word structure helpers.
bool is_word_symbol(VarId v);
const WordShape& word_shape(VarId v);

}  // namespace nishida
