#pragma once

// Coactions on free Q- and D-rings extended through the operations, the
// Nishida commuting squares, and Thom reduction to the Milnor side.

#include <map>
#include <memory>
#include <mutex>

#include "nishida/dring.hpp"

namespace nishida {

enum class Side { Homology, Bordism };

const char* side_name(Side s);

/// The coaction on a free operation ring determined by its values on the
/// generators: psi(L_i a) is the u^i coefficient of L_{g^{-1}(u)}(psi(a))
/// computed in the tensor structure, with g = xi or h.
class ExtendedCoaction {
public:
    /// Homology side: Q-ring over the Milnor algebra.
    ExtendedCoaction(const FreeOperationRing& ring, std::vector<Poly> generatorValues);
    /// Bordism side: D-ring over the Faa di Bruno algebra with the given structure.
    /// Over the additive law the coaction is taken through epsilon unless
    /// collapseAdditive is false.
    ExtendedCoaction(const FreeOperationRing& ring, std::shared_ptr<const DStructure> ds,
                     std::vector<Poly> generatorValues, bool collapseAdditive = true);

    Side side() const { return side_; }
    const HopfPresentation& base() const { return base_; }
    const FreeOperationRing& ring() const { return ring_; }
    std::shared_ptr<const DStructure> dstructure() const { return ds_; }
    /// Bordism side running over the Milnor quotient.
    bool collapsed() const { return collapsed_; }
    /// Operation on the tensor ring (Hopf symbols in slot 0, carrier in slot 1).
    const OperationSpec& tensor() const { return tensor_; }

    /// Coaction of a carrier polynomial (pre-ring words allowed), with the
    /// carrier part in normal form.
    Poly operator()(const Poly& p) const;
    /// The same value before carrier normalisation.
    Poly raw(const Poly& p) const;
    /// Carrier normal form inside a tensor polynomial.
    Poly normalize(const Poly& p) const;

    /// Comodule view restricted to one weight.
    Coaction coaction(int weight) const;

private:
    Poly symbol_value(VarId v) const;

    Side side_;
    bool collapsed_ = false;
    HopfPresentation base_;
    const FreeOperationRing& ring_;
    std::shared_ptr<const DStructure> ds_;
    std::vector<Poly> generatorValues_;
    OperationSpec tensor_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<VarId, Poly> cache_;
};

/// Default generator values x -> 1 (x) x.
std::vector<Poly> identity_generator_values(const FreeOperationRing& ring);

/// Sum_i psi(L_i p) g(t)^i against L_t(psi(p)) through t^cap for each element,
/// one line per element and output degree.
Report nishida_square_check(const ExtendedCoaction& ec, const std::vector<Poly>& elements, int cap);

/// Basis elements of the ring in bidegrees (d, w), d <= maxdeg, w <= maxweight.
std::vector<Poly> basis_elements(const FreeOperationRing& ring, int maxdeg, int maxweight);

/// Values agree when a word is rewritten by the relations before or after
/// extension, on every word monomial in range.
Report rewrite_consistency_check(const ExtendedCoaction& ec, int maxdeg, int maxweight,
                                 const std::function<Poly(const Poly&)>& rewrite);

/// A comodule over the Faa di Bruno algebra with an action of the
/// coefficient subring.
struct CoactedModule {
    std::string name;
    int maxdeg = 0;
    std::shared_ptr<const LazardModel> scalars;
    std::function<std::vector<Poly>(int degree)> basis;
    std::function<Poly(const Poly&)> normal_form;
    /// lambda . b for lambda in the subring.
    std::function<Poly(const Poly& lambda, const Poly& b)> act;
    /// Coaction with the Hopf part in slot 0.
    std::function<Poly(const Poly&)> coaction;
};

/// T(M) = M / N_{>0} M with the coaction pushed through epsilon.
class ThomReduction {
public:
    explicit ThomReduction(CoactedModule M);

    const std::vector<Poly>& basis(int degree) const;
    int dimension(int degree) const { return static_cast<int>(basis(degree).size()); }
    /// Canonical representative in T(M).
    Poly reduce(const Poly& p) const;
    /// Coaction over the Milnor algebra.
    Poly reduced_coaction(const Poly& p) const;
    Coaction coaction() const;
    const CoactedModule& module() const { return M_; }

private:
    struct Degree {
        Echelon span;
        std::vector<Poly> basis;
    };
    const Degree& degree(int d) const;

    CoactedModule M_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<int, Degree> degrees_;
};

ThomReduction thom_reduce(CoactedModule M);

/// The coefficient subring as a module over itself.
CoactedModule lazard_module(std::shared_ptr<const LazardModel> model);
/// One weight of a free D-ring with its extended coaction.
CoactedModule free_dring_module(const ExtendedCoaction& ec, int weight);

/// Re-expresses operation words in another free ring with the same
/// generators (letter and slot taken from the target).
Poly transport_words(const Poly& p, const FreeOperationRing& target);

/// epsilon(Q_t(h_n)) = Q_t(epsilon(h_n)) for n <= maxn through t^cap.
Report epsilon_operation_check(int maxn, int cap);

/// T(D<x>) against Q<x>: dimensions, representatives and coaction values in
/// bidegrees (d, w), d <= maxdeg, w <= maxweight.
Report thom_comparison(const ExtendedCoaction& bordism, const ExtendedCoaction& homology, int maxdeg,
                       int maxweight);

}  // namespace nishida
