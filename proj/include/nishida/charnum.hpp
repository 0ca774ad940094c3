#pragma once

// Characteristic classes of line-bundle sums over products of real projective
// spaces, characteristic-number polynomials, the Boardman map and the
// substitution product on B (x) Q<x>.

#include <memory>
#include <string>
#include <vector>

#include "nishida/nishida.hpp"

namespace nishida {

enum class Variant { Tangential, Normal };
enum class SubstitutionReading { Whole, Literal };

const char* variant_name(Variant v);
const char* reading_name(SubstitutionReading r);

/// RP^{n_1} x ... x RP^{n_k}; cohomology F2[a_1..a_k]/(a_i^{n_i+1}) in slot 1.
class SpaceDescriptor {
public:
    SpaceDescriptor() = default;
    explicit SpaceDescriptor(std::vector<int> dims);
    /// "pt", "RP2", "RP2xRP3".
    static SpaceDescriptor parse(const std::string& text);

    const std::vector<int>& dims() const { return dims_; }
    int dimension() const;
    std::string name() const;
    SpaceDescriptor operator*(const SpaceDescriptor& o) const;

    Poly truncate(const Poly& p) const;
    /// <c, mu>: the coefficient of a_1^{n_1}...a_k^{n_k}, other slots kept.
    Poly pair_fundamental(const Poly& p) const;
    /// c cap mu, with a^e cap mu = e_{n-e}.
    Poly cap_fundamental(const Poly& p) const;

private:
    std::vector<int> dims_;
};

/// A disjoint union of products.
using Manifold = std::vector<SpaceDescriptor>;
/// "RP2xRP2+RP4".
Manifold parse_manifold(const std::string& text);
std::string manifold_name(const Manifold& M);

/// Tensor product of the canonical bundles pulled back from the listed
/// factors; empty is the trivial bundle.
struct LineBundle {
    std::vector<int> factors;
};

struct VirtualBundle {
    std::vector<std::pair<LineBundle, int>> summands;

    int rank() const;
    VirtualBundle operator-() const;
    /// tau + k = sum (n_i + 1) gamma_i.
    static VirtualBundle tangent(const SpaceDescriptor& X);
    static VirtualBundle normal(const SpaceDescriptor& X) { return -tangent(X); }
};

Poly euler_class(const LineBundle& L);
/// Product of b(e(L))^{multiplicity}, b(e) = sum b_i e^i; b symbols in slot 0.
Poly total_char_class(const VirtualBundle& V, const SpaceDescriptor& X);
Poly invert_total_class(const Poly& w, const SpaceDescriptor& X);

/// sum_R <w_R, mu> h^R.
Poly boardman(const SpaceDescriptor& M, Variant variant);
Poly boardman(const Manifold& M, Variant variant);
/// sum_R (w_R cap mu) h^R in H_*(M)[h] (f = identity).
Poly boardman_fundamental(const SpaceDescriptor& M, Variant variant);

/// B (x) Q<x> with the Q-structure Q_t(h)(x(x+t)) = h(x)h(x+t) on B.
class SigmaRing {
public:
    SigmaRing(int maxdeg, int maxweight);

    const FreeOperationRing& ring() const { return *ring_; }
    const OperationSpec& spec() const { return spec_; }
    Poly normalize(const Poly& p) const;
    /// (sum p_R h^R) o q.
    Poly substitute(const Poly& p, const Poly& q, SubstitutionReading reading) const;

private:
    std::unique_ptr<FreeOperationRing> ring_;
    OperationSpec spec_;
};

/// N_*Sigma as the free D-ring on a point over the universal law, with the
/// Boardman map (1 (x) T) o phi into B (x) Q<x>.
class BordismSigma {
public:
    BordismSigma(int maxdeg, int maxweight);

    const FreeOperationRing& dring() const { return *dring_; }
    const SigmaRing& sigma() const { return *sigma_; }
    const ExtendedCoaction& coaction() const { return *ec_; }

    /// Coefficient class of M: the Hurewicz preimage of its normal numbers.
    Poly coefficient(const Manifold& M) const;
    /// M -> point as an element of weight one.
    Poly point_class(const Manifold& M) const;
    /// p(a) for p in D<x>.
    Poly operate(const Poly& p, const Poly& a) const;
    Poly beta(const Poly& element) const;

private:
    const ThomReduction& thom(int weight) const;

    std::shared_ptr<const LazardModel> model_;
    std::shared_ptr<const DStructure> ds_;
    std::unique_ptr<FreeOperationRing> dring_;
    std::unique_ptr<ExtendedCoaction> ec_;
    std::unique_ptr<SigmaRing> sigma_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<int, std::unique_ptr<ThomReduction>> thom_;
};

/// beta(p(M)) = beta(p)(beta(M)) for identity, squaring and the words D_i x
/// with i <= cap, plus sums and products of beta, on RP-product samples.
Report theorem4_check(int cap, SubstitutionReading reading = SubstitutionReading::Whole);

}  // namespace nishida
