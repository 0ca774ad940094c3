#pragma once

// Formal group laws of order two: the universal law realised inside
// F2[m_1, m_2, ...] through an exponential series, its coefficient subring,
// and the Landweber-Novikov coaction by conjugation.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "nishida/f2linalg.hpp"
#include "nishida/hopf.hpp"
#include "nishida/report.hpp"

namespace nishida {

enum class FglKind { Additive, Universal };

class LazardModel {
public:
    /// beta(x) = x + sum m_i x^{i+1}; F = beta(beta^{-1} x + beta^{-1} y).
    static std::shared_ptr<const LazardModel> universal(int cap);
    /// F = x + y over F2.
    static std::shared_ptr<const LazardModel> additive(int cap);

    FglKind kind() const { return kind_; }
    int cap() const { return cap_; }
    const PowerSeries& exponential() const { return beta_; }
    const PowerSeries& logarithm() const { return betaInv_; }
    /// F(x, y) in the variables (0, 1).
    const PowerSeries& law() const { return law_; }
    /// a_ij, the coefficient of x^i y^j.
    Poly coeff(int i, int j) const { return law_.coeff(i, j); }

    /// Pairs (i, j), i <= j, with grade(a_ij) = i + j - 1 in [1, maxGrade].
    std::vector<std::pair<int, int>> generators(int maxGrade) const;
    /// Reduced basis (as polynomials in m) of the degree-n part of the
    /// subring generated by the a_ij.
    const std::vector<Poly>& basis(int n) const;
    int rank(int n) const { return static_cast<int>(basis(n).size()); }
    /// Membership of a homogeneous polynomial in m.
    bool contains(const Poly& p) const;
    /// Images of m_1 .. m_{cap-1} under the conjugation coaction.
    const std::vector<Poly>& ln_images() const;

private:
    LazardModel(FglKind kind, int cap);
    const Echelon& span(int n) const;

    FglKind kind_;
    int cap_;
    PowerSeries beta_{1, 0}, betaInv_{1, 0}, law_{2, 0};
    mutable std::recursive_mutex mutex_;
    mutable std::map<int, Echelon> spans_;
    mutable std::map<int, std::vector<Poly>> bases_;
    mutable std::vector<Poly> lnImages_;
};

std::shared_ptr<const LazardModel> build_universal_fgl(int cap);
std::shared_ptr<const LazardModel> build_fgl(FglKind kind, int cap);

/// Rank over F2 of the degree-n span of monomials in the a_ij.
int lazard_rank(const LazardModel& model, int n);

/// Unit, symmetry, associativity, F(x,x) = 0 and grading through total
/// degree maxdeg.
Report fgl_axioms_check(const LazardModel& model, int maxdeg);

/// h(F(h^{-1} x, h^{-1} y)) with h in slot 0, through total degree cap.
PowerSeries conjugated_law(const LazardModel& model, int cap);
/// Coefficient of x^i y^j in the conjugated law.
Poly ln_coaction_coeff(const LazardModel& model, int i, int j);
/// The coaction extended to F2[m] as a ring map:
/// m_i -> coefficient of x^{i+1} in h(beta(x / h_0)).
Poly ln_coaction(const LazardModel& model, const Poly& p);
/// Coaction over the Faa di Bruno algebra on the coefficient subring.
Coaction ln_coaction_on_fgl(std::shared_ptr<const LazardModel> model);

}  // namespace nishida
