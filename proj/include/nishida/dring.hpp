#pragma once

// D-ring structures over a formal group law of order two: the solved
// structure on B (x) N, the operation on the Lazard model, and free D-rings.

#include <memory>
#include <mutex>

#include "nishida/fgl.hpp"
#include "nishida/qring.hpp"

namespace nishida {

/// Quadratic used in D_t(h)(q) = h(x) h(F(x,t)).
enum class Quadratic { XF, XXT };

const char* quadratic_name(Quadratic q);

/// t F(t, s) in the variables (s, t).
std::function<PowerSeries(int)> formal_t_rule(std::shared_ptr<const LazardModel> model);

/// Hurewicz map on the model: m_i -> h_i h_0^{-i-1} (slot 0).
Poly hurewicz(const Poly& p);
/// Inverse of the Hurewicz map on its image; throws AlgebraError otherwise.
Poly hurewicz_inverse(const Poly& p);

/// D_u on F2[m]: the coefficients of Q_{h^{-1}(u)}(beta a) pulled back along
/// the Hurewicz map. A ring map; D_0 is squaring.
class LazardOperation {
public:
    /// D_u(m_i) through u^cap.
    PowerSeries on_generator(int i, int cap) const;
    OperationSpec spec(std::shared_ptr<const LazardModel> model) const;

private:
    mutable std::mutex mutex_;
    mutable std::map<int, PowerSeries> cache_;
};

const LazardOperation& lazard_operation();

struct DStructure {
    std::shared_ptr<const LazardModel> model;
    Quadratic quadratic = Quadratic::XF;
    std::shared_ptr<GeneratorTable> table;
    /// D on B (x) N: h_n in slot 0 from the table, m_i from the model operation.
    OperationSpec spec;

    PowerSeries residual(int cap) const { return table->residual(cap); }
    PowerSeries entry(int n, int cap) const { return table->entry(n, cap); }
};

/// Solves D_t(h)(q) = h(x) h(F(x,t)) for the chosen quadratic. Nonzero
/// residuals are reported by residual(), not raised.
std::shared_ptr<const DStructure> solve_tensor_dstructure(std::shared_ptr<const LazardModel> model,
                                                          Quadratic quadratic = Quadratic::XF);

PowerSeries dt_eval(const DStructure& ds, const Poly& a, int cap);

/// Residual of the functional equation per total degree.
Report dstructure_report(const DStructure& ds, int cap);

/// Free D-ring over the model: scalars are the coefficient subring with the
/// model operation, D_s(t) = t F(t,s).
FreeOperationRing build_free_dring(std::vector<FreeGenerator> gens, std::shared_ptr<const LazardModel> model,
                                   int maxdeg, int maxweight, unsigned shuffleSeed = 0, int slot = 1);

}  // namespace nishida
