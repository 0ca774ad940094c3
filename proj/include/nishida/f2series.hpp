#pragma once

// Exact arithmetic over F2: graded Laurent polynomials on interned symbols and
// truncated power series in up to three formal variables.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace nishida {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AlphabetMismatch : AlgebraError {
    using AlgebraError::AlgebraError;
};
struct TruncationError : AlgebraError {
    using AlgebraError::AlgebraError;
};

using VarId = std::uint16_t;

enum class Family : std::uint8_t {
    Xi,     // Milnor generators
    H,      // Faa di Bruno generators
    M,      // ambient Lazard model variables
    RPB,    // homology basis of RP^infinity
    CharB,  // characteristic-class variables b_i
    CohA,   // degree-one cohomology classes of RP factors
    HomE,   // homology basis of an RP product
    Word,   // operation words in a free Q- or D-ring
};

/// Structure of an operation word  L_{i1} L_{i2} ... L_{ik} (g).  Indices are
/// stored outermost first; every index is >= 1.
struct WordShape {
    char letter = 'Q';
    int generator = 0;
    std::vector<int> indices;
};

struct SymbolInfo {
    std::string name;
    int grade = 0;
    int weight = 0;
    int slot = 0;
    bool invertible = false;
    Family family = Family::Xi;
    std::vector<int> key;
    std::optional<WordShape> word;
};

/// Process-wide interning table. Symbols are append-only, so ids stay valid for
/// the life of the process. The ordering used for output never depends on the
/// interning order, only on (slot, family, key).
class SymbolTable {
public:
    static SymbolTable& instance();

    VarId intern(SymbolInfo info);
    const SymbolInfo& info(VarId id) const;
    std::optional<VarId> find(Family family, int slot, const std::vector<int>& key) const;
    bool canonical_less(VarId a, VarId b) const;

private:
    SymbolTable() = default;
    struct Impl;
    std::shared_ptr<Impl> impl_ = make_impl();
    static std::shared_ptr<Impl> make_impl();
};

// Convenience constructors for the standard generator families.
VarId xi(int i, int slot = 0);
VarId h(int n, int slot = 0);
VarId m(int i, int slot = 1);
VarId rp_b(int i, int slot = 1);
VarId char_b(int i, int slot = 0);
VarId coh_a(int factor, int slot = 1);
/// Homology class dual to a_1^{d_1} ... a_k^{d_k}.
VarId hom_e(const std::vector<int>& degrees, int slot = 1);
VarId word_symbol(const WordShape& shape, int generatorDegree, int generatorWeight,
                  const std::string& generatorName, int slot = 1);

/// Re-homes a symbol of a standard family to another tensor slot.
VarId with_slot(VarId v, int slot);

/// Monomial with sparse exponents, packed as (id << 16) | (exp + 0x8000) and
/// sorted by id.
class Mono {
public:
    Mono() = default;
    static Mono var(VarId v, int e = 1);

    int exp(VarId v) const;
    bool empty() const { return packed_.empty(); }
    std::size_t size() const { return packed_.size(); }
    VarId var_at(std::size_t k) const { return static_cast<VarId>(packed_[k] >> 16); }
    int exp_at(std::size_t k) const { return static_cast<int>(packed_[k] & 0xffffu) - 0x8000; }

    int grade() const;
    int weight() const;
    Mono operator*(const Mono& o) const;
    Mono pow(int e) const;
    bool operator<(const Mono& o) const { return packed_ < o.packed_; }
    bool operator==(const Mono& o) const { return packed_ == o.packed_; }
    bool operator!=(const Mono& o) const { return packed_ != o.packed_; }

    /// Splits into the factor whose symbols satisfy pred and the remainder.
    std::pair<Mono, Mono> split(const std::function<bool(VarId)>& pred) const;

    std::string to_string() const;

private:
    boost::container::small_vector<std::uint32_t, 6> packed_;
    friend struct MonoBuilder;
};

/// Canonical output order: graded (ascending), then lexicographic in declared
/// variable order with larger exponents first.
bool canonical_less(const Mono& a, const Mono& b);

class Poly {
public:
    Poly() = default;
    explicit Poly(Mono mono);
    static Poly one() { return Poly(Mono{}); }
    static Poly var(VarId v, int e = 1) { return Poly(Mono::var(v, e)); }
    static Poly from_monos(std::vector<Mono> monos);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Mono>& terms() const { return terms_; }
    bool contains(const Mono& mono) const;

    Poly operator+(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly operator*(const Poly& o) const;
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly operator*(const Mono& mono) const;
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return terms_ != o.terms_; }

    Poly pow(int e) const;
    /// Frobenius: squares every monomial.
    Poly square() const;
    /// Inverse of a single unit monomial (a product of invertible symbols).
    Poly unit_inverse() const;
    bool is_unit() const;

    bool is_homogeneous() const;
    std::optional<int> grade() const;

    /// Ring homomorphism defined on symbols; symbols not in the map are fixed.
    Poly substitute(const std::function<std::optional<Poly>(VarId)>& image) const;
    Poly filter(const std::function<bool(const Mono&)>& keep) const;

    std::vector<Mono> canonical_terms() const;
    /// Text form in canonical order. `arity` > 1 groups symbols by slot and joins
    /// the groups with the tensor sign.
    std::string to_string(int arity = 1) const;

private:
    std::vector<Mono> terms_;
};

std::string mono_to_string(const Mono& mono, int arity = 1);

/// Moves symbols between tensor slots (slots absent from the map stay put).
Poly remap_slots(const Poly& p, const std::map<int, int>& moves);

/// Applies `reduce` to the slot-`slot` part of every tensor monomial, grouping
/// monomials by their remaining factors.
Poly reduce_slot(const Poly& p, int slot, const std::function<Poly(const Poly&)>& reduce);

/// Splits p = sum_k rest_k * part_k with part_k the slot-`slot` factor.
std::map<Mono, Poly> split_by_rest(const Poly& p, int slot);

// --------------------------------------------------------------------------
// Alphabet-checked polynomials

class GradedAlphabet {
public:
    GradedAlphabet(std::vector<VarId> vars);
    const std::vector<VarId>& vars() const { return vars_; }
    bool contains(VarId v) const;
    std::optional<VarId> invertible() const { return invertible_; }
    bool operator==(const GradedAlphabet& o) const { return vars_ == o.vars_; }

private:
    std::vector<VarId> vars_;
    std::optional<VarId> invertible_;
};

class GradedPolynomial {
public:
    GradedPolynomial(std::shared_ptr<const GradedAlphabet> alphabet, Poly poly);
    const Poly& poly() const { return poly_; }
    const GradedAlphabet& alphabet() const { return *alphabet_; }
    GradedPolynomial operator+(const GradedPolynomial& o) const;
    GradedPolynomial operator*(const GradedPolynomial& o) const;
    bool operator==(const GradedPolynomial& o) const { return poly_ == o.poly_; }
    std::string to_string() const { return poly_.to_string(); }

private:
    void require_same(const GradedPolynomial& o) const;
    std::shared_ptr<const GradedAlphabet> alphabet_;
    Poly poly_;
};

// --------------------------------------------------------------------------
// Power series

using Exps = std::array<int, 3>;

class PowerSeries {
public:
    PowerSeries(int nvars, int cap);
    static PowerSeries variable(int nvars, int cap, int which);
    static PowerSeries constant(int nvars, int cap, Poly c);
    /// Univariate series from coefficients c_0, c_1, ...
    static PowerSeries univariate(int cap, const std::vector<Poly>& coeffs);

    int nvars() const { return nvars_; }
    int cap() const { return cap_; }
    const std::map<Exps, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly coeff(Exps e) const;
    Poly coeff(int i) const { return coeff(Exps{i, 0, 0}); }
    Poly coeff(int i, int j) const { return coeff(Exps{i, j, 0}); }
    void add_term(Exps e, const Poly& c);

    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries& operator+=(const PowerSeries& o);
    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries operator*(const Poly& c) const;
    bool operator==(const PowerSeries& o) const;
    bool operator!=(const PowerSeries& o) const { return !(*this == o); }

    PowerSeries pow(int e) const;
    PowerSeries square() const;
    /// Multiplies by a monomial in the formal variables.
    PowerSeries shift(Exps e) const;
    PowerSeries truncate(int cap) const;
    PowerSeries map_coeffs(const std::function<Poly(const Poly&)>& f) const;
    /// Multiplicative inverse; the constant term must be a unit monomial.
    PowerSeries inverse() const;

    /// Exchanges two formal variables.
    PowerSeries swap_vars(int a, int b) const;
    /// Lowest total degree present, or nullopt for zero.
    std::optional<int> order() const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    int nvars_;
    int cap_;
    std::map<Exps, Poly> terms_;
};

/// f(g): f univariate, g any arity with zero constant term. Truncated at g's cap.
PowerSeries series_compose(const PowerSeries& f, const PowerSeries& g);

/// f(g_0, ..., g_{k-1}) for an arity-k series f and series g_i sharing arity
/// and cap, all with zero constant term.
PowerSeries series_substitute(const PowerSeries& f, const std::vector<PowerSeries>& gs);

/// Compositional inverse of f = c x + O(x^2), c a unit monomial.
PowerSeries series_comp_inverse(const PowerSeries& f);

struct InvariantExpansion {
    std::vector<PowerSeries> coefficients;  // one series in t per exponent
    PowerSeries residual;                   // bivariate in (x, t)
};

/// Writes F(x,t) = sum_k c_k(t) q^{e_k} + residual, eliminating the x^e t^{N-e}
/// coefficient of each total degree N in increasing e.  q must have the shape
/// x t + x^2 + (higher total degree) with no pure powers of t.
InvariantExpansion express_in_invariant(const PowerSeries& F, const PowerSeries& q,
                                        const std::vector<int>& exponents);

/// Raises if some invertible symbol has exponent below -4*cap.
void check_laurent_bound(const Poly& p, int cap);

}  // namespace nishida
