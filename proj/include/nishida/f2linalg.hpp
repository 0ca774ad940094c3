#pragma once

// Row reduction over F2 with bit-packed rows. Columns are monomials; the
// caller supplies the column order and pivots are taken at the first column.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "nishida/f2series.hpp"

namespace nishida {

class BitRow {
public:
    explicit BitRow(std::size_t ncols = 0) : words_((ncols + 63) / 64, 0) {}
    void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void xor_with(const BitRow& o)
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] ^= o.words_[k];
    }
    std::ptrdiff_t first() const;
    bool zero() const;

private:
    std::vector<std::uint64_t> words_;
};

/// Reduced row echelon form of a family of polynomials viewed as vectors over
/// their monomials. `before(a, b)` must be a strict total order; the first
/// monomial of each reduced row in that order is its pivot.
class Echelon {
public:
    using Order = std::function<bool(const Mono&, const Mono&)>;

    Echelon() = default;
    explicit Echelon(Order before) : before_(std::move(before)) {}
    Echelon(const std::vector<Poly>& rows, const Order& before);

    std::size_t rank() const { return pivots_.size(); }
    bool is_pivot(const Mono& mono) const { return pivots_.count(mono) != 0; }
    const std::map<Mono, Poly>& rows() const { return pivots_; }

    /// Normal form: eliminates every pivot monomial.
    Poly reduce(const Poly& p) const;
    /// Adds one row; returns false when it was already in the span.
    bool insert(const Poly& p);

private:
    Order before_;
    std::map<Mono, Poly> pivots_;  // pivot -> reduced row (containing its pivot)
};

/// Rank of a family of polynomials over F2.
std::size_t f2_rank(const std::vector<Poly>& rows);

}  // namespace nishida
