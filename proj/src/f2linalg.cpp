#include "nishida/f2linalg.hpp"

#include <algorithm>
#include <bit>

namespace nishida {

std::ptrdiff_t BitRow::first() const
{
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k])
            return static_cast<std::ptrdiff_t>(k * 64 + std::countr_zero(words_[k]));
    return -1;
}

bool BitRow::zero() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

Echelon::Echelon(const std::vector<Poly>& rows, const Order& before) : before_(before)
{
    std::vector<Mono> cols;
    for (const Poly& p : rows)
        cols.insert(cols.end(), p.terms().begin(), p.terms().end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::sort(cols.begin(), cols.end(), before);
    std::map<Mono, std::size_t> index;
    for (std::size_t k = 0; k < cols.size(); ++k)
        index.emplace(cols[k], k);

    std::vector<BitRow> basis;         // kept in insertion order
    std::vector<std::size_t> pivotCol;
    for (const Poly& p : rows) {
        BitRow r(cols.size());
        for (const Mono& mono : p.terms())
            r.flip(index.at(mono));
        // basis rows carry no pivots but their own, so one pass clears them all
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (r.test(pivotCol[j]))
                r.xor_with(basis[j]);
        std::ptrdiff_t c = r.first();
        if (c < 0)
            continue;
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (basis[k].test(c))
                basis[k].xor_with(r);
        basis.push_back(std::move(r));
        pivotCol.push_back(static_cast<std::size_t>(c));
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::vector<Mono> monos;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (basis[k].test(c))
                monos.push_back(cols[c]);
        pivots_.emplace(cols[pivotCol[k]], Poly::from_monos(std::move(monos)));
    }
}

Poly Echelon::reduce(const Poly& p) const
{
    Poly out = p;
    for (const Mono& mono : p.terms()) {
        auto it = pivots_.find(mono);
        if (it != pivots_.end())
            out += it->second;
    }
    return out;
}

bool Echelon::insert(const Poly& p)
{
    Poly r = reduce(p);
    if (r.is_zero())
        return false;
    const Mono& pivot = *std::min_element(r.terms().begin(), r.terms().end(), before_);
    for (auto& [piv, row] : pivots_)
        if (row.contains(pivot))
            row += r;
    pivots_.emplace(pivot, r);
    return true;
}

std::size_t f2_rank(const std::vector<Poly>& rows)
{
    Echelon e(rows, [](const Mono& a, const Mono& b) { return a < b; });
    return e.rank();
}

}  // namespace nishida
