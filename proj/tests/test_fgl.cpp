#include "doctest.h"

#include <functional>
#include <random>

#include "nishida/fgl.hpp"

using namespace nishida;

namespace {

Poly M(int i) { return Poly::var(m(i)); }
Poly H(int n, int slot = 0) { return Poly::var(h(n, slot)); }

// Partitions of n into parts not of the form 2^k - 1, by brute-force recursion.
int partitions_avoiding_mersenne(int n, int largest)
{
    if (n == 0)
        return 1;
    int count = 0;
    for (int part = std::min(n, largest); part >= 1; --part) {
        if (((part + 1) & part) == 0)
            continue;
        count += partitions_avoiding_mersenne(n - part, part);
    }
    return count;
}

// Conjugation g(F(g^{-1} x, g^{-1} y)) of a bivariate law by a univariate series.
PowerSeries conjugate(const PowerSeries& F, const PowerSeries& g)
{
    int cap = F.cap();
    PowerSeries gi = series_comp_inverse(g);
    PowerSeries x = PowerSeries::variable(2, cap, 0), y = PowerSeries::variable(2, cap, 1);
    return series_compose(g, series_substitute(F, {series_compose(gi, x), series_compose(gi, y)}));
}

}  // namespace

TEST_CASE("partition oracle")
{
    std::vector<int> expected{1, 0, 1, 0, 2, 1, 3, 1, 5};
    for (int n = 0; n <= 8; ++n)
        CHECK(partitions_avoiding_mersenne(n, n) == expected[n]);
}

TEST_CASE("universal law: low coefficients")
{
    auto F = build_universal_fgl(6);
    CHECK(F->coeff(1, 0) == Poly::one());
    CHECK(F->coeff(0, 1) == Poly::one());
    CHECK(F->coeff(2, 0).is_zero());
    // (X + Y)^2 has no cross term in characteristic two
    CHECK(F->coeff(1, 1).is_zero());
    CHECK(F->coeff(1, 2) == M(2));
    CHECK(F->coeff(2, 1) == M(2));
    CHECK(F->coeff(1, 4) == M(1).pow(2) * M(2) + M(4));
    CHECK(F->coeff(2, 3) == M(2).pow(2));
    PowerSeries x = PowerSeries::variable(1, 6, 0);
    CHECK(series_substitute(F->law(), {x, x}).is_zero());
}

TEST_CASE("universal law axioms through degree 10")
{
    auto F = build_universal_fgl(10);
    Report r = fgl_axioms_check(*F, 10);
    CHECK(r.all_pass());
    CHECK(r.lines.size() == 5);
    CHECK_THROWS_AS(fgl_axioms_check(*F, 11), TruncationError);
}

TEST_CASE("additive law")
{
    auto F = build_fgl(FglKind::Additive, 8);
    CHECK(F->law() == PowerSeries::variable(2, 8, 0) + PowerSeries::variable(2, 8, 1));
    CHECK(fgl_axioms_check(*F, 8).all_pass());
    CHECK(F->rank(0) == 1);
    for (int n = 1; n <= 7; ++n)
        CHECK(F->rank(n) == 0);
}

TEST_CASE("coefficient subring ranks match the partition count")
{
    auto F = build_universal_fgl(10);
    for (int n = 0; n <= 9; ++n)
        CHECK(lazard_rank(*F, n) == partitions_avoiding_mersenne(n, n));
    CHECK_THROWS_AS(F->basis(10), TruncationError);
}

TEST_CASE("subring membership")
{
    auto F = build_universal_fgl(8);
    CHECK(F->contains(M(2)));
    CHECK(F->contains(M(2).pow(2) + M(1).pow(2) * M(2) + M(4)));
    CHECK_FALSE(F->contains(M(1)));
    CHECK_FALSE(F->contains(M(4)));
    CHECK_FALSE(F->contains(M(3)));
    CHECK(F->contains(Poly::one()));
    for (auto [i, j] : F->generators(7))
        CHECK(F->contains(F->coeff(i, j)));
}

TEST_CASE("conjugation coaction")
{
    auto F = build_universal_fgl(8);
    CHECK(ln_coaction_coeff(*F, 1, 1).is_zero());
    CHECK(ln_coaction_coeff(*F, 1, 2) == H(0).pow(-2) * M(2) + H(0).pow(-3) * H(2));
    // conjugated law and the ring map on m agree on every coefficient
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; i + j <= 8; ++j)
            CHECK(ln_coaction_coeff(*F, i, j) == ln_coaction(*F, F->coeff(i, j)));
    // counit: h0 = 1, h_{>0} = 0 gives back a_ij
    auto B = HopfPresentation::faa_di_bruno();
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; i + j <= 8; ++j)
            CHECK(apply_counit(B, ln_coaction_coeff(*F, i, j)) == F->coeff(i, j));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; i + j <= 8; ++j)
            CHECK(ln_coaction_coeff(*F, i, j).grade().value_or(i + j - 1) == i + j - 1);
}

TEST_CASE("coaction is multiplicative on the subring")
{
    auto F = build_universal_fgl(9);
    auto gens = F->generators(8);
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        auto [i, j] = gens[pick(rng)];
        auto [k, l] = gens[pick(rng)];
        Poly a = F->coeff(i, j), b = F->coeff(k, l);
        CHECK(ln_coaction(*F, a * b) == ln_coaction_coeff(*F, i, j) * ln_coaction_coeff(*F, k, l));
    }
}

TEST_CASE("comodule axioms on the coefficient subring")
{
    auto F = build_universal_fgl(8);
    Report r = comodule_check(ln_coaction_on_fgl(F), 6);
    CHECK(r.all_pass());
    CHECK(r.lines.size() == 21);
}

TEST_CASE("conjugation is a group action")
{
    const int cap = 7;
    auto F = build_universal_fgl(cap);
    auto B = HopfPresentation::faa_di_bruno();
    PowerSeries g = B.series(cap, 0), k = B.series(cap, 2);
    PowerSeries twice = conjugate(conjugate(F->law(), g), k);
    PowerSeries once = conjugate(F->law(), series_compose(k, g));
    CHECK(twice == once);
}
