#include "doctest.h"

#include <random>

#include "nishida/hopf.hpp"

using namespace nishida;

namespace {

const auto A = HopfPresentation::milnor();
const auto B = HopfPresentation::faa_di_bruno();

Poly X(int i, int slot = 0) { return Poly::var(xi(i, slot)); }
Poly H(int n, int slot = 0) { return Poly::var(h(n, slot)); }

// Naive truncated product of coefficient lists.
std::vector<Poly> mul(const std::vector<Poly>& a, const std::vector<Poly>& b, int cap)
{
    std::vector<Poly> c(cap + 1);
    for (int i = 0; i <= cap; ++i)
        for (int j = 0; i + j <= cap; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// delta(h_n) = sum_k h_k (x) [x^{n+1}] h(x)^{k+1}, with h(x) in slot 1.
Poly faa_di_bruno_oracle(int n)
{
    int cap = n + 1;
    std::vector<Poly> hx(cap + 1);
    for (int k = 0; k + 1 <= cap; ++k)
        hx[k + 1] = H(k, 1);
    std::vector<Poly> power = hx;
    Poly out;
    for (int k = 0; k <= n; ++k) {
        out += H(k, 0) * power[cap];
        power = mul(power, hx, cap);
    }
    return out;
}

}  // namespace

TEST_CASE("Milnor coproduct")
{
    CHECK(coproduct(A, 0) == X(0, 0) * X(0, 1));
    CHECK(coproduct(A, 1) == X(0, 0) * X(1, 1) + X(1, 0) * X(0, 1).pow(2));
    for (int n = 0; n <= 4; ++n) {
        Poly expected;
        for (int i = 0; i <= n; ++i)
            expected += X(i, 0) * X(n - i, 1).pow(1 << i);
        CHECK(coproduct(A, n) == expected);
    }
}

TEST_CASE("Faa di Bruno coproduct")
{
    CHECK(coproduct(B, 1) == H(0, 0) * H(1, 1) + H(1, 0) * H(0, 1).pow(2));
    CHECK(coproduct(B, 1).to_string(2) == "h0⊗h1 + h1⊗h0^2");
    for (int n = 0; n <= 8; ++n)
        CHECK(coproduct(B, n) == faa_di_bruno_oracle(n));
}

TEST_CASE("coproduct outputs are homogeneous")
{
    for (int n = 0; n <= 10; ++n)
        CHECK(coproduct(B, n).grade() == n);
    for (int n = 0; n <= 3; ++n)
        CHECK(coproduct(A, n).grade() == (1 << n) - 1);
}

TEST_CASE("antipode")
{
    CHECK(antipode(A, 0) == X(0).pow(-1));
    CHECK(antipode(A, 1) == X(1) * X(0).pow(-3));
    CHECK(antipode(B, 1) == H(1) * H(0).pow(-3));
}

TEST_CASE("Hopf axioms through grade 12")
{
    for (const auto& hp : {A, B}) {
        Report r = hopf_axioms_check(hp, 12);
        CHECK(r.all_pass());
        CHECK(r.lines.size() >= 20);
    }
}

TEST_CASE("coproduct is an algebra map on random products")
{
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> idx(0, 5), ex(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Poly p = H(idx(rng)) * H(idx(rng)) + H(0).pow(ex(rng)) * H(idx(rng));
        Poly q = H(idx(rng)) + H(0).pow(ex(rng));
        CHECK(apply_coproduct(B, p * q, 0, 0, 1) == apply_coproduct(B, p, 0, 0, 1) * apply_coproduct(B, q, 0, 0, 1));
    }
}

TEST_CASE("epsilon reduction")
{
    CHECK(epsilon_reduce(H(1)) == X(1));
    CHECK(epsilon_reduce(H(2)).is_zero());
    CHECK(epsilon_reduce(H(0).pow(-1) * H(3)) == X(0).pow(-1) * X(2));
    CHECK(epsilon_bialgebra_check(12).all_pass());
}

TEST_CASE("coaction on RP infinity")
{
    Poly b1 = Poly::var(rp_b(1)), b2 = Poly::var(rp_b(2));
    CHECK(coaction_rp_infinity(A, 1) == X(0).pow(-1) * b1);
    CHECK(coaction_rp_infinity(A, 2) == X(1) * X(0).pow(-3) * b1 + X(0).pow(-2) * b2);
    // with xi_{>0} = 0 only the diagonal term survives
    for (int n = 0; n <= 10; ++n) {
        Poly v = coaction_rp_infinity(A, n).substitute([](VarId v) -> std::optional<Poly> {
            auto i = HopfPresentation::milnor().index_of(v);
            if (i && *i > 0)
                return Poly();
            return std::nullopt;
        });
        CHECK(v == X(0).pow(-n) * Poly::var(rp_b(n)));
    }
}

TEST_CASE("comodule axioms for RP infinity")
{
    CHECK(comodule_check(rp_infinity_coaction(A), 10).all_pass());
    CHECK(comodule_check(rp_infinity_coaction(A, true), 10).all_pass());
    CHECK(comodule_check(rp_infinity_coaction(B), 8).all_pass());
}

TEST_CASE("corrupted coaction is rejected at the offending degree")
{
    Coaction c = rp_infinity_coaction(A);
    auto good = c.map;
    c.map = [good](const Poly& p) {
        Poly v = good(p);
        if (p == Poly::var(rp_b(3)))
            v += Poly(v.terms().back());
        return v;
    };
    c.name = "corrupted";
    Report r = comodule_check(c, 10);
    CHECK_FALSE(r.all_pass());
    CHECK(r.first_failure_degree() == 3);
}
