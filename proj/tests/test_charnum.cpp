#include "doctest.h"

#include "nishida/charnum.hpp"

using namespace nishida;

namespace {

Poly B(int i) { return Poly::var(char_b(i)); }
Poly H(int n) { return Poly::var(h(n)); }
Poly A1() { return Poly::var(coh_a(0)); }

// Tangential numbers of RP^n: the a^n coefficient of b0^{-1} b(a)^{n+1}, with
// multinomial coefficients read mod 2 (odd iff the parts share no binary digit).
Poly rp_tangential_oracle(int n)
{
    Poly out;
    std::vector<int> r(n + 1, 0);
    // distribute n+1 factors over indices 0..n with total index n
    std::function<void(int, int, int, unsigned)> walk = [&](int i, int left, int weight, unsigned used) {
        if (i > n) {
            if (left == 0 && weight == n) {
                Poly term = Poly::one();
                for (int k = 0; k <= n; ++k)
                    term *= H(k).pow(r[k] - (k == 0 ? 1 : 0));
                out += term;
            }
            return;
        }
        for (int c = 0; c <= left && weight + c * i <= n; ++c) {
            if (used & static_cast<unsigned>(c))
                continue;
            r[i] = c;
            walk(i + 1, left - c, weight + c * i, used | static_cast<unsigned>(c));
        }
        r[i] = 0;
    };
    walk(0, n + 1, 0, 0);
    return out;
}

SpaceDescriptor rp(int n) { return SpaceDescriptor({n}); }

}  // namespace

TEST_CASE("total class of line-bundle sums")
{
    SpaceDescriptor X = rp(2);
    CHECK(total_char_class(VirtualBundle{{{LineBundle{}, 1}}}, X) == B(0));
    CHECK(total_char_class(VirtualBundle::tangent(X), X) ==
          B(0).pow(2) + B(0) * B(1) * A1() + (B(0) * B(2) + B(1).pow(2)) * A1().pow(2));
    Poly b = B(0) + B(1) * A1() + B(2) * A1().pow(2);
    LineBundle g{{0}};
    CHECK(total_char_class(VirtualBundle{{{g, 1}, {g, 1}}}, X) == X.truncate(b * b));
    CHECK(total_char_class(VirtualBundle{{{g, 2}}}, X) == X.truncate(b * b));
    CHECK(VirtualBundle::tangent(X).rank() == 2);
}

TEST_CASE("normal and tangential classes are mutually inverse")
{
    for (auto name : {"RP1", "RP2", "RP4", "RP2xRP3", "RP1xRP1xRP2"}) {
        SpaceDescriptor X = SpaceDescriptor::parse(name);
        Poly tau = total_char_class(VirtualBundle::tangent(X), X);
        Poly nu = total_char_class(VirtualBundle::normal(X), X);
        CHECK(nu == invert_total_class(tau, X));
        CHECK(invert_total_class(nu, X) == tau);
        CHECK(X.truncate(tau * nu) == Poly::one());
    }
}

TEST_CASE("tangential numbers of projective spaces")
{
    CHECK(boardman(rp(1), Variant::Tangential).is_zero());
    CHECK(boardman(rp(2), Variant::Tangential) == H(0) * H(2) + H(1).pow(2));
    for (int n = 1; n <= 8; ++n)
        CHECK(boardman(rp(n), Variant::Tangential) == rp_tangential_oracle(n));
    CHECK(boardman(rp(2), Variant::Normal) == H(0).pow(-3) * H(2));
    CHECK(boardman(SpaceDescriptor{}, Variant::Normal) == Poly::one());
}

TEST_CASE("homogeneity")
{
    for (auto name : {"RP1", "RP2", "RP3", "RP4", "RP5", "RP6", "RP2xRP2", "RP2xRP4", "RP1xRP2xRP3"}) {
        SpaceDescriptor X = SpaceDescriptor::parse(name);
        for (Variant v : {Variant::Tangential, Variant::Normal}) {
            Poly beta = boardman(X, v);
            CHECK(beta.is_homogeneous());
            if (!beta.is_zero())
                CHECK(*beta.grade() == X.dimension());
        }
    }
}

TEST_CASE("products and disjoint unions")
{
    const std::vector<std::string> small{"RP1", "RP2", "RP3"};
    for (Variant v : {Variant::Tangential, Variant::Normal})
        for (const auto& m : small)
            for (const auto& n : small) {
                SpaceDescriptor M = SpaceDescriptor::parse(m), N = SpaceDescriptor::parse(n);
                CHECK(boardman(M * N, v) == boardman(M, v) * boardman(N, v));
                CHECK(boardman(parse_manifold(m + "+" + n), v) == boardman(M, v) + boardman(N, v));
            }
    CHECK(boardman(rp(2) * rp(2), Variant::Tangential) == rp_tangential_oracle(2).pow(2));
    // odd projective spaces bound
    for (int n : {1, 3, 5, 7})
        CHECK(boardman(rp(n), Variant::Normal).is_zero());
}

TEST_CASE("Boardman map with the identity as target")
{
    for (auto name : {"RP2", "RP4", "RP2xRP2", "RP1xRP2"}) {
        SpaceDescriptor X = SpaceDescriptor::parse(name);
        for (Variant v : {Variant::Tangential, Variant::Normal}) {
            Poly full = boardman_fundamental(X, v);
            std::vector<int> zero(X.dims().size(), 0);
            Poly point;
            for (const Mono& mono : full.terms()) {
                auto [e, rest] = mono.split(
                    [](VarId u) { return SymbolTable::instance().info(u).family == Family::HomE; });
                if (e == Mono::var(hom_e(zero)))
                    point += Poly(rest);
            }
            CHECK(point == boardman(X, v));
            // the fundamental class with coefficient w_0 = h_0^rank
            int rank = v == Variant::Tangential ? X.dimension() : -X.dimension();
            CHECK(full.contains(Mono::var(h(0), rank) * Mono::var(hom_e(X.dims()))));
        }
    }
}

TEST_CASE("parsing")
{
    CHECK(SpaceDescriptor::parse("RP2xRP3").dims() == std::vector<int>{2, 3});
    CHECK(SpaceDescriptor::parse("RP2xRP3").name() == "RP2xRP3");
    CHECK(manifold_name(parse_manifold("RP2+pt")) == "RP2+pt");
    CHECK_THROWS_AS(SpaceDescriptor::parse("CP2"), AlgebraError);
    CHECK_THROWS_AS(SpaceDescriptor::parse("RP2x"), AlgebraError);
    CHECK_THROWS_AS(SpaceDescriptor::parse("RPx"), AlgebraError);
}

TEST_CASE("substitution identity and squaring")
{
    SigmaRing S(8, 4);
    Poly x = S.ring().generator(0);
    Poly q1 = S.ring().word(0, {1});
    std::vector<Poly> samples{x * H(1), x * x + H(0) * q1, H(0).pow(-1) * H(2) * x};
    for (SubstitutionReading rd : {SubstitutionReading::Whole, SubstitutionReading::Literal}) {
        for (const Poly& q : samples) {
            CHECK(S.substitute(x, q, rd) == q);
            CHECK(S.substitute(q, x, rd) == q);
        }
        CHECK(S.substitute(x * x, x * H(1), rd) == x * x * H(1).pow(2));
    }
}

TEST_CASE("substitution is associative")
{
    SigmaRing S(8, 4);
    Poly x = S.ring().generator(0);
    Poly q1 = S.ring().word(0, {1}), q2 = S.ring().word(0, {2});
    std::vector<Poly> outer{x * x, H(0).pow(-1) * q1, q2 + H(1) * q1, H(0) * x * x + q1};
    std::vector<Poly> inner{x * H(1), H(0) * x + H(2) * x, H(0).pow(-2) * x};
    for (SubstitutionReading rd : {SubstitutionReading::Whole, SubstitutionReading::Literal})
        for (const Poly& p : outer)
            for (const Poly& q : outer)
                for (const Poly& r : inner) {
                    Poly left = S.substitute(S.substitute(p, q, rd), r, rd);
                    Poly right = S.substitute(p, S.substitute(q, r, rd), rd);
                    CHECK(left == right);
                }
    // a non-additive outer operation
    for (SubstitutionReading rd : {SubstitutionReading::Whole, SubstitutionReading::Literal})
        for (const Poly& q : inner)
            for (const Poly& r : inner) {
                Poly p = x * q1;
                CHECK(S.substitute(S.substitute(p, q, rd), r, rd) == S.substitute(p, S.substitute(q, r, rd), rd));
            }
}

TEST_CASE("the two substitution readings")
{
    SigmaRing S(8, 4);
    Poly x = S.ring().generator(0);
    Poly q1 = S.ring().word(0, {1});
    Poly q = H(0) * x + H(1) * x;
    // additive operations agree
    CHECK(S.substitute(q1, q, SubstitutionReading::Whole) == S.substitute(q1, q, SubstitutionReading::Literal));
    // x Q1x is not additive
    Poly p = x * q1;
    CHECK(S.substitute(p, q, SubstitutionReading::Whole) != S.substitute(p, q, SubstitutionReading::Literal));
}

TEST_CASE("Boardman map on the free D-ring preserves substitution")
{
    BordismSigma S(10, 2);
    CHECK(S.coefficient(parse_manifold("RP2")) == Poly::var(m(2)));
    CHECK(S.coefficient(parse_manifold("RP2xRP2")) == Poly::var(m(2)).pow(2));
    CHECK(S.beta(S.dring().generator(0)) == S.sigma().ring().generator(0));
    for (SubstitutionReading rd : {SubstitutionReading::Whole, SubstitutionReading::Literal}) {
        Report r = theorem4_check(4, rd);
        CHECK(r.all_pass());
        CHECK(r.suite == std::string("theorem4:") + reading_name(rd));
        for (const auto& line : r.lines)
            CHECK(line.status == Status::Pass);
    }
}
