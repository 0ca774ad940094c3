#include "doctest.h"

#include "nishida/dring.hpp"

using namespace nishida;

namespace {

const auto B = HopfPresentation::faa_di_bruno();

Poly H(int n) { return Poly::var(h(n)); }
Poly M(int i) { return Poly::var(m(i)); }

std::shared_ptr<const LazardModel> universal() { return build_universal_fgl(14); }

// h(x) h(F(x,t)) in (x, t).
PowerSeries product_side(const LazardModel& F, int cap)
{
    PowerSeries hs = B.series(cap);
    PowerSeries x = PowerSeries::variable(2, cap, 0);
    return series_compose(hs, x) * series_compose(hs, F.law().truncate(cap));
}

// Word shapes with the letter dropped, one entry per monomial.
std::vector<std::vector<std::vector<int>>> shapes(const std::vector<Poly>& basis)
{
    std::vector<std::vector<std::vector<int>>> out;
    for (const Poly& p : basis) {
        std::vector<std::vector<int>> words;
        for (const Mono& mono : p.terms())
            for (std::size_t k = 0; k < mono.size(); ++k) {
                const WordShape& w = word_shape(mono.var_at(k));
                std::vector<int> key{w.generator, mono.exp_at(k)};
                key.insert(key.end(), w.indices.begin(), w.indices.end());
                words.push_back(key);
            }
        out.push_back(words);
    }
    return out;
}

}  // namespace

TEST_CASE("additive law collapses to the Q-structure")
{
    auto A = build_fgl(FglKind::Additive, 14);
    auto q = solve_generator_qstructure(B);
    for (Quadratic quad : {Quadratic::XF, Quadratic::XXT}) {
        auto ds = solve_tensor_dstructure(A, quad);
        for (int n = 0; n <= 4; ++n)
            CHECK(ds->entry(n, 4) == q->entry(n, 4));
        CHECK(ds->residual(12).is_zero());
    }
    auto ds = solve_tensor_dstructure(A);
    PowerSeries qh0 = op_eval(hopf_qspec(q), H(0), 6);
    CHECK(dt_eval(*ds, H(0).pow(2), 6) == qh0.pow(2));
    CHECK(dt_eval(*ds, Poly::one(), 6) == PowerSeries::constant(1, 6, Poly::one()));
}

TEST_CASE("product side is invariant under x -> F(x,t)")
{
    auto F = universal();
    const int cap = 10;
    PowerSeries rhs = product_side(*F, cap);
    PowerSeries Fxt = F->law().truncate(cap);
    PowerSeries t = PowerSeries::variable(2, cap, 1);
    CHECK(series_substitute(rhs, {Fxt, t}) == rhs);
    // F(F(x,t),t) = x
    CHECK(series_substitute(Fxt, {Fxt, t}) == PowerSeries::variable(2, cap, 0));
}

TEST_CASE("solved D-structure re-expands to the product side")
{
    auto F = universal();
    auto ds = solve_tensor_dstructure(F, Quadratic::XF);
    const int cap = 12;
    CHECK(ds->residual(cap).is_zero());
    CHECK(dstructure_report(*ds, cap).all_pass());

    PowerSeries q = PowerSeries::variable(2, cap, 0) * F->law().truncate(cap);
    PowerSeries sum(2, cap);
    for (int n = 0; 2 * (n + 1) <= cap; ++n) {
        PowerSeries entry = ds->entry(n, cap - 2 * (n + 1));
        PowerSeries lifted(2, cap);
        for (auto& [e, c] : entry.terms())
            lifted.add_term({0, e[0], 0}, c);
        sum += lifted * q.pow(n + 1);
    }
    CHECK(sum == product_side(*F, cap));
}

TEST_CASE("literal quadratic leaves a residual")
{
    auto F = universal();
    auto ds = solve_tensor_dstructure(F, Quadratic::XXT);
    CHECK_FALSE(ds->residual(8).is_zero());
    Report r = dstructure_report(*ds, 8);
    CHECK_FALSE(r.all_pass());
    CHECK(r.first_failure_degree() == 4);
    CHECK(r.lines.at(0).name == "residual xxt");
}

TEST_CASE("squaring at t = 0")
{
    auto F = universal();
    auto ds = solve_tensor_dstructure(F);
    for (int n = 0; n <= 5; ++n)
        CHECK(ds->entry(n, 0).coeff(0) == H(n).pow(2));
    for (int i = 1; i <= 6; ++i)
        CHECK(lazard_operation().on_generator(i, 0).coeff(0) == M(i).pow(2));
    Poly a = H(0).pow(-1) * H(1) + F->coeff(1, 2) * H(2);
    CHECK(dt_eval(*ds, a, 0).coeff(0) == a * a);
    CHECK_THROWS_AS(dt_eval(*ds, Poly::var(xi(1)), 2), AlgebraError);
}

TEST_CASE("Hurewicz map")
{
    CHECK(hurewicz(M(2)) == H(2) * H(0).pow(-3));
    CHECK(hurewicz_inverse(H(1) * H(2) * H(0).pow(-5)) == M(1) * M(2));
    CHECK_THROWS_AS(hurewicz_inverse(H(1)), AlgebraError);
    // restricted to the coefficients, it is the augmented coaction
    auto F = universal();
    for (auto [i, j] : F->generators(6)) {
        Poly phi = ln_coaction(*F, F->coeff(i, j));
        Poly augmented = phi.substitute([](VarId v) -> std::optional<Poly> {
            if (SymbolTable::instance().info(v).family == Family::M)
                return Poly();
            return std::nullopt;
        });
        CHECK(augmented == hurewicz(F->coeff(i, j)));
    }
}

TEST_CASE("operation on the coefficient subring")
{
    auto F = universal();
    OperationSpec op = lazard_operation().spec(F);
    CHECK(op_eval(op, M(2), 2).coeff(1) == M(1) * M(2).pow(2) + M(1) * M(4) + M(2) * M(3) + M(5));
    for (int n = 2; n <= 5; ++n)
        for (const Poly& lam : F->basis(n)) {
            int cap = 13 - 2 * n;
            PowerSeries d = op_eval(op, lam, cap);
            CHECK(d.coeff(0) == lam * lam);
            for (int i = 0; i <= cap; ++i)
                CHECK(F->contains(d.coeff(i)));
        }
}

TEST_CASE("interchange with D_s(t) = t F(t,s)")
{
    auto F = universal();
    auto ds = solve_tensor_dstructure(F);
    CHECK(interchange_check(ds->spec, H(0), 6, "h0").all_pass());
    CHECK(interchange_check(ds->spec, H(1), 5, "h1").all_pass());
    CHECK(interchange_check(ds->spec, H(0).pow(-1) * H(1), 4, "h1/h0").all_pass());
    OperationSpec op = lazard_operation().spec(F);
    for (int n = 2; n <= 4; ++n)
        for (const Poly& lam : F->basis(n))
            CHECK(interchange_check(op, lam, 6, lam.to_string()).all_pass());
}

TEST_CASE("interchange fails with the additive rule over the universal law")
{
    auto F = universal();
    auto ds = solve_tensor_dstructure(F);
    OperationSpec wrong = ds->spec;
    wrong.t_rule = additive_t_rule;
    CHECK_FALSE(interchange_check(wrong, H(0), 6, "h0").all_pass());
}

TEST_CASE("operation on the model commutes with the coaction")
{
    auto F = build_universal_fgl(16);
    auto ds = solve_tensor_dstructure(F);
    OperationSpec op = lazard_operation().spec(F);
    const int cap = 4;
    for (int n = 2; n <= 5; ++n)
        for (const Poly& lam : F->basis(n)) {
            PowerSeries d = op_eval(op, lam, cap);
            PowerSeries lhs(1, cap), ht = B.series(cap), power = PowerSeries::constant(1, cap, Poly::one());
            for (int i = 0; i <= cap; ++i) {
                lhs += power * ln_coaction(*F, d.coeff(i));
                power = power * ht;
            }
            CHECK(lhs == op_eval(ds->spec, ln_coaction(*F, lam), cap));
        }
}

TEST_CASE("free D-ring over the additive law matches Q<x>")
{
    auto A = build_fgl(FglKind::Additive, 12);
    auto D = build_free_dring({{"x", 0, 1}}, A, 8, 4);
    FreeOperationRing::Options o;
    o.gens = {{"x", 0, 1}};
    o.maxdeg = 8;
    o.maxweight = 4;
    FreeOperationRing Q(o);
    for (int w = 1; w <= 4; ++w)
        for (int d = 0; d <= 8; ++d) {
            CHECK(D.dimension(d, w) == Q.dimension(d, w));
            CHECK(shapes(D.basis(d, w)) == shapes(Q.basis(d, w)));
        }
    CHECK(D.word(0, {0}) == D.generator(0).pow(2));
}

TEST_CASE("free D-ring over the universal law")
{
    auto F = build_universal_fgl(12);
    auto D = build_free_dring({{"x", 0, 1}}, F, 5, 4);
    CHECK(op_coefficient(D.pre_ring_spec(), D.generator(0), 0) == D.generator(0).pow(2));
    std::vector<int> r;
    for (int n = 0; n <= 5; ++n)
        r.push_back(F->rank(n));
    std::vector<int> q4{1, 1, 2, 3, 3, 4};
    for (int d = 0; d <= 5; ++d) {
        CHECK(D.dimension(d, 1) == r[d]);
        // free module on x^2 and D_i x
        int w2 = 0, w4 = 0;
        for (int k = 0; k <= d; ++k) {
            w2 += r[k];
            w4 += r[k] * q4[d - k];
        }
        CHECK(D.dimension(d, 2) == w2);
        CHECK(D.dimension(d, 4) == w4);
        CHECK(D.relations_in_ambient(d, 2));
        CHECK(D.relations_in_ambient(d, 4));
    }
    for (int w : {1, 2, 4})
        for (int d = 0; d <= 5; ++d)
            for (const Poly& b : D.basis(d, w))
                CHECK(D.normal_form(b) == b);
    for (unsigned seed : {3u, 5u}) {
        auto S = build_free_dring({{"x", 0, 1}}, F, 5, 4, seed);
        for (int d = 0; d <= 4; ++d) {
            CHECK(S.dimension(d, 2) == D.dimension(d, 2));
            for (auto& [piv, row] : D.relations(d, 2).rows())
                CHECK(S.normal_form(Poly(piv)) == D.normal_form(Poly(piv)));
        }
    }
}
