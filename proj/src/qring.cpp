#include "nishida/qring.hpp"

#include <algorithm>
#include <random>

namespace nishida {

namespace {

PowerSeries lift_to_s(const PowerSeries& u, int cap)
{
    PowerSeries r(2, cap);
    for (auto& [e, c] : u.terms())
        r.add_term({e[0], 0, 0}, c);
    return r;
}

bool binomial_odd(int n, int k) { return k >= 0 && k <= n && (n & k) == k; }

}  // namespace

PowerSeries additive_t_rule(int cap)
{
    PowerSeries r(2, cap);
    r.add_term({0, 2, 0}, Poly::one());
    r.add_term({1, 1, 0}, Poly::one());
    return r;
}

PowerSeries op_eval(const OperationSpec& spec, const Poly& a, int cap)
{
    std::map<VarId, PowerSeries> base;
    std::map<std::pair<VarId, int>, PowerSeries> powers;
    auto power = [&](VarId v, int e) -> const PowerSeries& {
        auto key = std::make_pair(v, e);
        if (auto it = powers.find(key); it != powers.end())
            return it->second;
        auto b = base.find(v);
        if (b == base.end()) {
            auto s = spec.table(v, cap);
            if (!s)
                throw AlgebraError("no " + std::string(1, spec.letter) + "_t value registered for " +
                                   SymbolTable::instance().info(v).name);
            b = base.emplace(v, s->truncate(cap)).first;
        }
        return powers.emplace(key, b->second.pow(e)).first->second;
    };
    PowerSeries result(1, cap);
    for (const Mono& mono : a.terms()) {
        PowerSeries term = PowerSeries::constant(1, cap, Poly::one());
        for (std::size_t k = 0; k < mono.size(); ++k)
            term = term * power(mono.var_at(k), mono.exp_at(k));
        result += term;
    }
    return result;
}

Poly op_coefficient(const OperationSpec& spec, const Poly& a, int i) { return op_eval(spec, a, i).coeff(i); }

PowerSeries op_twice(const OperationSpec& spec, const Poly& a, int cap)
{
    PowerSeries inner = op_eval(spec, a, cap);
    PowerSeries rule = spec.t_rule(cap);
    PowerSeries rulePow = PowerSeries::constant(2, cap, Poly::one());
    PowerSeries result(2, cap);
    for (int i = 0; 2 * i <= cap; ++i) {
        Poly c = inner.coeff(i);
        if (!c.is_zero())
            result += lift_to_s(op_eval(spec, c, cap - 2 * i), cap) * rulePow;
        rulePow = rulePow * rule;
    }
    return result;
}

Report interchange_check(const OperationSpec& spec, const Poly& a, int maxdeg, const std::string& label,
                         const std::function<Poly(const Poly&)>& normalize)
{
    Report r;
    r.suite = "interchange:" + spec.name;
    r.degree_hi = maxdeg;
    PowerSeries x = op_twice(spec, a, maxdeg);
    PowerSeries sym = x + x.swap_vars(0, 1);
    if (normalize)
        sym = sym.map_coeffs(normalize);
    for (int n = 0; n <= maxdeg; ++n) {
        std::string bad;
        for (auto& [e, c] : sym.terms())
            if (e[0] + e[1] == n) {
                bad = "s^" + std::to_string(e[0]) + " t^" + std::to_string(e[1]);
                break;
            }
        r.add(label, n, bad.empty(), bad.empty() ? "" : "asymmetric at " + bad);
    }
    return r;
}

// --------------------------------------------------------------------------
// Generator tables

GeneratorTable::GeneratorTable(HopfPresentation H, SeriesRule rhs, SeriesRule quadratic, std::string label)
    : H_(H), rhs_(std::move(rhs)), quadratic_(std::move(quadratic)), label_(std::move(label))
{
}

GeneratorTable::Solved GeneratorTable::solve(int cap) const
{
    std::vector<int> exps;
    for (int n = 0; 2 * H_.exponent(n) <= cap; ++n)
        exps.push_back(H_.exponent(n));
    auto sol = express_in_invariant(rhs_(cap), quadratic_(cap), exps);
    Solved s;
    s.cap = cap;
    s.entries = std::move(sol.coefficients);
    s.residual = std::move(sol.residual);
    return s;
}

PowerSeries GeneratorTable::entry(int n, int cap) const
{
    int need = cap + 2 * H_.exponent(n);
    std::lock_guard<std::mutex> lock(mutex_);
    if (limit_ >= 0 && need > limit_)
        throw TruncationError(label_ + ": precision " + std::to_string(need) + " exceeds the limit " +
                              std::to_string(limit_));
    if (best_.cap < need) {
        int target = std::max(need, best_.cap + 8);
        best_ = solve(limit_ >= 0 ? std::min(target, limit_) : target);
    }
    PowerSeries e = best_.entries.at(n).truncate(cap);
    PowerSeries out(1, cap);
    for (auto& [ex, c] : e.terms())
        out.add_term(ex, c);
    return out;
}

PowerSeries GeneratorTable::residual(int cap) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    if (limit_ >= 0 && cap > limit_)
        throw TruncationError(label_ + ": residual beyond the precision limit");
    if (best_.cap < cap)
        best_ = solve(cap);
    return best_.residual.truncate(cap);
}

PowerSeries symmetric_product(const HopfPresentation& H, int cap)
{
    PowerSeries gx(2, cap), gxt(2, cap);
    for (int n = 0; H.exponent(n) <= cap; ++n) {
        int e = H.exponent(n);
        Poly g = Poly::var(H.gen(n));
        gx.add_term({e, 0, 0}, g);
        for (int a = 0; a <= e; ++a)
            if (binomial_odd(e, a))
                gxt.add_term({a, e - a, 0}, g);
    }
    return gx * gxt;
}

PowerSeries additive_quadratic(int cap)
{
    PowerSeries q(2, cap);
    q.add_term({2, 0, 0}, Poly::one());
    q.add_term({1, 1, 0}, Poly::one());
    return q;
}

std::shared_ptr<GeneratorTable> solve_generator_qstructure(const HopfPresentation& H)
{
    static std::mutex m;
    static std::map<HopfKind, std::shared_ptr<GeneratorTable>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto& slot = cache[H.kind];
    if (!slot) {
        std::string label = std::string("Q on ") + H.letter();
        slot = std::make_shared<GeneratorTable>(
            H, [H](int cap) { return symmetric_product(H, cap); }, additive_quadratic, label);
    }
    return slot;
}

OperationSpec hopf_qspec(std::shared_ptr<const GeneratorTable> table, char letter)
{
    OperationSpec s;
    s.name = table->label();
    s.letter = letter;
    s.t_rule = additive_t_rule;
    s.table = [table](VarId v, int cap) -> std::optional<PowerSeries> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        auto n = table->presentation().index_of(v);
        if (!n || info.slot != 0)
            return std::nullopt;
        PowerSeries e = table->entry(*n, cap);
        if (!table->residual(cap + 2 * table->presentation().exponent(*n)).is_zero())
            throw AlgebraError("functional equation for " + table->label() + " has a nonzero residual");
        return e;
    };
    return s;
}

OperationSpec tensor_spec(const OperationSpec& hopfPart, const OperationSpec& R)
{
    OperationSpec s;
    s.name = hopfPart.name + " ⊗ " + R.name;
    s.letter = R.letter;
    s.t_rule = R.t_rule;
    s.table = [hp = hopfPart.table, rt = R.table](VarId v, int cap) -> std::optional<PowerSeries> {
        if (auto a = hp(v, cap))
            return a;
        return rt(v, cap);
    };
    return s;
}

OperationSpec perturbed_spec(const OperationSpec& spec, VarId v, int power, const Poly& delta)
{
    OperationSpec s = spec;
    s.name = spec.name + " (perturbed)";
    s.table = [inner = spec.table, v, power, delta](VarId u, int cap) -> std::optional<PowerSeries> {
        auto r = inner(u, cap);
        if (r && u == v)
            r->add_term({power, 0, 0}, delta);
        return r;
    };
    return s;
}

// --------------------------------------------------------------------------
// Words

bool is_word_symbol(VarId v) { return SymbolTable::instance().info(v).word.has_value(); }

const WordShape& word_shape(VarId v)
{
    const SymbolInfo& s = SymbolTable::instance().info(v);
    if (!s.word)
        throw AlgebraError(s.name + " is not an operation word");
    return *s.word;
}

std::pair<int, int> bidegree(const Mono& mono) { return {mono.grade(), mono.weight()}; }

namespace {

using WordList = std::vector<VarId>;

// Word factors with multiplicity, largest first; scalars returned separately.
std::pair<WordList, Mono> word_list(const Mono& mono)
{
    auto& tab = SymbolTable::instance();
    WordList words;
    auto [w, rest] = mono.split([&](VarId v) { return tab.info(v).word.has_value(); });
    for (std::size_t k = 0; k < w.size(); ++k)
        for (int e = 0; e < w.exp_at(k); ++e)
            words.push_back(w.var_at(k));
    std::sort(words.begin(), words.end(),
              [&](VarId a, VarId b) { return tab.info(a).key > tab.info(b).key; });
    return {words, rest};
}

}  // namespace

bool word_monomial_greater(const Mono& a, const Mono& b)
{
    if (a == b)
        return false;
    auto& tab = SymbolTable::instance();
    auto [wa, sa] = word_list(a);
    auto [wb, sb] = word_list(b);
    for (std::size_t k = 0; k < std::min(wa.size(), wb.size()); ++k) {
        const auto& ka = tab.info(wa[k]).key;
        const auto& kb = tab.info(wb[k]).key;
        if (ka != kb)
            return ka > kb;
    }
    if (wa.size() != wb.size())
        return wa.size() > wb.size();
    if (sa != sb)
        return canonical_less(sb, sa);
    return false;
}

// --------------------------------------------------------------------------
// Free operation rings

FreeOperationRing::FreeOperationRing(Options opts) : opts_(std::move(opts))
{
    for (std::size_t k = 0; k < opts_.gens.size(); ++k) {
        const auto& g = opts_.gens[k];
        if (g.weight < 1 || g.degree < 0)
            throw AlgebraError("generators need weight >= 1 and degree >= 0");
        WordShape shape{opts_.letter, static_cast<int>(k), {}};
        genSymbols_.push_back(word_symbol(shape, g.degree, g.weight, g.name, opts_.slot));
    }
}

Poly FreeOperationRing::generator(int k) const { return Poly::var(genSymbols_.at(k)); }

Poly FreeOperationRing::word(int gen, const std::vector<int>& indices) const
{
    Poly p = generator(gen);
    OperationSpec pre = pre_ring_spec();
    for (auto it = indices.rbegin(); it != indices.rend(); ++it)
        p = op_coefficient(pre, p, *it);
    return p;
}

OperationSpec FreeOperationRing::pre_ring_spec() const
{
    OperationSpec s;
    s.name = std::string("free ") + opts_.letter + "-ring";
    s.letter = opts_.letter;
    s.t_rule = opts_.t_rule;
    const char letter = opts_.letter;
    const int slot = opts_.slot;
    auto scalars = opts_.scalars;
    auto gens = opts_.gens;
    s.table = [letter, slot, scalars, gens](VarId v, int cap) -> std::optional<PowerSeries> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        if (info.word && info.word->letter == letter && info.slot == slot) {
            PowerSeries r(1, cap);
            r.add_term({0, 0, 0}, Poly::var(v, 2));
            const auto& g = gens.at(info.word->generator);
            for (int i = 1; i <= cap; ++i) {
                WordShape shape = *info.word;
                shape.indices.insert(shape.indices.begin(), i);
                r.add_term({i, 0, 0}, Poly::var(word_symbol(shape, g.degree, g.weight, g.name, slot)));
            }
            return r;
        }
        if (scalars)
            return scalars->op(v, cap);
        return std::nullopt;
    };
    return s;
}

OperationSpec FreeOperationRing::quotient_spec() const
{
    OperationSpec s = pre_ring_spec();
    s.name = std::string("free ") + opts_.letter + "-ring quotient";
    s.table = [this, pre = s.table](VarId v, int cap) -> std::optional<PowerSeries> {
        auto r = pre(v, cap);
        if (!r || !is_word_symbol(v))
            return r;
        PowerSeries out(1, cap);
        for (auto& [e, c] : r->terms())
            out.add_term(e, normal_form(c));
        return out;
    };
    return s;
}

std::vector<Mono> FreeOperationRing::word_monomials(int degree, int weight) const
{
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    auto key = std::make_pair(degree, weight);
    if (auto it = monomials_.find(key); it != monomials_.end())
        return it->second;

    // atoms: every word with degree <= degree and weight <= weight
    std::vector<std::pair<VarId, std::pair<int, int>>> atoms;
    for (std::size_t k = 0; k < opts_.gens.size(); ++k) {
        const auto& g = opts_.gens[k];
        std::vector<std::pair<std::vector<int>, std::pair<int, int>>> stack{{{}, {g.degree, g.weight}}};
        while (!stack.empty()) {
            auto [idx, dw] = stack.back();
            stack.pop_back();
            if (dw.first > degree || dw.second > weight)
                continue;
            WordShape shape{opts_.letter, static_cast<int>(k), idx};
            atoms.push_back({word_symbol(shape, g.degree, g.weight, g.name, opts_.slot), dw});
            for (int i = 1; 2 * dw.first + i <= degree; ++i) {
                auto next = idx;
                next.insert(next.begin(), i);
                stack.push_back({next, {2 * dw.first + i, 2 * dw.second}});
            }
        }
    }
    std::sort(atoms.begin(), atoms.end());

    std::vector<Mono> out;
    std::function<void(std::size_t, int, int, Mono)> rec = [&](std::size_t from, int d, int w, Mono acc) {
        if (d == 0 && w == 0) {
            out.push_back(acc);
            return;
        }
        for (std::size_t k = from; k < atoms.size(); ++k) {
            auto [ad, aw] = atoms[k].second;
            if (ad <= d && aw <= w && aw > 0)
                rec(k, d - ad, w - aw, acc * Mono::var(atoms[k].first));
        }
    };
    rec(0, degree, weight, Mono{});
    std::sort(out.begin(), out.end(), [](const Mono& a, const Mono& b) { return word_monomial_greater(b, a); });
    monomials_.emplace(key, out);
    return out;
}

std::vector<Poly> FreeOperationRing::ambient(int degree, int weight) const
{
    std::vector<Poly> out;
    for (int k = 0; k <= degree; ++k) {
        std::vector<Poly> scal;
        if (opts_.scalars)
            scal = opts_.scalars->basis(k);
        else if (k == 0)
            scal = {Poly::one()};
        if (scal.empty())
            continue;
        for (const Mono& w : word_monomials(degree - k, weight))
            for (const Poly& s : scal)
                out.push_back(s * w);
    }
    return out;
}

std::vector<Poly> FreeOperationRing::generating_relations(int degree, int weight) const
{
    std::vector<Poly> rows;
    if (weight % 4)
        return rows;
    OperationSpec pre = pre_ring_spec();
    for (int ad = 0; 4 * ad <= degree; ++ad) {
        for (const Mono& a : word_monomials(ad, weight / 4)) {
            if (a.size() != 1 || a.exp_at(0) != 1)
                continue;
            int n = degree - 4 * ad;
            PowerSeries x = op_twice(pre, Poly(a), n);
            PowerSeries sym = x + x.swap_vars(0, 1);
            for (auto& [e, c] : sym.terms())
                if (e[0] + e[1] == n && e[0] < e[1])
                    rows.push_back(c);
        }
    }
    return rows;
}

FreeOperationRing::Component& FreeOperationRing::component(int degree, int weight) const
{
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    if (degree < 0 || weight < 0 || degree > opts_.maxdeg || weight > opts_.maxweight)
        throw TruncationError("bidegree (" + std::to_string(degree) + "," + std::to_string(weight) +
                              ") is outside the computed range");
    Component& c = components_[{degree, weight}];
    if (!c.built) {
        build(degree, weight, c);
        c.built = true;
    }
    return c;
}

void FreeOperationRing::build(int degree, int weight, Component& c) const
{
    std::vector<Poly> rows = generating_relations(degree, weight);
    OperationSpec pre = pre_ring_spec();
    if (weight % 2 == 0 && weight > 0) {
        for (int d1 = 0; 2 * d1 <= degree; ++d1)
            for (auto& [piv, row] : relations(d1, weight / 2).rows())
                rows.push_back(op_coefficient(pre, row, degree - 2 * d1));
    }
    for (int w1 = 1; w1 <= weight; ++w1)
        for (int d1 = 0; d1 <= degree; ++d1) {
            int w2 = weight - w1, d2 = degree - d1;
            if (w2 == 0 && d2 == 0)
                continue;
            const Echelon& e = relations(d1, w1);
            if (e.rank() == 0)
                continue;
            std::vector<Poly> amb = ambient(d2, w2);
            for (auto& [piv, row] : e.rows())
                for (const Poly& y : amb)
                    rows.push_back(row * y);
        }
    if (opts_.shuffle_seed) {
        std::mt19937 rng(opts_.shuffle_seed + 7919u * degree + 104729u * weight);
        std::shuffle(rows.begin(), rows.end(), rng);
    }
    c.rel = Echelon(rows, word_monomial_greater);

    if (!opts_.scalars) {
        for (const Mono& m : word_monomials(degree, weight))
            if (!c.rel.is_pivot(m))
                c.basis.push_back(Poly(m));
        std::reverse(c.basis.begin(), c.basis.end());
        return;
    }
    Echelon span = c.rel;
    std::vector<Poly> amb = ambient(degree, weight);
    std::reverse(amb.begin(), amb.end());
    for (const Poly& v : amb) {
        Poly r = c.rel.reduce(v);
        if (span.insert(r))
            c.basis.push_back(r);
    }
}

const Echelon& FreeOperationRing::relations(int degree, int weight) const { return component(degree, weight).rel; }

const std::vector<Poly>& FreeOperationRing::basis(int degree, int weight) const
{
    return component(degree, weight).basis;
}

Poly FreeOperationRing::normal_form(const Poly& p) const
{
    std::map<std::pair<int, int>, std::vector<Mono>> parts;
    for (const Mono& m : p.terms())
        parts[bidegree(m)].push_back(m);
    Poly out;
    for (auto& [dw, monos] : parts)
        out += relations(dw.first, dw.second).reduce(Poly::from_monos(std::move(monos)));
    return out;
}

Poly FreeOperationRing::apply_op(const Poly& p, int i) const
{
    return normal_form(op_coefficient(pre_ring_spec(), p, i));
}

std::vector<std::pair<Mono, Poly>> FreeOperationRing::rewrite_table(int degree, int weight) const
{
    std::vector<std::pair<Mono, Poly>> out;
    for (auto& [piv, row] : relations(degree, weight).rows())
        out.push_back({piv, row + Poly(piv)});
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return word_monomial_greater(b.first, a.first); });
    return out;
}

bool FreeOperationRing::relations_in_ambient(int degree, int weight) const
{
    std::vector<Poly> amb = ambient(degree, weight);
    std::size_t r = f2_rank(amb);
    for (auto& [piv, row] : relations(degree, weight).rows())
        amb.push_back(row);
    return f2_rank(amb) == r;
}

// --------------------------------------------------------------------------
// Adem rewriting

AdemRewriter::AdemRewriter(const FreeOperationRing& ring) : ring_(ring)
{
    FreeOperationRing::Options o;
    o.letter = ring.letter();
    o.gens = {{"a", 0, 1}};
    o.maxdeg = ring.maxdeg();
    o.maxweight = 4;
    o.t_rule = ring.options().t_rule;
    o.slot = 3;
    FreeOperationRing formal(o);
    formal_ = word_symbol({o.letter, 0, {}}, 0, 1, "a", 3);
    for (int n = 0; n <= o.maxdeg; ++n) {
        for (auto& [piv, row] : formal.relations(n, 4).rows()) {
            if (piv.size() != 1 || piv.exp_at(0) != 1)
                throw AlgebraError("interchange relation does not lead with a word");
            const auto& idx = word_shape(piv.var_at(0)).indices;
            if (idx.size() != 2 || idx[0] <= idx[1])
                throw AlgebraError("interchange relation leads with an admissible word");
            rules_[{idx[0], idx[1]}] = row + Poly(piv);
        }
    }
}

bool AdemRewriter::admissible(VarId w) const
{
    const auto& idx = word_shape(w).indices;
    for (std::size_t p = 0; p + 1 < idx.size(); ++p)
        if (idx[p] > idx[p + 1])
            return false;
    return true;
}

std::vector<Mono> AdemRewriter::admissible_monomials(int degree, int weight) const
{
    std::vector<Mono> out;
    for (const Mono& m : ring_.word_monomials(degree, weight)) {
        bool ok = true;
        for (std::size_t k = 0; k < m.size() && ok; ++k)
            ok = admissible(m.var_at(k));
        if (ok)
            out.push_back(m);
    }
    return out;
}

Poly AdemRewriter::rewrite_word(VarId w, int depth) const
{
    if (depth > 200)
        throw AlgebraError("Adem rewriting does not terminate");
    const WordShape& shape = word_shape(w);
    const auto& idx = shape.indices;
    int p = -1;
    for (int k = static_cast<int>(idx.size()) - 2; k >= 0; --k)
        if (idx[k] > idx[k + 1]) {
            p = k;
            break;
        }
    if (p < 0)
        return Poly::var(w);
    auto rule = rules_.find({idx[p], idx[p + 1]});
    if (rule == rules_.end())
        throw AlgebraError("no interchange rule for the pair (" + std::to_string(idx[p]) + "," +
                           std::to_string(idx[p + 1]) + ")");
    std::vector<int> suffix(idx.begin() + p + 2, idx.end());
    int gen = shape.generator;
    // substitute the formal a by the inner word, then apply the outer prefix
    Poly r = rule->second.substitute([&](VarId v) -> std::optional<Poly> {
        if (!is_word_symbol(v))
            return std::nullopt;
        std::vector<int> full = word_shape(v).indices;
        full.insert(full.end(), suffix.begin(), suffix.end());
        return ring_.word(gen, full);
    });
    OperationSpec pre = ring_.pre_ring_spec();
    for (int k = p - 1; k >= 0; --k)
        r = op_coefficient(pre, r, idx[k]);
    return rewrite_at(r, depth + 1);
}

Poly AdemRewriter::rewrite(const Poly& p) const { return rewrite_at(p, 0); }

Poly AdemRewriter::rewrite_at(const Poly& p, int depth) const
{
    Poly out;
    for (const Mono& m : p.terms()) {
        Poly term = Poly::one();
        for (std::size_t k = 0; k < m.size(); ++k)
            term *= rewrite_word(m.var_at(k), depth).pow(m.exp_at(k));
        out += term;
    }
    return out;
}

Poly eval_unary_operation(const FreeOperationRing& source, const Poly& p, const OperationSpec& target,
                          const Poly& a)
{
    std::map<VarId, Poly> cache;
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        if (!is_word_symbol(v))
            return std::nullopt;
        const WordShape& shape = word_shape(v);
        if (shape.letter != source.letter() || shape.generator != 0)
            return std::nullopt;
        if (auto it = cache.find(v); it != cache.end())
            return it->second;
        Poly r = a;
        for (auto it = shape.indices.rbegin(); it != shape.indices.rend(); ++it)
            r = op_coefficient(target, r, *it);
        cache.emplace(v, r);
        return r;
    });
}

}  // namespace nishida
