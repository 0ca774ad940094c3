#include "nishida/nishida.hpp"

namespace nishida {

namespace {

const HopfPresentation kA = HopfPresentation::milnor();
const HopfPresentation kB = HopfPresentation::faa_di_bruno();

int scalar_grade(const Mono& mono)
{
    auto& tab = SymbolTable::instance();
    int g = 0;
    for (std::size_t k = 0; k < mono.size(); ++k)
        if (tab.info(mono.var_at(k)).family == Family::M)
            g += tab.info(mono.var_at(k)).grade * mono.exp_at(k);
    return g;
}

// Monomials carrying more scalar degree are eliminated first.
bool thom_before(const Mono& a, const Mono& b)
{
    int sa = scalar_grade(a), sb = scalar_grade(b);
    if (sa != sb)
        return sa > sb;
    return word_monomial_greater(a, b);
}

std::map<int, Poly> split_by_grade(const Poly& p)
{
    std::map<int, std::vector<Mono>> parts;
    for (const Mono& mono : p.terms())
        parts[mono.grade()].push_back(mono);
    std::map<int, Poly> out;
    for (auto& [g, monos] : parts)
        out.emplace(g, Poly::from_monos(std::move(monos)));
    return out;
}

}  // namespace

const char* side_name(Side s) { return s == Side::Homology ? "homology" : "bordism"; }

std::vector<Poly> identity_generator_values(const FreeOperationRing& ring)
{
    std::vector<Poly> out;
    for (std::size_t k = 0; k < ring.options().gens.size(); ++k)
        out.push_back(ring.generator(static_cast<int>(k)));
    return out;
}

ExtendedCoaction::ExtendedCoaction(const FreeOperationRing& ring, std::vector<Poly> generatorValues)
    : side_(Side::Homology), base_(kA), ring_(ring), generatorValues_(std::move(generatorValues))
{
    tensor_ = tensor_spec(hopf_qspec(solve_generator_qstructure(kA)), ring.pre_ring_spec());
}

ExtendedCoaction::ExtendedCoaction(const FreeOperationRing& ring, std::shared_ptr<const DStructure> ds,
                                   std::vector<Poly> generatorValues, bool collapseAdditive)
    : side_(Side::Bordism), base_(kB), ring_(ring), ds_(std::move(ds)),
      generatorValues_(std::move(generatorValues))
{
    if (collapseAdditive && ds_->model->kind() == FglKind::Additive) {
        // h is additive only modulo ker(epsilon)
        collapsed_ = true;
        base_ = kA;
        for (Poly& g : generatorValues_)
            g = epsilon_reduce(g);
        tensor_ = tensor_spec(hopf_qspec(solve_generator_qstructure(kA)), ring.pre_ring_spec());
    } else {
        tensor_ = tensor_spec(ds_->spec, ring.pre_ring_spec());
    }
}

Poly ExtendedCoaction::symbol_value(VarId v) const
{
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(v); it != cache_.end())
        return it->second;
    const SymbolInfo& info = SymbolTable::instance().info(v);
    Poly value;
    if (info.word && info.word->letter == ring_.letter() && info.slot == ring_.options().slot) {
        WordShape shape = *info.word;
        if (shape.indices.empty()) {
            value = generatorValues_.at(shape.generator);
        } else {
            int i = shape.indices.front();
            shape.indices.erase(shape.indices.begin());
            const FreeGenerator& g = ring_.options().gens.at(shape.generator);
            Poly inner = symbol_value(word_symbol(shape, g.degree, g.weight, g.name, ring_.options().slot));
            PowerSeries s = op_eval(tensor_, inner, i);
            // L_t(psi a) = sum_j psi(L_j a) g(t)^j; read off u^i after t = g^{-1}(u)
            PowerSeries u = series_compose(s, series_comp_inverse(base_.series(std::max(i, 1))).truncate(i));
            value = normalize(u.coeff(i));
        }
    } else if (info.family == Family::M && ds_) {
        value = ln_coaction(*ds_->model, Poly::var(v));
    } else {
        throw AlgebraError("no coaction value for " + info.name);
    }
    cache_.emplace(v, value);
    return value;
}

Poly ExtendedCoaction::raw(const Poly& p) const
{
    return p.substitute([this](VarId v) -> std::optional<Poly> { return symbol_value(v); });
}

Poly ExtendedCoaction::normalize(const Poly& p) const
{
    return reduce_slot(p, ring_.options().slot, [this](const Poly& q) { return ring_.normal_form(q); });
}

Poly ExtendedCoaction::operator()(const Poly& p) const { return normalize(raw(p)); }

Coaction ExtendedCoaction::coaction(int weight) const
{
    Coaction c;
    c.base = base_;
    c.name = std::string(side_name(side_)) + " weight " + std::to_string(weight);
    c.basis = [this, weight](int d) {
        if (d > ring_.maxdeg())
            return std::vector<Poly>{};
        return ring_.basis(d, weight);
    };
    c.map = [this](const Poly& p) { return (*this)(p); };
    return c;
}

Report nishida_square_check(const ExtendedCoaction& ec, const std::vector<Poly>& elements, int cap)
{
    const FreeOperationRing& F = ec.ring();
    Report r;
    r.suite = std::string("nishida:") + side_name(ec.side());
    r.degree_hi = cap;
    for (const Poly& p : elements) {
        if (p.is_zero())
            continue;
        auto [d, w] = bidegree(p.terms().front());
        std::string name = p.to_string();
        if (2 * w > F.maxweight() || 2 * d > F.maxdeg()) {
            r.skip(name, 2 * d, "operations leave the computed range");
            continue;
        }
        int k = std::min(cap, F.maxdeg() - 2 * d);
        PowerSeries g = ec.base().series(std::max(k, 1)).truncate(k);
        PowerSeries lhs(1, k), power = PowerSeries::constant(1, k, Poly::one());
        for (int i = 0; i <= k; ++i) {
            lhs += power * ec(F.apply_op(p, i));
            power = power * g;
        }
        PowerSeries rhs = op_eval(ec.tensor(), ec(p), k).map_coeffs([&](const Poly& c) { return ec.normalize(c); });
        for (int i = 0; i <= k; ++i)
            r.add(name, 2 * d + i, lhs.coeff(i) == rhs.coeff(i), lhs.coeff(i) == rhs.coeff(i) ? "" : "t^" + std::to_string(i));
    }
    for (const auto& l : r.lines)
        r.degree_hi = std::max(r.degree_hi, l.degree);
    return r;
}

std::vector<Poly> basis_elements(const FreeOperationRing& ring, int maxdeg, int maxweight)
{
    std::vector<Poly> out;
    for (int w = 1; w <= maxweight; ++w)
        for (int d = 0; d <= maxdeg; ++d)
            for (const Poly& b : ring.basis(d, w))
                out.push_back(b);
    return out;
}

Report rewrite_consistency_check(const ExtendedCoaction& ec, int maxdeg, int maxweight,
                                 const std::function<Poly(const Poly&)>& rewrite)
{
    Report r;
    r.suite = std::string("rewrite:") + side_name(ec.side());
    r.degree_hi = maxdeg;
    for (int w = 1; w <= maxweight; ++w)
        for (int d = 0; d <= maxdeg; ++d) {
            std::string bad;
            for (const Mono& mono : ec.ring().word_monomials(d, w))
                if (ec(Poly(mono)) != ec(rewrite(Poly(mono)))) {
                    bad = mono.to_string();
                    break;
                }
            r.add("weight " + std::to_string(w), d, bad.empty(), bad);
        }
    return r;
}

// --------------------------------------------------------------------------
// Thom reduction

ThomReduction::ThomReduction(CoactedModule M) : M_(std::move(M)) {}

const ThomReduction::Degree& ThomReduction::degree(int d) const
{
    std::lock_guard lock(mutex_);
    if (auto it = degrees_.find(d); it != degrees_.end())
        return it->second;
    if (d < 0 || d > M_.maxdeg)
        throw TruncationError("degree " + std::to_string(d) + " outside the presented module");
    std::vector<Poly> rows;
    if (M_.scalars)
        for (int k = 1; k <= d; ++k) {
            if (k > M_.scalars->cap() - 1)
                throw TruncationError("scalar degree beyond the model cap");
            for (const Poly& lambda : M_.scalars->basis(k))
                for (const Poly& b : M_.basis(d - k))
                    rows.push_back(M_.normal_form(M_.act(lambda, b)));
        }
    Degree deg{Echelon(rows, thom_before), {}};
    Echelon probe = deg.span;
    for (const Poly& b : M_.basis(d))
        if (probe.insert(b))
            deg.basis.push_back(deg.span.reduce(b));
    return degrees_.emplace(d, std::move(deg)).first->second;
}

const std::vector<Poly>& ThomReduction::basis(int d) const { return degree(d).basis; }

Poly ThomReduction::reduce(const Poly& p) const
{
    Poly out;
    for (auto& [g, part] : split_by_grade(M_.normal_form(p)))
        out += degree(g).span.reduce(part);
    return out;
}

Poly ThomReduction::reduced_coaction(const Poly& p) const
{
    Poly v = epsilon_reduce(M_.coaction(p));
    return reduce_slot(v, 1, [this](const Poly& q) { return reduce(q); });
}

Coaction ThomReduction::coaction() const
{
    Coaction c;
    c.base = kA;
    c.name = "T(" + M_.name + ")";
    c.basis = [this](int d) {
        if (d > M_.maxdeg)
            return std::vector<Poly>{};
        return basis(d);
    };
    c.map = [this](const Poly& p) { return reduced_coaction(p); };
    return c;
}

ThomReduction thom_reduce(CoactedModule M) { return ThomReduction(std::move(M)); }

CoactedModule lazard_module(std::shared_ptr<const LazardModel> model)
{
    CoactedModule M;
    M.name = "N";
    M.maxdeg = model->cap() - 1;
    M.scalars = model;
    M.basis = [model](int d) { return model->basis(d); };
    M.normal_form = [](const Poly& p) { return p; };
    M.act = [](const Poly& lambda, const Poly& b) { return lambda * b; };
    M.coaction = [model](const Poly& p) { return ln_coaction(*model, p); };
    return M;
}

CoactedModule free_dring_module(const ExtendedCoaction& ec, int weight)
{
    if (ec.side() != Side::Bordism)
        throw AlgebraError("Thom reduction needs a bordism-side coaction");
    const FreeOperationRing& F = ec.ring();
    CoactedModule M;
    M.name = "D<x> weight " + std::to_string(weight);
    M.maxdeg = F.maxdeg();
    if (F.options().scalars)
        M.scalars = ec.dstructure()->model;
    M.basis = [&F, weight](int d) { return F.basis(d, weight); };
    M.normal_form = [&F](const Poly& p) { return F.normal_form(p); };
    M.act = [](const Poly& lambda, const Poly& b) { return lambda * b; };
    M.coaction = [&ec](const Poly& p) { return ec(p); };
    return M;
}

Poly transport_words(const Poly& p, const FreeOperationRing& target)
{
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        if (!info.word)
            return std::nullopt;
        WordShape shape = *info.word;
        shape.letter = target.letter();
        const FreeGenerator& g = target.options().gens.at(shape.generator);
        return Poly::var(word_symbol(shape, g.degree, g.weight, g.name, target.options().slot));
    });
}

Report epsilon_operation_check(int maxn, int cap)
{
    Report r;
    r.suite = "epsilon-operations";
    r.degree_hi = maxn;
    OperationSpec qa = hopf_qspec(solve_generator_qstructure(kA));
    OperationSpec qb = hopf_qspec(solve_generator_qstructure(kB));
    for (int n = 0; n <= maxn; ++n) {
        Poly g = Poly::var(h(n));
        PowerSeries lhs = op_eval(qb, g, cap).map_coeffs(epsilon_reduce);
        PowerSeries rhs = op_eval(qa, epsilon_reduce(g), cap);
        r.add("Q_t " + g.to_string(), n, lhs == rhs);
    }
    return r;
}

Report thom_comparison(const ExtendedCoaction& bordism, const ExtendedCoaction& homology, int maxdeg,
                       int maxweight)
{
    Report r;
    r.suite = "thom";
    r.degree_hi = maxdeg;
    const FreeOperationRing& D = bordism.ring();
    const FreeOperationRing& Q = homology.ring();
    for (int w = 1; w <= maxweight; ++w) {
        ThomReduction T = thom_reduce(free_dring_module(bordism, w));
        for (int d = 0; d <= maxdeg; ++d) {
            std::string tag = "(" + std::to_string(d) + "," + std::to_string(w) + ")";
            r.add("dimension " + tag, d, T.dimension(d) == Q.dimension(d, w),
                  std::to_string(T.dimension(d)) + " vs " + std::to_string(Q.dimension(d, w)));

            std::string bad;
            for (const Mono& mono : D.word_monomials(d, w)) {
                Poly m(mono);
                if (Q.normal_form(transport_words(T.reduce(m), Q)) != Q.normal_form(transport_words(m, Q))) {
                    bad = mono.to_string();
                    break;
                }
            }
            r.add("representatives " + tag, d, bad.empty(), bad);

            bad.clear();
            for (const Poly& b : T.basis(d)) {
                Poly lhs = homology.normalize(transport_words(T.reduced_coaction(b), Q));
                if (lhs != homology(transport_words(b, Q))) {
                    bad = b.to_string();
                    break;
                }
            }
            r.add("coaction " + tag, d, bad.empty(), bad);
        }
    }
    return r;
}

}  // namespace nishida
