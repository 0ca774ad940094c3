#include "nishida/dring.hpp"

#include <algorithm>

namespace nishida {

namespace {

const HopfPresentation kB = HopfPresentation::faa_di_bruno();

}  // namespace

const char* quadratic_name(Quadratic q) { return q == Quadratic::XF ? "xf" : "xxt"; }

std::function<PowerSeries(int)> formal_t_rule(std::shared_ptr<const LazardModel> model)
{
    return [model](int cap) {
        if (cap > model->cap())
            throw TruncationError("D_s(t) requested beyond the model cap");
        // F is symmetric, so F(t, s) is the law itself
        return PowerSeries::variable(2, cap, 1) * model->law().truncate(cap);
    };
}

Poly hurewicz(const Poly& p)
{
    return p.substitute([](VarId v) -> std::optional<Poly> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        if (info.family != Family::M)
            return std::nullopt;
        int i = info.key[0];
        return Poly::var(h(i)) * Poly::var(h(0), -i - 1);
    });
}

Poly hurewicz_inverse(const Poly& p)
{
    Poly q = p.substitute([](VarId v) -> std::optional<Poly> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        if (info.family != Family::H || info.slot != 0)
            return std::nullopt;
        int n = info.key[0];
        return n == 0 ? Poly::one() : Poly::var(m(n));
    });
    if (hurewicz(q) != p)
        throw AlgebraError("not in the image of the Hurewicz map: " + p.to_string());
    return q;
}

PowerSeries LazardOperation::on_generator(int i, int cap) const
{
    std::lock_guard lock(mutex_);
    auto it = cache_.find(i);
    if (it == cache_.end() || it->second.cap() < cap) {
        int c = std::max({cap, 2, it == cache_.end() ? 0 : it->second.cap() + 4});
        OperationSpec q = hopf_qspec(solve_generator_qstructure(kB));
        PowerSeries f = op_eval(q, hurewicz(Poly::var(m(i))), c);
        PowerSeries u = series_compose(f, series_comp_inverse(kB.series(c)));
        it = cache_.insert_or_assign(i, u.map_coeffs(hurewicz_inverse)).first;
    }
    PowerSeries e = it->second.truncate(cap);
    PowerSeries out(1, cap);
    for (auto& [ex, coeff] : e.terms())
        out.add_term(ex, coeff);
    return out;
}

OperationSpec LazardOperation::spec(std::shared_ptr<const LazardModel> model) const
{
    OperationSpec s;
    s.name = "D on the Lazard model";
    s.letter = 'D';
    s.t_rule = formal_t_rule(model);
    s.table = [this](VarId v, int cap) -> std::optional<PowerSeries> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        if (info.family != Family::M)
            return std::nullopt;
        return on_generator(info.key[0], cap);
    };
    return s;
}

const LazardOperation& lazard_operation()
{
    static LazardOperation op;
    return op;
}

std::shared_ptr<const DStructure> solve_tensor_dstructure(std::shared_ptr<const LazardModel> model,
                                                          Quadratic quadratic)
{
    auto ds = std::make_shared<DStructure>();
    ds->model = model;
    ds->quadratic = quadratic;
    auto rhs = [model](int cap) {
        if (cap > model->cap())
            throw TruncationError("D-structure requested beyond the model cap " + std::to_string(model->cap()));
        PowerSeries hs = kB.series(cap);
        return series_compose(hs, PowerSeries::variable(2, cap, 0)) * series_compose(hs, model->law().truncate(cap));
    };
    GeneratorTable::SeriesRule q;
    if (quadratic == Quadratic::XF)
        q = [model](int cap) { return PowerSeries::variable(2, cap, 0) * model->law().truncate(cap); };
    else
        q = additive_quadratic;
    std::string label = std::string("D on B (") + quadratic_name(quadratic) + ")";
    ds->table = std::make_shared<GeneratorTable>(kB, rhs, q, label);
    ds->table->set_cap_limit(model->cap());

    OperationSpec s;
    s.name = label;
    s.letter = 'D';
    s.t_rule = formal_t_rule(model);
    auto table = ds->table;
    auto scalars = lazard_operation().spec(model).table;
    s.table = [table, scalars](VarId v, int cap) -> std::optional<PowerSeries> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        if (info.family == Family::H && info.slot == 0)
            return table->entry(info.key[0], cap);
        return scalars(v, cap);
    };
    ds->spec = std::move(s);
    return ds;
}

PowerSeries dt_eval(const DStructure& ds, const Poly& a, int cap) { return op_eval(ds.spec, a, cap); }

Report dstructure_report(const DStructure& ds, int cap)
{
    Report r;
    r.suite = "dstruct:" + std::string(quadratic_name(ds.quadratic));
    r.degree_hi = cap;
    PowerSeries res = ds.residual(cap);
    for (int n = 0; n <= cap; ++n) {
        std::string where;
        for (auto& [e, c] : res.terms())
            if (e[0] + e[1] == n) {
                where = "x^" + std::to_string(e[0]) + " t^" + std::to_string(e[1]);
                break;
            }
        r.add(std::string("residual ") + quadratic_name(ds.quadratic), n, where.empty(),
              where.empty() ? "" : "nonzero at " + where);
    }
    return r;
}

FreeOperationRing build_free_dring(std::vector<FreeGenerator> gens, std::shared_ptr<const LazardModel> model,
                                   int maxdeg, int maxweight, unsigned shuffleSeed, int slot)
{
    FreeOperationRing::Options o;
    o.letter = 'D';
    o.gens = std::move(gens);
    o.maxdeg = maxdeg;
    o.maxweight = maxweight;
    o.t_rule = formal_t_rule(model);
    o.shuffle_seed = shuffleSeed;
    o.slot = slot;
    if (model->kind() == FglKind::Universal) {
        ScalarRing sr;
        sr.basis = [model](int grade) { return model->basis(grade); };
        sr.op = lazard_operation().spec(model).table;
        o.scalars = sr;
    }
    return FreeOperationRing(o);
}

}  // namespace nishida
