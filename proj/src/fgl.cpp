#include "nishida/fgl.hpp"

#include <string>

namespace nishida {

namespace {

bool mono_before(const Mono& a, const Mono& b) { return canonical_less(a, b); }

// The formal variable `which` among nvars.
PowerSeries var(int nvars, int cap, int which) { return PowerSeries::variable(nvars, cap, which); }

}  // namespace

LazardModel::LazardModel(FglKind kind, int cap) : kind_(kind), cap_(cap)
{
    if (cap < 2)
        throw AlgebraError("formal group law cap must be at least 2");
    std::vector<Poly> coeffs(cap + 1);
    coeffs[1] = Poly::one();
    if (kind == FglKind::Universal)
        for (int i = 1; i + 1 <= cap; ++i)
            coeffs[i + 1] = Poly::var(m(i));
    beta_ = PowerSeries::univariate(cap, coeffs);
    betaInv_ = series_comp_inverse(beta_);
    PowerSeries sum = series_compose(betaInv_, var(2, cap, 0)) + series_compose(betaInv_, var(2, cap, 1));
    law_ = series_compose(beta_, sum);

    Report r = fgl_axioms_check(*this, std::min(cap, 6));
    if (!r.all_pass())
        throw AlgebraError("formal group law invariant violated at degree " +
                           std::to_string(r.first_failure_degree()));
}

std::shared_ptr<const LazardModel> LazardModel::universal(int cap)
{
    return std::shared_ptr<const LazardModel>(new LazardModel(FglKind::Universal, cap));
}

std::shared_ptr<const LazardModel> LazardModel::additive(int cap)
{
    return std::shared_ptr<const LazardModel>(new LazardModel(FglKind::Additive, cap));
}

std::vector<std::pair<int, int>> LazardModel::generators(int maxGrade) const
{
    std::vector<std::pair<int, int>> out;
    for (int g = 1; g <= maxGrade && g + 1 <= cap_; ++g)
        for (int i = 1; i <= (g + 1) / 2; ++i)
            if (!coeff(i, g + 1 - i).is_zero())
                out.emplace_back(i, g + 1 - i);
    return out;
}

const Echelon& LazardModel::span(int n) const
{
    std::lock_guard lock(mutex_);
    if (auto it = spans_.find(n); it != spans_.end())
        return it->second;
    if (n < 0 || n > cap_ - 1)
        throw TruncationError("Lazard degree " + std::to_string(n) + " exceeds the model cap");
    std::vector<Poly> rows;
    if (n == 0) {
        rows.push_back(Poly::one());
    } else {
        // every monomial in the a_ij factors as (lower monomial) * a_ij
        for (auto [i, j] : generators(n)) {
            Poly a = coeff(i, j);
            for (const Poly& b : basis(n - (i + j - 1)))
                rows.push_back(b * a);
        }
    }
    auto [it, _] = spans_.emplace(n, Echelon(rows, mono_before));
    std::vector<Poly> basis;
    for (auto& [piv, row] : it->second.rows())
        basis.push_back(row);
    bases_.emplace(n, std::move(basis));
    return it->second;
}

const std::vector<Poly>& LazardModel::basis(int n) const
{
    std::lock_guard lock(mutex_);
    span(n);
    return bases_.at(n);
}

bool LazardModel::contains(const Poly& p) const
{
    if (p.is_zero())
        return true;
    auto g = p.grade();
    if (!g)
        return false;
    for (const Mono& mono : p.terms()) {
        Mono rest = mono.split([](VarId v) { return SymbolTable::instance().info(v).family == Family::M; }).second;
        if (!rest.empty())
            return false;
    }
    return span(*g).reduce(p).is_zero();
}

const std::vector<Poly>& LazardModel::ln_images() const
{
    std::lock_guard lock(mutex_);
    if (!lnImages_.empty() || kind_ == FglKind::Additive)
        return lnImages_;
    auto B = HopfPresentation::faa_di_bruno();
    PowerSeries scaled = var(1, cap_, 0) * Poly::var(h(0), -1);
    PowerSeries gamma = series_compose(B.series(cap_), series_compose(beta_, scaled));
    for (int i = 1; i + 1 <= cap_; ++i)
        lnImages_.push_back(gamma.coeff(i + 1));
    return lnImages_;
}

std::shared_ptr<const LazardModel> build_universal_fgl(int cap) { return LazardModel::universal(cap); }

std::shared_ptr<const LazardModel> build_fgl(FglKind kind, int cap)
{
    return kind == FglKind::Universal ? LazardModel::universal(cap) : LazardModel::additive(cap);
}

int lazard_rank(const LazardModel& model, int n) { return model.rank(n); }

Report fgl_axioms_check(const LazardModel& model, int maxdeg)
{
    if (maxdeg > model.cap())
        throw TruncationError("axiom check beyond the model cap");
    Report r;
    r.suite = std::string("fgl:") + (model.kind() == FglKind::Universal ? "universal" : "additive");
    r.degree_hi = maxdeg;
    PowerSeries F = model.law().truncate(maxdeg);

    bool unit = true, grading = true;
    for (int i = 0; i <= maxdeg; ++i) {
        Poly expect = i == 1 ? Poly::one() : Poly();
        unit = unit && F.coeff(i, 0) == expect && F.coeff(0, i) == expect;
        for (int j = 0; i + j <= maxdeg; ++j) {
            auto g = F.coeff(i, j).grade();
            if (g && *g != i + j - 1)
                grading = false;
        }
    }
    r.add("unit", maxdeg, unit);
    r.add("symmetry", maxdeg, F.swap_vars(0, 1) == F);
    r.add("grading", maxdeg, grading);

    PowerSeries x = var(1, maxdeg, 0);
    r.add("order two", maxdeg, series_substitute(F, {x, x}).is_zero());

    PowerSeries X = var(3, maxdeg, 0), Y = var(3, maxdeg, 1), Z = var(3, maxdeg, 2);
    PowerSeries lhs = series_substitute(F, {series_substitute(F, {X, Y}), Z});
    PowerSeries rhs = series_substitute(F, {X, series_substitute(F, {Y, Z})});
    r.add("associativity", maxdeg, lhs == rhs);
    return r;
}

PowerSeries conjugated_law(const LazardModel& model, int cap)
{
    if (cap > model.cap())
        throw TruncationError("conjugation beyond the model cap");
    PowerSeries hs = HopfPresentation::faa_di_bruno().series(cap);
    PowerSeries hinv = series_comp_inverse(hs);
    PowerSeries inner = series_substitute(
        model.law().truncate(cap), {series_compose(hinv, var(2, cap, 0)), series_compose(hinv, var(2, cap, 1))});
    return series_compose(hs, inner);
}

Poly ln_coaction_coeff(const LazardModel& model, int i, int j)
{
    return conjugated_law(model, std::min(model.cap(), i + j)).coeff(i, j);
}

Poly ln_coaction(const LazardModel& model, const Poly& p)
{
    const auto& images = model.ln_images();
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        if (info.family != Family::M)
            throw AlgebraError("coaction argument is not a polynomial in the model variables");
        int i = info.key[0];
        if (i > static_cast<int>(images.size()))
            throw TruncationError("model variable beyond the cap: " + info.name);
        return images[i - 1];
    });
}

Coaction ln_coaction_on_fgl(std::shared_ptr<const LazardModel> model)
{
    Coaction c;
    c.base = HopfPresentation::faa_di_bruno();
    c.name = "lazard";
    c.basis = [model](int d) { return model->basis(d); };
    c.map = [model](const Poly& p) { return ln_coaction(*model, p); };
    return c;
}

}  // namespace nishida
