#include "nishida/f2series.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace nishida {

// --------------------------------------------------------------------------
// Symbol table

struct SymbolTable::Impl {
    mutable std::mutex mu;
    std::deque<SymbolInfo> infos;  // stable references across interning
    std::map<std::tuple<int, int, std::vector<int>>, VarId> index;
};

std::shared_ptr<SymbolTable::Impl> SymbolTable::make_impl() { return std::make_shared<Impl>(); }

SymbolTable& SymbolTable::instance()
{
    static SymbolTable table;
    return table;
}

VarId SymbolTable::intern(SymbolInfo info)
{
    std::lock_guard lock(impl_->mu);
    auto k = std::make_tuple(static_cast<int>(info.family), info.slot, info.key);
    if (auto it = impl_->index.find(k); it != impl_->index.end())
        return it->second;
    if (impl_->infos.size() >= 0xffff)
        throw AlgebraError("symbol table exhausted");
    if (info.invertible && info.grade != 0)
        throw AlgebraError("invertible symbol " + info.name + " must have grade 0");
    auto id = static_cast<VarId>(impl_->infos.size());
    impl_->infos.push_back(std::move(info));
    impl_->index.emplace(std::move(k), id);
    return id;
}

const SymbolInfo& SymbolTable::info(VarId id) const
{
    std::lock_guard lock(impl_->mu);
    return impl_->infos.at(id);
}

std::optional<VarId> SymbolTable::find(Family family, int slot, const std::vector<int>& key) const
{
    std::lock_guard lock(impl_->mu);
    auto it = impl_->index.find(std::make_tuple(static_cast<int>(family), slot, key));
    if (it == impl_->index.end())
        return std::nullopt;
    return it->second;
}

bool SymbolTable::canonical_less(VarId a, VarId b) const
{
    if (a == b)
        return false;
    const SymbolInfo& x = info(a);
    const SymbolInfo& y = info(b);
    return std::tie(x.slot, x.family, x.key) < std::tie(y.slot, y.family, y.key);
}

namespace {

SymbolInfo make_info(std::string name, int grade, int slot, bool inv, Family fam, std::vector<int> key)
{
    SymbolInfo s;
    s.name = std::move(name);
    s.grade = grade;
    s.slot = slot;
    s.invertible = inv;
    s.family = fam;
    s.key = std::move(key);
    return s;
}

}  // namespace

VarId xi(int i, int slot)
{
    if (i < 0 || i > 30)
        throw AlgebraError("Milnor generator index out of range");
    return SymbolTable::instance().intern(
        make_info("ξ" + std::to_string(i), (1 << i) - 1, slot, i == 0, Family::Xi, {i}));
}

VarId h(int n, int slot)
{
    if (n < 0)
        throw AlgebraError("negative Faa di Bruno index");
    return SymbolTable::instance().intern(make_info("h" + std::to_string(n), n, slot, n == 0, Family::H, {n}));
}

VarId m(int i, int slot)
{
    if (i < 1)
        throw AlgebraError("Lazard model variables start at m1");
    return SymbolTable::instance().intern(make_info("m" + std::to_string(i), i, slot, false, Family::M, {i}));
}

VarId rp_b(int i, int slot)
{
    return SymbolTable::instance().intern(make_info("b" + std::to_string(i), i, slot, false, Family::RPB, {i}));
}

VarId char_b(int i, int slot)
{
    return SymbolTable::instance().intern(make_info("b" + std::to_string(i), i, slot, i == 0, Family::CharB, {i}));
}

VarId coh_a(int factor, int slot)
{
    return SymbolTable::instance().intern(
        make_info("a" + std::to_string(factor + 1), 1, slot, false, Family::CohA, {factor}));
}

VarId hom_e(const std::vector<int>& degrees, int slot)
{
    std::string name = "e";
    int grade = 0;
    for (std::size_t k = 0; k < degrees.size(); ++k) {
        name += (k ? "," : degrees.size() > 1 ? "(" : "") + std::to_string(degrees[k]);
        grade += degrees[k];
    }
    if (degrees.size() > 1)
        name += ")";
    return SymbolTable::instance().intern(make_info(name, grade, slot, false, Family::HomE, degrees));
}

VarId word_symbol(const WordShape& shape, int generatorDegree, int generatorWeight,
                  const std::string& generatorName, int slot)
{
    int deg = generatorDegree;
    int wt = generatorWeight;
    std::string name;
    for (auto it = shape.indices.rbegin(); it != shape.indices.rend(); ++it) {
        if (*it < 1)
            throw AlgebraError("word indices must be positive");
        deg = 2 * deg + *it;
        wt *= 2;
    }
    for (int i : shape.indices)
        name += std::string(1, shape.letter) + std::to_string(i);
    name += generatorName;
    std::vector<int> key{static_cast<int>(shape.indices.size()), shape.letter, shape.generator};
    key.insert(key.end(), shape.indices.begin(), shape.indices.end());
    SymbolInfo s = make_info(name, deg, slot, false, Family::Word, std::move(key));
    s.weight = wt;
    s.word = shape;
    return SymbolTable::instance().intern(std::move(s));
}

VarId with_slot(VarId v, int slot)
{
    SymbolInfo s = SymbolTable::instance().info(v);
    if (s.slot == slot)
        return v;
    s.slot = slot;
    return SymbolTable::instance().intern(std::move(s));
}

// --------------------------------------------------------------------------
// Monomials

namespace {

inline std::uint32_t pack(VarId v, int e) { return (std::uint32_t(v) << 16) | std::uint32_t(e + 0x8000); }

}  // namespace

struct MonoBuilder {
    static Mono from(boost::container::small_vector<std::uint32_t, 6> p)
    {
        Mono r;
        r.packed_ = std::move(p);
        return r;
    }
};

Mono Mono::var(VarId v, int e)
{
    Mono r;
    if (e != 0)
        r.packed_.push_back(pack(v, e));
    return r;
}

int Mono::exp(VarId v) const
{
    for (std::size_t k = 0; k < packed_.size(); ++k)
        if (var_at(k) == v)
            return exp_at(k);
    return 0;
}

int Mono::grade() const
{
    auto& tab = SymbolTable::instance();
    int g = 0;
    for (std::size_t k = 0; k < packed_.size(); ++k)
        g += exp_at(k) * tab.info(var_at(k)).grade;
    return g;
}

int Mono::weight() const
{
    auto& tab = SymbolTable::instance();
    int w = 0;
    for (std::size_t k = 0; k < packed_.size(); ++k)
        w += exp_at(k) * tab.info(var_at(k)).weight;
    return w;
}

Mono Mono::operator*(const Mono& o) const
{
    boost::container::small_vector<std::uint32_t, 6> out;
    std::size_t i = 0, j = 0;
    while (i < size() && j < o.size()) {
        VarId a = var_at(i), b = o.var_at(j);
        if (a < b)
            out.push_back(packed_[i++]);
        else if (b < a)
            out.push_back(o.packed_[j++]);
        else {
            int e = exp_at(i) + o.exp_at(j);
            if (e != 0)
                out.push_back(pack(a, e));
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), packed_.begin() + i, packed_.end());
    out.insert(out.end(), o.packed_.begin() + j, o.packed_.end());
    return MonoBuilder::from(std::move(out));
}

Mono Mono::pow(int e) const
{
    if (e == 0)
        return {};
    boost::container::small_vector<std::uint32_t, 6> out;
    for (std::size_t k = 0; k < size(); ++k)
        out.push_back(pack(var_at(k), exp_at(k) * e));
    return MonoBuilder::from(std::move(out));
}

std::pair<Mono, Mono> Mono::split(const std::function<bool(VarId)>& pred) const
{
    boost::container::small_vector<std::uint32_t, 6> a, b;
    for (std::size_t k = 0; k < size(); ++k)
        (pred(var_at(k)) ? a : b).push_back(packed_[k]);
    return {MonoBuilder::from(std::move(a)), MonoBuilder::from(std::move(b))};
}

std::string Mono::to_string() const { return mono_to_string(*this, 1); }

namespace {

std::vector<std::pair<VarId, int>> canonical_factors(const Mono& mono)
{
    std::vector<std::pair<VarId, int>> f;
    for (std::size_t k = 0; k < mono.size(); ++k)
        f.emplace_back(mono.var_at(k), mono.exp_at(k));
    auto& tab = SymbolTable::instance();
    std::sort(f.begin(), f.end(), [&](auto& x, auto& y) { return tab.canonical_less(x.first, y.first); });
    return f;
}

}  // namespace

bool canonical_less(const Mono& a, const Mono& b)
{
    int ga = a.grade(), gb = b.grade();
    if (ga != gb)
        return ga < gb;
    auto fa = canonical_factors(a);
    auto fb = canonical_factors(b);
    auto& tab = SymbolTable::instance();
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        VarId v;
        if (j == fb.size() || (i < fa.size() && tab.canonical_less(fa[i].first, fb[j].first)))
            v = fa[i].first;
        else
            v = fb[j].first;
        int ea = (i < fa.size() && fa[i].first == v) ? fa[i++].second : 0;
        int eb = (j < fb.size() && fb[j].first == v) ? fb[j++].second : 0;
        if (ea != eb)
            return ea > eb;
    }
    return false;
}

std::string mono_to_string(const Mono& mono, int arity)
{
    auto& tab = SymbolTable::instance();
    auto factors = canonical_factors(mono);
    auto render = [&](int slot, bool anySlot) {
        std::string s;
        for (auto& [v, e] : factors) {
            const SymbolInfo& info = tab.info(v);
            if (!anySlot && info.slot != slot)
                continue;
            if (!s.empty())
                s += "·";
            s += info.name;
            if (e != 1)
                s += "^" + std::to_string(e);
        }
        return s.empty() ? std::string("1") : s;
    };
    if (arity <= 1)
        return render(0, true);
    std::string out;
    for (int slot = 0; slot < arity; ++slot) {
        if (slot)
            out += "⊗";
        out += render(slot, false);
    }
    return out;
}

// --------------------------------------------------------------------------
// Polynomials

namespace {

// Sorts and cancels equal pairs.
void normalize(std::vector<Mono>& v)
{
    std::sort(v.begin(), v.end());
    std::size_t w = 0;
    for (std::size_t r = 0; r < v.size();) {
        std::size_t s = r;
        while (s < v.size() && v[s] == v[r])
            ++s;
        if ((s - r) % 2 == 1)
            v[w++] = std::move(v[r]);
        r = s;
    }
    v.resize(w);
}

}  // namespace

Poly::Poly(Mono mono) { terms_.push_back(std::move(mono)); }

Poly Poly::from_monos(std::vector<Mono> monos)
{
    Poly p;
    normalize(monos);
    p.terms_ = std::move(monos);
    return p;
}

bool Poly::contains(const Mono& mono) const { return std::binary_search(terms_.begin(), terms_.end(), mono); }

Poly Poly::operator+(const Poly& o) const
{
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                  std::back_inserter(r.terms_));
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.is_zero())
        return *this;
    return *this = *this + o;
}

Poly Poly::operator*(const Poly& o) const
{
    if (is_zero() || o.is_zero())
        return {};
    if (o.is_one())
        return *this;
    if (is_one())
        return o;
    std::vector<Mono> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const Mono& a : terms_)
        for (const Mono& b : o.terms_)
            prod.push_back(a * b);
    Poly r;
    normalize(prod);
    r.terms_ = std::move(prod);
    return r;
}

Poly Poly::operator*(const Mono& mono) const
{
    std::vector<Mono> prod;
    prod.reserve(terms_.size());
    for (const Mono& a : terms_)
        prod.push_back(a * mono);
    std::sort(prod.begin(), prod.end());
    Poly r;
    r.terms_ = std::move(prod);
    return r;
}

bool Poly::is_unit() const
{
    if (terms_.size() != 1)
        return false;
    auto& tab = SymbolTable::instance();
    const Mono& mono = terms_[0];
    for (std::size_t k = 0; k < mono.size(); ++k)
        if (!tab.info(mono.var_at(k)).invertible)
            return false;
    return true;
}

Poly Poly::unit_inverse() const
{
    if (!is_unit())
        throw AlgebraError("polynomial " + to_string() + " is not a unit");
    return Poly(terms_[0].pow(-1));
}

Poly Poly::pow(int e) const
{
    if (e < 0)
        return unit_inverse().pow(-e);
    if (terms_.size() == 1)
        return Poly(terms_[0].pow(e));
    Poly result = one();
    Poly base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base = base.square();
    }
    return result;
}

Poly Poly::square() const
{
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const Mono& mono : terms_)
        r.terms_.push_back(mono.pow(2));
    std::sort(r.terms_.begin(), r.terms_.end());
    return r;
}

bool Poly::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    int g = terms_[0].grade();
    for (const Mono& mono : terms_)
        if (mono.grade() != g)
            return false;
    return true;
}

std::optional<int> Poly::grade() const
{
    if (terms_.empty() || !is_homogeneous())
        return std::nullopt;
    return terms_[0].grade();
}

Poly Poly::substitute(const std::function<std::optional<Poly>(VarId)>& image) const
{
    std::map<std::pair<VarId, int>, Poly> powers;
    std::map<VarId, std::optional<Poly>> images;
    auto power = [&](VarId v, int e) -> Poly {
        auto key = std::make_pair(v, e);
        if (auto it = powers.find(key); it != powers.end())
            return it->second;
        auto img = images.find(v);
        if (img == images.end())
            img = images.emplace(v, image(v)).first;
        Poly p = img->second ? img->second->pow(e) : Poly::var(v, e);
        powers.emplace(key, p);
        return p;
    };
    std::vector<Mono> acc;
    for (const Mono& mono : terms_) {
        Poly prod = one();
        for (std::size_t k = 0; k < mono.size() && !prod.is_zero(); ++k)
            prod *= power(mono.var_at(k), mono.exp_at(k));
        acc.insert(acc.end(), prod.terms_.begin(), prod.terms_.end());
    }
    return from_monos(std::move(acc));
}

Poly Poly::filter(const std::function<bool(const Mono&)>& keep) const
{
    Poly r;
    for (const Mono& mono : terms_)
        if (keep(mono))
            r.terms_.push_back(mono);
    return r;
}

std::vector<Mono> Poly::canonical_terms() const
{
    std::vector<Mono> v = terms_;
    std::sort(v.begin(), v.end(), [](const Mono& a, const Mono& b) { return canonical_less(a, b); });
    return v;
}

std::string Poly::to_string(int arity) const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const Mono& mono : canonical_terms()) {
        if (!out.empty())
            out += " + ";
        out += mono_to_string(mono, arity);
    }
    return out;
}

Poly remap_slots(const Poly& p, const std::map<int, int>& moves)
{
    auto& tab = SymbolTable::instance();
    return p.substitute([&](VarId v) -> std::optional<Poly> {
        auto it = moves.find(tab.info(v).slot);
        if (it == moves.end())
            return std::nullopt;
        return Poly::var(with_slot(v, it->second));
    });
}

std::map<Mono, Poly> split_by_rest(const Poly& p, int slot)
{
    auto& tab = SymbolTable::instance();
    std::map<Mono, std::vector<Mono>> groups;
    for (const Mono& mono : p.terms()) {
        auto [part, rest] = mono.split([&](VarId v) { return tab.info(v).slot == slot; });
        groups[rest].push_back(part);
    }
    std::map<Mono, Poly> out;
    for (auto& [rest, parts] : groups)
        out.emplace(rest, Poly::from_monos(std::move(parts)));
    return out;
}

Poly reduce_slot(const Poly& p, int slot, const std::function<Poly(const Poly&)>& reduce)
{
    std::vector<Mono> acc;
    for (auto& [rest, part] : split_by_rest(p, slot)) {
        Poly r = reduce(part) * rest;
        acc.insert(acc.end(), r.terms().begin(), r.terms().end());
    }
    return Poly::from_monos(std::move(acc));
}

// --------------------------------------------------------------------------
// Alphabet-checked polynomials

GradedAlphabet::GradedAlphabet(std::vector<VarId> vars) : vars_(std::move(vars))
{
    auto& tab = SymbolTable::instance();
    std::vector<VarId> seen = vars_;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw AlgebraError("alphabet has duplicate variables");
    for (VarId v : vars_) {
        if (!tab.info(v).invertible)
            continue;
        if (invertible_)
            throw AlgebraError("alphabet may declare at most one invertible variable");
        invertible_ = v;
    }
}

bool GradedAlphabet::contains(VarId v) const { return std::find(vars_.begin(), vars_.end(), v) != vars_.end(); }

GradedPolynomial::GradedPolynomial(std::shared_ptr<const GradedAlphabet> alphabet, Poly poly)
    : alphabet_(std::move(alphabet)), poly_(std::move(poly))
{
    for (const Mono& mono : poly_.terms())
        for (std::size_t k = 0; k < mono.size(); ++k) {
            VarId v = mono.var_at(k);
            if (!alphabet_->contains(v))
                throw AlphabetMismatch("variable " + SymbolTable::instance().info(v).name + " not in alphabet");
            if (mono.exp_at(k) < 0 && alphabet_->invertible() != v)
                throw AlgebraError("negative exponent on non-invertible variable " +
                                   SymbolTable::instance().info(v).name);
        }
}

void GradedPolynomial::require_same(const GradedPolynomial& o) const
{
    if (alphabet_ != o.alphabet_ && !(*alphabet_ == *o.alphabet_))
        throw AlphabetMismatch("operands live over different alphabets");
}

GradedPolynomial GradedPolynomial::operator+(const GradedPolynomial& o) const
{
    require_same(o);
    return {alphabet_, poly_ + o.poly_};
}

GradedPolynomial GradedPolynomial::operator*(const GradedPolynomial& o) const
{
    require_same(o);
    return {alphabet_, poly_ * o.poly_};
}

// --------------------------------------------------------------------------
// Power series

namespace {

inline int total(const Exps& e) { return e[0] + e[1] + e[2]; }

}  // namespace

PowerSeries::PowerSeries(int nvars, int cap) : nvars_(nvars), cap_(cap)
{
    if (nvars < 1 || nvars > 3)
        throw AlgebraError("power series support one to three formal variables");
    if (cap < 0)
        throw AlgebraError("negative truncation cap");
}

PowerSeries PowerSeries::variable(int nvars, int cap, int which)
{
    PowerSeries s(nvars, cap);
    Exps e{0, 0, 0};
    e.at(which) = 1;
    s.add_term(e, Poly::one());
    return s;
}

PowerSeries PowerSeries::constant(int nvars, int cap, Poly c)
{
    PowerSeries s(nvars, cap);
    s.add_term({0, 0, 0}, c);
    return s;
}

PowerSeries PowerSeries::univariate(int cap, const std::vector<Poly>& coeffs)
{
    PowerSeries s(1, cap);
    for (int i = 0; i < static_cast<int>(coeffs.size()); ++i)
        s.add_term({i, 0, 0}, coeffs[i]);
    return s;
}

Poly PowerSeries::coeff(Exps e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Poly{} : it->second;
}

void PowerSeries::add_term(Exps e, const Poly& c)
{
    if (c.is_zero() || total(e) > cap_)
        return;
    for (int k = nvars_; k < 3; ++k)
        if (e[k] != 0)
            throw AlgebraError("exponent on an absent formal variable");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const
{
    PowerSeries r = *this;
    r += o;
    return r;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o)
{
    if (o.nvars_ != nvars_)
        throw AlgebraError("series arity mismatch");
    if (o.cap_ < cap_) {
        cap_ = o.cap_;
        for (auto it = terms_.begin(); it != terms_.end();)
            it = total(it->first) > cap_ ? terms_.erase(it) : std::next(it);
    }
    for (auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const
{
    if (o.nvars_ != nvars_)
        throw AlgebraError("series arity mismatch");
    PowerSeries r(nvars_, std::min(cap_, o.cap_));
    std::map<Exps, std::vector<Mono>> acc;
    for (auto& [ea, ca] : terms_) {
        int ta = total(ea);
        for (auto& [eb, cb] : o.terms_) {
            if (ta + total(eb) > r.cap_)
                continue;
            Exps e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            Poly p = ca * cb;
            auto& bucket = acc[e];
            bucket.insert(bucket.end(), p.terms().begin(), p.terms().end());
        }
    }
    for (auto& [e, monos] : acc) {
        Poly p = Poly::from_monos(std::move(monos));
        if (!p.is_zero())
            r.terms_.emplace(e, std::move(p));
    }
    return r;
}

PowerSeries PowerSeries::operator*(const Poly& c) const
{
    PowerSeries r(nvars_, cap_);
    for (auto& [e, p] : terms_)
        r.add_term(e, p * c);
    return r;
}

bool PowerSeries::operator==(const PowerSeries& o) const
{
    if (nvars_ != o.nvars_)
        return false;
    int c = std::min(cap_, o.cap_);
    return truncate(c).terms_ == o.truncate(c).terms_;
}

PowerSeries PowerSeries::pow(int e) const
{
    if (e < 0)
        return inverse().pow(-e);
    PowerSeries result = constant(nvars_, cap_, Poly::one());
    PowerSeries base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base.square();
    }
    return result;
}

PowerSeries PowerSeries::square() const
{
    PowerSeries r(nvars_, cap_);
    for (auto& [e, c] : terms_)
        if (2 * total(e) <= cap_)
            r.terms_.emplace(Exps{2 * e[0], 2 * e[1], 2 * e[2]}, c.square());
    return r;
}

PowerSeries PowerSeries::shift(Exps s) const
{
    PowerSeries r(nvars_, cap_);
    for (auto& [e, c] : terms_)
        r.add_term({e[0] + s[0], e[1] + s[1], e[2] + s[2]}, c);
    return r;
}

PowerSeries PowerSeries::truncate(int cap) const
{
    PowerSeries r(nvars_, std::min(cap, cap_));
    for (auto& [e, c] : terms_)
        r.add_term(e, c);
    return r;
}

PowerSeries PowerSeries::map_coeffs(const std::function<Poly(const Poly&)>& f) const
{
    PowerSeries r(nvars_, cap_);
    for (auto& [e, c] : terms_)
        r.add_term(e, f(c));
    return r;
}

PowerSeries PowerSeries::inverse() const
{
    Poly c0 = coeff(Exps{0, 0, 0});
    if (!c0.is_unit())
        throw AlgebraError("series inverse needs a unit constant term");
    Poly u = c0.unit_inverse();
    PowerSeries y = *this * u;  // 1 + y'
    y.add_term({0, 0, 0}, Poly::one());
    PowerSeries sum = constant(nvars_, cap_, Poly::one());
    PowerSeries term = sum;
    for (int k = 1; k <= cap_; ++k) {
        term = term * y;
        if (term.is_zero())
            break;
        sum += term;
    }
    return sum * u;
}

PowerSeries PowerSeries::swap_vars(int a, int b) const
{
    PowerSeries r(nvars_, cap_);
    for (auto& [e, c] : terms_) {
        Exps f = e;
        std::swap(f[a], f[b]);
        r.add_term(f, c);
    }
    return r;
}

std::optional<int> PowerSeries::order() const
{
    std::optional<int> best;
    for (auto& [e, c] : terms_)
        if (!best || total(e) < *best)
            best = total(e);
    return best;
}

std::string PowerSeries::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    std::vector<std::pair<Exps, const Poly*>> items;
    for (auto& [e, c] : terms_)
        items.emplace_back(e, &c);
    std::sort(items.begin(), items.end(), [](auto& x, auto& y) {
        if (total(x.first) != total(y.first))
            return total(x.first) < total(y.first);
        return x.first > y.first;
    });
    std::string out;
    for (auto& [e, c] : items) {
        if (!out.empty())
            out += " + ";
        std::string mono;
        for (int k = 0; k < nvars_; ++k) {
            if (e[k] == 0)
                continue;
            mono += names.at(k);
            if (e[k] != 1)
                mono += "^" + std::to_string(e[k]);
        }
        std::string coef = c->to_string();
        if (mono.empty())
            out += coef.find(" + ") == std::string::npos ? coef : "(" + coef + ")";
        else if (c->is_one())
            out += mono;
        else
            out += "(" + coef + ")·" + mono;
    }
    return out;
}

PowerSeries series_compose(const PowerSeries& f, const PowerSeries& g)
{
    if (f.nvars() != 1)
        throw AlgebraError("outer series must be univariate");
    if (!g.coeff(Exps{0, 0, 0}).is_zero())
        throw AlgebraError("inner series has a nonzero constant term");
    int cap = g.cap();
    int top = std::min(f.cap(), cap);
    PowerSeries result = PowerSeries::constant(g.nvars(), cap, f.coeff(top));
    for (int k = top - 1; k >= 0; --k) {
        result = result * g;
        result.add_term({0, 0, 0}, f.coeff(k));
    }
    return result;
}

PowerSeries series_substitute(const PowerSeries& f, const std::vector<PowerSeries>& gs)
{
    if (static_cast<int>(gs.size()) != f.nvars())
        throw AlgebraError("substitution arity mismatch");
    int nv = gs.at(0).nvars();
    int cap = gs[0].cap();
    for (auto& g : gs) {
        if (g.nvars() != nv)
            throw AlgebraError("substituted series must share arity");
        if (!g.coeff(Exps{0, 0, 0}).is_zero())
            throw AlgebraError("substituted series has a nonzero constant term");
        cap = std::min(cap, g.cap());
    }
    std::vector<std::vector<PowerSeries>> powers(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        powers[i].push_back(PowerSeries::constant(nv, cap, Poly::one()));
        for (int k = 1; k <= std::min(cap, f.cap()); ++k)
            powers[i].push_back(powers[i].back() * gs[i].truncate(cap));
    }
    PowerSeries result(nv, cap);
    for (auto& [e, c] : f.terms()) {
        if (total(e) > cap)
            continue;
        PowerSeries term = powers[0][e[0]];
        for (std::size_t i = 1; i < gs.size(); ++i)
            term = term * powers[i][e[i]];
        result += term * c;
    }
    return result;
}

PowerSeries series_comp_inverse(const PowerSeries& f)
{
    if (f.nvars() != 1)
        throw AlgebraError("compositional inverse needs a univariate series");
    if (!f.coeff(0).is_zero())
        throw AlgebraError("series has a nonzero constant term");
    Poly lead = f.coeff(1);
    if (!lead.is_unit())
        throw AlgebraError("leading coefficient " + lead.to_string() + " is not invertible");
    Poly inv = lead.unit_inverse();
    int cap = f.cap();
    PowerSeries g(1, cap);
    g.add_term({1, 0, 0}, inv);
    for (int k = 2; k <= cap; ++k) {
        // f(g) = x + c x^k + ...; adding inv*c x^k to g cancels c.
        Poly c = series_compose(f, g.truncate(k)).coeff(k);
        g.add_term({k, 0, 0}, c * inv);
    }
    for (auto& [e, c] : g.terms())
        check_laurent_bound(c, cap);
    return g;
}

InvariantExpansion express_in_invariant(const PowerSeries& F, const PowerSeries& q,
                                        const std::vector<int>& exponents)
{
    if (F.nvars() != 2 || q.nvars() != 2)
        throw AlgebraError("express_in_invariant works on series in (x, t)");
    if (!std::is_sorted(exponents.begin(), exponents.end()) ||
        std::adjacent_find(exponents.begin(), exponents.end()) != exponents.end())
        throw AlgebraError("exponents must be strictly increasing");
    if (!q.coeff(1, 1).is_one() || q.order().value_or(0) < 2)
        throw AlgebraError("quadratic must start with x t");
    for (auto& [e, c] : q.terms())
        if (e[0] == 0)
            throw AlgebraError("quadratic has a pure power of t");

    int cap = std::min(F.cap(), q.cap());
    InvariantExpansion out{{}, F.truncate(cap)};
    std::map<int, PowerSeries> qpow;
    for (int e : exponents) {
        out.coefficients.emplace_back(1, cap);
        if (2 * e <= cap)
            qpow.emplace(e, q.truncate(cap).pow(e));
    }
    for (int N = 0; N <= cap; ++N) {
        for (std::size_t k = 0; k < exponents.size(); ++k) {
            int e = exponents[k];
            int j = N - 2 * e;
            if (j < 0)
                break;
            Poly c = out.residual.coeff(e, N - e);
            if (c.is_zero())
                continue;
            out.coefficients[k].add_term({j, 0, 0}, c);
            out.residual += qpow.at(e).shift({0, j, 0}) * c;
        }
    }
    return out;
}

void check_laurent_bound(const Poly& p, int cap)
{
    auto& tab = SymbolTable::instance();
    for (const Mono& mono : p.terms())
        for (std::size_t k = 0; k < mono.size(); ++k)
            if (mono.exp_at(k) < -4 * cap && tab.info(mono.var_at(k)).invertible)
                throw TruncationError("Laurent exponent below -4*cap on " + tab.info(mono.var_at(k)).name);
}

}  // namespace nishida
