#include "nishida/charnum.hpp"

#include <sstream>

namespace nishida {

namespace {

const HopfPresentation kB = HopfPresentation::faa_di_bruno();

bool is_coh(VarId v) { return SymbolTable::instance().info(v).family == Family::CohA; }

int factor_of(VarId v) { return SymbolTable::instance().info(v).key.at(0); }

Poly b_to_h(const Poly& p)
{
    return p.substitute([](VarId v) -> std::optional<Poly> {
        const SymbolInfo& info = SymbolTable::instance().info(v);
        if (info.family != Family::CharB)
            return std::nullopt;
        return Poly::var(h(info.key.at(0), info.slot));
    });
}

}  // namespace

const char* variant_name(Variant v) { return v == Variant::Tangential ? "tangential" : "normal"; }

const char* reading_name(SubstitutionReading r) { return r == SubstitutionReading::Whole ? "whole" : "literal"; }

// --------------------------------------------------------------------------

SpaceDescriptor::SpaceDescriptor(std::vector<int> dims) : dims_(std::move(dims))
{
    for (int n : dims_)
        if (n < 0)
            throw AlgebraError("negative projective dimension");
}

SpaceDescriptor SpaceDescriptor::parse(const std::string& text)
{
    if (text == "pt" || text.empty())
        return SpaceDescriptor{};
    if (text.back() == 'x')
        throw AlgebraError("cannot parse space '" + text + "'");
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, 'x')) {
        if (item.size() < 3 || item.compare(0, 2, "RP") != 0)
            throw AlgebraError("cannot parse space '" + text + "'");
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(item.substr(2), &used);
        } catch (const std::exception&) {
            throw AlgebraError("cannot parse space '" + text + "'");
        }
        if (used != item.size() - 2)
            throw AlgebraError("cannot parse space '" + text + "'");
        dims.push_back(n);
    }
    return SpaceDescriptor(std::move(dims));
}

int SpaceDescriptor::dimension() const
{
    int n = 0;
    for (int d : dims_)
        n += d;
    return n;
}

std::string SpaceDescriptor::name() const
{
    if (dims_.empty())
        return "pt";
    std::string s;
    for (std::size_t k = 0; k < dims_.size(); ++k)
        s += (k ? "xRP" : "RP") + std::to_string(dims_[k]);
    return s;
}

SpaceDescriptor SpaceDescriptor::operator*(const SpaceDescriptor& o) const
{
    std::vector<int> d = dims_;
    d.insert(d.end(), o.dims_.begin(), o.dims_.end());
    return SpaceDescriptor(std::move(d));
}

Poly SpaceDescriptor::truncate(const Poly& p) const
{
    return p.filter([&](const Mono& mono) {
        for (std::size_t k = 0; k < mono.size(); ++k) {
            VarId v = mono.var_at(k);
            if (is_coh(v)) {
                int f = factor_of(v);
                if (f >= static_cast<int>(dims_.size()) || mono.exp_at(k) > dims_[f])
                    return false;
            }
        }
        return true;
    });
}

Poly SpaceDescriptor::pair_fundamental(const Poly& p) const
{
    Mono top;
    for (std::size_t f = 0; f < dims_.size(); ++f)
        if (dims_[f] > 0)
            top = top * Mono::var(coh_a(static_cast<int>(f)), dims_[f]);
    Poly out;
    for (const Mono& mono : p.terms()) {
        auto [a, rest] = mono.split(is_coh);
        if (a == top)
            out += Poly(rest);
    }
    return out;
}

Poly SpaceDescriptor::cap_fundamental(const Poly& p) const
{
    Poly out, t = truncate(p);
    for (const Mono& mono : t.terms()) {
        auto [a, rest] = mono.split(is_coh);
        std::vector<int> e(dims_);
        for (std::size_t f = 0; f < dims_.size(); ++f)
            e[f] -= a.exp(coh_a(static_cast<int>(f)));
        out += Poly(rest) * Mono::var(hom_e(e));
    }
    return out;
}

Manifold parse_manifold(const std::string& text)
{
    if (text.empty() || text.back() == '+')
        throw AlgebraError("cannot parse manifold '" + text + "'");
    Manifold M;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '+'))
        M.push_back(SpaceDescriptor::parse(item));
    if (M.empty())
        throw AlgebraError("empty manifold");
    return M;
}

std::string manifold_name(const Manifold& M)
{
    std::string s;
    for (std::size_t k = 0; k < M.size(); ++k)
        s += (k ? "+" : "") + M[k].name();
    return s;
}

// --------------------------------------------------------------------------

int VirtualBundle::rank() const
{
    int r = 0;
    for (const auto& [L, k] : summands)
        r += k;
    return r;
}

VirtualBundle VirtualBundle::operator-() const
{
    VirtualBundle v = *this;
    for (auto& [L, k] : v.summands)
        k = -k;
    return v;
}

VirtualBundle VirtualBundle::tangent(const SpaceDescriptor& X)
{
    VirtualBundle v;
    for (std::size_t f = 0; f < X.dims().size(); ++f) {
        v.summands.push_back({LineBundle{{static_cast<int>(f)}}, X.dims()[f] + 1});
        v.summands.push_back({LineBundle{}, -1});
    }
    return v;
}

Poly euler_class(const LineBundle& L)
{
    Poly e;
    for (int f : L.factors)
        e += Poly::var(coh_a(f));
    return e;
}

Poly invert_total_class(const Poly& w, const SpaceDescriptor& X)
{
    Poly lead = w.filter([](const Mono& mono) { return mono.split(is_coh).first.empty(); });
    if (!lead.is_unit())
        throw AlgebraError("total class has no invertible leading term");
    Poly u = lead.unit_inverse();
    Poly nil = X.truncate((w + lead) * u);
    Poly sum = Poly::one(), power = Poly::one();
    for (int j = 1; j <= X.dimension(); ++j) {
        power = X.truncate(power * nil);
        if (power.is_zero())
            break;
        sum += power;
    }
    return X.truncate(sum * u);
}

Poly total_char_class(const VirtualBundle& V, const SpaceDescriptor& X)
{
    const int n = X.dimension();
    Poly w = Poly::one();
    for (const auto& [L, k] : V.summands) {
        if (k == 0)
            continue;
        Poly e = euler_class(L), be, power = Poly::one();
        for (int i = 0; i <= n; ++i) {
            be += Poly::var(char_b(i)) * power;
            power = X.truncate(power * e);
        }
        Poly factor = k > 0 ? be : invert_total_class(be, X);
        for (int j = 0; j < std::abs(k); ++j)
            w = X.truncate(w * factor);
    }
    return w;
}

Poly boardman(const SpaceDescriptor& M, Variant variant)
{
    VirtualBundle V = variant == Variant::Tangential ? VirtualBundle::tangent(M) : VirtualBundle::normal(M);
    return b_to_h(M.pair_fundamental(total_char_class(V, M)));
}

Poly boardman(const Manifold& M, Variant variant)
{
    Poly out;
    for (const SpaceDescriptor& X : M)
        out += boardman(X, variant);
    return out;
}

Poly boardman_fundamental(const SpaceDescriptor& M, Variant variant)
{
    VirtualBundle V = variant == Variant::Tangential ? VirtualBundle::tangent(M) : VirtualBundle::normal(M);
    return b_to_h(M.cap_fundamental(total_char_class(V, M)));
}

// --------------------------------------------------------------------------

SigmaRing::SigmaRing(int maxdeg, int maxweight)
{
    FreeOperationRing::Options o;
    o.gens = {{"x", 0, 1}};
    o.maxdeg = maxdeg;
    o.maxweight = maxweight;
    ring_ = std::make_unique<FreeOperationRing>(o);
    spec_ = tensor_spec(hopf_qspec(solve_generator_qstructure(kB)), ring_->pre_ring_spec());
}

Poly SigmaRing::normalize(const Poly& p) const
{
    return reduce_slot(p, 1, [this](const Poly& q) { return ring_->normal_form(q); });
}

Poly SigmaRing::substitute(const Poly& p, const Poly& q, SubstitutionReading reading) const
{
    std::vector<Poly> args;
    if (reading == SubstitutionReading::Whole) {
        args.push_back(q);
    } else {
        for (const auto& [rest, part] : split_by_rest(q, 1))
            args.push_back(part * rest);
    }
    Poly out;
    for (const auto& [hR, pR] : split_by_rest(p, 1))
        for (const Poly& a : args)
            out += eval_unary_operation(*ring_, pR, spec_, a) * hR;
    return normalize(out);
}

// --------------------------------------------------------------------------

BordismSigma::BordismSigma(int maxdeg, int maxweight)
{
    model_ = build_universal_fgl(maxdeg + 4);
    ds_ = solve_tensor_dstructure(model_);
    dring_.reset(new FreeOperationRing(build_free_dring({{"x", 0, 1}}, model_, maxdeg, maxweight)));
    ec_ = std::make_unique<ExtendedCoaction>(*dring_, ds_, identity_generator_values(*dring_));
    sigma_ = std::make_unique<SigmaRing>(maxdeg, maxweight);
}

Poly BordismSigma::coefficient(const Manifold& M) const
{
    Poly lambda;
    for (const SpaceDescriptor& X : M)
        lambda += hurewicz_inverse(boardman(X, Variant::Normal));
    return lambda;
}

Poly BordismSigma::point_class(const Manifold& M) const { return coefficient(M) * dring_->generator(0); }

Poly BordismSigma::operate(const Poly& p, const Poly& a) const
{
    return dring_->normal_form(eval_unary_operation(*dring_, p, dring_->quotient_spec(), a));
}

const ThomReduction& BordismSigma::thom(int weight) const
{
    std::lock_guard lock(mutex_);
    auto& slot = thom_[weight];
    if (!slot)
        slot.reset(new ThomReduction(thom_reduce(free_dring_module(*ec_, weight))));
    return *slot;
}

Poly BordismSigma::beta(const Poly& element) const
{
    Poly out, nf = dring_->normal_form(element);
    for (const Mono& mono : nf.terms()) {
        const ThomReduction& T = thom(bidegree(mono).second);
        out += reduce_slot((*ec_)(Poly(mono)), 1, [&](const Poly& q) { return T.reduce(q); });
    }
    return transport_words(out, sigma_->ring());
}

// --------------------------------------------------------------------------

Report theorem4_check(int cap, SubstitutionReading reading)
{
    Report r;
    r.suite = std::string("theorem4:") + reading_name(reading);
    const std::vector<std::string> samples{"pt", "RP2", "RP4", "RP2xRP2"};
    const int maxdeg = 2 * 4 + cap;
    BordismSigma S(maxdeg, 2);
    const SigmaRing& Q = S.sigma();
    Poly x = S.dring().generator(0);

    auto beta_of = [&](const std::string& m) { return boardman(parse_manifold(m), Variant::Normal); };
    auto poly_eq = [](const Poly& a, const Poly& b) { return a == b ? std::string() : a.to_string(2) + " vs " + b.to_string(2); };

    // sums and products of the Boardman map
    const std::vector<std::string> small{"RP1", "RP2", "RP3"};
    for (const auto& m : small)
        for (const auto& n : small) {
            Poly sum = beta_of(m + "+" + n), prod = beta_of(m + "x" + n);
            int d = parse_manifold(m + "x" + n)[0].dimension();
            r.add("sum " + m + "+" + n, d, sum == beta_of(m) + beta_of(n));
            r.add("product " + m + "x" + n, d, prod == beta_of(m) * beta_of(n));
        }

    // beta(M) through the coefficient class
    for (const auto& m : samples) {
        Manifold M = parse_manifold(m);
        Poly lhs = S.beta(S.point_class(M));
        Poly rhs = beta_of(m) * Q.ring().generator(0);
        r.add("beta " + m, M[0].dimension(), lhs == rhs, poly_eq(lhs, rhs));
    }

    std::vector<std::pair<std::string, Poly>> ops{{"x", x}, {"x^2", x * x}};
    for (int i = 1; i <= cap; ++i)
        ops.push_back({"D" + std::to_string(i) + "x", S.dring().word(0, {i})});

    for (const auto& [name, p] : ops) {
        Poly betaP = S.beta(p);
        for (const auto& m : samples) {
            Manifold M = parse_manifold(m);
            int n = M[0].dimension();
            auto [pd, pw] = bidegree(p.terms().at(0));
            int outdeg = pw * n + pd;
            std::string label = name + " on " + m;
            if (outdeg > maxdeg) {
                r.skip(label, outdeg, "degree beyond the ring");
                continue;
            }
            Poly lhs = S.beta(S.operate(p, S.point_class(M)));
            Poly rhs = Q.substitute(betaP, S.beta(S.point_class(M)), reading);
            r.add(label, outdeg, lhs == rhs, poly_eq(lhs, rhs));
        }
    }
    return r;
}

}  // namespace nishida
