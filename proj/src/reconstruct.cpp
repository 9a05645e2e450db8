#include "fklab/reconstruct.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "fklab/error.hpp"
#include "fklab/kernels.hpp"
#include "fklab/literals.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

namespace {

FieldElement w0(const FieldElement& x) {
    // (-1)^{v_2(x)}
    const mpq_class& q = x.rational();
    const auto v = static_cast<long>(mpz_scan1(q.get_num_mpz_t(), 0)) - static_cast<long>(mpz_scan1(q.get_den_mpz_t(), 0));
    return FieldElement(mpq_class(v % 2 == 0 ? 1 : -1));
}

FieldElement q_one() { return FieldElement(mpq_class(1)); }

}  // namespace

std::vector<std::string> builtin_examples() { return {"identity", "q-parity-w"}; }

MultMapData builtin_example(const std::string& name) {
    MultMapData d;
    d.name = name;
    d.source = d.target = FieldDescriptor::rational();
    if (name == "identity") {
        d.rho = [](const FieldElement& x) { return x; };
        d.u = [](const FieldElement&) { return q_one(); };
        d.v = [](const FieldElement&) { return q_one(); };
        return d;
    }
    if (name == "q-parity-w") {
        d.rho = [](const FieldElement& x) { return x.is_zero() ? x : w0(x) * x; };
        d.u = [](const FieldElement& x) {
            const FieldElement y = x + q_one();
            return y.is_zero() ? q_one() : w0(y);
        };
        d.v = [](const FieldElement& x) {
            const FieldElement y = x + q_one();
            return y.is_zero() ? q_one() : w0(y) * w0(x);
        };
        return d;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown example '" + name + "'");
}

void MapTable::load(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "map table line needs 'x, value': " + t);
        set(parse_element(src_, t.substr(0, comma)), parse_element(dst_, t.substr(comma + 1)));
    }
}

void MapTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open map table " + path);
    load(in);
}

void MapTable::set(const FieldElement& x, const FieldElement& y) { table_.insert_or_assign(x, y); }

FieldElement MapTable::operator()(const FieldElement& x) const {
    auto it = table_.find(x);
    if (it == table_.end()) throw Error(ErrorCode::InvalidArgument, "map table has no entry for " + x.to_string());
    return it->second;
}

std::vector<FieldElement> MapTable::keys() const {
    std::vector<FieldElement> k;
    for (const auto& [x, y] : table_) k.push_back(x);
    return k;
}

void MapTable::write(std::ostream& out, const FieldMap& f, const std::vector<FieldElement>& xs) {
    for (const auto& x : xs) out << x.to_string() << ", " << f(x).to_string() << "\n";
}

MultMapData data_from_tables(const std::string& name, const MapTable& rho, const MapTable& u, const MapTable& v) {
    MultMapData d;
    d.name = name;
    const auto k = rho.keys();
    if (k.empty()) throw Error(ErrorCode::InvalidArgument, "empty rho table");
    d.source = k.front().descriptor();
    d.target = rho(k.front()).descriptor();
    d.rho = [rho](const FieldElement& x) { return x.is_zero() ? FieldElement::zero(rho(rho.keys().front()).descriptor()) : rho(x); };
    d.u = [u](const FieldElement& x) { return u(x); };
    d.v = [v](const FieldElement& x) { return v(x); };
    return d;
}

std::vector<FieldElement> rational_sample_grid(std::int64_t height, std::size_t count, std::uint64_t seed) {
    if (height < 1) throw Error(ErrorCode::InvalidArgument, "height must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> num(-height, height), den(1, height);
    std::set<FieldElement> seen;
    std::vector<FieldElement> out;
    std::size_t attempts = 0;
    while (out.size() < count) {
        if (++attempts > 100 * count + 1000) throw Error(ErrorCode::CapExceeded, "not enough rationals of this height");
        const std::int64_t a = num(rng), b = den(rng);
        if (a == 0) continue;
        FieldElement x(mpq_class(static_cast<long>(a), static_cast<unsigned long>(b)));
        if (seen.insert(x).second) out.push_back(x);
    }
    return out;
}

SamplePairs all_pairs(const std::vector<FieldElement>& xs) {
    SamplePairs out;
    out.reserve(xs.size() * xs.size());
    for (const auto& x : xs)
        for (const auto& y : xs)
            if (!(x == y)) out.emplace_back(x, y);
    return out;
}

namespace {

/// Evaluates pred on every sample in parallel and returns the flagged samples in input order.
template <class Pred>
std::vector<FieldElement> flagged(const std::vector<FieldElement>& xs, Pred pred) {
    std::vector<char> bad(xs.size(), 0);
    kernels::parallel_for(xs.size(), [&](std::size_t i) { bad[i] = pred(xs[i]) ? 1 : 0; });
    std::vector<FieldElement> out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (bad[i]) out.push_back(xs[i]);
    return out;
}

template <class Pred>
SamplePairs flagged_pairs(const SamplePairs& ps, Pred pred) {
    std::vector<char> bad(ps.size(), 0);
    kernels::parallel_for(ps.size(), [&](std::size_t i) { bad[i] = pred(ps[i].first, ps[i].second) ? 1 : 0; });
    SamplePairs out;
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (bad[i]) out.push_back(ps[i]);
    return out;
}

}  // namespace

std::vector<FieldElement> defining_relation_exceptions(const MultMapData& data, const std::vector<FieldElement>& samples) {
    return flagged(samples, [&](const FieldElement& x) {
        if (x.is_zero()) return false;
        const FieldElement one = FieldElement::one(x.descriptor());
        const FieldElement lhs = (x + one).is_zero() ? FieldElement::zero(data.target) : data.rho(x + one);
        return !(lhs == data.u(x) + data.v(x) * data.rho(x));
    });
}

DerivedW derive_w(const MultMapData& data, const std::vector<FieldElement>& samples) {
    for (const auto& x : samples)
        if (!x.is_zero() && data.u(x).is_zero()) throw Error(ErrorCode::ZeroU, "u vanishes at " + x.to_string());
    DerivedW r;
    const FieldMap u = data.u, v = data.v;
    r.w = [u, v](const FieldElement& x) {
        const FieldElement ux = u(x);
        if (ux.is_zero()) throw Error(ErrorCode::ZeroU, "u vanishes at " + x.to_string());
        return v(x) / ux;
    };
    std::set<FieldElement> values;
    for (const auto& x : samples)
        if (!x.is_zero()) values.insert(r.w(x));
    r.value_set.assign(values.begin(), values.end());
    return r;
}

PatchReport patchwise_exceptions(const FieldMap& eta, GroupLaw law, const std::vector<FieldElement>& samples,
                                 const SamplePairs& pairs) {
    PatchReport r;
    r.sample_size = samples.size();
    r.pair_count = pairs.size();
    if (law == GroupLaw::Multiplicative) {
        r.inverse_exceptions = flagged(samples, [&](const FieldElement& x) { return !(eta(x.inv()) == eta(x).inv()); });
        r.product_exception_pairs = flagged_pairs(pairs, [&](const FieldElement& x, const FieldElement& y) {
            return !(eta(x * y) == eta(x) * eta(y));
        });
    } else {
        r.inverse_exceptions = flagged(samples, [&](const FieldElement& x) { return !(eta(-x) == -eta(x)); });
        r.product_exception_pairs = flagged_pairs(pairs, [&](const FieldElement& x, const FieldElement& y) {
            return !(eta(x + y) == eta(x) + eta(y));
        });
    }
    for (const auto& [x, y] : r.product_exception_pairs) ++r.product_exception_counts[x];
    return r;
}

KappaReport build_kappa(const FieldMap& rho, const FieldMap& w, const std::vector<FieldElement>& samples,
                        const SamplePairs& pairs) {
    KappaReport r;
    r.kappa = [rho, w](const FieldElement& x) { return x.is_zero() ? rho(x) * FieldElement::zero(rho(x).descriptor()) : w(x) * rho(x); };
    const FieldMap& k = r.kappa;
    r.additivity_violations =
        flagged_pairs(pairs, [&](const FieldElement& x, const FieldElement& y) { return !(k(x + y) == k(x) + k(y)); });
    r.multiplicativity_violations =
        flagged_pairs(pairs, [&](const FieldElement& x, const FieldElement& y) { return !(k(x * y) == k(x) * k(y)); });
    std::map<FieldElement, FieldElement> seen;
    for (const auto& x : samples) {
        const FieldElement kx = k(x);
        auto [it, fresh] = seen.emplace(kx, x);
        if (!fresh && !(it->second == x)) r.collisions.emplace_back(it->second, x);
    }
    return r;
}

std::vector<FieldElement> UvReport::compatibility() const {
    std::set<FieldElement> s(compat_u.begin(), compat_u.end());
    s.insert(compat_v.begin(), compat_v.end());
    return {s.begin(), s.end()};
}

UvReport verify_uv_relations(const MultMapData& data, const std::vector<FieldElement>& samples) {
    const DerivedW dw = derive_w(data, samples);
    const FieldMap& w = dw.w;
    UvReport r;
    r.inverse = flagged(samples, [&](const FieldElement& x) { return !x.is_zero() && !(w(x.inv()) == w(x).inv()); });
    r.negation = flagged(samples, [&](const FieldElement& x) { return !x.is_zero() && !(w(-x) == w(x)); });
    r.compat_u = flagged(samples, [&](const FieldElement& x) {
        const FieldElement one = FieldElement::one(x.descriptor());
        if (x.is_zero() || (x + one).is_zero()) return false;
        return !(w(x + one) * data.u(x)).is_one();
    });
    r.compat_v = flagged(samples, [&](const FieldElement& x) {
        const FieldElement one = FieldElement::one(x.descriptor());
        if (x.is_zero() || (x + one).is_zero()) return false;
        return !(data.v(-one - x) * data.v(x)).is_one();
    });
    return r;
}

ReducedModelSpec ReducedModelSpec::decompose(std::uint32_t p, const std::vector<std::int64_t>& m) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "reduced models need a prime characteristic");
    ReducedModelSpec s;
    s.p = p;
    std::set<std::int64_t> seen;
    for (auto mj : m) {
        if (mj == 0) throw Error(ErrorCode::BadWeight, "weights must be nonzero");
        if (!seen.insert(mj).second) throw Error(ErrorCode::BadWeight, "weights must be distinct");
        ReducedWeight w{mj, 0, mj};
        while (w.n % static_cast<std::int64_t>(p) == 0) {
            w.n /= static_cast<std::int64_t>(p);
            ++w.l;
        }
        s.weights.push_back(w);
    }
    return s;
}

ReducedModelSpec ReducedModelSpec::explicit_weights(std::uint32_t p, std::vector<ReducedWeight> w) {
    for (const auto& x : w) {
        if (x.n % static_cast<std::int64_t>(p) == 0) throw Error(ErrorCode::BadWeight, "p divides n = " + std::to_string(x.n));
        if (static_cast<std::int64_t>(ipow(p, x.l)) * x.n != x.m)
            throw Error(ErrorCode::BadWeight, "m != p^l n for m = " + std::to_string(x.m));
    }
    ReducedModelSpec s;
    s.p = p;
    s.weights = std::move(w);
    return s;
}

ReducedModel::ReducedModel(ReducedModelSpec spec) : spec_(std::move(spec)) {}

namespace {

RatFunc frob_power(const RatFunc& x, unsigned l, std::uint32_t p) {
    // x^{p^l}: coefficients are in F_p, so this is x(t^{p^l})
    return x.inflate(static_cast<unsigned>(ipow(p, l)));
}

}  // namespace

UVector ReducedModel::phi(const VVector& x) const {
    const std::uint32_t p = spec_.p;
    UVector y;
    for (std::size_t j = 0; j < spec_.weights.size(); ++j) {
        const unsigned l = spec_.weights[j].l;
        const std::size_t dim = ipow(p, l);
        if (x[j].size() != dim) throw Error(ErrorCode::InvalidArgument, "coordinate count mismatch");
        RatFunc acc(p);
        for (std::size_t i = 0; i < dim; ++i)
            acc = acc + frob_power(x[j][i], l, p) * RatFunc(PolyFp::monomial(p, static_cast<unsigned>(i)));
        y.push_back(acc);
    }
    return y;
}

VVector ReducedModel::phi_inverse(const UVector& y) const {
    const std::uint32_t p = spec_.p;
    VVector x;
    for (std::size_t j = 0; j < spec_.weights.size(); ++j) {
        const unsigned l = spec_.weights[j].l;
        const std::size_t P = ipow(p, l);
        // y = N / D = N D^{P-1} / D^P with D^P in K^{P}; split the numerator by exponent mod P
        const PolyFp& D = y[j].den();
        const PolyFp num = y[j].num() * D.pow(P - 1);
        const PolyFp den = D.pow(P);
        std::vector<std::vector<std::uint32_t>> parts(P);
        for (std::size_t e = 0; e < num.coeffs().size(); ++e) {
            if (!num.coeffs()[e]) continue;
            auto& c = parts[e % P];
            c.resize(e - e % P + 1, 0);
            c[e - e % P] = num.coeffs()[e];
        }
        std::vector<RatFunc> coords;
        for (std::size_t i = 0; i < P; ++i) {
            RatFunc yi(PolyFp(p, parts[i]), den);
            for (unsigned r = 0; r < l; ++r) yi = yi.pth_root();
            coords.push_back(yi);
        }
        x.push_back(std::move(coords));
    }
    return x;
}

VVector ReducedModel::act_v(const RatFunc& a, const VVector& x) const {
    VVector out = x;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const RatFunc s = a.pow(spec_.weights[j].n);
        for (auto& c : out[j]) c = s * c;
    }
    return out;
}

UVector ReducedModel::act_u(const RatFunc& a, const UVector& y) const {
    UVector out = y;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a.pow(spec_.weights[j].m) * out[j];
    return out;
}

VVector ReducedModel::scalar_v(const RatFunc& a, const VVector& x) const {
    VVector out = x;
    for (auto& comp : out)
        for (auto& c : comp) c = a * c;
    return out;
}

UVector ReducedModel::scalar_u(const RatFunc& a, const UVector& y) const {
    UVector out = y;
    for (auto& c : out) c = a * c;
    return out;
}

RatFunc random_ratfunc(std::uint32_t p, std::uint64_t seed, unsigned max_degree, bool allow_zero) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    for (;;) {
        std::vector<std::uint32_t> n(deg(rng) + 1), d(deg(rng) + 1);
        for (auto& c : n) c = coef(rng);
        for (auto& c : d) c = coef(rng);
        d.back() = 1;
        RatFunc f(PolyFp(p, n), PolyFp(p, d));
        if (allow_zero || !f.is_zero()) return f;
    }
}

VVector ReducedModel::random_vector(std::uint64_t seed, unsigned max_degree) const {
    VVector x;
    std::uint64_t s = seed;
    for (const auto& w : spec_.weights) {
        std::vector<RatFunc> comp;
        for (std::size_t i = 0; i < ipow(spec_.p, w.l); ++i) comp.push_back(random_ratfunc(spec_.p, s++ * 0x9E3779B97F4A7C15ull + 1, max_degree));
        x.push_back(std::move(comp));
    }
    return x;
}

ReducedModelReport reduced_model(const ReducedModelSpec& spec, std::size_t samples, std::uint64_t seed) {
    const ReducedModel M(spec);
    const std::uint32_t p = spec.p;
    ReducedModelReport r;
    r.samples = samples;
    for (const auto& w : spec.weights) r.has_nonlinear_component |= w.l > 0;
    struct Outcome {
        bool add = true, eq = true, inv = true, sur = true;
    };
    std::vector<Outcome> out(samples);
    kernels::parallel_for(samples, [&](std::size_t i) {
        const std::uint64_t base = seed * 1000003ull + i * 7919ull;
        const VVector x = M.random_vector(base + 1), y = M.random_vector(base + 2);
        const RatFunc a = random_ratfunc(p, base + 3, 2, false);
        VVector xy = x;
        for (std::size_t j = 0; j < xy.size(); ++j)
            for (std::size_t c = 0; c < xy[j].size(); ++c) xy[j][c] = x[j][c] + y[j][c];
        const UVector px = M.phi(x), py = M.phi(y);
        UVector sum = px;
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = sum[j] + py[j];
        out[i].add = M.phi(xy) == sum;
        out[i].eq = M.phi(M.act_v(a, x)) == M.act_u(a, px);
        out[i].inv = M.phi_inverse(px) == x;
        UVector target;
        for (std::size_t j = 0; j < spec.weights.size(); ++j) target.push_back(random_ratfunc(p, base + 11 + j, 3));
        out[i].sur = M.phi(M.phi_inverse(target)) == target;
    });
    for (const auto& o : out) {
        r.additivity_failures += !o.add;
        r.equivariance_failures += !o.eq;
        r.inverse_failures += !o.inv;
        r.surjectivity_failures += !o.sur;
    }
    if (r.has_nonlinear_component) {
        const RatFunc a = RatFunc::t(p);
        VVector x = M.random_vector(seed);
        for (auto& comp : x)
            for (auto& c : comp) c = RatFunc::constant(p, 1);
        if (!(M.phi(M.scalar_v(a, x)) == M.scalar_u(a, M.phi(x)))) {
            r.nonlinearity_witness_found = true;
            r.witness = "a=t, x=all coordinates 1";
        }
    }
    return r;
}

}  // namespace fklab
