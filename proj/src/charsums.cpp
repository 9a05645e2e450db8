#include "fklab/charsums.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fklab/error.hpp"
#include "fklab/kernels.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

std::string format_double(double x) {
    if (x == 0) x = 0;   // no "-0"
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<std::size_t> TwistSpec::positive_indices() const {
    std::vector<std::size_t> I;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i].second > 0) I.push_back(i);
    return I;
}

void TwistSpec::validate(const FieldDescriptor& d) const {
    if (!(eta.descriptor() == d))
        throw Error(ErrorCode::DescriptorMismatch, "eta on " + eta.descriptor().to_string() + ", sums over " + d.to_string());
    const std::uint32_t p = d.characteristic();
    for (const auto& [xi, n] : factors) {
        if (!(xi.descriptor() == d))
            throw Error(ErrorCode::DescriptorMismatch, xi.to_string() + " is not a character of " + d.to_string());
        if (n == 0) throw Error(ErrorCode::InvalidArgument, "exponents must be nonzero");
        if (p && n % static_cast<std::int64_t>(p) == 0)
            throw Error(ErrorCode::CharDividesN, "characteristic divides exponent " + std::to_string(n));
    }
}

bool TwistSpec::exact() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.first.is_exact(); });
}

std::string TwistSpec::to_string() const {
    std::string s = "eta=" + eta.to_string();
    for (const auto& [xi, n] : factors) s += "; " + xi.to_string() + "^(" + std::to_string(n) + ")";
    return s;
}

std::string SumSeries::to_csv() const {
    std::string out = "k,support_size,re,im,abs,exact\n";
    for (const auto& t : terms) {
        out += std::to_string(t.k) + "," + std::to_string(t.support_size) + "," + format_double(t.value.real()) + "," +
               format_double(t.value.imag()) + "," + format_double(t.abs()) + "," + (t.exact ? "true" : "false") + "\n";
    }
    return out;
}

namespace {

std::uint64_t eta_order(const MultiplicativeCharacter& eta) {
    switch (eta.kind()) {
        case MultiplicativeCharacter::Kind::Trivial: return 1;
        case MultiplicativeCharacter::Kind::DlogPower: return eta.descriptor().ff().order() - 1;
        default: return 2;
    }
}

}  // namespace

SumTerm character_sum(const WeightedSet& mu0, const TwistSpec& spec) {
    const FieldDescriptor& D = mu0.descriptor();
    spec.validate(D);
    SumTerm term;
    term.zero_mass = mu0.mass_of_zero();
    const WeightedSet mu = mu0.without_zero();
    const auto& es = mu.entries();
    term.support_size = es.size();
    term.exact = spec.exact();

    if (!term.exact) {
        std::vector<std::complex<double>> vals(es.size());
        kernels::parallel_for(es.size(), [&](std::size_t i) {
            const FieldElement& a = es[i].x;
            std::complex<double> v = to_unit(spec.eta.phase(a)).embed();
            for (const auto& [xi, n] : spec.factors) v *= xi.numeric(a.pow(n));
            vals[i] = v * es[i].w.get_d();
        });
        term.value = kernels::pairwise_sum(vals);
        return term;
    }

    std::uint64_t M = eta_order(spec.eta);
    const std::uint64_t p = D.characteristic();
    for (const auto& f : spec.factors)
        if (!f.first.is_trivial()) M = lcm_u64(M, p);
    if (M > cyclotomic_order_cap()) throw Error(ErrorCode::OrderOverflow, "summand order above cap");

    std::vector<std::uint64_t> ex(es.size());
    if (D.is_finite()) {
        const auto& F = D.ff();
        kernels::parallel_for(es.size(), [&](std::size_t i) {
            const FiniteField::Elem a = es[i].x.code();
            const Phase ph = spec.eta.phase_code(a);
            std::uint64_t e = ph.exp * (M / ph.order);
            for (const auto& [xi, n] : spec.factors)
                if (!xi.is_trivial()) e += std::uint64_t{xi.trace_exponent(F.pow(a, n))} * (M / p);
            ex[i] = e % M;
        });
    } else {
        kernels::parallel_for(es.size(), [&](std::size_t i) {
            const FieldElement& a = es[i].x;
            const Phase ph = spec.eta.phase(a);
            std::uint64_t e = ph.exp * (M / ph.order);
            for (const auto& [xi, n] : spec.factors) {
                if (xi.is_trivial()) continue;
                const Phase fx = xi.phase(a.pow(n));
                e += fx.exp * (M / fx.order);
            }
            ex[i] = e % M;
        });
    }
    std::vector<mpq_class> coeffs(M, mpq_class(0));
    if (mu.is_uniform()) {
        const auto hist = kernels::phase_histogram_parallel(ex, M);
        const mpq_class w = es.front().w;
        for (std::uint64_t e = 0; e < M; ++e)
            if (hist[e]) coeffs[e] = w * mpq_class(static_cast<long>(hist[e]));
    } else {
        for (std::size_t i = 0; i < es.size(); ++i) coeffs[ex[i]] += es[i].w;
    }
    term.exact_value = UnitValue::from_coeffs(std::move(coeffs));
    term.value = term.exact_value->embed();
    return term;
}

KloostermanValue kloosterman_classical(std::uint32_t p, unsigned n, const FieldElement& beta1, const FieldElement& beta2) {
    check_cap(ipow(p, n), "kloosterman_classical");
    const FieldDescriptor D = FieldDescriptor::finite(p, n);
    if (!(beta1.descriptor() == D) || !(beta2.descriptor() == D))
        throw Error(ErrorCode::DescriptorMismatch, "Kloosterman parameters must lie in " + D.to_string());
    const auto& F = D.ff();
    const auto hist = kernels::kloosterman_histogram_parallel(F, beta1.code(), beta2.code());
    std::vector<mpq_class> c(p);
    for (std::uint32_t e = 0; e < p; ++e) c[e] = mpq_class(static_cast<long>(hist[e]));
    KloostermanValue out{{}, UnitValue::from_coeffs(std::move(c)), std::nullopt};
    out.value = out.exact.embed();
    if (!beta1.is_zero() && !beta2.is_zero()) out.weil_ratio = std::abs(out.value) / (2.0 * std::sqrt(double(F.order())));
    return out;
}

UnitValue kloosterman_by_enumeration(const FieldElement& beta1, const FieldElement& beta2) {
    const auto xi1 = AdditiveCharacter::trace(beta1);
    const auto xi2 = AdditiveCharacter::trace(beta2);
    UnitValue acc = UnitValue::zero();
    for (const auto& a : enumerate_finite(beta1.descriptor())) {
        if (a.is_zero()) continue;
        acc += xi1.eval(a) * xi2.eval(a.inv());
    }
    return acc;
}

namespace {

void check_k_max(const FolnerRecipe& recipe, unsigned k_max) {
    if (k_max == 0) throw Error(ErrorCode::InvalidArgument, "k_max must be positive");
    if (auto m = recipe.max_index(); m && k_max > *m)
        throw Error(ErrorCode::InvalidArgument, "recipe has only " + std::to_string(*m) + " indices");
}

void add_common_metadata(SumSeries& s, const FolnerRecipe& recipe) {
    s.metadata.emplace_back("recipe", recipe.to_string());
    s.metadata.emplace_back("normalization", "zero dropped, mass renormalized");
    if (recipe.kind() == FolnerRecipe::Kind::SubfieldTower)
        s.metadata.emplace_back("uniform_normalization_factor", "q_k/(q_k-1)");
}

}  // namespace

SumSeries twisted_power_series(const FolnerRecipe& recipe, const TwistSpec& spec, unsigned k_max) {
    check_k_max(recipe, k_max);
    spec.validate(recipe.descriptor());
    SumSeries s;
    s.spec = spec.to_string();
    s.provenance = "twisted_power_series " + recipe.to_string();
    add_common_metadata(s, recipe);
    for (unsigned k = 1; k <= k_max; ++k) {
        SumTerm t = character_sum(realize(recipe, k), spec);
        t.k = k;
        s.terms.push_back(std::move(t));
    }
    return s;
}

SumSeries folner_kloosterman_series(const FolnerRecipe& recipe, const AdditiveCharacter& xi1,
                                    const AdditiveCharacter& xi2, unsigned k_max) {
    TwistSpec spec{MultiplicativeCharacter::trivial(recipe.descriptor()), {{xi1, 1}, {xi2, -1}}};
    SumSeries s = twisted_power_series(recipe, spec, k_max);
    s.provenance = "folner_kloosterman_series " + recipe.to_string();
    return s;
}

InverseSeries inverse_character_series(const FolnerRecipe& recipe, const AdditiveCharacter& xi, unsigned k_max) {
    if (!recipe.descriptor().is_rational() || xi.kind() != AdditiveCharacter::Kind::Archimedean)
        throw Error(ErrorCode::DescriptorMismatch, "inverse series needs an archimedean character and a recipe over Q");
    if (recipe.kind() != FolnerRecipe::Kind::DilatedBoxAverage)
        throw Error(ErrorCode::InvalidArgument, "inverse series needs a double Folner (dilbox) recipe");
    TwistSpec spec{MultiplicativeCharacter::trivial(recipe.descriptor()), {{xi, -1}}};
    InverseSeries out{twisted_power_series(recipe, spec, k_max), 0};
    out.series.provenance = "inverse_character_series " + recipe.to_string();
    const std::size_t n = out.series.terms.size();
    const std::size_t tail = (n + 2) / 3;
    for (std::size_t i = n - tail; i < n; ++i) out.tail_floor = std::max(out.tail_floor, out.series.terms[i].abs());
    out.series.metadata.emplace_back("tail_floor", format_double(out.tail_floor));
    return out;
}

DecayReport decay_report(const SumSeries& s) {
    const std::size_t n = s.terms.size();
    if (n < 3) throw Error(ErrorCode::TooShort, "decay report needs at least 3 terms");
    DecayReport r;
    const std::size_t tail = (n + 2) / 3;
    for (std::size_t i = n - tail; i < n; ++i) r.max_tail = std::max(r.max_tail, s.terms[i].abs());
    r.last = s.terms.back().abs();
    std::size_t mono = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (s.terms[i].abs() <= s.terms[i - 1].abs()) ++mono;
    r.monotone_fraction = double(mono) / double(n - 1);
    return r;
}

}  // namespace fklab
