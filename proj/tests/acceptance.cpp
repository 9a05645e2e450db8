// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fklab/charsums.hpp"
#include "fklab/error.hpp"
#include "fklab/experiment.hpp"
#include "fklab/folner.hpp"
#include "fklab/identities.hpp"
#include "fklab/kernels.hpp"
#include "fklab/literals.hpp"
#include "fklab/patterns.hpp"
#include "fklab/pgl2.hpp"
#include "fklab/reconstruct.hpp"

#ifndef FKLAB_BASELINE_FILE
#define FKLAB_BASELINE_FILE "inverse_series_baseline.json"
#endif

using namespace fklab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Records failures with a short reason; the first few reasons end up in the detail line.
class Check {
public:
    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ++failures_;
        if (reasons_.size() < 3) reasons_.push_back(what);
    }
    Outcome outcome(const std::string& summary) const {
        Outcome o{failures_ == 0, summary};
        for (const auto& r : reasons_) o.detail += "; " + r;
        if (failures_ > reasons_.size()) o.detail += "; ... " + std::to_string(failures_) + " failures";
        return o;
    }

private:
    std::size_t failures_ = 0;
    std::vector<std::string> reasons_;
};

FieldDescriptor field_of_order(std::uint32_t q) {
    for (std::uint32_t p = 2; p <= q; ++p) {
        if (q % p) continue;
        unsigned n = 0;
        std::uint32_t r = q;
        while (r % p == 0) {
            r /= p;
            ++n;
        }
        if (r != 1) throw Error(ErrorCode::InvalidArgument, "not a prime power: " + std::to_string(q));
        return FieldDescriptor::finite(p, n);
    }
    throw Error(ErrorCode::InvalidArgument, "not a prime power: " + std::to_string(q));
}

std::string fmt(double x) { return format_double(x); }

Outcome triple_mixing() {
    Check c;
    std::size_t count = 0;
    for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 25u, 27u, 343u}) {
        const auto d = field_of_order(q);
        for (FiniteField::Elem a = 2; a < q; ++a) {
            const auto v = triple_mixing_check(FieldElement(d, a));
            ++count;
            c.expect(v == UnitValue::rational(1), "q=" + std::to_string(q) + " a=" + std::to_string(a));
        }
    }
    return c.outcome(std::to_string(count) + " (q, a) pairs equal 1 exactly");
}

Outcome kloosterman_weil() {
    Check c;
    std::size_t pairs = 0;
    double worst = 0;
    for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u, 49u}) {
        const auto d = field_of_order(q);
        const auto& F = d.ff();
        for (FiniteField::Elem b1 = 1; b1 < q; ++b1)
            for (FiniteField::Elem b2 = 1; b2 < q; ++b2) {
                const auto k = kloosterman_classical(F.characteristic(), F.degree(), FieldElement(d, b1), FieldElement(d, b2));
                ++pairs;
                const double bound = 2 * std::sqrt(static_cast<double>(q));
                worst = std::max(worst, std::abs(k.value) / bound);
                c.expect(std::abs(k.value) <= bound + 1e-9, "Weil q=" + std::to_string(q));
                c.expect(std::abs(k.value - k.exact.embed()) < 1e-9, "embedding q=" + std::to_string(q));
            }
    }
    const auto d3 = FieldDescriptor::finite(3, 1);
    const auto one = FieldElement::one(d3);
    const auto k311 = kloosterman_classical(3, 1, one, one);
    c.expect(k311.exact == UnitValue::rational(-1), "K_3(1,1) != -1");
    c.expect(kloosterman_by_enumeration(one, one) == UnitValue::rational(-1), "oracle K_3(1,1) != -1");
    c.expect(std::abs(k311.value - std::complex<double>(-1, 0)) < 1e-9, "K_3(1,1) embedding");
    return c.outcome(std::to_string(pairs) + " pairs, max |K|/(2 sqrt q) = " + fmt(worst) + ", K_3(1,1) = -1");
}

// Full-mass tower terms |sum_{a in F_k^*} xi1(a) xi2(1/a)| / q_k.
std::vector<double> tower_full_mass(const FolnerRecipe& r, const FieldElement& b1, const FieldElement& b2) {
    const auto s = folner_kloosterman_series(r, AdditiveCharacter::trace(b1), AdditiveCharacter::trace(b2),
                                             static_cast<unsigned>(r.schedule().size()));
    std::vector<double> out;
    for (const auto& t : s.terms) out.push_back(std::abs(t.full_mass()));
    return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

Outcome tower_decay() {
    Check c;
    const auto r = FolnerRecipe::tower(2, {1, 2, 4, 8, 16});
    const auto& d = r.descriptor();
    const auto& F = d.ff();
    const std::size_t L = r.schedule().size();
    auto q_at = [&](std::size_t k) { return std::pow(2.0, r.degree_at(static_cast<unsigned>(k))); };
    auto within_bound = [&](const std::vector<double>& v) {
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] > 2 / std::sqrt(q_at(k + 1)) + 1e-12) return false;
        return true;
    };
    // beta1: first code with nonzero absolute trace; beta2: first such code giving a strictly
    // decreasing series in both normalizations.
    FiniteField::Elem b1 = 1;
    while (F.trace(b1) == 0) ++b1;
    std::optional<FiniteField::Elem> b2;
    std::vector<double> series;
    for (FiniteField::Elem x = 1; x < F.order() && !b2; ++x) {
        if (F.trace(x) == 0) continue;
        const auto s = folner_kloosterman_series(r, AdditiveCharacter::trace(FieldElement(d, b1)),
                                                 AdditiveCharacter::trace(FieldElement(d, x)), static_cast<unsigned>(L));
        std::vector<double> renorm, full;
        for (const auto& t : s.terms) {
            renorm.push_back(t.abs());
            full.push_back(std::abs(t.full_mass()));
        }
        if (strictly_decreasing(renorm) && strictly_decreasing(full)) {
            b2 = x;
            series = full;
        }
    }
    c.expect(b2.has_value(), "no decreasing pair found");
    if (!b2) return c.outcome("beta1 = #" + std::to_string(b1));
    c.expect(series.size() == L, "series length");
    c.expect(within_bound(series), "bound violated for the selected pair");
    c.expect(strictly_decreasing(series), "not strictly decreasing");
    // the bound for further nonzero-trace pairs
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<FiniteField::Elem> pick(1, F.order() - 1);
    std::size_t extra = 0;
    while (extra < 12) {
        const FiniteField::Elem x = pick(rng), y = pick(rng);
        if (F.trace(x) == 0 || F.trace(y) == 0) continue;
        ++extra;
        c.expect(within_bound(tower_full_mass(r, FieldElement(d, x), FieldElement(d, y))),
                 "bound for #" + std::to_string(x) + ", #" + std::to_string(y));
    }
    std::string s;
    for (std::size_t k = 0; k < series.size(); ++k) s += (k ? " " : "") + fmt(series[k] * std::sqrt(q_at(k + 1)));
    return c.outcome("beta = #" + std::to_string(b1) + ", #" + std::to_string(*b2) + "; |sum| sqrt(q_k) = " + s +
                     "; +" + std::to_string(extra) + " pairs within bound");
}

Outcome power_lemma() {
    Check c;
    std::size_t ids = 0, checks = 0;
    for (std::uint32_t p : {0u, 2u, 3u, 5u, 7u})
        for (unsigned n = 1; n <= 12; ++n) {
            if (p && n % p == 0) continue;
            const auto id = build_power_identity(n, p);
            ++ids;
            const std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p);
            for (const auto& x : combination(id, id.coeffs, n)) c.expect(x == 0, "identity " + tag);
            if (n > 8) continue;
            const auto at_n = check_linear_independence(id, n);
            ++checks;
            c.expect(!at_n.independent, "m = n independent " + tag);
            for (const auto& x : combination(id, at_n.witness, n)) c.expect(x == 0, "witness " + tag);
            const std::int64_t ni = n;
            for (std::int64_t m : {std::int64_t{-3}, std::int64_t{-2}, std::int64_t{-1}, ni + 1, ni + 2, ni + 3}) {
                if (p && m % static_cast<std::int64_t>(p) == 0) continue;
                ++checks;
                c.expect(check_linear_independence(id, m).independent, "dependent " + tag + " m=" + std::to_string(m));
            }
        }
    return c.outcome(std::to_string(ids) + " identities verified, " + std::to_string(checks) + " rank decisions");
}

Outcome poscorr() {
    Check c;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> w(0, 9);
    std::size_t trials = 0, equal = 0;
    for (std::uint32_t q : {5u, 7u, 9u}) {
        const auto d = field_of_order(q);
        const auto& F = d.ff();
        std::uniform_int_distribution<FiniteField::Elem> pick(1, q - 1);
        for (std::size_t N : {2u, 3u, 4u})
            for (int t = 0; t < 100; ++t) {
                std::vector<SpectrumFunction> phis;
                for (std::size_t j = 0; j < N; ++j) {
                    SpectrumFunction f{d, {}};
                    for (std::uint32_t i = 0; i < q; ++i) {
                        const int v = w(rng);
                        f.hat.push_back(mpq_class(v, 1 + v));
                        f.hat.back().canonicalize();
                    }
                    phis.push_back(std::move(f));
                }
                std::vector<FieldElement> s;
                FiniteField::Elem sum = 0;
                do {
                    s.clear();
                    sum = 0;
                    for (std::size_t j = 0; j + 1 < N; ++j) {
                        s.emplace_back(d, pick(rng));
                        sum = F.add(sum, s.back().code());
                    }
                } while (sum == 0);
                s.emplace_back(d, F.neg(sum));
                const auto r = poscorr_check(phis, s);
                ++trials;
                equal += r.equality;
                c.expect(r.holds && r.lhs >= r.rhs, "lhs < rhs at q=" + std::to_string(q));
                c.expect(poscorr_lhs_fourier(phis, s) == UnitValue::rational(r.lhs), "Fourier route differs");
            }
    }
    return c.outcome(std::to_string(trials) + " trials hold exactly (" + std::to_string(equal) + " equalities)");
}

Outcome hyperbola_lemmas() {
    Check c;
    for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u})
        c.expect(hyperbola_triple_search(field_of_order(q)).hits.empty(), "triple hit at q=" + std::to_string(q));
    std::size_t family_hits = 0;
    for (std::uint32_t q : {4u, 16u}) {
        const auto d = field_of_order(q);
        const auto& F = d.ff();
        const auto r = hyperbola_triple_search(d);
        c.expect(!r.hits.empty(), "no triple at q=" + std::to_string(q));
        c.expect(r.hits.size() == 2 * (q - 1), "family size at q=" + std::to_string(q));
        for (const auto& h : r.hits) {
            const auto s = h[1].code(), x = h[0].code(), z = h[2].code();
            const auto alpha = F.div(x, s);
            c.expect(x == z && F.add(F.mul(alpha, alpha), F.add(alpha, 1)) == 0, "hit outside family");
            ++family_hits;
        }
    }
    std::size_t searches = 0;
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const auto d = field_of_order(q);
        for (FiniteField::Elem t = 1; t < q; ++t) {
            ++searches;
            c.expect(hyperbola_diffset_search(d, FieldElement(d, t), 4).hits.empty(),
                     "diff-set at q=" + std::to_string(q) + " t=" + std::to_string(t));
        }
    }
    return c.outcome("odd q empty; " + std::to_string(family_hits) + " char-2 hits all (s a, s, s a); " +
                     std::to_string(searches) + " diff-set searches empty");
}

Outcome reconstruction_q() {
    Check c;
    const auto data = builtin_example("q-parity-w");
    const auto samples = rational_sample_grid(200, 500, 1);
    const auto pairs = all_pairs(samples);
    c.expect(defining_relation_exceptions(data, samples).empty(), "defining relation");
    const auto dw = derive_w(data, samples);
    c.expect(dw.value_set == std::vector<FieldElement>{FieldElement(mpq_class(-1)), FieldElement(mpq_class(1))},
             "w image");
    const auto pw = patchwise_exceptions(dw.w, GroupLaw::Multiplicative, samples, pairs);
    c.expect(pw.total_inverse() == 0 && pw.total_product() == 0, "patchwise exceptions");
    const auto k = build_kappa(data.rho, dw.w, samples, pairs);
    for (const auto& x : samples) c.expect(k.kappa(x) == x, "kappa(" + x.to_string() + ")");
    c.expect(k.additivity_violations.empty(), "additivity");
    c.expect(k.multiplicativity_violations.empty(), "multiplicativity");
    const auto u1 = verify_uv_relations(data, samples);
    const auto u2 = verify_uv_relations(data, rational_sample_grid(200, 1000, 1));
    c.expect(u1.total() == 0 && u2.total() == 0, "uv relations");
    return c.outcome("w in {-1, 1}, kappa = id on 500 samples / " + std::to_string(pairs.size()) +
                     " pairs, uv exceptions 0 at 500 and 1000");
}

Outcome reduced_model_ft() {
    Check c;
    const auto r = reduced_model(ReducedModelSpec::decompose(3, {3, -6, 2}), 200, 1);
    c.expect(r.samples == 200, "sample count");
    c.expect(r.additivity_failures == 0, "additivity");
    c.expect(r.equivariance_failures == 0, "equivariance");
    c.expect(r.inverse_failures == 0 && r.surjectivity_failures == 0, "bijectivity");
    c.expect(r.has_nonlinear_component && r.nonlinearity_witness_found, "nonlinearity witness");
    return c.outcome("F_3(t), weights {3, -6, 2}, 200 samples; witness " + r.witness);
}

std::vector<FieldElement> sorted_unique(std::vector<FieldElement> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Outcome pgl2() {
    Check c;
    std::mt19937_64 rng(9);
    std::size_t instances = 0;
    auto one_instance = [&](const std::vector<FieldElement>& A, const FieldElement& b, const std::string& tag) {
        ++instances;
        if (A.size() >= 3) {
            c.expect(mpz_class(q_set(A).size()) == q_set_size(A.size()), "|Q(A)| " + tag);
            c.expect(translate_identity_check(A, b).ok(), "translate " + tag);
        }
        c.expect(inversion_section_check(A, b).equal, "section " + tag);
    };
    for (std::uint32_t q : {5u, 7u, 9u, 11u}) {
        const auto d = field_of_order(q);
        const auto all = enumerate_finite(d);
        for (int t = 0; t < 100; ++t) {
            std::vector<FieldElement> A;
            for (std::size_t i = 1; i < all.size(); ++i)
                if (rng() % 2) {
                    A.push_back(all[i]);
                    A.push_back(all[i].inv());
                }
            const FieldElement b(d, 1 + static_cast<FiniteField::Elem>(rng() % (q - 1)));
            one_instance(sorted_unique(A), b, "q=" + std::to_string(q));
        }
    }
    std::uniform_int_distribution<long> h(1, 20);
    for (int t = 0; t < 100; ++t) {
        std::vector<FieldElement> A;
        const int m = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < m; ++i) {
            const FieldElement x(mpq_class(h(rng) * (rng() % 2 ? 1 : -1), static_cast<unsigned long>(h(rng))));
            A.push_back(x);
            A.push_back(x.inv());
        }
        const FieldElement b(mpq_class(h(rng), static_cast<unsigned long>(h(rng))));
        one_instance(sorted_unique(A), b, "Q");
    }
    const auto top = FieldDescriptor::finite(2, 4);
    const auto& F = top.ff();
    std::size_t ratios = 0;
    for (unsigned m : {2u, 4u}) {
        std::vector<FieldElement> sub;
        for (FiniteField::Elem x = 0; x < F.order(); ++x)
            if (F.in_subfield(x, m)) sub.emplace_back(top, x);
        for (const auto& b : sub) {
            if (b.is_zero()) continue;
            ++ratios;
            c.expect(pgl2_folner_ratio(sub, b, Generator::Plus, 40, RatioSupport::AsGiven).ratio == 1,
                     "tower ratio F_2^" + std::to_string(m));
        }
    }
    return c.outcome(std::to_string(instances) + " random instances; " + std::to_string(ratios) +
                     " subfield tower ratios equal 1");
}

Outcome folner_diagnostics() {
    Check c;
    const auto tw = FolnerRecipe::tower(2, {1, 2, 4, 8});
    const unsigned top = static_cast<unsigned>(tw.schedule().size());
    const auto mu = realize(tw, top);
    const auto& F = tw.descriptor().ff();
    std::size_t zero_defects = 0;
    for (FiniteField::Elem a = 1; a < F.order(); a += 7) {
        const FieldElement x(tw.descriptor(), a);
        for (auto mode : {DefectMode::Additive, DefectMode::Multiplicative, DefectMode::Inversion}) {
            c.expect(folner_defect(mu, x, mode, ZeroPolicy::Drop) == 0, "tower defect at a=" + std::to_string(a));
            ++zero_defects;
        }
    }
    const FieldDescriptor Qd;
    const FieldElement two(mpq_class(2));
    const auto e2 = folner_defect(realize(FolnerRecipe::dilbox(Qd, 2, 2, std::nullopt, 64), 1), two,
                                  DefectMode::Multiplicative, ZeroPolicy::Drop);
    const auto e4 = folner_defect(realize(FolnerRecipe::dilbox(Qd, 2, 4, std::nullopt, 64), 1), two,
                                  DefectMode::Multiplicative, ZeroPolicy::Drop);
    c.expect(e2 <= mpq_class(2, 5), "E=2 above 2/5");
    c.expect(e4 <= mpq_class(2, 9), "E=4 above 2/9");
    const double ratio = mpq_class(e4 / e2).get_d();
    c.expect(ratio >= 0.4 && ratio <= 0.6, "E doubling ratio " + fmt(ratio));
    std::string inv;
    const auto box = FolnerRecipe::addbox(Qd, FieldElement(mpq_class(6)), 50);
    for (unsigned k = 1; k <= 3; ++k) {
        const auto d = folner_defect(inverse_pushforward(realize(box, k)), FieldElement(mpq_class(1)), DefectMode::Additive);
        c.expect(d >= mpq_class(1, 2), "inverse additive defect at k=" + std::to_string(k));
        inv += (k > 1 ? " " : "") + fmt(d.get_d());
    }
    return c.outcome(std::to_string(zero_defects) + " tower defects 0; dilbox E=2 " + e2.get_str() + ", E=4 " +
                     e4.get_str() + " (ratio " + fmt(ratio) + "); inverse addbox defects " + inv);
}

Outcome nonvanishing() {
    Check c;
    const std::vector<std::string> recipes{"dilbox:P=2:E=2:R=32", "dilbox:P=2:E=2:R=64", "dilbox:P=2:E=2:R=128"};
    std::vector<double> floors;
    for (const auto& r : recipes) {
        const auto rec = parse_recipe(r);
        floors.push_back(inverse_character_series(rec, AdditiveCharacter::archimedean(mpq_class(1)), 3).tail_floor);
    }
    const std::filesystem::path path(FKLAB_BASELINE_FILE);
    std::string note;
    if (!std::filesystem::exists(path)) {
        nlohmann::ordered_json j;
        for (std::size_t i = 0; i < recipes.size(); ++i) j[recipes[i]] = floors[i];
        std::ofstream(path) << j.dump(2) << "\n";
        note = " (baseline recorded)";
    }
    const auto base = nlohmann::json::parse(std::ifstream(path));
    std::string s;
    for (std::size_t i = 0; i < recipes.size(); ++i) {
        c.expect(base.contains(recipes[i]), "no baseline for " + recipes[i]);
        if (!base.contains(recipes[i])) continue;
        const double b = base[recipes[i]].get<double>();
        c.expect(floors[i] >= 0.5 * b, recipes[i] + " floor " + fmt(floors[i]) + " < half of " + fmt(b));
        c.expect(floors[i] > 0, recipes[i] + " floor is 0");
        s += (i ? ", " : "") + fmt(floors[i]);
    }
    return c.outcome("tail_floor " + s + note);
}

std::vector<std::pair<std::string, std::string>> read_dir(const std::filesystem::path& dir) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream b;
        b << in.rdbuf();
        out.emplace_back(e.path().filename().string(), b.str());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Outcome determinism() {
    Check c;
    const auto root = std::filesystem::temp_directory_path() / ("fklab_acceptance_" + std::to_string(::getpid()));
    std::size_t files = 0;
    for (const auto& [name, desc] : list_scenarios()) {
        std::vector<std::vector<std::pair<std::string, std::string>>> runs;
        for (int run = 0; run < 3; ++run) {
            const auto dir = root / (name + "_" + std::to_string(run));
            auto cfg = ExperimentConfig::parse_string("scenario = " + name + "\nseed = 7\nout = " + dir.string() + "\n");
            run_experiment(cfg, run == 2 ? 8 : 1, true);
            runs.push_back(read_dir(dir));
        }
        c.expect(!runs[0].empty(), name + " wrote nothing");
        c.expect(runs[0] == runs[1], name + " differs between identical runs");
        c.expect(runs[0] == runs[2], name + " differs between jobs 1 and 8");
        files += runs[0].size();
    }
    std::filesystem::remove_all(root);
    return c.outcome(std::to_string(list_scenarios().size()) + " scenarios, " + std::to_string(files) +
                     " files byte-identical across repeats and jobs 1 / 8");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "triple-mixing identity", 10, triple_mixing},
        {2, "Kloosterman / Weil conformance", 60, kloosterman_weil},
        {3, "tower F-K decay", 300, tower_decay},
        {4, "power identity and independence", 30, power_lemma},
        {5, "positive correlations", 60, poscorr},
        {6, "hyperbola lemmas", 300, hyperbola_lemmas},
        {7, "patchwise reconstruction over Q", 10, reconstruction_q},
        {8, "reduced model over F_3(t)", 10, reduced_model_ft},
        {9, "PGL2 Q-sets, sections and ratios", 60, pgl2},
        {10, "Folner diagnostics", 120, folner_diagnostics},
        {11, "non-vanishing inverse series", 300, nonvanishing},
        {12, "determinism", 600, determinism},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > cr.limit_s) {
            o.ok = false;
            o.detail += "; over time limit " + fmt(cr.limit_s) + "s";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << cr.id << "] " << cr.name << ": " << o.detail << " (" << timing
                  << ")" << std::endl;
        failed += !o.ok;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
