#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fklab/error.hpp"
#include "fklab/reconstruct.hpp"

using namespace fklab;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

FieldElement Q(long a, unsigned long b = 1) { return FieldElement(mpq_class(a, b)); }

std::vector<FieldElement> sorted(std::vector<FieldElement> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// (-1)^{v_2(x)} computed by repeated halving.
FieldElement parity(const FieldElement& x) {
    mpz_class a = x.rational().get_num(), b = x.rational().get_den();
    int v = 0;
    while (a % 2 == 0) {
        a /= 2;
        ++v;
    }
    while (b % 2 == 0) {
        b /= 2;
        --v;
    }
    return Q(v % 2 == 0 ? 1 : -1);
}

std::vector<FieldElement> small_samples() {
    std::vector<FieldElement> s;
    for (long k = 1; k <= 10; ++k) {
        s.push_back(Q(k));
        s.push_back(Q(-k));
    }
    s.push_back(Q(1, 3));
    return s;
}

}  // namespace

TEST(Builtin, ExamplesSatisfyDefiningRelation) {
    EXPECT_EQ(builtin_examples(), (std::vector<std::string>{"identity", "q-parity-w"}));
    const auto samples = rational_sample_grid(200, 500, 1);
    for (const auto& name : builtin_examples())
        EXPECT_TRUE(defining_relation_exceptions(builtin_example(name), samples).empty()) << name;
    const auto d = builtin_example("q-parity-w");
    for (const auto& x : samples) EXPECT_EQ(d.rho(x), parity(x) * x);
    EXPECT_EQ(d.rho(Q(12)), Q(12));
    EXPECT_EQ(d.rho(Q(2)), Q(-2));
    EXPECT_EQ(d.rho(Q(3, 8)), Q(-3, 8));
    EXPECT_EQ(d.u(Q(-1)), Q(1));
    EXPECT_EQ(d.v(Q(-1)), Q(1));
    EXPECT_THROW(builtin_example("nope"), Error);
}

TEST(SampleGrid, DistinctNonzeroBoundedHeight) {
    const auto s = rational_sample_grid(200, 500, 7);
    EXPECT_EQ(s.size(), 500u);
    EXPECT_EQ(std::set<FieldElement>(s.begin(), s.end()).size(), 500u);
    for (const auto& x : s) {
        EXPECT_FALSE(x.is_zero());
        EXPECT_LE(abs(x.rational().get_num()), 200);
        EXPECT_LE(x.rational().get_den(), 200);
    }
    EXPECT_EQ(s, rational_sample_grid(200, 500, 7));
    EXPECT_EQ(all_pairs({Q(1), Q(2), Q(3)}).size(), 6u);
}

TEST(DeriveW, Examples) {
    const auto samples = small_samples();
    const auto dw = derive_w(builtin_example("q-parity-w"), samples);
    EXPECT_EQ(dw.w(Q(2)), Q(-1));
    EXPECT_EQ(dw.w(Q(3)), Q(1));
    EXPECT_EQ(dw.w(Q(1, 2)), Q(-1));
    EXPECT_EQ(dw.w(Q(4)), Q(1));
    EXPECT_EQ(dw.value_set, (std::vector<FieldElement>{Q(-1), Q(1)}));

    auto neg = builtin_example("q-parity-w");
    const auto u = neg.u;
    neg.v = [u](const FieldElement& x) { return -u(x) * parity(x); };
    const auto dn = derive_w(neg, samples);
    for (const auto& x : samples) EXPECT_EQ(dn.w(x), -parity(x));

    auto zero = builtin_example("identity");
    zero.u = [](const FieldElement& x) { return x == Q(5) ? Q(0) : Q(1); };
    EXPECT_EQ(code_of([&] { derive_w(zero, samples); }), ErrorCode::ZeroU);
}

TEST(Patchwise, CleanForBuiltin) {
    const auto samples = rational_sample_grid(200, 120, 3);
    const auto pairs = all_pairs(samples);
    const auto dw = derive_w(builtin_example("q-parity-w"), samples);
    const auto r = patchwise_exceptions(dw.w, GroupLaw::Multiplicative, samples, pairs);
    EXPECT_EQ(r.total_inverse(), 0u);
    EXPECT_EQ(r.total_product(), 0u);
    EXPECT_EQ(r.pair_count, pairs.size());
}

TEST(Patchwise, DefectIsLocalized) {
    auto samples = rational_sample_grid(30, 80, 9);
    for (const auto& extra : {Q(5), Q(1, 5), Q(1), Q(10), Q(1, 2)})
        if (std::find(samples.begin(), samples.end(), extra) == samples.end()) samples.push_back(extra);
    const auto pairs = all_pairs(samples);
    const FieldMap eta = [](const FieldElement& x) { return x == Q(5) ? Q(-1) : parity(x); };
    const auto r = patchwise_exceptions(eta, GroupLaw::Multiplicative, samples, pairs);
    EXPECT_EQ(sorted(r.inverse_exceptions), sorted({Q(1, 5), Q(5)}));
    SamplePairs expected;
    for (const auto& [x, y] : pairs)
        if (!(eta(x * y) == eta(x) * eta(y))) expected.push_back({x, y});
    EXPECT_EQ(r.product_exception_pairs, expected);
    EXPECT_FALSE(expected.empty());
    for (const auto& [x, y] : r.product_exception_pairs) EXPECT_TRUE(x == Q(5) || y == Q(5) || x * y == Q(5));
}

TEST(Patchwise, AdditiveLaw) {
    const auto samples = small_samples();
    const auto pairs = all_pairs(samples);
    const FieldMap id = [](const FieldElement& x) { return x; };
    const auto r = patchwise_exceptions(id, GroupLaw::Additive, samples, pairs);
    EXPECT_EQ(r.total_inverse() + r.total_product(), 0u);
    const FieldMap sq = [](const FieldElement& x) { return x * x; };
    EXPECT_GT(patchwise_exceptions(sq, GroupLaw::Additive, samples, pairs).total_product(), 0u);
}

TEST(Kappa, IdentityOnBuiltin) {
    const auto samples = rational_sample_grid(200, 150, 4);
    const auto pairs = all_pairs(samples);
    const auto data = builtin_example("q-parity-w");
    const auto dw = derive_w(data, samples);
    const auto k = build_kappa(data.rho, dw.w, samples, pairs);
    for (const auto& x : samples) EXPECT_EQ(k.kappa(x), x);
    EXPECT_EQ(k.kappa(Q(0)), Q(0));
    EXPECT_TRUE(k.additivity_violations.empty());
    EXPECT_TRUE(k.multiplicativity_violations.empty());
    EXPECT_TRUE(k.injective_on_samples());
}

TEST(Kappa, PerturbationIsLocalized) {
    const auto samples = small_samples();
    const auto pairs = all_pairs(samples);
    const FieldMap rho = [](const FieldElement& x) { return x == Q(7) ? Q(8) : x; };
    const FieldMap one = [](const FieldElement&) { return Q(1); };
    const auto k = build_kappa(rho, one, samples, pairs);
    EXPECT_FALSE(k.additivity_violations.empty());
    EXPECT_FALSE(k.multiplicativity_violations.empty());
    for (const auto& [x, y] : k.additivity_violations) EXPECT_TRUE(x == Q(7) || y == Q(7) || x + y == Q(7));
    for (const auto& [x, y] : k.multiplicativity_violations) EXPECT_TRUE(x == Q(7) || y == Q(7) || x * y == Q(7));
    // 7 = 3 + 4 is a sample pair
    EXPECT_NE(std::find(k.additivity_violations.begin(), k.additivity_violations.end(), std::pair{Q(3), Q(4)}),
              k.additivity_violations.end());
    // 8 = kappa(7) collides with kappa(8)
    EXPECT_FALSE(k.injective_on_samples());
}

TEST(Kappa, SquareCollides) {
    const auto samples = small_samples();
    const FieldMap sq = [](const FieldElement& x) { return x * x; };
    const FieldMap one = [](const FieldElement&) { return Q(1); };
    const auto k = build_kappa(sq, one, samples, all_pairs(samples));
    EXPECT_FALSE(k.injective_on_samples());
    for (const auto& [x, y] : k.collisions) EXPECT_EQ(x, -y);
    EXPECT_EQ(k.collisions.size() % 10, 0u);
}

TEST(UvRelations, BuiltinIsClean) {
    for (std::size_t n : {500u, 1000u}) {
        const auto r = verify_uv_relations(builtin_example("q-parity-w"), rational_sample_grid(200, n, 1));
        EXPECT_EQ(r.total(), 0u);
        EXPECT_TRUE(r.compat_u.empty());
        EXPECT_TRUE(r.compat_v.empty());
    }
}

TEST(UvRelations, CorruptedVIsReportedExactly) {
    auto data = builtin_example("q-parity-w");
    const auto v = data.v;
    data.v = [v](const FieldElement& x) { return x == Q(3) ? -v(x) : v(x); };
    const auto r = verify_uv_relations(data, small_samples());
    EXPECT_EQ(sorted(r.inverse), sorted({Q(3), Q(1, 3)}));
    EXPECT_EQ(sorted(r.negation), sorted({Q(3), Q(-3)}));
    EXPECT_EQ(sorted(r.compat_u), sorted({Q(2)}));
    EXPECT_EQ(sorted(r.compat_v), sorted({Q(3), Q(-4)}));
    EXPECT_EQ(sorted(r.compatibility()), sorted({Q(2), Q(3), Q(-4)}));
    EXPECT_EQ(r.total(), 7u);
}

TEST(MapTable, LoadLookupWrite) {
    MapTable t(FieldDescriptor::rational(), FieldDescriptor::rational());
    std::istringstream in("# comment\n1, 2\n1/2, -1\n\n-3, 7/4\n");
    t.load(in);
    EXPECT_EQ(t.size(), 3u);
    EXPECT_EQ(t(Q(1, 2)), Q(-1));
    EXPECT_EQ(t(Q(-3)), Q(7, 4));
    EXPECT_EQ(code_of([&] { t(Q(9)); }), ErrorCode::InvalidArgument);

    std::ostringstream out;
    MapTable::write(out, [&](const FieldElement& x) { return t(x); }, t.keys());
    MapTable back(FieldDescriptor::rational(), FieldDescriptor::rational());
    std::istringstream in2(out.str());
    back.load(in2);
    for (const auto& k : t.keys()) EXPECT_EQ(back(k), t(k));

    MapTable u(FieldDescriptor::rational(), FieldDescriptor::rational());
    std::istringstream bad("1; 2\n");
    EXPECT_THROW(u.load(bad), Error);
}

TEST(MapTable, TablesReproduceBuiltin) {
    const auto d = builtin_example("q-parity-w");
    const auto samples = small_samples();
    std::vector<FieldElement> pts = samples;
    for (const auto& x : samples) {
        pts.push_back(x + Q(1));
        pts.push_back(-Q(1) - x);
        pts.push_back(-x);
        pts.push_back(x.inv());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto table_of = [&](const FieldMap& f) {
        std::ostringstream o;
        MapTable::write(o, f, pts);
        MapTable m(FieldDescriptor::rational(), FieldDescriptor::rational());
        std::istringstream i(o.str());
        m.load(i);
        return m;
    };
    const auto data = data_from_tables("tabled", table_of(d.rho), table_of(d.u), table_of(d.v));
    EXPECT_TRUE(defining_relation_exceptions(data, samples).empty());
    EXPECT_EQ(verify_uv_relations(data, samples).total(), 0u);
}

TEST(ReducedModelSpec, Decomposition) {
    const auto s = ReducedModelSpec::decompose(3, {3, -6, 2});
    ASSERT_EQ(s.weights.size(), 3u);
    EXPECT_EQ(s.weights[0].l, 1u);
    EXPECT_EQ(s.weights[0].n, 1);
    EXPECT_EQ(s.weights[1].l, 1u);
    EXPECT_EQ(s.weights[1].n, -2);
    EXPECT_EQ(s.weights[2].l, 0u);
    EXPECT_EQ(s.weights[2].n, 2);
    const auto t = ReducedModelSpec::decompose(2, {2, 3, 12});
    EXPECT_EQ(t.weights[0].l, 1u);
    EXPECT_EQ(t.weights[1].l, 0u);
    EXPECT_EQ(t.weights[2].l, 2u);
    EXPECT_EQ(t.weights[2].n, 3);
    EXPECT_EQ(code_of([] { ReducedModelSpec::decompose(3, {0}); }), ErrorCode::BadWeight);
    EXPECT_EQ(code_of([] { ReducedModelSpec::decompose(3, {2, 2}); }), ErrorCode::BadWeight);
    EXPECT_EQ(code_of([] { ReducedModelSpec::explicit_weights(3, {{9, 1, 3}}); }), ErrorCode::BadWeight);
    EXPECT_EQ(code_of([] { ReducedModelSpec::explicit_weights(3, {{6, 1, 1}}); }), ErrorCode::BadWeight);
    EXPECT_NO_THROW(ReducedModelSpec::explicit_weights(3, {{9, 2, 1}}));
}

TEST(ReducedModel, PhiMatchesHandExpansion) {
    const ReducedModel M(ReducedModelSpec::decompose(3, {3, 2}));
    const auto x = M.random_vector(5);
    ASSERT_EQ(x.size(), 2u);
    ASSERT_EQ(x[0].size(), 3u);
    ASSERT_EQ(x[1].size(), 1u);
    const RatFunc t = RatFunc::t(3);
    const auto y = M.phi(x);
    EXPECT_EQ(y[0], x[0][0].pow(3) + x[0][1].pow(3) * t + x[0][2].pow(3) * t * t);
    EXPECT_EQ(y[1], x[1][0]);
}

TEST(ReducedModel, AdditiveEquivariantInvertible) {
    for (auto [p, w] : {std::pair{3u, std::vector<std::int64_t>{3, -6, 2}}, {2u, {2, 3}}, {5u, {5, -1}}}) {
        const ReducedModel M(ReducedModelSpec::decompose(p, w));
        for (std::uint64_t s = 0; s < 15; ++s) {
            const auto x = M.random_vector(2 * s + 1), z = M.random_vector(2 * s + 2);
            VVector sum = x;
            for (std::size_t j = 0; j < x.size(); ++j)
                for (std::size_t i = 0; i < x[j].size(); ++i) sum[j][i] = x[j][i] + z[j][i];
            const auto px = M.phi(x), pz = M.phi(z), ps = M.phi(sum);
            for (std::size_t j = 0; j < px.size(); ++j) EXPECT_EQ(ps[j], px[j] + pz[j]);
            EXPECT_EQ(M.phi_inverse(px), x);
            RatFunc a = random_ratfunc(p, 100 + s, 2, false);
            EXPECT_EQ(M.phi(M.act_v(a, x)), M.act_u(a, px));
        }
    }
}

TEST(ReducedModel, NonlinearWhenPDividesWeight) {
    const ReducedModel M(ReducedModelSpec::decompose(3, {3}));
    const RatFunc t = RatFunc::t(3), one = RatFunc::constant(3, 1);
    const VVector x{{one, one, one}};
    EXPECT_NE(M.phi(M.scalar_v(t, x)), M.scalar_u(t, M.phi(x)));
    const ReducedModel L(ReducedModelSpec::decompose(3, {2}));
    const VVector y{{one + t}};
    EXPECT_EQ(L.phi(L.scalar_v(t, y)), L.scalar_u(t, L.phi(y)));
}

TEST(ReducedModel, Report) {
    const auto r = reduced_model(ReducedModelSpec::decompose(3, {3, -6, 2}), 200, 1);
    EXPECT_EQ(r.samples, 200u);
    EXPECT_TRUE(r.has_nonlinear_component);
    EXPECT_TRUE(r.nonlinearity_witness_found);
    EXPECT_TRUE(r.ok());
    const auto lin = reduced_model(ReducedModelSpec::decompose(3, {1, 2}), 50, 1);
    EXPECT_FALSE(lin.has_nonlinear_component);
    EXPECT_TRUE(lin.ok());
}
