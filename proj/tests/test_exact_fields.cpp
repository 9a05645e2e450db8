#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "fklab/error.hpp"
#include "fklab/field.hpp"
#include "fklab/finite_field.hpp"
#include "fklab/function_field.hpp"
#include "fklab/literals.hpp"
#include "fklab/modarith.hpp"
#include "fklab/modulus_registry.hpp"
#include "fklab/tower.hpp"

using namespace fklab;

namespace {

PolyFp P(std::uint32_t p, std::vector<std::uint32_t> c) { return PolyFp(p, std::move(c)); }

FieldElement rf(std::uint32_t p, const std::string& s) { return parse_element(FieldDescriptor::function_field(p), s); }

}  // namespace

TEST(Modarith, PrimesAndInverses) {
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(65537));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(91));
    EXPECT_EQ(prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
    for (std::uint32_t a = 1; a < 101; ++a) EXPECT_EQ(mul_mod(a, inv_mod(a, 101), 101), 1u);
    EXPECT_THROW(inv_mod(0, 7), Error);
    EXPECT_EQ(divisors(12), (std::vector<unsigned>{1, 2, 3, 4, 6, 12}));
}

TEST(PolyFp, DivmodReconstructs) {
    std::mt19937_64 rng(5);
    for (std::uint32_t p : {2u, 3u, 7u}) {
        std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::uint32_t> a(9), b(4);
            for (auto& x : a) x = c(rng);
            for (auto& x : b) x = c(rng);
            b.back() = 1;
            const PolyFp A(p, a), B(p, b);
            const auto [q, r] = A.divmod(B);
            EXPECT_EQ(q * B + r, A);
            EXPECT_LT(r.degree(), B.degree());
        }
    }
}

TEST(PolyFp, IrreducibleCounts) {
    // Gauss: number of monic irreducibles of degree n is (1/n) sum_{d|n} mu(d) p^{n/d}
    EXPECT_EQ(monic_irreducibles(2, 4).size(), 3u);
    EXPECT_EQ(monic_irreducibles(3, 2).size(), 3u);
    EXPECT_EQ(monic_irreducibles(2, 6).size(), 9u);
    EXPECT_FALSE(is_irreducible(P(2, {1, 0, 1})));
    EXPECT_TRUE(is_primitive(P(2, {1, 1, 0, 0, 1})));
    EXPECT_FALSE(is_primitive(P(2, {1, 1, 1, 1, 1})));   // irreducible of order 5
}

TEST(Moduli, FrozenConwayPolynomials) {
    auto& reg = ModulusRegistry::global();
    EXPECT_EQ(reg.modulus(7, 1), P(7, {4, 1}));
    EXPECT_EQ(reg.modulus(2, 2), P(2, {1, 1, 1}));
    EXPECT_EQ(reg.modulus(2, 4), P(2, {1, 1, 0, 0, 1}));
    EXPECT_EQ(reg.modulus(2, 8), P(2, {1, 0, 1, 1, 1, 0, 0, 0, 1}));
    EXPECT_EQ(reg.modulus(3, 2), P(3, {2, 2, 1}));
    EXPECT_EQ(reg.modulus(5, 2), P(5, {2, 4, 1}));
    EXPECT_EQ(reg.modulus(7, 2), P(7, {3, 6, 1}));
    EXPECT_EQ(reg.modulus(3, 3), P(3, {1, 2, 0, 1}));
    EXPECT_EQ(reg.modulus(2, 6), P(2, {1, 1, 0, 1, 1, 0, 1}));
    EXPECT_EQ(reg.modulus(3, 4), P(3, {2, 0, 0, 2, 1}));
    EXPECT_EQ(reg.modulus(5, 3), P(5, {3, 3, 0, 1}));
    EXPECT_EQ(reg.modulus(2, 16), P(2, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
}

TEST(Moduli, RegistryTextRoundTrip) {
    std::istringstream in("# comment\n\n2 3 : 1 0 1 1\n");
    ModulusRegistry reg;
    reg.load(in);
    EXPECT_EQ(reg.modulus(2, 3), P(2, {1, 0, 1, 1}));
    std::ostringstream out;
    reg.save(out);
    EXPECT_EQ(out.str(), "2 3 : 1 0 1 1\n");
    std::istringstream bad("2 2 : 1 0 1\n");   // x^2 + 1 = (x + 1)^2
    EXPECT_THROW(reg.load(bad), Error);
}

TEST(FiniteField, TableProductMatchesPolynomialProduct) {
    for (auto [p, n] : {std::pair{2u, 4u}, {3u, 3u}, {5u, 2u}, {7u, 1u}, {2u, 8u}}) {
        const auto F = FiniteField::get(p, n);
        const std::uint32_t q = F->order();
        for (std::uint32_t a = 0; a < q; a += (q > 64 ? 7 : 1))
            for (std::uint32_t b = 0; b < q; b += (q > 64 ? 5 : 1))
                ASSERT_EQ(F->mul(a, b), F->from_poly((F->to_poly(a) * F->to_poly(b)) % F->modulus())) << p << "^" << n;
    }
}

TEST(FiniteField, TraceTableMatchesConjugates) {
    for (auto [p, n] : {std::pair{2u, 4u}, {3u, 4u}, {2u, 6u}, {5u, 3u}}) {
        const auto F = FiniteField::get(p, n);
        for (std::uint32_t a = 0; a < F->order(); ++a) ASSERT_EQ(F->trace(a), F->trace_by_conjugates(a));
    }
}

TEST(FiniteField, EnumerationOrderAndGenerator) {
    const auto F2 = enumerate_finite(FieldDescriptor::finite(2, 1));
    ASSERT_EQ(F2.size(), 2u);
    EXPECT_TRUE(F2[0].is_zero());
    EXPECT_TRUE(F2[1].is_one());
    const auto d9 = FieldDescriptor::finite(3, 2);
    const auto F9 = enumerate_finite(d9);
    EXPECT_EQ(F9.size(), 9u);
    // multiplicative order of the generator by repeated multiplication
    const FieldElement g(d9, d9.ff().generator());
    FieldElement x = g;
    unsigned order = 1;
    while (!x.is_one()) {
        x = x * g;
        ++order;
    }
    EXPECT_EQ(order, 8u);
    const auto d4 = FieldDescriptor::finite(2, 2);
    std::set<FiniteField::Elem> cyc;
    FieldElement h(d4, d4.ff().generator());
    for (int i = 0; i < 3; ++i) cyc.insert(h.pow(i).code());
    EXPECT_EQ(cyc.size(), 3u);
}

TEST(FiniteField, EnumerationCap) {
    const auto saved = enumeration_cap();
    set_enumeration_cap(100);
    EXPECT_THROW(enumerate_finite(FieldDescriptor::finite(2, 8)), Error);
    set_enumeration_cap(saved);
    EXPECT_EQ(enumerate_finite(FieldDescriptor::finite(2, 8)).size(), 256u);
}

TEST(FiniteField, InverseOfGCubedInF8) {
    const auto d = FieldDescriptor::finite(2, 3);
    const FieldElement g(d, d.ff().generator());
    const FieldElement x = g.pow(3);
    // oracle: scan F_8^* for y with x y = 1
    FieldElement y;
    for (const auto& c : enumerate_finite(d))
        if ((x * c).is_one()) y = c;
    EXPECT_EQ(x.inv(), y);
    EXPECT_EQ(y, g.pow(4));
}

TEST(FiniteField, TraceExamples) {
    const auto d4 = FieldDescriptor::finite(2, 2);
    EXPECT_TRUE(trace(FieldElement::zero(d4)).is_zero());
    EXPECT_TRUE(trace(FieldElement::one(d4)).is_zero());
    const FieldElement g(d4, d4.ff().generator());
    EXPECT_EQ(trace(g).code(), (g + g * g).code());
    EXPECT_TRUE(trace(g).is_one());
}

TEST(FiniteField, TraceIsLinear) {
    const auto F = FiniteField::get(3, 3);
    for (std::uint32_t a = 0; a < F->order(); ++a)
        for (std::uint32_t b = 0; b < F->order(); b += 4)
            ASSERT_EQ(F->trace(F->add(a, b)), add_mod(F->trace(a), F->trace(b), 3));
}

TEST(FieldElement, RationalArithmetic) {
    const FieldElement two(mpq_class(2));
    EXPECT_EQ(two.inv(), FieldElement(mpq_class(1, 2)));
    EXPECT_EQ(two.pow(-3), FieldElement(mpq_class(1, 8)));
    EXPECT_THROW(FieldElement(mpq_class(0)).inv(), Error);
    EXPECT_EQ(FieldElement(mpq_class(6, -4)).rational().get_den(), 2);
}

TEST(FieldElement, FunctionFieldArithmetic) {
    const FieldElement x = rf(3, "t+1");
    const FieldElement y = x.pow(-1);
    EXPECT_EQ(y, rf(3, "1/(t+1)"));
    EXPECT_TRUE((x * y).is_one());
    // monic denominator: 1/(2t+2) = 2/(t+1)
    const FieldElement z = rf(3, "1/(2*t+2)");
    EXPECT_TRUE(z.ratfunc().den().is_monic());
    EXPECT_EQ(z, rf(3, "2/(t+1)"));
}

TEST(FieldElement, DescriptorMismatch) {
    const FieldElement a(FieldDescriptor::finite(2, 2), 1), b(FieldDescriptor::finite(3, 1), 1);
    try {
        (void)(a + b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DescriptorMismatch);
    }
}

TEST(FieldElement, PthRootExamples) {
    EXPECT_EQ(rf(3, "t^3").pth_root(), rf(3, "t"));
    try {
        (void)rf(3, "t").pth_root();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAPthPower);
    }
    EXPECT_EQ(rf(3, "t^6+2*t^3").pth_root(), rf(3, "t^2+2*t"));
    // oracle: cube symbolically
    EXPECT_EQ(rf(3, "t^2+2*t").pow(3), rf(3, "t^6+2*t^3"));
}

TEST(FieldElement, PthRootOfPthPowerIsIdentity) {
    std::mt19937_64 rng(17);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto d = FieldDescriptor::function_field(p);
        for (int trial = 0; trial < 30; ++trial) {
            std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
            std::vector<std::uint32_t> n(4), m(3);
            for (auto& v : n) v = c(rng);
            for (auto& v : m) v = c(rng);
            m.back() = 1;
            const FieldElement x(p, RatFunc(PolyFp(p, n), PolyFp(p, m)));
            EXPECT_EQ(x.pow(p).pth_root(), x);
        }
        const auto f = FieldDescriptor::finite(p, 3);
        for (const auto& x : enumerate_finite(f)) ASSERT_EQ(x.pow(p).pth_root(), x);
    }
}

TEST(FieldElement, AxiomsOnRandomTriples) {
    std::mt19937_64 rng(99);
    const std::vector<FieldDescriptor> ds{FieldDescriptor::rational(), FieldDescriptor::finite(3, 3),
                                          FieldDescriptor::function_field(2)};
    auto random_elem = [&](const FieldDescriptor& d) {
        if (d.is_rational()) {
            std::uniform_int_distribution<long> a(-50, 50), b(1, 50);
            return FieldElement(mpq_class(a(rng), static_cast<unsigned long>(b(rng))));
        }
        if (d.is_finite()) return FieldElement(d, static_cast<FiniteField::Elem>(rng() % d.ff().order()));
        std::vector<std::uint32_t> n(3), m(2);
        for (auto& v : n) v = static_cast<std::uint32_t>(rng() % 2);
        m = {static_cast<std::uint32_t>(rng() % 2), 1};
        return FieldElement(2, RatFunc(PolyFp(2, n), PolyFp(2, m)));
    };
    for (const auto& d : ds) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto x = random_elem(d), y = random_elem(d), z = random_elem(d);
            EXPECT_EQ((x + y) + z, x + (y + z));
            EXPECT_EQ((x * y) * z, x * (y * z));
            EXPECT_EQ(x * (y + z), x * y + x * z);
            EXPECT_EQ(x + y, y + x);
            EXPECT_TRUE((x - x).is_zero());
            if (!x.is_zero()) {
                EXPECT_TRUE((x * x.inv()).is_one());
            }
        }
    }
}

TEST(Tower, MatrixRouteMatchesLogRoute) {
    for (auto [p, m, n] : {std::tuple{2u, 2u, 4u}, {2u, 4u, 8u}, {3u, 1u, 2u}, {2u, 1u, 4u}, {2u, 8u, 16u}, {3u, 2u, 4u}}) {
        const TowerMap phi = TowerMap::between(p, m, n);
        for (std::uint32_t a = 0; a < phi.source()->order(); ++a) ASSERT_EQ(phi(a), phi.apply_matrix(a));
    }
}

TEST(Tower, RespectsArithmeticAndComposes) {
    const TowerMap phi = TowerMap::between(2, 2, 4), psi = TowerMap::between(2, 4, 8);
    const auto& S = *phi.source();
    const auto& T = *phi.target();
    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = 0; b < 4; ++b) {
            EXPECT_EQ(phi(S.mul(a, b)), T.mul(phi(a), phi(b)));
            EXPECT_EQ(phi(S.add(a, b)), T.add(phi(a), phi(b)));
        }
    const TowerMap direct = TowerMap::between(2, 2, 8);
    const TowerMap chain = phi.then(psi);
    for (std::uint32_t a = 0; a < 4; ++a) {
        EXPECT_EQ(chain(a), psi(phi(a)));
        EXPECT_EQ(chain(a), direct(a));
        EXPECT_EQ(phi.preimage(phi(a)), a);
        EXPECT_TRUE(T.in_subfield(phi(a), 2));
    }
    EXPECT_EQ(phi(1), 1u);
}

TEST(FunctionField, ResidueByDivisionMatchesRemainder) {
    std::mt19937_64 rng(3);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<std::uint32_t> n(1 + rng() % 6), m(1 + rng() % 5);
            for (auto& v : n) v = c(rng);
            for (auto& v : m) v = c(rng);
            m.back() = 1;
            const RatFunc f(PolyFp(p, n), PolyFp(p, m));
            const unsigned depth = static_cast<unsigned>(std::max(0, f.num().degree()) + std::max(0, f.den().degree()) + 2);
            EXPECT_EQ(residue_coefficient(f, depth), residue_coefficient_by_remainder(f)) << f.to_string();
        }
    }
    EXPECT_EQ(residue_coefficient(RatFunc(PolyFp::constant(3, 1), PolyFp::monomial(3, 1)), 4), 1u);
    try {
        (void)residue_coefficient(RatFunc(PolyFp::monomial(3, 3), PolyFp(3, {1, 0, 0, 1})), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DepthInsufficient);
    }
}

TEST(FunctionField, LaurentExpansionOfGeometricSeries) {
    // 1/(t - 1) = t^{-1} + t^{-2} + ...
    const RatFunc f(PolyFp::constant(5, 1), PolyFp(5, {4, 1}));
    const auto L = laurent_at_infinity(f, 6);
    EXPECT_EQ(L.top, -1);
    for (auto c : L.coeffs) EXPECT_EQ(c, 1u);
}

TEST(Literals, FieldsElementsAndErrors) {
    EXPECT_EQ(parse_field("Q").to_string(), "Q");
    EXPECT_EQ(parse_field("F_2^4"), FieldDescriptor::finite(2, 4));
    EXPECT_EQ(parse_field("F_3(t)"), FieldDescriptor::function_field(3));
    EXPECT_EQ(parse_element(FieldDescriptor::rational(), "3/4 - 1/4"), FieldElement(mpq_class(1, 2)));
    const auto d = FieldDescriptor::finite(2, 4);
    EXPECT_EQ(parse_element(d, "x^4"), parse_element(d, "x+1"));
    EXPECT_EQ(parse_element(d, "#2"), FieldElement(d, 2));
    EXPECT_EQ(parse_element(d, "g"), FieldElement(d, d.ff().generator()));
    for (const char* bad : {"F_4", "F_2^", "R"}) EXPECT_THROW(parse_field(bad), Error);
    EXPECT_THROW(parse_element(FieldDescriptor::rational(), "1/"), Error);
    EXPECT_THROW(parse_recipe("tower:p=2:sched=1,2,3"), Error);
    EXPECT_THROW(parse_recipe("boxes:R=3"), Error);
}
