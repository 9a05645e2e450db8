#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fklab/error.hpp"
#include "fklab/pgl2.hpp"

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

std::vector<FieldElement> elems(const FieldDescriptor& d, std::initializer_list<long> xs) {
    std::vector<FieldElement> v;
    for (long x : xs) v.push_back(FieldElement::from_int(d, x));
    return v;
}

std::vector<FieldElement> sorted_unique(std::vector<FieldElement> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<FieldElement> shift(const std::vector<FieldElement>& A, const FieldElement& b) {
    std::vector<FieldElement> out;
    for (const auto& a : A) out.push_back(a + b);
    return sorted_unique(out);
}

std::vector<FieldElement> inverse_closed(const FieldDescriptor& d, std::mt19937_64& rng) {
    const auto all = enumerate_finite(d);
    std::vector<FieldElement> A;
    for (std::size_t i = 1; i < all.size(); ++i)
        if (rng() % 2 == 0) {
            A.push_back(all[i]);
            A.push_back(all[i].inv());
        }
    return sorted_unique(A);
}

}  // namespace

TEST(Pgl2, NormalizationAndAction) {
    const auto d = FieldDescriptor::finite(7, 1);
    const auto g = Pgl2Element(FieldElement::from_int(d, 2), FieldElement::from_int(d, 4), FieldElement::from_int(d, 0),
                               FieldElement::from_int(d, 2));
    EXPECT_EQ(g, Pgl2Element::u_plus(FieldElement::from_int(d, 2)));
    const auto p = ProjPoint::affine(FieldElement::from_int(d, 3));
    EXPECT_EQ(g.act(p), ProjPoint::affine(FieldElement::from_int(d, 5)));
    EXPECT_EQ(g.act(ProjPoint::infinity(d)), ProjPoint::infinity(d));
    const auto m = Pgl2Element::u_minus(FieldElement::from_int(d, 1));
    // x / (x + 1) at x = -1 is infinity
    EXPECT_TRUE(m.act(ProjPoint::affine(FieldElement::from_int(d, 6))).is_infinity());
    EXPECT_EQ((g * m).act(p), g.act(m.act(p)));
    EXPECT_THROW(Pgl2Element(FieldElement::one(d), FieldElement::one(d), FieldElement::one(d), FieldElement::one(d)),
                 Error);
}

TEST(Pgl2, FrameMapSendsStandardFrame) {
    const auto d = FieldDescriptor::finite(11, 1);
    const auto fr = standard_frame(d);
    const auto all = enumerate_finite(d);
    for (std::size_t i = 0; i < all.size(); i += 3)
        for (std::size_t j = 0; j < all.size(); j += 2)
            for (std::size_t k = 1; k < all.size(); k += 4) {
                if (i == j || j == k || i == k) continue;
                const auto g = frame_map(all[i], all[j], all[k]);
                EXPECT_EQ(g.act(fr[0]), ProjPoint::affine(all[i]));
                EXPECT_EQ(g.act(fr[1]), ProjPoint::affine(all[j]));
                EXPECT_EQ(g.act(fr[2]), ProjPoint::affine(all[k]));
            }
}

TEST(QSet, SizesAndAction) {
    const auto d = FieldDescriptor::finite(7, 1);
    const auto fr = standard_frame(d);
    for (auto A : {elems(d, {0, 1, 2}), elems(d, {1, 2, 3, 5}), elems(d, {0, 1, 2, 4, 6})}) {
        const auto Qs = q_set(A);
        EXPECT_EQ(mpz_class(Qs.size()), q_set_size(A.size()));
        std::set<std::array<FieldElement, 3>> images;
        for (const auto& g : Qs) {
            std::array<FieldElement, 3> img;
            for (int i = 0; i < 3; ++i) {
                const auto v = g.act(fr[i]);
                ASSERT_FALSE(v.is_infinity());
                EXPECT_TRUE(std::binary_search(A.begin(), A.end(), v.x()));
                img[i] = v.x();
            }
            images.insert(img);
        }
        // free and transitive on ordered triples
        EXPECT_EQ(images.size(), Qs.size());
    }
    EXPECT_EQ(q_set_size(4), 24);
    EXPECT_EQ(q_set_size(5), 60);
    EXPECT_EQ(code_of([&] { q_set(elems(d, {1, 2})); }), ErrorCode::TooSmall);
}

TEST(QSet, IntersectionIsMonotone) {
    const auto d = FieldDescriptor::finite(7, 1);
    const auto A = elems(d, {0, 1, 2, 3, 5}), B = elems(d, {1, 2, 3, 4, 6});
    std::vector<FieldElement> AB;
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(AB));
    const auto QA = q_set(A), QB = q_set(B), QAB = q_set(AB);
    Pgl2Set inter;
    for (const auto& g : QA)
        if (QB.count(g)) inter.insert(g);
    EXPECT_EQ(inter, QAB);
}

TEST(Translate, Examples) {
    const auto d = FieldDescriptor::finite(7, 1);
    const auto A = elems(d, {0, 1, 2});
    const auto b = FieldElement::from_int(d, 3);
    const auto r = translate_identity_check(A, b);
    EXPECT_TRUE(r.plus_equal);
    EXPECT_TRUE(r.minus_contains);
    // u+(b) Q(A) = Q({3, 4, 5})
    Pgl2Set moved;
    for (const auto& g : q_set(A)) moved.insert(Pgl2Element::u_plus(b) * g);
    EXPECT_EQ(moved, q_set(elems(d, {3, 4, 5})));

    const std::vector<FieldElement> R{Q(1), Q(2), Q(1, 2)};
    EXPECT_TRUE(translate_identity_check(R, Q(1)).ok());
    // phi_1(x) = x / (1 + x)
    EXPECT_EQ(phi_b_image(Q(1), R), sorted_unique({Q(1, 2), Q(2, 3), Q(1, 3)}));
    EXPECT_EQ(phi_b(Q(0), Q(5)), Q(5));
    EXPECT_TRUE(translate_identity_check(R, Q(0)).ok());
}

TEST(Translate, PhiImageDropsPole) {
    const auto d = FieldDescriptor::finite(5, 1);
    const auto A = elems(d, {1, 2, 4});
    // -1/b for b = 1 is 4
    EXPECT_EQ(phi_b_image(FieldElement::one(d), A).size(), 2u);
}

TEST(Section, Examples) {
    const auto d = FieldDescriptor::finite(7, 1);
    const auto Fstar = elems(d, {1, 2, 3, 4, 5, 6});
    for (long b = 1; b < 7; ++b) {
        const auto s = inversion_section_check(Fstar, FieldElement::from_int(d, b));
        EXPECT_TRUE(s.equal);
        EXPECT_EQ(s.lhs, 5u);
    }
    const auto s = inversion_section_check({Q(1), Q(-1)}, Q(2));
    EXPECT_EQ(s.lhs, 1u);
    EXPECT_EQ(s.rhs, 1u);
    EXPECT_TRUE(s.equal);
    EXPECT_EQ(code_of([] { inversion_section_check({Q(2)}, Q(1)); }), ErrorCode::NotInverseClosed);
}

TEST(Section, RandomInverseClosedSets) {
    std::mt19937_64 rng(21);
    for (auto [p, n] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}}) {
        const auto d = FieldDescriptor::finite(p, n);
        for (int trial = 0; trial < 100; ++trial) {
            const auto A = inverse_closed(d, rng);
            const FieldElement b(d, 1 + rng() % (d.ff().order() - 1));
            const auto s = inversion_section_check(A, b);
            // direct count of both sides
            const auto img = phi_b_image(b, A);
            std::size_t lhs = 0, rhs = 0;
            for (const auto& x : img) lhs += std::binary_search(A.begin(), A.end(), x);
            const auto Ab = shift(A, b);
            for (const auto& x : A) rhs += !x.is_zero() && std::binary_search(Ab.begin(), Ab.end(), x);
            EXPECT_EQ(s.lhs, lhs);
            EXPECT_EQ(s.rhs, rhs);
            EXPECT_TRUE(s.equal);
            if (A.size() >= 3 && A.size() <= 7) {
                EXPECT_EQ(mpz_class(q_set(A).size()), q_set_size(A.size()));
                EXPECT_TRUE(translate_identity_check(A, b).ok());
            }
        }
    }
}

TEST(Section, RationalInverseClosed) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> num(1, 20);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<FieldElement> A;
        for (int i = 0; i < 4; ++i) {
            const FieldElement x(mpq_class(num(rng) * (rng() % 2 ? 1 : -1), static_cast<unsigned long>(num(rng))));
            A.push_back(x);
            A.push_back(x.inv());
        }
        A = sorted_unique(A);
        const FieldElement b(mpq_class(num(rng), static_cast<unsigned long>(num(rng))));
        EXPECT_TRUE(inversion_section_check(A, b).equal);
        if (A.size() <= 7) EXPECT_TRUE(translate_identity_check(A, b).ok());
    }
}

TEST(Ratio, SubfieldTower) {
    const auto top = FieldDescriptor::finite(2, 4);
    const auto& F = top.ff();
    for (unsigned m : {2u, 4u}) {
        std::vector<FieldElement> sub;
        for (FiniteField::Elem x = 0; x < F.order(); ++x)
            if (F.in_subfield(x, m)) sub.emplace_back(top, x);
        ASSERT_EQ(sub.size(), 1u << m);
        for (const auto& b : sub) {
            if (b.is_zero()) continue;
            EXPECT_EQ(pgl2_folner_ratio(sub, b, Generator::Plus, 40, RatioSupport::AsGiven).ratio, 1);
        }
    }
    const auto all = enumerate_finite(top);
    const FieldElement one = FieldElement::one(top);
    EXPECT_EQ(pgl2_folner_ratio(all, one, Generator::Plus, 40, RatioSupport::AsGiven).ratio, 1);
    EXPECT_EQ(pgl2_folner_ratio(all, one, Generator::Plus).ratio, mpq_class(4, 5));
    const auto minus = pgl2_folner_ratio(all, one, Generator::Minus, 40, RatioSupport::AsGiven);
    ASSERT_TRUE(minus.true_ratio.has_value());
    EXPECT_LE(minus.ratio, *minus.true_ratio);
}

TEST(Ratio, SymmetricSupportFormula) {
    for (auto [p, n] : {std::pair{2u, 3u}, {3u, 2u}, {7u, 1u}, {2u, 5u}}) {
        const auto d = FieldDescriptor::finite(p, n);
        const auto all = enumerate_finite(d);
        const auto q = static_cast<long>(d.ff().order());
        const auto r = pgl2_folner_ratio(all, FieldElement::one(d), Generator::Plus);
        // A = F*, A n (A + b) = F* \ {b}: (q-2)(q-3)(q-4) / ((q-1)(q-2)(q-3))
        EXPECT_EQ(r.ratio, mpq_class(q - 4) / (q - 1)) << d.to_string();
    }
}

TEST(Ratio, MinusBoundBelowTrueRatio) {
    const auto d = FieldDescriptor::finite(7, 1);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<FieldElement> F;
        for (long x = 1; x < 7; ++x)
            if (rng() % 3) F.push_back(FieldElement::from_int(d, x));
        if (symmetric_support(F).size() < 3) continue;
        const auto r = pgl2_folner_ratio(F, FieldElement::from_int(d, 2), Generator::Minus);
        ASSERT_TRUE(r.true_ratio.has_value());
        EXPECT_LE(r.ratio, *r.true_ratio);
    }
}
