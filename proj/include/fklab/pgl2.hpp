#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "fklab/field.hpp"

namespace fklab {

/// [x : y] normalized to y = 1, or [1 : 0] for infinity.
class ProjPoint {
public:
    ProjPoint(FieldElement x, FieldElement y);
    static ProjPoint affine(const FieldElement& x) { return ProjPoint(x, FieldElement::one(x.descriptor())); }
    static ProjPoint infinity(const FieldDescriptor& d) { return ProjPoint(FieldElement::one(d), FieldElement::zero(d)); }

    bool is_infinity() const noexcept { return y_.is_zero(); }
    const FieldElement& x() const noexcept { return x_; }
    const FieldElement& y() const noexcept { return y_; }
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) noexcept { return a.x_ == b.x_ && a.y_ == b.y_; }
    std::string to_string() const;

private:
    FieldElement x_, y_;
};

/// 2x2 invertible matrix up to scalars, normalized so the first nonzero entry (a, b, c, d order) is 1.
class Pgl2Element {
public:
    Pgl2Element(FieldElement a, FieldElement b, FieldElement c, FieldElement d);
    static Pgl2Element u_plus(const FieldElement& b);    // [[1, b], [0, 1]]
    static Pgl2Element u_minus(const FieldElement& b);   // [[1, 0], [b, 1]]

    const std::array<FieldElement, 4>& entries() const noexcept { return m_; }
    ProjPoint act(const ProjPoint& v) const;
    friend Pgl2Element operator*(const Pgl2Element& g, const Pgl2Element& h);
    friend bool operator==(const Pgl2Element& a, const Pgl2Element& b) noexcept { return a.m_ == b.m_; }
    friend bool operator<(const Pgl2Element& a, const Pgl2Element& b) noexcept { return a.m_ < b.m_; }
    std::size_t hash() const noexcept;
    std::string to_string() const;

private:
    std::array<FieldElement, 4> m_;
};

struct Pgl2Hash {
    std::size_t operator()(const Pgl2Element& g) const noexcept { return g.hash(); }
};
using Pgl2Set = std::unordered_set<Pgl2Element, Pgl2Hash>;

/// l1 = [1:0], l2 = [0:1], l3 = [1:1]
std::array<ProjPoint, 3> standard_frame(const FieldDescriptor& d);

/// The unique [g] with g l1 = x1, g l2 = x2, g l3 = x3 for distinct affine x's.
Pgl2Element frame_map(const FieldElement& x1, const FieldElement& x2, const FieldElement& x3);

/// Q(A): all [g] sending (l1, l2, l3) to an ordered triple of distinct points of iota(A).
/// Throws TooSmall for |A| < 3.
Pgl2Set q_set(const std::vector<FieldElement>& A);
/// |A| (|A| - 1) (|A| - 2)
mpz_class q_set_size(std::size_t n);

/// phi_b(x) = x / (1 + b x)
FieldElement phi_b(const FieldElement& b, const FieldElement& x);
/// phi_b(A \ {-1/b}), sorted and deduplicated.
std::vector<FieldElement> phi_b_image(const FieldElement& b, const std::vector<FieldElement>& A);

struct TranslateCheck {
    bool plus_equal = false;      // u+(b) Q(A) == Q(A + b)
    bool minus_contains = false;  // u-(b) Q(A) contains Q(phi_b(A \ {-1/b}))
    bool ok() const noexcept { return plus_equal && minus_contains; }
};
TranslateCheck translate_identity_check(const std::vector<FieldElement>& A, const FieldElement& b);

struct SectionCheck {
    std::size_t lhs = 0, rhs = 0;
    bool equal = false;
};
/// lhs = |A n phi_b(A \ {-1/b})|, rhs = |(A \ {0}) n (A + b)|; throws NotInverseClosed unless A = A^{-1}.
SectionCheck inversion_section_check(const std::vector<FieldElement>& A, const FieldElement& b);

/// A = (F \ {0}) u (F \ {0})^{-1}
std::vector<FieldElement> symmetric_support(const std::vector<FieldElement>& F);

enum class Generator { Plus, Minus };
/// Symmetric: A = (F \ {0}) u (F \ {0})^{-1}. AsGiven: A = F (for a subfield F, A + b = A).
enum class RatioSupport { Symmetric, AsGiven };
struct FolnerRatio {
    mpq_class ratio;                       // plus: |Q(A n (A+b))|/|Q(A)|; minus: |Q(A n phi_b(A))|/|Q(A)|, a lower bound
    std::optional<mpq_class> true_ratio;   // minus: |Q(A) n u-(b)Q(A)| / |Q(A)| by explicit sets, when small
};
/// Ratio for A built from F; explicit Q-sets are used for the comparison when |A| <= explicit_limit.
FolnerRatio pgl2_folner_ratio(const std::vector<FieldElement>& F, const FieldElement& b, Generator gen,
                              std::size_t explicit_limit = 40, RatioSupport support = RatioSupport::Symmetric);

}  // namespace fklab
