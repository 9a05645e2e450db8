#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fklab/field.hpp"

namespace fklab {

/// Finitely supported probability measure: distinct elements with positive rational
/// weights summing to exactly 1, kept in element order.
class WeightedSet {
public:
    struct Entry {
        FieldElement x;
        mpq_class w;
    };

    /// Merges duplicate points by adding weights; throws BadWeight unless weights are positive with total 1.
    WeightedSet(FieldDescriptor d, std::vector<Entry> entries);
    static WeightedSet uniform(FieldDescriptor d, std::vector<FieldElement> xs);

    const FieldDescriptor& descriptor() const noexcept { return desc_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    /// Weight of x (0 off the support).
    mpq_class weight(const FieldElement& x) const;
    bool contains(const FieldElement& x) const;
    mpq_class mass_of_zero() const;
    bool is_uniform() const noexcept { return uniform_; }

    /// Support minus 0, renormalized; throws EmptyAfterDrop when nothing is left.
    WeightedSet without_zero() const;

private:
    FieldDescriptor desc_;
    std::vector<Entry> entries_;
    bool uniform_ = false;
};

class FolnerRecipe {
public:
    enum class Kind { SubfieldTower, AdditiveBox, DilatedBoxAverage };

    /// Nested subfields F_{p^{n_1}} c F_{p^{n_2}} c ... inside F_{p^{n_last}}.
    static FolnerRecipe tower(std::uint32_t p, std::vector<unsigned> schedule);
    /// {j/d : 1 <= |j| <= R} over Q, or {g/d : g != 0, deg g < R} over F_p(t).
    static FolnerRecipe addbox(const FieldDescriptor& field, const FieldElement& d, std::int64_t R);
    /// Average over u in U of the uniform measure on u * (addbox support); U is the exponent box
    /// {prod pi^{e_pi} : |e_pi| <= E} over primes pi <= P (Q) or monic irreducibles of degree <= P (F_p(t)).
    /// d must be prod pi^E; pass nullopt to have it computed.
    static FolnerRecipe dilbox(const FieldDescriptor& field, unsigned P, unsigned E, std::optional<FieldElement> d,
                               std::int64_t R);

    Kind kind() const noexcept { return kind_; }
    /// Field the realized sets live in (the top of the schedule for towers).
    const FieldDescriptor& descriptor() const noexcept { return desc_; }
    const std::vector<unsigned>& schedule() const noexcept { return sched_; }
    std::uint32_t p() const noexcept { return p_; }
    unsigned P() const noexcept { return P_; }
    unsigned E() const noexcept { return E_; }
    const FieldElement& d() const noexcept { return d_; }
    std::int64_t R() const noexcept { return R_; }
    /// Box range at index k: R * 2^{k-1} over Q, R + k - 1 over F_p(t).
    std::int64_t range_at(unsigned k) const;
    /// Largest valid index (schedule length for towers, unbounded otherwise).
    std::optional<unsigned> max_index() const;
    /// The multiplier set U (dilbox only), in element order.
    std::vector<FieldElement> multipliers() const;
    /// Degree of F_{p^{n_k}} (towers).
    unsigned degree_at(unsigned k) const;

    std::string to_string() const;

private:
    Kind kind_ = Kind::AdditiveBox;
    FieldDescriptor desc_;
    std::uint32_t p_ = 0;
    std::vector<unsigned> sched_;
    unsigned P_ = 0, E_ = 0;
    FieldElement d_;
    std::int64_t R_ = 0;
};

/// Index k is 1-based.
WeightedSet realize(const FolnerRecipe& recipe, unsigned k);

enum class DefectMode { Additive, Multiplicative, Inversion };
enum class ZeroPolicy { Reject, Drop };

/// Exact total-variation distance ||T mu - mu|| in [0, 2] for T = (x -> x + a), (x -> a x) or (x -> 1/x).
/// For the multiplicative and inversion modes, 0 in the support raises ZeroInSupport under
/// ZeroPolicy::Reject; under Drop the measure is first restricted to the nonzero part and renormalized.
mpq_class folner_defect(const WeightedSet& mu, const FieldElement& a, DefectMode mode,
                        ZeroPolicy zeros = ZeroPolicy::Reject);
/// Pushforward under x -> 1/x.
WeightedSet inverse_pushforward(const WeightedSet& mu, ZeroPolicy zeros = ZeroPolicy::Drop);

}  // namespace fklab
