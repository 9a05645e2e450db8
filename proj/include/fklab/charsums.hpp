#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fklab/characters.hpp"
#include "fklab/folner.hpp"

namespace fklab {

/// eta(a) * prod_i xi_i(a^{n_i})
struct TwistSpec {
    MultiplicativeCharacter eta;
    std::vector<std::pair<AdditiveCharacter, std::int64_t>> factors;

    /// I = {i : n_i > 0}
    std::vector<std::size_t> positive_indices() const;
    /// n_i nonzero and, in characteristic p, not divisible by p; all characters on `d`.
    void validate(const FieldDescriptor& d) const;
    bool exact() const;
    std::string to_string() const;
};

struct SumTerm {
    unsigned k = 0;
    std::size_t support_size = 0;   // after dropping 0
    std::complex<double> value;
    bool exact = false;
    std::optional<UnitValue> exact_value;
    mpq_class zero_mass = 0;        // mass of 0 removed before renormalizing

    double abs() const { return std::abs(value); }
    /// The average without renormalization: value * (1 - zero_mass).
    std::complex<double> full_mass() const { return value * (1.0 - zero_mass.get_d()); }
};

struct SumSeries {
    std::vector<SumTerm> terms;
    std::string spec;
    std::string provenance;
    std::vector<std::pair<std::string, std::string>> metadata;

    /// Columns k,support_size,re,im,abs,exact with shortest round-trip floats.
    std::string to_csv() const;
};

/// sum_a mu(a) eta(a) prod xi_i(a^{n_i}) over the support minus 0, mass renormalized.
SumTerm character_sum(const WeightedSet& mu, const TwistSpec& spec);

struct KloostermanValue {
    std::complex<double> value;
    UnitValue exact;
    /// |K| / (2 sqrt q); absent when a beta is 0.
    std::optional<double> weil_ratio;
};
KloostermanValue kloosterman_classical(std::uint32_t p, unsigned n, const FieldElement& beta1, const FieldElement& beta2);
/// Direct enumeration with FieldElement arithmetic (reference route).
UnitValue kloosterman_by_enumeration(const FieldElement& beta1, const FieldElement& beta2);

SumSeries folner_kloosterman_series(const FolnerRecipe& recipe, const AdditiveCharacter& xi1,
                                    const AdditiveCharacter& xi2, unsigned k_max);
SumSeries twisted_power_series(const FolnerRecipe& recipe, const TwistSpec& spec, unsigned k_max);

struct InverseSeries {
    SumSeries series;
    double tail_floor = 0;
};
/// Terms sum_a mu_k(a) xi(1/a); tail_floor = max |term| over the final third of indices.
InverseSeries inverse_character_series(const FolnerRecipe& recipe, const AdditiveCharacter& xi, unsigned k_max);

struct DecayReport {
    double max_tail = 0;          // max |term| over the final third
    double last = 0;
    double monotone_fraction = 0; // share of consecutive steps with |t_{k+1}| <= |t_k|
};
/// Throws TooShort for fewer than 3 terms.
DecayReport decay_report(const SumSeries& s);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace fklab
