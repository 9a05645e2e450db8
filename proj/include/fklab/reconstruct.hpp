#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fklab/field.hpp"

namespace fklab {

using FieldMap = std::function<FieldElement(const FieldElement&)>;
using SamplePairs = std::vector<std::pair<FieldElement, FieldElement>>;

/// rho(1 + x) = u(x) + v(x) rho(x) on K^*, with rho(0) = 0.
struct MultMapData {
    std::string name;
    FieldDescriptor source, target;
    FieldMap rho, u, v;
};

/// Named examples: "q-parity-w" (w0(x) = (-1)^{v_2(x)}, rho = w0 * id, u(x) = w0(1+x),
/// v(x) = w0(1+x) w0(x), with u(-1) = v(-1) = 1) and "identity" (rho = id, u = v = 1), both over Q.
MultMapData builtin_example(const std::string& name);
std::vector<std::string> builtin_examples();

/// Finite lookup table read from lines "x_repr, value_repr"; lookups off the table throw InvalidArgument.
class MapTable {
public:
    MapTable(FieldDescriptor source, FieldDescriptor target) : src_(std::move(source)), dst_(std::move(target)) {}
    void load(std::istream& in);
    void load_file(const std::string& path);
    void set(const FieldElement& x, const FieldElement& y);
    FieldElement operator()(const FieldElement& x) const;
    std::size_t size() const noexcept { return table_.size(); }
    std::vector<FieldElement> keys() const;
    /// Writes "x_repr, value_repr" lines for the given points.
    static void write(std::ostream& out, const FieldMap& f, const std::vector<FieldElement>& xs);

private:
    FieldDescriptor src_, dst_;
    std::map<FieldElement, FieldElement> table_;
};

MultMapData data_from_tables(const std::string& name, const MapTable& rho, const MapTable& u, const MapTable& v);

/// Deterministic grid of `count` distinct nonzero rationals a/b with |a|, b <= height.
std::vector<FieldElement> rational_sample_grid(std::int64_t height, std::size_t count, std::uint64_t seed);
/// All ordered pairs of distinct samples.
SamplePairs all_pairs(const std::vector<FieldElement>& xs);

/// Samples x where rho(1 + x) != u(x) + v(x) rho(x).
std::vector<FieldElement> defining_relation_exceptions(const MultMapData& data, const std::vector<FieldElement>& samples);

struct DerivedW {
    FieldMap w;
    std::vector<FieldElement> value_set;   // values on the samples, sorted
};
/// w = v / u; throws ZeroU when u vanishes on a sample.
DerivedW derive_w(const MultMapData& data, const std::vector<FieldElement>& samples);

enum class GroupLaw { Multiplicative, Additive };

struct PatchReport {
    std::size_t sample_size = 0, pair_count = 0;
    std::vector<FieldElement> inverse_exceptions;
    std::map<FieldElement, std::size_t> product_exception_counts;
    SamplePairs product_exception_pairs;
    std::size_t total_inverse() const noexcept { return inverse_exceptions.size(); }
    std::size_t total_product() const noexcept { return product_exception_pairs.size(); }
};
/// Exceptions to eta(x^{-1}) = eta(x)^{-1} and eta(xy) = eta(x) eta(y) (or the additive analogs).
PatchReport patchwise_exceptions(const FieldMap& eta, GroupLaw law, const std::vector<FieldElement>& samples,
                                 const SamplePairs& pairs);

struct KappaReport {
    FieldMap kappa;
    SamplePairs additivity_violations, multiplicativity_violations;
    std::vector<std::pair<FieldElement, FieldElement>> collisions;   // x != y with kappa(x) == kappa(y)
    bool injective_on_samples() const noexcept { return collisions.empty(); }
};
/// kappa(0) = 0, kappa(x) = w(x) rho(x).
KappaReport build_kappa(const FieldMap& rho, const FieldMap& w, const std::vector<FieldElement>& samples,
                        const SamplePairs& pairs);

struct UvReport {
    std::vector<FieldElement> inverse;    // w(1/x) != 1/w(x)
    std::vector<FieldElement> negation;   // w(-x) != w(x)
    std::vector<FieldElement> compat_u;   // w(1+x) u(x) != 1
    std::vector<FieldElement> compat_v;   // v(-1-x) v(x) != 1
    /// x failing either compatibility equation
    std::vector<FieldElement> compatibility() const;
    std::size_t total() const { return inverse.size() + negation.size() + compatibility().size(); }
};
/// The three relations on samples (0 and -1 skipped where an argument would vanish).
UvReport verify_uv_relations(const MultMapData& data, const std::vector<FieldElement>& samples);

struct ReducedWeight {
    std::int64_t m = 0;
    unsigned l = 0;
    std::int64_t n = 0;   // m = p^l n, p does not divide n
};

struct ReducedModelSpec {
    std::uint32_t p = 0;
    std::vector<ReducedWeight> weights;
    /// Decomposes distinct nonzero weights; BadWeight for 0 or repeated weights.
    static ReducedModelSpec decompose(std::uint32_t p, const std::vector<std::int64_t>& m);
    /// Explicit decomposition; BadWeight unless m = p^l n with p not dividing n.
    static ReducedModelSpec explicit_weights(std::uint32_t p, std::vector<ReducedWeight> w);
};

/// Vectors of the reduced model: component j has p^{l_j} coordinates in F_p(t) (the basis
/// 1, t, ..., t^{p^{l_j} - 1} of K over K^{p^{l_j}}); U has one coordinate per weight.
using VVector = std::vector<std::vector<RatFunc>>;
using UVector = std::vector<RatFunc>;

class ReducedModel {
public:
    explicit ReducedModel(ReducedModelSpec spec);
    const ReducedModelSpec& spec() const noexcept { return spec_; }

    /// Phi_j(x) = sum_i x_i^{p^l} t^i
    UVector phi(const VVector& x) const;
    /// Inverse via the decomposition y = sum_i y_i t^i, y_i in K^{p^l}, and repeated p-th roots.
    VVector phi_inverse(const UVector& y) const;
    /// a acting on V by a^{n_j} and on U by a^{m_j}.
    VVector act_v(const RatFunc& a, const VVector& x) const;
    UVector act_u(const RatFunc& a, const UVector& y) const;
    VVector scalar_v(const RatFunc& a, const VVector& x) const;
    UVector scalar_u(const RatFunc& a, const UVector& y) const;
    VVector random_vector(std::uint64_t seed, unsigned max_degree = 3) const;

private:
    ReducedModelSpec spec_;
};

struct ReducedModelReport {
    std::size_t samples = 0;
    std::size_t additivity_failures = 0, equivariance_failures = 0, inverse_failures = 0, surjectivity_failures = 0;
    bool has_nonlinear_component = false;
    bool nonlinearity_witness_found = false;
    std::string witness;   // "a=..., x=..." when found
    bool ok() const noexcept {
        return additivity_failures == 0 && equivariance_failures == 0 && inverse_failures == 0 &&
               surjectivity_failures == 0 && nonlinearity_witness_found == has_nonlinear_component;
    }
};
ReducedModelReport reduced_model(const ReducedModelSpec& spec, std::size_t samples, std::uint64_t seed);

RatFunc random_ratfunc(std::uint32_t p, std::uint64_t seed, unsigned max_degree, bool allow_zero = true);

}  // namespace fklab
