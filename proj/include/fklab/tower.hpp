#pragma once

#include <cstdint>
#include <vector>

#include "fklab/finite_field.hpp"

namespace fklab {

/// Embedding F_{p^m} -> F_{p^n} for m | n, determined by the image theta of the source's x.
///
/// Two independent evaluation routes are kept: the F_p-matrix whose column i holds the
/// coordinates of theta^i, and the logarithmic route g_m^j -> g_n^{j s}.
class TowerMap {
public:
    using Elem = FiniteField::Elem;

    TowerMap(FiniteFieldPtr source, FiniteFieldPtr target);
    /// Registry fields F_{p^m} -> F_{p^n}.
    static TowerMap between(std::uint32_t p, unsigned m, unsigned n);

    const FiniteFieldPtr& source() const noexcept { return source_; }
    const FiniteFieldPtr& target() const noexcept { return target_; }

    Elem operator()(Elem a) const noexcept {
        if (a == 0) return 0;
        return target_->exp(std::uint64_t{source_->log_table()[a]} * shift_);
    }
    Elem apply_matrix(Elem a) const;
    /// n x m matrix over F_p (row = target coordinate).
    const std::vector<std::vector<std::uint32_t>>& matrix() const noexcept { return matrix_; }
    Elem theta() const noexcept { return theta_; }

    bool in_image(Elem b) const;
    /// Inverse on the image; throws InvalidArgument outside it.
    Elem preimage(Elem b) const;

    /// this followed by `next` (requires next.source() == target()).
    TowerMap then(const TowerMap& next) const;

private:
    TowerMap(FiniteFieldPtr source, FiniteFieldPtr target, Elem theta);
    void build();

    FiniteFieldPtr source_, target_;
    Elem theta_ = 0;
    std::uint64_t shift_ = 0;   // image of the source generator is g_target^shift_
    std::vector<std::vector<std::uint32_t>> matrix_;
};

}  // namespace fklab
