#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fklab/poly_fp.hpp"

namespace fklab {

/// F_{p^n} realized as F_p[x]/(modulus). Elements are dense codes
/// code = c_0 + c_1 p + ... + c_{n-1} p^{n-1} of the residue coefficients, so code order is the
/// lexicographic order on coefficient vectors and 0 is the first element. The prime subfield is
/// exactly the codes below p.
///
/// Construction builds discrete exp/log tables and a trace table; the object is immutable
/// afterwards and safe to share across threads.
class FiniteField {
public:
    using Elem = std::uint32_t;

    /// Field with the registry modulus for (p, n); instances are cached.
    static std::shared_ptr<const FiniteField> get(std::uint32_t p, unsigned n);
    /// Field with an explicit monic irreducible modulus (not cached).
    static std::shared_ptr<const FiniteField> make(const PolyFp& modulus);

    explicit FiniteField(PolyFp modulus);

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return n_; }
    std::uint32_t order() const noexcept { return q_; }
    const PolyFp& modulus() const noexcept { return modulus_; }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }
    /// Generator of the multiplicative group used by log/exp (the class of x when the modulus is primitive).
    Elem generator() const noexcept { return exp_[q_ > 2 ? 1 : 0]; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    /// a^k for any integer k; negative k requires a != 0.
    Elem pow(Elem a, std::int64_t k) const;

    /// Discrete log base generator(); throws ZeroArgument for 0.
    std::uint32_t log(Elem a) const;
    Elem exp(std::uint64_t k) const noexcept { return exp_[k % (q_ - 1)]; }

    /// Absolute trace to F_p, table lookup.
    std::uint32_t trace(Elem a) const noexcept { return trace_[a]; }
    /// Absolute trace computed as the sum of Frobenius conjugates (reference path).
    std::uint32_t trace_by_conjugates(Elem a) const;
    /// Relative trace to the subfield F_{p^m}: sum of a^{p^{m i}} for i < n/m.
    Elem relative_trace(Elem a, unsigned m) const;
    Elem frobenius(Elem a) const { return pow(a, p_); }
    bool in_subfield(Elem a, unsigned m) const;

    Elem from_int(std::int64_t v) const noexcept;
    Elem from_poly(const PolyFp& f) const;
    PolyFp to_poly(Elem a) const;
    std::vector<std::uint32_t> digits(Elem a) const;
    Elem from_digits(std::span<const std::uint32_t> d) const;
    /// Coefficient form, e.g. "x^2+2*x+1"; prime-field elements print as integers.
    std::string to_string(Elem a) const;

    std::span<const std::uint32_t> exp_table() const noexcept { return exp_; }
    std::span<const std::uint32_t> log_table() const noexcept { return log_; }
    std::span<const std::uint8_t> trace_table() const noexcept { return trace_; }

    friend bool same_field(const FiniteField& a, const FiniteField& b) noexcept {
        return a.modulus_ == b.modulus_;
    }

private:
    Elem mul_by_x(Elem a) const noexcept;

    PolyFp modulus_;
    std::uint32_t p_;
    unsigned n_;
    std::uint32_t q_;
    std::vector<std::uint32_t> pw_;     // p^i
    std::vector<std::uint32_t> exp_;    // exp_[k] = g^k, k < q-1
    std::vector<std::uint32_t> log_;    // log_[0] unused
    std::vector<std::uint8_t> trace_;
};

using FiniteFieldPtr = std::shared_ptr<const FiniteField>;

}  // namespace fklab
