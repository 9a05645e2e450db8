#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fklab/cyclotomic.hpp"
#include "fklab/field.hpp"

namespace fklab {

/// zeta_order^exp
struct Phase {
    std::uint64_t order = 1;
    std::uint64_t exp = 0;
};

class AdditiveCharacter {
public:
    enum class Kind { FiniteTrace, Archimedean, ResidueAtInfinity };

    /// x -> zeta_p^{Tr(beta x)} on a finite field.
    static AdditiveCharacter trace(const FieldElement& beta);
    /// x -> exp(2 pi i alpha x) on Q.
    static AdditiveCharacter archimedean(const mpq_class& alpha);
    /// Float alpha; values are flagged inexact downstream.
    static AdditiveCharacter archimedean_float(double alpha);
    /// f -> zeta_p^{c_{-1}(beta f)} on F_p(t), expansion carried to `depth` terms.
    static AdditiveCharacter residue(const FieldElement& beta, unsigned depth);
    static AdditiveCharacter trivial(const FieldDescriptor& d);

    Kind kind() const noexcept { return kind_; }
    const FieldDescriptor& descriptor() const noexcept { return desc_; }
    const FieldElement& beta() const noexcept { return beta_; }
    const mpq_class& alpha() const noexcept { return alpha_; }
    unsigned depth() const noexcept { return depth_; }
    bool is_trivial() const;
    /// Values are exact roots of unity (every kind except a nontrivial archimedean one).
    bool is_exact() const { return kind_ != Kind::Archimedean || is_trivial(); }
    bool alpha_is_float() const noexcept { return alpha_float_.has_value(); }

    Phase phase(const FieldElement& x) const;
    /// Fast path for finite-field codes: exponent of zeta_p.
    std::uint32_t trace_exponent(FiniteField::Elem a) const noexcept {
        return desc_.ff().trace(desc_.ff().mul(beta_code_, a));
    }
    std::complex<double> numeric(const FieldElement& x) const;
    UnitValue eval(const FieldElement& x) const;

    /// Literal form: trace:beta=..., arch:alpha=..., residue:beta=...:depth=...
    std::string to_string() const;

private:
    void check_desc(const FieldElement& x) const;

    Kind kind_ = Kind::FiniteTrace;
    FieldDescriptor desc_;
    FieldElement beta_;
    FiniteField::Elem beta_code_ = 0;
    mpq_class alpha_ = 0;
    std::optional<double> alpha_float_;
    unsigned depth_ = 0;
};

class MultiplicativeCharacter {
public:
    enum class Kind { Trivial, DlogPower, ValuationParity, Sign };

    static MultiplicativeCharacter trivial(const FieldDescriptor& d);
    /// g^j -> zeta_{q-1}^{k j}; g defaults to the field's generator.
    static MultiplicativeCharacter dlog_power(const FieldDescriptor& d, std::int64_t k,
                                              std::optional<FiniteField::Elem> g = std::nullopt);
    /// x -> (-1)^{sum of v_p(x) over p in S}; S holds primes (Q) or monic irreducibles (F_p(t)).
    static MultiplicativeCharacter valuation_parity(const FieldDescriptor& d, std::vector<FieldElement> S);
    static MultiplicativeCharacter sign();

    Kind kind() const noexcept { return kind_; }
    const FieldDescriptor& descriptor() const noexcept { return desc_; }
    std::int64_t k() const noexcept { return k_; }
    FiniteField::Elem generator() const noexcept { return g_; }
    const std::vector<FieldElement>& primes() const noexcept { return S_; }

    /// Throws ZeroArgument for x = 0.
    Phase phase(const FieldElement& x) const;
    /// Fast path on finite-field codes (DlogPower / Trivial).
    Phase phase_code(FiniteField::Elem a) const;
    UnitValue eval(const FieldElement& x) const;
    /// Discrete log base g (finite fields).
    std::uint64_t dlog(FiniteField::Elem a) const;

    std::string to_string() const;

private:
    Kind kind_ = Kind::Trivial;
    FieldDescriptor desc_;
    std::int64_t k_ = 0;
    FiniteField::Elem g_ = 0;
    std::uint64_t log_g_inv_ = 1;   // inverse of log(g) mod q-1
    std::vector<FieldElement> S_;
};

/// All q additive characters of F_q as FiniteTrace(beta), beta in code order.
class FiniteDual {
public:
    explicit FiniteDual(FieldDescriptor d);
    std::uint32_t q() const noexcept { return desc_.ff().order(); }
    std::vector<AdditiveCharacter> characters() const;
    /// (1/q) sum_beta xi_beta(x), exact.
    UnitValue orthogonality(const FieldElement& x) const;

private:
    FieldDescriptor desc_;
};

UnitValue to_unit(const Phase& ph);
/// Smallest element code with nonzero absolute trace; its trace character restricts
/// nontrivially to every subfield.
FiniteField::Elem first_trace_nonzero(const FiniteField& F);

}  // namespace fklab
