#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace fklab {

/// Cap on the cyclotomic order produced by lcm-lifting mixed operands.
inline constexpr std::uint64_t kDefaultOrderCap = 1u << 20;
std::uint64_t cyclotomic_order_cap() noexcept;
void set_cyclotomic_order_cap(std::uint64_t cap) noexcept;

/// Phi_m with integer coefficients, low-to-high.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t m);

/// Element of Q(zeta_m) stored as sum c_k zeta_m^k over 0 <= k < m (non-reduced basis),
/// or a numeric complex value for archimedean characters.
///
/// Equality of exact values reduces the difference modulo Phi_m, so distinct coefficient
/// vectors can compare equal (e.g. zeta_3 + zeta_3^2 == -1).
class UnitValue {
public:
    UnitValue() : UnitValue(1) {}   // the exact value 1
    static UnitValue zeta(std::uint64_t m, std::int64_t k);
    static UnitValue rational(const mpq_class& r);
    static UnitValue zero() { return rational(0); }
    static UnitValue numeric(std::complex<double> z);
    /// Exact element from a coefficient vector of length m.
    static UnitValue from_coeffs(std::vector<mpq_class> coeffs);

    bool exact() const noexcept { return exact_; }
    std::uint64_t order() const noexcept { return coeffs_.size(); }
    const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }

    /// Same value written over zeta_{m'} for a multiple m' of order().
    UnitValue lifted(std::uint64_t m) const;

    UnitValue& operator+=(const UnitValue& o);
    friend UnitValue operator+(UnitValue a, const UnitValue& b) { return a += b; }
    friend UnitValue operator*(const UnitValue& a, const UnitValue& b);
    UnitValue scaled(const mpq_class& r) const;
    UnitValue conj() const;

    std::complex<double> embed() const;
    /// Reduced representative modulo Phi_m (length phi(m)).
    std::vector<mpq_class> reduced() const;
    bool is_zero() const;
    /// Exact equality, or |a-b| <= 1e-12 when either side is numeric.
    friend bool operator==(const UnitValue& a, const UnitValue& b);

    /// Reduced coefficient vector "m:[c_0,c_1,...]" or a numeric "(re,im)".
    std::string to_string() const;

private:
    explicit UnitValue(std::uint64_t m) : coeffs_(m, mpq_class(0)) { coeffs_[0] = 1; }
    struct NumericTag {};
    UnitValue(NumericTag, std::complex<double> z) : exact_(false), num_(z) {}

    bool exact_ = true;
    std::vector<mpq_class> coeffs_;
    std::complex<double> num_{};
};

/// Numeric value of zeta_m^k computed from the reduced angle k/m.
std::complex<double> root_of_unity(std::uint64_t m, std::uint64_t k);

}  // namespace fklab
