#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fklab/poly_fp.hpp"

namespace fklab {

/// Element of F_p(t) as a reduced fraction num/den with monic den.
class RatFunc {
public:
    RatFunc() : num_(2), den_(PolyFp::constant(2, 1)) {}
    explicit RatFunc(std::uint32_t p) : num_(p), den_(PolyFp::constant(p, 1)) {}
    explicit RatFunc(PolyFp num);
    RatFunc(PolyFp num, PolyFp den);

    static RatFunc t(std::uint32_t p) { return RatFunc(PolyFp::monomial(p, 1)); }
    static RatFunc constant(std::uint32_t p, std::int64_t c);

    std::uint32_t prime() const noexcept { return num_.prime(); }
    const PolyFp& num() const noexcept { return num_; }
    const PolyFp& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }

    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc inv() const;
    RatFunc pow(std::int64_t k) const;

    friend bool operator==(const RatFunc& a, const RatFunc& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const RatFunc& a, const RatFunc& b) noexcept {
        if (!(a.den_ == b.den_)) return a.den_ < b.den_;
        return a.num_ < b.num_;
    }

    /// y with y^p = *this; throws NotAPthPower unless num and den lie in F_p[t^p].
    RatFunc pth_root() const;
    /// Image under f(t) -> f(t^k).
    RatFunc inflate(unsigned k) const { return RatFunc(num_.inflate(k), den_.inflate(k)); }
    /// Order of vanishing at the monic irreducible pi (negative for poles).
    int valuation(const PolyFp& pi) const;

    std::size_t hash() const noexcept { return num_.hash() * 1000003u ^ den_.hash(); }
    std::string to_string() const;

private:
    RatFunc(PolyFp num, PolyFp den, bool /*already_reduced*/) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    PolyFp num_, den_;
};

/// Laurent expansion of f at infinity: coefficients of t^top, t^{top-1}, ... (`terms` of them).
struct LaurentAtInfinity {
    int top = 0;
    std::vector<std::uint32_t> coeffs;
};
LaurentAtInfinity laurent_at_infinity(const RatFunc& f, unsigned terms);

/// Coefficient of t^{-1} at infinity computed from `depth` expansion terms.
/// Throws DepthInsufficient unless depth > deg(num) + deg(den).
std::uint32_t residue_coefficient(const RatFunc& f, unsigned depth);
/// Same coefficient from the remainder: c_{-1}(N/D) = [t^{deg D - 1}](N mod D) / lc(D).
std::uint32_t residue_coefficient_by_remainder(const RatFunc& f);

}  // namespace fklab
