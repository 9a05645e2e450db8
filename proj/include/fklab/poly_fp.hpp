#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fklab {

/// Dense univariate polynomial over the prime field F_p, coefficients low-to-high.
/// Invariant: no trailing zero coefficients (the zero polynomial has an empty vector).
class PolyFp {
public:
    PolyFp() = default;
    explicit PolyFp(std::uint32_t p) : p_(p) {}
    PolyFp(std::uint32_t p, std::vector<std::uint32_t> coeffs);

    static PolyFp constant(std::uint32_t p, std::uint32_t c);
    /// c * t^k
    static PolyFp monomial(std::uint32_t p, unsigned k, std::uint32_t c = 1);

    std::uint32_t prime() const noexcept { return p_; }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    /// Degree; -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    std::uint32_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    PolyFp operator-() const;
    PolyFp& operator+=(const PolyFp& o);
    PolyFp& operator-=(const PolyFp& o);
    PolyFp& operator*=(const PolyFp& o);
    friend PolyFp operator+(PolyFp a, const PolyFp& b) { return a += b; }
    friend PolyFp operator-(PolyFp a, const PolyFp& b) { return a -= b; }
    friend PolyFp operator*(PolyFp a, const PolyFp& b) { return a *= b; }
    PolyFp scaled(std::uint32_t s) const;

    friend bool operator==(const PolyFp& a, const PolyFp& b) noexcept { return a.p_ == b.p_ && a.c_ == b.c_; }
    /// Total order: by degree, then coefficients from the top down.
    friend bool operator<(const PolyFp& a, const PolyFp& b) noexcept;

    /// Quotient and remainder; throws DivisionByZero for a zero divisor.
    std::pair<PolyFp, PolyFp> divmod(const PolyFp& d) const;
    PolyFp operator%(const PolyFp& d) const { return divmod(d).second; }
    PolyFp operator/(const PolyFp& d) const { return divmod(d).first; }

    PolyFp monic() const;
    std::uint32_t eval(std::uint32_t x) const noexcept;
    PolyFp pow(std::uint64_t e) const;
    /// this^e mod m
    PolyFp pow_mod(std::uint64_t e, const PolyFp& m) const;
    /// Composition with t^k: f(t) -> f(t^k).
    PolyFp inflate(unsigned k) const;

    std::size_t hash() const noexcept;
    /// Human form in the variable `var`, e.g. "t^2 + 2*t + 1".
    std::string to_string(const char* var = "t") const;

private:
    void trim() noexcept;
    void check_same(const PolyFp& o) const;

    std::uint32_t p_ = 2;
    std::vector<std::uint32_t> c_;
};

PolyFp gcd(PolyFp a, PolyFp b);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct XgcdResult {
    PolyFp g, s, t;
};
XgcdResult xgcd(const PolyFp& a, const PolyFp& b);

/// Rabin irreducibility test over F_p.
bool is_irreducible(const PolyFp& f);
/// True when t generates (F_p[t]/f)^* (f assumed irreducible).
bool is_primitive(const PolyFp& f);

/// Monic irreducible polynomials over F_p of exactly the given degree, sorted.
std::vector<PolyFp> monic_irreducibles(std::uint32_t p, unsigned degree);

}  // namespace fklab
