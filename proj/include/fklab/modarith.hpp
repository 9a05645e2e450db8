#pragma once

#include <cstdint>
#include <vector>

namespace fklab {

/// Global cap on brute-force enumeration sizes (field orders, search spaces).
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

std::uint64_t enumeration_cap() noexcept;
void set_enumeration_cap(std::uint64_t cap) noexcept;
/// Throws CapExceeded when `size` is above the configured cap.
void check_cap(std::uint64_t size, const char* what);

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
    return a >= b ? a - b : a + p - b;
}
inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
}
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept;
/// Inverse of a nonzero residue modulo a prime.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m);

bool is_prime(std::uint64_t n) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
std::uint64_t ipow(std::uint64_t base, unsigned exp);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) noexcept;
std::vector<unsigned> divisors(unsigned n);

}  // namespace fklab
