#include "fklab/modarith.hpp"

#include <atomic>
#include <numeric>
#include <string>

#include "fklab/error.hpp"

namespace fklab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::NotAPthPower: return "NotAPthPower";
        case ErrorCode::DepthInsufficient: return "DepthInsufficient";
        case ErrorCode::ZeroArgument: return "ZeroArgument";
        case ErrorCode::OrderOverflow: return "OrderOverflow";
        case ErrorCode::ZeroInSupport: return "ZeroInSupport";
        case ErrorCode::EmptyAfterDrop: return "EmptyAfterDrop";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::CharDividesN: return "CharDividesN";
        case ErrorCode::BadA: return "BadA";
        case ErrorCode::BadS: return "BadS";
        case ErrorCode::ZeroU: return "ZeroU";
        case ErrorCode::BadWeight: return "BadWeight";
        case ErrorCode::TooSmall: return "TooSmall";
        case ErrorCode::NotInverseClosed: return "NotInverseClosed";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {
std::atomic<std::uint64_t> g_cap{kDefaultEnumerationCap};
}

std::uint64_t enumeration_cap() noexcept { return g_cap.load(std::memory_order_relaxed); }
void set_enumeration_cap(std::uint64_t cap) noexcept { g_cap.store(cap, std::memory_order_relaxed); }

void check_cap(std::uint64_t size, const char* what) {
    if (size > enumeration_cap()) {
        throw Error(ErrorCode::CapExceeded, std::string(what) + " needs " + std::to_string(size) +
                                                " elements, cap is " + std::to_string(enumeration_cap()));
    }
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) noexcept {
    std::uint64_t r = 1 % p, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
    return static_cast<std::uint32_t>(inv_mod_u64(a % p, p));
}

std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m) {
    // extended Euclid on signed 128-bit to stay overflow free
    __int128 t = 0, new_t = 1, r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 quot = r / new_r;
        __int128 tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw Error(ErrorCode::DivisionByZero, "value not invertible modulo " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 2; k <= bound; ++k)
        if (is_prime(k)) out.push_back(k);
    return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept { return std::gcd(a, b); }
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) noexcept { return a / std::gcd(a, b) * b; }

std::vector<unsigned> divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

}  // namespace fklab
