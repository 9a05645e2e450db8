#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "fklab/poly_fp.hpp"

namespace fklab {

/// Deterministic choice of the defining polynomial for F_{p^n}.
///
/// Candidates are ordered the way Conway polynomials are: write
/// f = x^n - a_{n-1} x^{n-1} + a_{n-2} x^{n-2} - ... + (-1)^n a_0 and compare
/// (a_{n-1}, ..., a_0) lexicographically. The first candidate that is primitive and
/// norm-compatible with the moduli of every proper subfield wins, so for the sizes
/// used here the result coincides with the Conway polynomial.
PolyFp conway_style_modulus(std::uint32_t p, unsigned n);

/// Registry of moduli keyed by (p, n). Lazily filled; internally synchronized.
///
/// Text format, one entry per line: "p n : c_0 c_1 ... c_n" (coefficients low-to-high).
/// Blank lines and lines starting with '#' are ignored.
class ModulusRegistry {
public:
    static ModulusRegistry& global();

    /// Registered modulus, generating (and caching) the Conway-style one on first use.
    PolyFp modulus(std::uint32_t p, unsigned n);
    bool contains(std::uint32_t p, unsigned n) const;
    /// Registers an explicit modulus; throws InvalidArgument if it is not monic irreducible.
    void insert(const PolyFp& f);

    void load(std::istream& in);
    void load_file(const std::string& path);
    void save(std::ostream& out) const;

    static std::string format_line(const PolyFp& f);
    static PolyFp parse_line(const std::string& line);

private:
    mutable std::mutex mu_;
    std::map<std::pair<std::uint32_t, unsigned>, PolyFp> table_;
};

}  // namespace fklab
