#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "fklab/cyclotomic.hpp"
#include "fklab/field.hpp"

namespace fklab {

/// Integer polynomial, coefficients low-to-high; reduced mod p when the identity lives in characteristic p.
using ZPoly = std::vector<mpz_class>;

/// sum_j c_j p_j(t)^n = 0 with p_j = t^{k_j} for k_j in P and p_N = t^n + 1.
struct PowerIdentity {
    unsigned n = 0;
    std::uint32_t p = 0;               // 0 for Q
    std::vector<unsigned> P;           // {k : binom(n,k) != 0 in char p}
    std::vector<mpz_class> coeffs;     // c_1..c_N, reduced to [0,p) when p > 0
    std::vector<ZPoly> polys;          // p_1..p_N

    std::size_t N() const noexcept { return polys.size(); }
    std::string to_string() const;
};

/// Throws CharDividesN when p | n.
PowerIdentity build_power_identity(unsigned n, std::uint32_t p);
/// sum_j c_j p_j^e as a polynomial (reduced mod p).
ZPoly combination(const PowerIdentity& id, const std::vector<mpz_class>& c, std::int64_t e);

struct IndependenceResult {
    bool independent = false;
    std::vector<mpz_class> witness;   // kernel vector when dependent (first nonzero entry 1 after scaling)
    std::size_t rank = 0;
};
/// Decides linear dependence of p_1^m, ..., p_N^m over Q / F_p. For m < 0 every column is
/// multiplied by prod_i p_i^{|m|}, giving column j = prod_{i != j} p_i^{|m|}.
IndependenceResult check_linear_independence(const PowerIdentity& id, std::int64_t m);

/// (1/q) sum_beta xi_beta(1) xi_beta(a - 1) xi_beta(-a); throws BadA for a in {0, 1}.
UnitValue triple_mixing_check(const FieldElement& a);

/// Non-negative spectrum phi_hat on F_q indexed by element code.
struct SpectrumFunction {
    FieldDescriptor field;
    std::vector<mpq_class> hat;
};

struct PosCorrResult {
    mpq_class lhs, rhs;
    bool holds = false;
    bool equality = false;
};
/// lhs = sum over (b_1..b_N) with sum_j s_j b_j = 0 of prod_j phi_hat_j(b_j), by dynamic programming
/// over partial sums; rhs = sum_b prod_j phi_hat_j(b). Throws BadS unless the s_j are nonzero with sum 0.
PosCorrResult poscorr_check(const std::vector<SpectrumFunction>& phis, const std::vector<FieldElement>& s);
/// (1/q) sum_beta prod_j phi_j(s_j beta) with phi_j(xi) = sum_b phi_hat_j(b) xi(-b), in exact cyclotomic
/// arithmetic (reference route for the lhs).
UnitValue poscorr_lhs_fourier(const std::vector<SpectrumFunction>& phis, const std::vector<FieldElement>& s);

}  // namespace fklab
