#include "fklab/function_field.hpp"

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

RatFunc::RatFunc(PolyFp num) : num_(std::move(num)), den_(PolyFp::constant(num_.prime(), 1)) {}

RatFunc::RatFunc(PolyFp num, PolyFp den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.prime() != den_.prime()) throw Error(ErrorCode::DescriptorMismatch, "fraction over mixed primes");
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator in F_p(t)");
    normalize();
}

RatFunc RatFunc::constant(std::uint32_t p, std::int64_t c) {
    std::int64_t r = c % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return RatFunc(PolyFp::constant(p, static_cast<std::uint32_t>(r)));
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = PolyFp::constant(num_.prime(), 1);
        return;
    }
    const PolyFp g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    const std::uint32_t lc = den_.leading();
    if (lc != 1) {
        const std::uint32_t li = inv_mod(lc, den_.prime());
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.prime() != b.prime()) throw Error(ErrorCode::DescriptorMismatch, "F_p(t) characteristic mismatch");
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.prime() != b.prime()) throw Error(ErrorCode::DescriptorMismatch, "F_p(t) characteristic mismatch");
    if (a.is_zero() || b.is_zero()) return RatFunc(a.prime());
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

RatFunc RatFunc::inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in F_p(t)");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(std::int64_t k) const {
    if (k < 0) return inv().pow(-k);
    return RatFunc(num_.pow(static_cast<std::uint64_t>(k)), den_.pow(static_cast<std::uint64_t>(k)), true);
}

RatFunc RatFunc::pth_root() const {
    const std::uint32_t p = prime();
    auto compress = [&](const PolyFp& f) {
        std::vector<std::uint32_t> c;
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
            if (f.coeffs()[i] == 0) continue;
            if (i % p != 0) throw Error(ErrorCode::NotAPthPower, to_string() + " is not a p-th power");
            c.resize(i / p + 1, 0);
            c[i / p] = f.coeffs()[i];
        }
        return PolyFp(p, c);
    };
    return RatFunc(compress(num_), compress(den_), true);
}

int RatFunc::valuation(const PolyFp& pi) const {
    if (is_zero()) throw Error(ErrorCode::ZeroArgument, "valuation of 0");
    auto order = [&](PolyFp f) {
        int v = 0;
        for (;;) {
            auto [q, r] = f.divmod(pi);
            if (!r.is_zero()) return v;
            f = std::move(q);
            ++v;
        }
    };
    return order(num_) - order(den_);
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string("t");
    return "(" + num_.to_string("t") + ")/(" + den_.to_string("t") + ")";
}

LaurentAtInfinity laurent_at_infinity(const RatFunc& f, unsigned terms) {
    LaurentAtInfinity out;
    const std::uint32_t p = f.prime();
    if (f.is_zero()) {
        out.coeffs.assign(terms, 0);
        return out;
    }
    const PolyFp& n = f.num();
    const PolyFp& d = f.den();
    const int dn = d.degree();
    out.top = n.degree() - dn;
    // long division by d in descending powers of t; den is monic
    std::vector<std::uint32_t> rem(n.coeffs().rbegin(), n.coeffs().rend());   // highest first
    rem.resize(std::max<std::size_t>(rem.size(), 1) + terms + dn, 0);
    const auto& dc = d.coeffs();
    out.coeffs.reserve(terms);
    for (unsigned i = 0; i < terms; ++i) {
        const std::uint32_t c = rem[i];
        out.coeffs.push_back(c);
        if (c == 0) continue;
        for (int j = 0; j <= dn; ++j) {
            std::uint32_t& slot = rem[i + j];
            slot = sub_mod(slot, mul_mod(c, dc[dn - j], p), p);
        }
    }
    return out;
}

std::uint32_t residue_coefficient(const RatFunc& f, unsigned depth) {
    if (f.is_zero()) return 0;
    const int need = f.num().degree() + f.den().degree();
    if (static_cast<int>(depth) <= need)
        throw Error(ErrorCode::DepthInsufficient, "depth " + std::to_string(depth) + " <= deg(num)+deg(den) = " +
                                                      std::to_string(need) + " for " + f.to_string());
    const auto L = laurent_at_infinity(f, depth);
    const int idx = L.top + 1;   // position of t^{-1}
    if (idx < 0 || idx >= static_cast<int>(L.coeffs.size())) return 0;
    return L.coeffs[static_cast<std::size_t>(idx)];
}

std::uint32_t residue_coefficient_by_remainder(const RatFunc& f) {
    if (f.is_zero() || f.den().degree() == 0) return 0;
    const PolyFp r = f.num() % f.den();
    return r.coeff(static_cast<std::size_t>(f.den().degree() - 1));
}

}  // namespace fklab
