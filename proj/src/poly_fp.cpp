#include "fklab/poly_fp.hpp"

#include <algorithm>
#include <sstream>

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

PolyFp::PolyFp(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& c : c_) c %= p_;
    trim();
}

PolyFp PolyFp::constant(std::uint32_t p, std::uint32_t c) { return PolyFp(p, {c % p}); }

PolyFp PolyFp::monomial(std::uint32_t p, unsigned k, std::uint32_t c) {
    std::vector<std::uint32_t> v(k + 1, 0);
    v[k] = c % p;
    return PolyFp(p, std::move(v));
}

void PolyFp::trim() noexcept {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void PolyFp::check_same(const PolyFp& o) const {
    if (p_ != o.p_) throw Error(ErrorCode::DescriptorMismatch, "polynomials over different primes");
}

PolyFp PolyFp::operator-() const {
    PolyFp r = *this;
    for (auto& c : r.c_) c = c ? p_ - c : 0;
    return r;
}

PolyFp& PolyFp::operator+=(const PolyFp& o) {
    check_same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = add_mod(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

PolyFp& PolyFp::operator-=(const PolyFp& o) {
    check_same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = sub_mod(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

PolyFp& PolyFp::operator*=(const PolyFp& o) {
    check_same(o);
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
    const std::uint64_t p = p_;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{c_[i]} * o.c_[j]) % p;
    }
    c_.assign(acc.size(), 0);
    for (std::size_t i = 0; i < acc.size(); ++i) c_[i] = static_cast<std::uint32_t>(acc[i]);
    trim();
    return *this;
}

PolyFp PolyFp::scaled(std::uint32_t s) const {
    PolyFp r = *this;
    for (auto& c : r.c_) c = mul_mod(c, s, p_);
    r.trim();
    return r;
}

bool operator<(const PolyFp& a, const PolyFp& b) noexcept {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::pair<PolyFp, PolyFp> PolyFp::divmod(const PolyFp& d) const {
    check_same(d);
    if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    PolyFp rem = *this;
    if (degree() < d.degree()) return {PolyFp(p_), rem};
    std::vector<std::uint32_t> q(c_.size() - d.c_.size() + 1, 0);
    const std::uint32_t inv_lead = inv_mod(d.leading(), p_);
    const std::size_t dn = d.c_.size();
    for (std::size_t top = rem.c_.size(); top >= dn; --top) {
        const std::size_t i = top - 1;
        const std::uint32_t coef = mul_mod(rem.c_[i], inv_lead, p_);
        if (!coef) continue;
        const std::size_t shift = i - (dn - 1);
        q[shift] = coef;
        for (std::size_t j = 0; j < dn; ++j)
            rem.c_[shift + j] = sub_mod(rem.c_[shift + j], mul_mod(coef, d.c_[j], p_), p_);
    }
    rem.trim();
    return {PolyFp(p_, std::move(q)), rem};
}

PolyFp PolyFp::monic() const {
    if (is_zero()) return *this;
    return scaled(inv_mod(leading(), p_));
}

std::uint32_t PolyFp::eval(std::uint32_t x) const noexcept {
    std::uint32_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = add_mod(mul_mod(acc, x, p_), c_[i], p_);
    return acc;
}

PolyFp PolyFp::pow(std::uint64_t e) const {
    PolyFp result = constant(p_, 1), base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

PolyFp PolyFp::pow_mod(std::uint64_t e, const PolyFp& m) const {
    PolyFp result = constant(p_, 1) % m, base = *this % m;
    while (e) {
        if (e & 1) result = (result * base) % m;
        e >>= 1;
        if (e) base = (base * base) % m;
    }
    return result;
}

PolyFp PolyFp::inflate(unsigned k) const {
    if (is_zero()) return *this;
    std::vector<std::uint32_t> v((c_.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return PolyFp(p_, std::move(v));
}

std::size_t PolyFp::hash() const noexcept {
    std::size_t h = 1469598103934665603ull ^ p_;
    for (auto c : c_) h = (h ^ c) * 1099511628211ull;
    return h;
}

std::string PolyFp::to_string(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c_[i];
            continue;
        }
        if (c_[i] != 1) os << c_[i] << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

PolyFp gcd(PolyFp a, PolyFp b) {
    while (!b.is_zero()) {
        PolyFp r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

XgcdResult xgcd(const PolyFp& a, const PolyFp& b) {
    const std::uint32_t p = a.prime();
    PolyFp r0 = a, r1 = b, s0 = PolyFp::constant(p, 1), s1(p), t0(p), t1 = PolyFp::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        PolyFp s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const std::uint32_t inv = inv_mod(r0.leading(), p);
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

bool is_irreducible(const PolyFp& f) {
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const std::uint32_t p = f.prime();
    const PolyFp t = PolyFp::monomial(p, 1);
    // t^(p^k) mod f via repeated Frobenius
    auto frob_iter = [&](unsigned k) {
        PolyFp x = t;
        for (unsigned i = 0; i < k; ++i) x = x.pow_mod(p, f);
        return x;
    };
    if (!(frob_iter(static_cast<unsigned>(n)) - t).is_zero()) return false;
    for (auto r : prime_factors(static_cast<std::uint64_t>(n))) {
        PolyFp g = gcd(frob_iter(static_cast<unsigned>(n / r)) - t, f);
        if (g.degree() != 0) return false;
    }
    return true;
}

bool is_primitive(const PolyFp& f) {
    const std::uint32_t p = f.prime();
    const std::uint64_t order = ipow(p, static_cast<unsigned>(f.degree())) - 1;
    const PolyFp t = PolyFp::monomial(p, 1);
    if (!t.pow_mod(order, f).is_one()) return false;
    for (auto r : prime_factors(order))
        if (t.pow_mod(order / r, f).is_one()) return false;
    return true;
}

std::vector<PolyFp> monic_irreducibles(std::uint32_t p, unsigned degree) {
    std::vector<PolyFp> out;
    const std::uint64_t count = ipow(p, degree);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> c(degree + 1, 0);
        std::uint64_t x = code;
        for (unsigned i = 0; i < degree; ++i) {
            c[i] = static_cast<std::uint32_t>(x % p);
            x /= p;
        }
        c[degree] = 1;
        PolyFp f(p, std::move(c));
        if (is_irreducible(f)) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fklab
