#include "fklab/finite_field.hpp"

#include <map>
#include <mutex>

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"
#include "fklab/modulus_registry.hpp"

namespace fklab {

std::shared_ptr<const FiniteField> FiniteField::get(std::uint32_t p, unsigned n) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const FiniteField>> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({p, n});
        if (it != cache.end()) return it->second;
    }
    auto field = std::make_shared<const FiniteField>(ModulusRegistry::global().modulus(p, n));
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(p, n), field).first->second;
}

std::shared_ptr<const FiniteField> FiniteField::make(const PolyFp& modulus) {
    return std::make_shared<const FiniteField>(modulus);
}

FiniteField::FiniteField(PolyFp modulus)
    : modulus_(std::move(modulus)), p_(modulus_.prime()), n_(static_cast<unsigned>(modulus_.degree())) {
    if (!is_prime(p_)) throw Error(ErrorCode::InvalidArgument, "characteristic must be prime");
    if (modulus_.degree() < 1 || !modulus_.is_monic() || !is_irreducible(modulus_))
        throw Error(ErrorCode::InvalidArgument, "modulus must be monic irreducible");
    const std::uint64_t q = ipow(p_, n_);
    check_cap(q, "finite field");
    q_ = static_cast<std::uint32_t>(q);
    pw_.resize(n_ + 1);
    pw_[0] = 1;
    for (unsigned i = 1; i <= n_; ++i) pw_[i] = pw_[i - 1] * p_;

    // Choose a generator: the class of x if it is primitive, otherwise the first primitive code.
    const auto factors = prime_factors(q_ - 1);
    auto is_generator = [&](Elem g) {
        const PolyFp gp = to_poly(g);
        if (gp.is_zero()) return false;
        for (auto r : factors)
            if (gp.pow_mod((q_ - 1) / r, modulus_).is_one()) return false;
        return true;
    };
    Elem g = from_poly(PolyFp::monomial(p_, 1));
    if (!is_generator(g)) {
        g = 0;
        for (Elem c = 1; c < q_; ++c)
            if (is_generator(c)) {
                g = c;
                break;
            }
    }

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    const PolyFp gpoly = to_poly(g);
    const bool g_is_x = (g == from_poly(PolyFp::monomial(p_, 1)));
    Elem cur = 1;
    for (std::uint32_t k = 0; k + 1 < q_; ++k) {
        exp_[k] = cur;
        log_[cur] = k;
        cur = g_is_x ? mul_by_x(cur) : from_poly((to_poly(cur) * gpoly) % modulus_);
    }

    // Tr(sum c_i x^i) = sum c_i Tr(x^i); Tr(x^i) from conjugates once per basis element.
    std::vector<std::uint32_t> basis_trace(n_);
    for (unsigned i = 0; i < n_; ++i) basis_trace[i] = trace_by_conjugates(pw_[i]);
    trace_.assign(q_, 0);
    for (Elem a = 0; a < q_; ++a) {
        std::uint64_t acc = 0;
        Elem x = a;
        for (unsigned i = 0; i < n_; ++i) {
            acc += std::uint64_t{x % p_} * basis_trace[i];
            x /= p_;
        }
        trace_[a] = static_cast<std::uint8_t>(acc % p_);
    }
}

FiniteField::Elem FiniteField::mul_by_x(Elem a) const noexcept {
    // shift digits up by one and reduce the overflow digit with the (monic) modulus
    const std::uint32_t top = a / pw_[n_ - 1];
    Elem shifted = (a % pw_[n_ - 1]) * p_;
    if (top == 0) return shifted;
    Elem result = 0;
    for (unsigned i = 0; i < n_; ++i) {
        const std::uint32_t d = (shifted / pw_[i]) % p_;
        const std::uint32_t r = sub_mod(d, mul_mod(top, modulus_.coeff(i), p_), p_);
        result += r * pw_[i];
    }
    return result;
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    Elem r = 0;
    for (unsigned i = 0; i < n_; ++i) {
        r += add_mod(a % p_, b % p_, p_) * pw_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const noexcept {
    if (p_ == 2) return a;
    Elem r = 0;
    for (unsigned i = 0; i < n_; ++i) {
        const std::uint32_t d = a % p_;
        r += (d ? p_ - d : 0) * pw_[i];
        a /= p_;
    }
    return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

FiniteField::Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in F_" + std::to_string(q_));
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

FiniteField::Elem FiniteField::div(Elem a, Elem b) const { return mul(a, inv(b)); }

FiniteField::Elem FiniteField::pow(Elem a, std::int64_t k) const {
    if (a == 0) {
        if (k < 0) throw Error(ErrorCode::DivisionByZero, "negative power of 0");
        return k == 0 ? 1 : 0;
    }
    const std::int64_t m = q_ - 1;
    std::int64_t e = (static_cast<std::int64_t>(log_[a]) * (k % m)) % m;
    if (e < 0) e += m;
    return exp_[static_cast<std::size_t>(e)];
}

std::uint32_t FiniteField::log(Elem a) const {
    if (a == 0 || a >= q_) throw Error(ErrorCode::ZeroArgument, "discrete log of 0");
    return log_[a];
}

std::uint32_t FiniteField::trace_by_conjugates(Elem a) const {
    Elem acc = 0, x = a;
    for (unsigned i = 0; i < n_; ++i) {
        acc = add(acc, x);
        x = pow(x, p_);
    }
    if (acc >= p_) throw Error(ErrorCode::InvalidArgument, "trace left the prime field");
    return acc;
}

FiniteField::Elem FiniteField::relative_trace(Elem a, unsigned m) const {
    if (m == 0 || n_ % m != 0) throw Error(ErrorCode::InvalidArgument, "subfield degree must divide n");
    const std::int64_t qm = static_cast<std::int64_t>(ipow(p_, m));
    Elem acc = 0, x = a;
    for (unsigned i = 0; i < n_ / m; ++i) {
        acc = add(acc, x);
        x = pow(x, qm);
    }
    return acc;
}

bool FiniteField::in_subfield(Elem a, unsigned m) const {
    if (m == 0 || n_ % m != 0) return false;
    return pow(a, static_cast<std::int64_t>(ipow(p_, m))) == a;
}

FiniteField::Elem FiniteField::from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::from_poly(const PolyFp& f) const {
    if (f.prime() != p_) throw Error(ErrorCode::DescriptorMismatch, "polynomial over wrong prime");
    const PolyFp r = f % modulus_;
    Elem code = 0;
    for (unsigned i = 0; i < n_; ++i) code += r.coeff(i) * pw_[i];
    return code;
}

PolyFp FiniteField::to_poly(Elem a) const { return PolyFp(p_, digits(a)); }

std::vector<std::uint32_t> FiniteField::digits(Elem a) const {
    std::vector<std::uint32_t> d(n_);
    for (unsigned i = 0; i < n_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

FiniteField::Elem FiniteField::from_digits(std::span<const std::uint32_t> d) const {
    Elem code = 0;
    for (unsigned i = 0; i < n_ && i < d.size(); ++i) code += (d[i] % p_) * pw_[i];
    return code;
}

std::string FiniteField::to_string(Elem a) const {
    if (a < p_) return std::to_string(a);
    std::string s = to_poly(a).to_string("x");
    std::string out;
    for (char c : s)
        if (c != ' ') out += c;
    return out;
}

}  // namespace fklab
