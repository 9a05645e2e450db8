#include "fklab/cyclotomic.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

namespace {

std::atomic<std::uint64_t> g_order_cap{kDefaultOrderCap};

int mobius(std::uint64_t n) {
    const auto f = prime_factors(n);
    for (auto p : f)
        if ((n / p) % p == 0) return 0;
    return f.size() % 2 ? -1 : 1;
}

std::uint64_t lift_order(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t m = lcm_u64(a, b);
    if (m > cyclotomic_order_cap())
        throw Error(ErrorCode::OrderOverflow, "cyclotomic order " + std::to_string(m) + " above cap");
    return m;
}

}  // namespace

std::uint64_t cyclotomic_order_cap() noexcept { return g_order_cap.load(); }
void set_cyclotomic_order_cap(std::uint64_t cap) noexcept { g_order_cap.store(cap); }

std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t m) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::vector<std::int64_t>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(m); it != cache.end()) return it->second;
    }
    // Phi_m = prod_{d|m} (x^d - 1)^{mu(m/d)}: multiply the numerator factors, then divide exactly.
    std::vector<std::int64_t> f{1};
    std::vector<std::uint64_t> dens;
    for (std::uint64_t d = 1; d <= m; ++d) {
        if (m % d) continue;
        const int mu = mobius(m / d);
        if (mu == 1) {
            std::vector<std::int64_t> g(f.size() + d, 0);
            for (std::size_t i = 0; i < f.size(); ++i) {
                g[i + d] += f[i];
                g[i] -= f[i];
            }
            f = std::move(g);
        } else if (mu == -1) {
            dens.push_back(d);
        }
    }
    for (auto d : dens) {
        // f / (x^d - 1): q_i = q_{i-d} - f_i taken from the bottom, with q of degree deg f - d
        const std::size_t n = f.size() - d;
        std::vector<std::int64_t> q(n, 0);
        for (std::size_t i = 0; i < n; ++i) q[i] = (i >= d ? q[i - d] : 0) - f[i];
        f = std::move(q);
    }
    std::lock_guard lock(mu);
    return cache.emplace(m, f).first->second;
}

std::complex<double> root_of_unity(std::uint64_t m, std::uint64_t k) {
    k %= m;
    if (k == 0) return {1.0, 0.0};
    if (2 * k == m) return {-1.0, 0.0};
    if (4 * k == m) return {0.0, 1.0};
    if (4 * k == 3 * m) return {0.0, -1.0};
    const long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(m);
    return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

UnitValue UnitValue::zeta(std::uint64_t m, std::int64_t k) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "root of unity of order 0");
    if (m > cyclotomic_order_cap()) throw Error(ErrorCode::OrderOverflow, "cyclotomic order above cap");
    UnitValue v(m);
    std::int64_t r = k % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    v.coeffs_[0] = 0;
    v.coeffs_[static_cast<std::size_t>(r)] = 1;
    return v;
}

UnitValue UnitValue::rational(const mpq_class& r) {
    UnitValue v(1);
    v.coeffs_[0] = r;
    return v;
}

UnitValue UnitValue::numeric(std::complex<double> z) { return UnitValue(NumericTag{}, z); }

UnitValue UnitValue::from_coeffs(std::vector<mpq_class> coeffs) {
    if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "empty cyclotomic vector");
    if (coeffs.size() > cyclotomic_order_cap()) throw Error(ErrorCode::OrderOverflow, "cyclotomic order above cap");
    UnitValue v(1);
    v.coeffs_ = std::move(coeffs);
    return v;
}

UnitValue UnitValue::lifted(std::uint64_t m) const {
    if (!exact_ || m == order()) return *this;
    if (m % order() != 0) throw Error(ErrorCode::InvalidArgument, "lift order must be a multiple");
    const std::uint64_t s = m / order();
    UnitValue v(m);
    v.coeffs_[0] = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) v.coeffs_[k * s] = coeffs_[k];
    return v;
}

UnitValue& UnitValue::operator+=(const UnitValue& o) {
    if (!exact_ || !o.exact_) {
        *this = numeric(embed() + o.embed());
        return *this;
    }
    const std::uint64_t m = lift_order(order(), o.order());
    if (m != order()) *this = lifted(m);
    const std::uint64_t s = m / o.order();
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
        if (sgn(o.coeffs_[k]) != 0) coeffs_[k * s] += o.coeffs_[k];
    return *this;
}

UnitValue operator*(const UnitValue& a, const UnitValue& b) {
    if (!a.exact_ || !b.exact_) return UnitValue::numeric(a.embed() * b.embed());
    const std::uint64_t m = lift_order(a.order(), b.order());
    const std::uint64_t sa = m / a.order(), sb = m / b.order();
    UnitValue r(m);
    r.coeffs_[0] = 0;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (sgn(b.coeffs_[j]) == 0) continue;
            r.coeffs_[(i * sa + j * sb) % m] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return r;
}

UnitValue UnitValue::scaled(const mpq_class& r) const {
    if (!exact_) return numeric(num_ * r.get_d());
    UnitValue v = *this;
    for (auto& c : v.coeffs_) c *= r;
    return v;
}

UnitValue UnitValue::conj() const {
    if (!exact_) return numeric(std::conj(num_));
    UnitValue v = *this;
    const std::size_t m = coeffs_.size();
    for (std::size_t k = 1; k < m; ++k) v.coeffs_[k] = coeffs_[m - k];
    return v;
}

std::complex<double> UnitValue::embed() const {
    if (!exact_) return num_;
    long double re = 0, im = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (sgn(coeffs_[k]) == 0) continue;
        const auto z = root_of_unity(coeffs_.size(), k);
        const long double c = coeffs_[k].get_d();
        re += c * z.real();
        im += c * z.imag();
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::vector<mpq_class> UnitValue::reduced() const {
    if (!exact_) throw Error(ErrorCode::InvalidArgument, "numeric value has no cyclotomic reduction");
    const std::size_t m = coeffs_.size();
    const auto phi = cyclotomic_polynomial(m);   // monic
    const std::size_t deg = phi.size() - 1;
    std::vector<mpq_class> r = coeffs_;
    std::vector<std::pair<std::size_t, std::int64_t>> taps;   // nonzero lower coefficients
    for (std::size_t i = 0; i < deg; ++i)
        if (phi[i] != 0) taps.emplace_back(i, phi[i]);
    for (std::size_t top = m; top-- > deg;) {
        if (sgn(r[top]) == 0) continue;
        const mpq_class c = r[top];
        const std::size_t shift = top - deg;
        for (auto [i, a] : taps) r[shift + i] -= c * a;
        r[top] = 0;
    }
    r.resize(deg);
    return r;
}

bool UnitValue::is_zero() const {
    if (!exact_) return std::abs(num_) <= 1e-12;
    for (const auto& c : reduced())
        if (sgn(c) != 0) return false;
    return true;
}

bool operator==(const UnitValue& a, const UnitValue& b) {
    if (!a.exact_ || !b.exact_) return std::abs(a.embed() - b.embed()) <= 1e-12;
    UnitValue d = a;
    d += b.scaled(-1);
    return d.is_zero();
}

std::string UnitValue::to_string() const {
    if (!exact_) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", num_.real(), num_.imag());
        return buf;
    }
    auto r = reduced();
    std::string s = std::to_string(order()) + ":[";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ',';
        s += r[i].get_str();
    }
    return s + "]";
}

}  // namespace fklab
