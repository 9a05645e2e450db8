#include "fklab/identities.hpp"

#include <algorithm>

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

namespace {

void reduce(ZPoly& f, std::uint32_t p) {
    if (p)
        for (auto& c : f) {
            mpz_fdiv_r_ui(c.get_mpz_t(), c.get_mpz_t(), p);
        }
    while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}

ZPoly mul(const ZPoly& a, const ZPoly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]))
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    reduce(r, p);
    return r;
}

ZPoly pow(const ZPoly& a, std::uint64_t e, std::uint32_t p) {
    ZPoly r{mpz_class(1)}, b = a;
    while (e) {
        if (e & 1) r = mul(r, b, p);
        e >>= 1;
        if (e) b = mul(b, b, p);
    }
    return r;
}

mpz_class binom(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::string zpoly_to_string(const ZPoly& f) {
    std::string s;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (sgn(f[i]) == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || f[i] != 1) s += f[i].get_str() + (i ? "*" : "");
        if (i) s += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

}  // namespace

std::string PowerIdentity::to_string() const {
    std::string s;
    for (std::size_t j = 0; j < polys.size(); ++j) {
        if (j) s += " + ";
        s += coeffs[j].get_str() + "*(" + zpoly_to_string(polys[j]) + ")^" + std::to_string(n);
    }
    return s + " = 0";
}

ZPoly combination(const PowerIdentity& id, const std::vector<mpz_class>& c, std::int64_t e) {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "combination needs e >= 0");
    ZPoly acc;
    for (std::size_t j = 0; j < id.N(); ++j) {
        ZPoly t = pow(id.polys[j], static_cast<std::uint64_t>(e), id.p);
        if (acc.size() < t.size()) acc.resize(t.size(), mpz_class(0));
        for (std::size_t i = 0; i < t.size(); ++i) acc[i] += c[j] * t[i];
    }
    reduce(acc, id.p);
    return acc;
}

PowerIdentity build_power_identity(unsigned n, std::uint32_t p) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (p && !is_prime(p)) throw Error(ErrorCode::InvalidArgument, "characteristic must be 0 or prime");
    if (p && n % p == 0) throw Error(ErrorCode::CharDividesN, std::to_string(p) + " divides " + std::to_string(n));
    PowerIdentity id;
    id.n = n;
    id.p = p;
    for (unsigned k = 0; k <= n; ++k) {
        mpz_class b = binom(n, k);
        if (p) mpz_fdiv_r_ui(b.get_mpz_t(), b.get_mpz_t(), p);
        if (sgn(b) == 0) continue;
        id.P.push_back(k);
        id.coeffs.push_back(b);
        ZPoly mono(k + 1, mpz_class(0));
        mono[k] = 1;
        id.polys.push_back(mono);
    }
    ZPoly last(n + 1, mpz_class(0));
    last[0] = 1;
    last[n] += 1;
    reduce(last, p);
    id.polys.push_back(last);
    mpz_class minus_one = p ? mpz_class(p - 1) : mpz_class(-1);
    id.coeffs.push_back(minus_one);
    if (!combination(id, id.coeffs, n).empty())
        throw Error(ErrorCode::InvalidArgument, "power identity failed to verify: " + id.to_string());
    return id;
}

namespace {

/// Rank and one kernel vector of a rows x cols matrix over Q (p = 0) or F_p.
std::pair<std::size_t, std::vector<mpq_class>> rank_and_kernel(std::vector<std::vector<mpq_class>> A, std::size_t cols,
                                                              std::uint32_t p) {
    auto norm = [p](mpq_class& x) {
        if (!p) return;
        mpz_class num = x.get_num(), den = x.get_den();
        mpz_fdiv_r_ui(num.get_mpz_t(), num.get_mpz_t(), p);
        mpz_fdiv_r_ui(den.get_mpz_t(), den.get_mpz_t(), p);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
        mpz_class r = num * inv;
        mpz_fdiv_r_ui(r.get_mpz_t(), r.get_mpz_t(), p);
        x = mpq_class(r);
    };
    for (auto& row : A)
        for (auto& x : row) norm(x);
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < A.size(); ++c) {
        std::size_t piv = r;
        while (piv < A.size() && sgn(A[piv][c]) == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[r]);
        mpq_class inv = 1 / A[r][c];
        norm(inv);
        for (auto& x : A[r]) {
            x *= inv;
            norm(x);
        }
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == r || sgn(A[i][c]) == 0) continue;
            const mpq_class f = A[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                A[i][j] -= f * A[r][j];
                norm(A[i][j]);
            }
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<mpq_class> kernel;
    if (r < cols) {
        std::size_t free_c = 0;
        while (std::find(pivot_col.begin(), pivot_col.end(), free_c) != pivot_col.end()) ++free_c;
        kernel.assign(cols, mpq_class(0));
        kernel[free_c] = 1;
        for (std::size_t i = 0; i < r; ++i) {
            kernel[pivot_col[i]] = -A[i][free_c];
            norm(kernel[pivot_col[i]]);
        }
    }
    return {r, kernel};
}

}  // namespace

IndependenceResult check_linear_independence(const PowerIdentity& id, std::int64_t m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be nonzero");
    if (id.p && m % static_cast<std::int64_t>(id.p) == 0)
        throw Error(ErrorCode::CharDividesN, "characteristic divides m");
    const std::size_t N = id.N();
    std::vector<ZPoly> columns(N);
    const std::uint64_t e = static_cast<std::uint64_t>(m < 0 ? -m : m);
    if (m > 0) {
        for (std::size_t j = 0; j < N; ++j) columns[j] = pow(id.polys[j], e, id.p);
    } else {
        std::vector<ZPoly> powers(N);
        for (std::size_t j = 0; j < N; ++j) powers[j] = pow(id.polys[j], e, id.p);
        for (std::size_t j = 0; j < N; ++j) {
            ZPoly c{mpz_class(1)};
            for (std::size_t i = 0; i < N; ++i)
                if (i != j) c = mul(c, powers[i], id.p);
            columns[j] = c;
        }
    }
    std::size_t rows = 0;
    for (const auto& c : columns) rows = std::max(rows, c.size());
    std::vector<std::vector<mpq_class>> A(rows, std::vector<mpq_class>(N, mpq_class(0)));
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < columns[j].size(); ++i) A[i][j] = columns[j][i];
    auto [rank, kernel] = rank_and_kernel(std::move(A), N, id.p);
    IndependenceResult res;
    res.rank = rank;
    res.independent = rank == N;
    if (!res.independent) {
        // scale to an integer vector whose first nonzero entry is 1 (over Q: clear denominators instead)
        std::size_t first = 0;
        while (sgn(kernel[first]) == 0) ++first;
        if (id.p) {
            const mpq_class lead = kernel[first];
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), lead.get_num().get_mpz_t(), mpz_class(id.p).get_mpz_t());
            for (auto& k : kernel) {
                mpz_class v = k.get_num() * inv;
                mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), id.p);
                res.witness.push_back(v);
            }
        } else {
            const mpq_class lead = kernel[first];
            mpz_class den = 1;
            for (auto& k : kernel) {
                k /= lead;
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), k.get_den().get_mpz_t());
            }
            for (auto& k : kernel) res.witness.push_back(mpz_class(k * den));
        }
    }
    return res;
}

UnitValue triple_mixing_check(const FieldElement& a) {
    const FieldDescriptor& D = a.descriptor();
    const auto& F = D.ff();
    check_cap(F.order(), "triple_mixing_check");
    if (a.is_zero() || a.is_one()) throw Error(ErrorCode::BadA, "a must avoid 0 and 1");
    const FiniteField::Elem x1 = 1, x2 = F.sub(a.code(), 1), x3 = F.neg(a.code());
    std::vector<mpq_class> hist(F.characteristic(), mpq_class(0));
    for (FiniteField::Elem b = 0; b < F.order(); ++b) {
        const std::uint32_t e = F.trace(F.mul(b, x1)) + F.trace(F.mul(b, x2)) + F.trace(F.mul(b, x3));
        hist[e % F.characteristic()] += 1;
    }
    return UnitValue::from_coeffs(std::move(hist)).scaled(mpq_class(1, F.order()));
}

namespace {

const FiniteField& check_poscorr(const std::vector<SpectrumFunction>& phis, const std::vector<FieldElement>& s) {
    if (phis.size() < 2 || phis.size() != s.size()) throw Error(ErrorCode::BadS, "need N >= 2 spectra and N multipliers");
    const FieldDescriptor& D = s.front().descriptor();
    const auto& F = D.ff();
    FiniteField::Elem total = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!(s[j].descriptor() == D) || !(phis[j].field == D)) throw Error(ErrorCode::DescriptorMismatch, "poscorr fields differ");
        if (s[j].is_zero()) throw Error(ErrorCode::BadS, "s_j must be nonzero");
        if (phis[j].hat.size() != F.order()) throw Error(ErrorCode::InvalidArgument, "spectrum length must be q");
        for (const auto& v : phis[j].hat)
            if (sgn(v) < 0) throw Error(ErrorCode::InvalidArgument, "spectra must be non-negative");
        total = F.add(total, s[j].code());
    }
    if (total != 0) throw Error(ErrorCode::BadS, "s_j must sum to 0");
    return F;
}

}  // namespace

PosCorrResult poscorr_check(const std::vector<SpectrumFunction>& phis, const std::vector<FieldElement>& s) {
    const auto& F = check_poscorr(phis, s);
    const std::uint32_t q = F.order();
    // dp[x] = sum over (b_1..b_j) with sum s_i b_i = x of prod phi_hat_i(b_i)
    std::vector<mpq_class> dp(q, mpq_class(0));
    dp[0] = 1;
    for (std::size_t j = 0; j < phis.size(); ++j) {
        std::vector<mpq_class> next(q, mpq_class(0));
        for (FiniteField::Elem x = 0; x < q; ++x) {
            if (sgn(dp[x]) == 0) continue;
            for (FiniteField::Elem b = 0; b < q; ++b) {
                if (sgn(phis[j].hat[b]) == 0) continue;
                next[F.add(x, F.mul(s[j].code(), b))] += dp[x] * phis[j].hat[b];
            }
        }
        dp = std::move(next);
    }
    PosCorrResult r;
    r.lhs = dp[0];
    r.rhs = 0;
    for (FiniteField::Elem b = 0; b < q; ++b) {
        mpq_class prod = 1;
        for (const auto& phi : phis) prod *= phi.hat[b];
        r.rhs += prod;
    }
    r.holds = r.lhs >= r.rhs;
    r.equality = r.lhs == r.rhs;
    return r;
}

UnitValue poscorr_lhs_fourier(const std::vector<SpectrumFunction>& phis, const std::vector<FieldElement>& s) {
    const auto& F = check_poscorr(phis, s);
    const std::uint32_t q = F.order(), p = F.characteristic();
    UnitValue acc = UnitValue::zero();
    for (FiniteField::Elem beta = 0; beta < q; ++beta) {
        UnitValue prod;   // 1
        for (std::size_t j = 0; j < phis.size(); ++j) {
            const FiniteField::Elem sb = F.mul(s[j].code(), beta);
            std::vector<mpq_class> c(p, mpq_class(0));
            for (FiniteField::Elem b = 0; b < q; ++b) c[F.trace(F.mul(sb, F.neg(b)))] += phis[j].hat[b];
            prod = prod * UnitValue::from_coeffs(std::move(c));
        }
        acc += prod;
    }
    return acc.scaled(mpq_class(1, q));
}

}  // namespace fklab
