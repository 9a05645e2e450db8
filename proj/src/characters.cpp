#include "fklab/characters.hpp"

#include <cmath>
#include <numbers>

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

UnitValue to_unit(const Phase& ph) { return UnitValue::zeta(ph.order, static_cast<std::int64_t>(ph.exp)); }

FiniteField::Elem first_trace_nonzero(const FiniteField& F) {
    for (FiniteField::Elem a = 1; a < F.order(); ++a)
        if (F.trace(a) != 0) return a;
    throw Error(ErrorCode::InvalidArgument, "trace identically zero");
}

AdditiveCharacter AdditiveCharacter::trace(const FieldElement& beta) {
    AdditiveCharacter c;
    c.kind_ = Kind::FiniteTrace;
    c.desc_ = beta.descriptor();
    c.beta_ = beta;
    c.beta_code_ = beta.code();
    return c;
}

AdditiveCharacter AdditiveCharacter::archimedean(const mpq_class& alpha) {
    AdditiveCharacter c;
    c.kind_ = Kind::Archimedean;
    c.desc_ = FieldDescriptor::rational();
    c.alpha_ = alpha;
    c.beta_ = FieldElement(alpha);
    return c;
}

AdditiveCharacter AdditiveCharacter::archimedean_float(double alpha) {
    AdditiveCharacter c = archimedean(mpq_class(alpha));
    c.alpha_float_ = alpha;
    return c;
}

AdditiveCharacter AdditiveCharacter::residue(const FieldElement& beta, unsigned depth) {
    if (!beta.descriptor().is_function_field())
        throw Error(ErrorCode::DescriptorMismatch, "residue character lives on F_p(t)");
    AdditiveCharacter c;
    c.kind_ = Kind::ResidueAtInfinity;
    c.desc_ = beta.descriptor();
    c.beta_ = beta;
    c.depth_ = depth;
    return c;
}

AdditiveCharacter AdditiveCharacter::trivial(const FieldDescriptor& d) {
    switch (d.kind()) {
        case FieldDescriptor::Kind::Rational: return archimedean(0);
        case FieldDescriptor::Kind::Finite: return trace(FieldElement::zero(d));
        case FieldDescriptor::Kind::RationalFunction: return residue(FieldElement::zero(d), 1);
    }
    return {};
}

bool AdditiveCharacter::is_trivial() const {
    if (kind_ == Kind::Archimedean) return alpha_float_ ? *alpha_float_ == 0.0 : sgn(alpha_) == 0;
    return beta_.is_zero();
}

void AdditiveCharacter::check_desc(const FieldElement& x) const {
    if (!(x.descriptor() == desc_))
        throw Error(ErrorCode::DescriptorMismatch,
                    "character on " + desc_.to_string() + " applied to element of " + x.descriptor().to_string());
}

Phase AdditiveCharacter::phase(const FieldElement& x) const {
    check_desc(x);
    switch (kind_) {
        case Kind::FiniteTrace: return {desc_.characteristic(), trace_exponent(x.code())};
        case Kind::ResidueAtInfinity: {
            if (beta_.is_zero()) return {desc_.characteristic(), 0};
            return {desc_.characteristic(), residue_coefficient((beta_ * x).ratfunc(), depth_)};
        }
        case Kind::Archimedean:
            if (is_trivial()) return {1, 0};
            break;
    }
    throw Error(ErrorCode::InvalidArgument, "archimedean values are numeric");
}

std::complex<double> AdditiveCharacter::numeric(const FieldElement& x) const {
    if (kind_ != Kind::Archimedean) {
        const Phase ph = phase(x);
        return root_of_unity(ph.order, ph.exp);
    }
    check_desc(x);
    if (alpha_float_) {
        const double t = *alpha_float_ * x.rational().get_d();
        const double fr = t - std::floor(t);
        const double ang = 2.0 * std::numbers::pi * fr;
        return {std::cos(ang), std::sin(ang)};
    }
    // reduce alpha*x mod 1 exactly before leaving the rationals
    mpq_class t = alpha_ * x.rational();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    const mpq_class fr = t - mpq_class(fl);
    const long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(fr.get_d());
    return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

UnitValue AdditiveCharacter::eval(const FieldElement& x) const {
    if (is_exact()) return to_unit(phase(x));
    return UnitValue::numeric(numeric(x));
}

std::string AdditiveCharacter::to_string() const {
    switch (kind_) {
        case Kind::FiniteTrace: return "trace:beta=" + beta_.to_string();
        case Kind::Archimedean:
            if (alpha_float_) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", *alpha_float_);
                return std::string("arch:alpha=") + buf;
            }
            return "arch:alpha=" + alpha_.get_str();
        case Kind::ResidueAtInfinity: return "residue:beta=" + beta_.to_string() + ":depth=" + std::to_string(depth_);
    }
    return "?";
}

MultiplicativeCharacter MultiplicativeCharacter::trivial(const FieldDescriptor& d) {
    MultiplicativeCharacter c;
    c.kind_ = Kind::Trivial;
    c.desc_ = d;
    return c;
}

MultiplicativeCharacter MultiplicativeCharacter::dlog_power(const FieldDescriptor& d, std::int64_t k,
                                                            std::optional<FiniteField::Elem> g) {
    const auto& F = d.ff();
    MultiplicativeCharacter c;
    c.kind_ = Kind::DlogPower;
    c.desc_ = d;
    const std::int64_t m = F.order() - 1;
    c.k_ = ((k % m) + m) % m;
    c.g_ = g.value_or(F.generator());
    if (c.g_ == 0 || c.g_ >= F.order()) throw Error(ErrorCode::InvalidArgument, "dlog base must be nonzero");
    const std::uint64_t lg = F.log(c.g_);
    if (m > 1 && gcd_u64(lg, static_cast<std::uint64_t>(m)) != 1)
        throw Error(ErrorCode::InvalidArgument, "dlog base " + F.to_string(c.g_) + " is not a generator");
    c.log_g_inv_ = m > 1 ? inv_mod_u64(lg % m, static_cast<std::uint64_t>(m)) : 0;
    return c;
}

MultiplicativeCharacter MultiplicativeCharacter::valuation_parity(const FieldDescriptor& d, std::vector<FieldElement> S) {
    MultiplicativeCharacter c;
    c.kind_ = Kind::ValuationParity;
    c.desc_ = d;
    for (const auto& s : S) {
        if (!(s.descriptor() == d)) throw Error(ErrorCode::DescriptorMismatch, "valuation prime from another field");
        if (d.is_rational()) {
            const auto& q = s.rational();
            if (q.get_den() != 1 || q <= 1 || mpz_probab_prime_p(q.get_num_mpz_t(), 30) == 0)
                throw Error(ErrorCode::InvalidArgument, s.to_string() + " is not a prime");
        } else if (d.is_function_field()) {
            const auto& f = s.ratfunc();
            if (!f.den().is_one() || !f.num().is_monic() || !is_irreducible(f.num()))
                throw Error(ErrorCode::InvalidArgument, s.to_string() + " is not a monic irreducible");
        }
    }
    c.S_ = std::move(S);
    return c;
}

MultiplicativeCharacter MultiplicativeCharacter::sign() {
    MultiplicativeCharacter c;
    c.kind_ = Kind::Sign;
    c.desc_ = FieldDescriptor::rational();
    return c;
}

std::uint64_t MultiplicativeCharacter::dlog(FiniteField::Elem a) const {
    const auto& F = desc_.ff();
    const std::uint64_t m = F.order() - 1;
    if (m == 1) return 0;
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(F.log(a)) * log_g_inv_) % m);
}

Phase MultiplicativeCharacter::phase_code(FiniteField::Elem a) const {
    if (a == 0) throw Error(ErrorCode::ZeroArgument, "multiplicative character at 0");
    if (kind_ == Kind::Trivial) return {1, 0};
    if (kind_ == Kind::DlogPower) {
        const std::uint64_t m = desc_.ff().order() - 1;
        return {m, static_cast<std::uint64_t>((static_cast<unsigned __int128>(dlog(a)) * static_cast<std::uint64_t>(k_)) % m)};
    }
    if (kind_ == Kind::ValuationParity) return {2, 0};
    throw Error(ErrorCode::DescriptorMismatch, "sign character is defined on Q only");
}

namespace {

int rational_valuation(const mpq_class& x, const mpz_class& p) {
    auto order = [&](mpz_class n) {
        int v = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
            ++v;
        }
        return v;
    };
    return order(x.get_num()) - order(x.get_den());
}

}  // namespace

Phase MultiplicativeCharacter::phase(const FieldElement& x) const {
    if (!(x.descriptor() == desc_))
        throw Error(ErrorCode::DescriptorMismatch, "multiplicative character on " + desc_.to_string());
    if (x.is_zero()) throw Error(ErrorCode::ZeroArgument, "multiplicative character at 0");
    switch (kind_) {
        case Kind::Trivial: return {1, 0};
        case Kind::DlogPower: return phase_code(x.code());
        case Kind::Sign: return {2, sgn(x.rational()) < 0 ? 1u : 0u};
        case Kind::ValuationParity: {
            long total = 0;
            for (const auto& s : S_) {
                if (desc_.is_rational()) total += rational_valuation(x.rational(), s.rational().get_num());
                else if (desc_.is_function_field()) total += x.ratfunc().valuation(s.ratfunc().num());
            }
            return {2, static_cast<std::uint64_t>(total & 1)};
        }
    }
    return {1, 0};
}

UnitValue MultiplicativeCharacter::eval(const FieldElement& x) const { return to_unit(phase(x)); }

std::string MultiplicativeCharacter::to_string() const {
    switch (kind_) {
        case Kind::Trivial: return "trivial";
        case Kind::DlogPower: return "dlog:k=" + std::to_string(k_);
        case Kind::Sign: return "sign";
        case Kind::ValuationParity: {
            std::string s = "valpar:S=";
            for (std::size_t i = 0; i < S_.size(); ++i) s += (i ? "," : "") + S_[i].to_string();
            return s;
        }
    }
    return "?";
}

FiniteDual::FiniteDual(FieldDescriptor d) : desc_(std::move(d)) {
    check_cap(desc_.ff().order(), "finite dual");
}

std::vector<AdditiveCharacter> FiniteDual::characters() const {
    std::vector<AdditiveCharacter> out;
    out.reserve(q());
    for (FiniteField::Elem b = 0; b < q(); ++b) out.push_back(AdditiveCharacter::trace(FieldElement(desc_, b)));
    return out;
}

UnitValue FiniteDual::orthogonality(const FieldElement& x) const {
    const auto& F = desc_.ff();
    std::vector<mpq_class> hist(F.characteristic(), mpq_class(0));
    const FiniteField::Elem xc = x.code();
    for (FiniteField::Elem b = 0; b < q(); ++b) hist[F.trace(F.mul(b, xc))] += 1;
    return UnitValue::from_coeffs(std::move(hist)).scaled(mpq_class(1, q()));
}

}  // namespace fklab
