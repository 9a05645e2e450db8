#include "fklab/field.hpp"

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

FieldDescriptor FieldDescriptor::finite(std::uint32_t p, unsigned n) { return finite(FiniteField::get(p, n)); }

FieldDescriptor FieldDescriptor::finite(FiniteFieldPtr field) {
    FieldDescriptor d;
    d.kind_ = Kind::Finite;
    d.p_ = field->characteristic();
    d.ff_ = std::move(field);
    return d;
}

FieldDescriptor FieldDescriptor::function_field(std::uint32_t p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "F_p(t) needs a prime p");
    FieldDescriptor d;
    d.kind_ = Kind::RationalFunction;
    d.p_ = p;
    return d;
}

const FiniteField& FieldDescriptor::ff() const {
    if (!ff_) throw Error(ErrorCode::DescriptorMismatch, to_string() + " is not a finite field");
    return *ff_;
}

bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) noexcept {
    if (a.kind_ != b.kind_ || a.p_ != b.p_) return false;
    if (a.kind_ != FieldDescriptor::Kind::Finite) return true;
    return a.ff_ == b.ff_ || same_field(*a.ff_, *b.ff_);
}

std::string FieldDescriptor::to_string() const {
    switch (kind_) {
        case Kind::Rational: return "Q";
        case Kind::Finite:
            return ff_->degree() == 1 ? "F_" + std::to_string(p_)
                                      : "F_" + std::to_string(p_) + "^" + std::to_string(ff_->degree());
        case Kind::RationalFunction: return "F_" + std::to_string(p_) + "(t)";
    }
    return "?";
}

FieldElement::FieldElement(FieldDescriptor d, FiniteField::Elem code) : desc_(std::move(d)), v_(code) {
    if (!desc_.is_finite()) throw Error(ErrorCode::DescriptorMismatch, "code element needs a finite field");
    if (code >= desc_.ff().order()) throw Error(ErrorCode::InvalidArgument, "code out of range");
}

FieldElement::FieldElement(std::uint32_t p, RatFunc f) : desc_(FieldDescriptor::function_field(p)), v_(std::move(f)) {
    if (std::get<RatFunc>(v_).prime() != p) throw Error(ErrorCode::DescriptorMismatch, "F_p(t) prime mismatch");
}

FieldElement FieldElement::zero(const FieldDescriptor& d) { return from_int(d, 0); }
FieldElement FieldElement::one(const FieldDescriptor& d) { return from_int(d, 1); }

FieldElement FieldElement::from_int(const FieldDescriptor& d, std::int64_t v) {
    switch (d.kind()) {
        case FieldDescriptor::Kind::Rational: return FieldElement(mpq_class(static_cast<long>(v)));
        case FieldDescriptor::Kind::Finite: return FieldElement(d, d.ff().from_int(v));
        case FieldDescriptor::Kind::RationalFunction:
            return FieldElement(d.characteristic(), RatFunc::constant(d.characteristic(), v));
    }
    return {};
}

const mpq_class& FieldElement::rational() const {
    if (!desc_.is_rational()) throw Error(ErrorCode::DescriptorMismatch, "not a rational: " + to_string());
    return std::get<mpq_class>(v_);
}

FiniteField::Elem FieldElement::code() const {
    if (!desc_.is_finite()) throw Error(ErrorCode::DescriptorMismatch, "not a finite-field element: " + to_string());
    return std::get<FiniteField::Elem>(v_);
}

const RatFunc& FieldElement::ratfunc() const {
    if (!desc_.is_function_field()) throw Error(ErrorCode::DescriptorMismatch, "not in F_p(t): " + to_string());
    return std::get<RatFunc>(v_);
}

bool FieldElement::is_zero() const noexcept {
    switch (v_.index()) {
        case 0: return sgn(std::get<0>(v_)) == 0;
        case 1: return std::get<1>(v_) == 0;
        default: return std::get<2>(v_).is_zero();
    }
}

bool FieldElement::is_one() const noexcept {
    switch (v_.index()) {
        case 0: return std::get<0>(v_) == 1;
        case 1: return std::get<1>(v_) == 1;
        default: return std::get<2>(v_).is_one();
    }
}

void FieldElement::check_same(const FieldElement& o) const {
    if (!(desc_ == o.desc_))
        throw Error(ErrorCode::DescriptorMismatch, desc_.to_string() + " vs " + o.desc_.to_string());
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    switch (v_.index()) {
        case 0: std::get<0>(r.v_) = -std::get<0>(v_); break;
        case 1: std::get<1>(r.v_) = desc_.ff().neg(std::get<1>(v_)); break;
        default: std::get<2>(r.v_) = -std::get<2>(v_); break;
    }
    return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    FieldElement r = a;
    switch (a.v_.index()) {
        case 0: std::get<0>(r.v_) = std::get<0>(a.v_) + std::get<0>(b.v_); break;
        case 1: std::get<1>(r.v_) = a.desc_.ff().add(std::get<1>(a.v_), std::get<1>(b.v_)); break;
        default: std::get<2>(r.v_) = std::get<2>(a.v_) + std::get<2>(b.v_); break;
    }
    return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    FieldElement r = a;
    switch (a.v_.index()) {
        case 0: std::get<0>(r.v_) = std::get<0>(a.v_) * std::get<0>(b.v_); break;
        case 1: std::get<1>(r.v_) = a.desc_.ff().mul(std::get<1>(a.v_), std::get<1>(b.v_)); break;
        default: std::get<2>(r.v_) = std::get<2>(a.v_) * std::get<2>(b.v_); break;
    }
    return r;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return a * b.inv();
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in " + desc_.to_string());
    FieldElement r = *this;
    switch (v_.index()) {
        case 0: std::get<0>(r.v_) = 1 / std::get<0>(v_); break;
        case 1: std::get<1>(r.v_) = desc_.ff().inv(std::get<1>(v_)); break;
        default: std::get<2>(r.v_) = std::get<2>(v_).inv(); break;
    }
    return r;
}

FieldElement FieldElement::pow(std::int64_t k) const {
    if (k < 0) return inv().pow(-k);
    switch (v_.index()) {
        case 0: {
            const mpq_class& q = std::get<0>(v_);
            mpz_class n, d;
            mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(k));
            mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(k));
            return FieldElement(mpq_class(n, d));
        }
        case 1: return FieldElement(desc_, desc_.ff().pow(std::get<1>(v_), k));
        default: return FieldElement(desc_.characteristic(), std::get<2>(v_).pow(k));
    }
}

FieldElement FieldElement::pth_root() const {
    switch (v_.index()) {
        case 0: throw Error(ErrorCode::InvalidArgument, "p-th roots need positive characteristic");
        case 1: {
            const auto& F = desc_.ff();
            // Frobenius has order n, so its inverse is x -> x^{p^{n-1}}
            return FieldElement(desc_, F.pow(std::get<1>(v_), static_cast<std::int64_t>(ipow(F.characteristic(), F.degree() - 1))));
        }
        default: return FieldElement(desc_.characteristic(), std::get<2>(v_).pth_root());
    }
}

bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.desc_ == b.desc_ && a.v_ == b.v_;
}

bool operator<(const FieldElement& a, const FieldElement& b) noexcept {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
    switch (a.v_.index()) {
        case 0: return std::get<0>(a.v_) < std::get<0>(b.v_);
        case 1: return std::get<1>(a.v_) < std::get<1>(b.v_);
        default: return std::get<2>(a.v_) < std::get<2>(b.v_);
    }
}

std::size_t hash_mpq(const mpq_class& q) noexcept {
    std::size_t h = 0;
    const auto mix = [&h](const mpz_srcptr z) {
        const std::size_t n = mpz_size(z);
        for (std::size_t i = 0; i < n; ++i) h = h * 0x9E3779B97F4A7C15ull ^ mpz_getlimbn(z, static_cast<mp_size_t>(i));
        h = h * 31 + static_cast<std::size_t>(mpz_sgn(z) + 1);
    };
    mix(q.get_num_mpz_t());
    mix(q.get_den_mpz_t());
    return h;
}

std::size_t FieldElement::hash() const noexcept {
    switch (v_.index()) {
        case 0: return hash_mpq(std::get<0>(v_));
        case 1: return std::hash<std::uint32_t>{}(std::get<1>(v_)) * 0x9E3779B97F4A7C15ull;
        default: return std::get<2>(v_).hash();
    }
}

std::string FieldElement::to_string() const {
    switch (v_.index()) {
        case 0: return std::get<0>(v_).get_str();
        case 1: return desc_.ff().to_string(std::get<1>(v_));
        default: return std::get<2>(v_).to_string();
    }
}

FieldElement arith(ArithOp op, const FieldElement& x, const FieldElement& y) {
    switch (op) {
        case ArithOp::Add: return x + y;
        case ArithOp::Sub: return x - y;
        case ArithOp::Mul: return x * y;
        case ArithOp::Div: return x / y;
        case ArithOp::Neg: return -x;
        case ArithOp::Inv: return x.inv();
        case ArithOp::Pow: break;
    }
    throw Error(ErrorCode::InvalidArgument, "pow takes an integer exponent");
}

FieldElement arith(ArithOp op, const FieldElement& x, std::int64_t k) {
    switch (op) {
        case ArithOp::Neg: return -x;
        case ArithOp::Inv: return x.inv();
        case ArithOp::Pow: return x.pow(k);
        default: break;
    }
    throw Error(ErrorCode::InvalidArgument, "binary operation needs a second operand");
}

std::vector<FieldElement> enumerate_finite(const FieldDescriptor& d) {
    const auto& F = d.ff();
    check_cap(F.order(), "enumerate_finite");
    std::vector<FieldElement> out;
    out.reserve(F.order());
    for (FiniteField::Elem c = 0; c < F.order(); ++c) out.emplace_back(d, c);
    return out;
}

FieldElement trace(const FieldElement& x) {
    const auto& F = x.descriptor().ff();
    return FieldElement(FieldDescriptor::finite(F.characteristic(), 1), F.trace(x.code()));
}

}  // namespace fklab
