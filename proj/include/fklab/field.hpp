#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fklab/finite_field.hpp"
#include "fklab/function_field.hpp"

namespace fklab {

class FieldDescriptor {
public:
    enum class Kind { Rational, Finite, RationalFunction };

    FieldDescriptor() = default;   // Q
    static FieldDescriptor rational() { return {}; }
    static FieldDescriptor finite(std::uint32_t p, unsigned n);
    static FieldDescriptor finite(FiniteFieldPtr field);
    static FieldDescriptor function_field(std::uint32_t p);

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::Rational; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    bool is_function_field() const noexcept { return kind_ == Kind::RationalFunction; }
    /// 0 for Q.
    std::uint32_t characteristic() const noexcept { return p_; }
    /// Underlying finite field; only for Finite descriptors.
    const FiniteField& ff() const;
    const FiniteFieldPtr& ff_ptr() const noexcept { return ff_; }

    friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) noexcept;
    /// "Q", "F_2^4", "F_3(t)"
    std::string to_string() const;

private:
    Kind kind_ = Kind::Rational;
    std::uint32_t p_ = 0;
    FiniteFieldPtr ff_;
};

/// Exact element of a declared field.
class FieldElement {
public:
    FieldElement() : desc_(), v_(mpq_class(0)) {}
    FieldElement(const mpq_class& q) : desc_(), v_(q) { std::get<mpq_class>(v_).canonicalize(); }
    FieldElement(FieldDescriptor d, FiniteField::Elem code);
    FieldElement(std::uint32_t p, RatFunc f);

    static FieldElement zero(const FieldDescriptor& d);
    static FieldElement one(const FieldDescriptor& d);
    static FieldElement from_int(const FieldDescriptor& d, std::int64_t v);

    const FieldDescriptor& descriptor() const noexcept { return desc_; }
    const mpq_class& rational() const;
    FiniteField::Elem code() const;
    const RatFunc& ratfunc() const;

    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement inv() const;
    FieldElement pow(std::int64_t k) const;
    /// y with y^p = x in characteristic p (NotAPthPower in F_p(t) when none exists).
    FieldElement pth_root() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept;
    friend bool operator!=(const FieldElement& a, const FieldElement& b) noexcept { return !(a == b); }
    /// Total order within one descriptor (numeric for Q, code order for finite fields).
    friend bool operator<(const FieldElement& a, const FieldElement& b) noexcept;

    std::size_t hash() const noexcept;
    std::string to_string() const;

private:
    void check_same(const FieldElement& o) const;

    FieldDescriptor desc_;
    std::variant<mpq_class, FiniteField::Elem, RatFunc> v_;
};

struct FieldElementHash {
    std::size_t operator()(const FieldElement& x) const noexcept { return x.hash(); }
};

/// arith(op, x, y): the dispatch form used by configs and the CLI.
enum class ArithOp { Add, Sub, Mul, Div, Neg, Inv, Pow };
FieldElement arith(ArithOp op, const FieldElement& x, const FieldElement& y);
FieldElement arith(ArithOp op, const FieldElement& x, std::int64_t k = 0);

/// All q elements of a finite field in code order (0 first). Checks the enumeration cap.
std::vector<FieldElement> enumerate_finite(const FieldDescriptor& d);
/// Absolute trace to the prime field, returned as an element of F_p (descriptor Finite(p,1)).
FieldElement trace(const FieldElement& x);

std::size_t hash_mpq(const mpq_class& q) noexcept;

}  // namespace fklab
