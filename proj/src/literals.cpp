#include "fklab/literals.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

namespace {

[[noreturn]] void fail(std::string_view what, std::string_view s) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": '" + std::string(s) + "'");
}

}  // namespace

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

std::int64_t parse_int(std::string_view s) {
    const std::string t = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) fail("expected an integer", s);
    return v;
}

FieldDescriptor parse_field(std::string_view s0) {
    const std::string s = trim(s0);
    if (s == "Q") return FieldDescriptor::rational();
    if (s.rfind("F_", 0) != 0) fail("unknown field", s);
    std::string rest = s.substr(2);
    try {
        if (rest.size() > 3 && rest.substr(rest.size() - 3) == "(t)")
            return FieldDescriptor::function_field(static_cast<std::uint32_t>(parse_int(rest.substr(0, rest.size() - 3))));
        const auto caret = rest.find('^');
        const auto p = static_cast<std::uint32_t>(parse_int(rest.substr(0, caret)));
        const unsigned n = caret == std::string::npos ? 1u : static_cast<unsigned>(parse_int(rest.substr(caret + 1)));
        if (!is_prime(p) || n == 0) fail("field needs a prime and a positive degree", s);
        return FieldDescriptor::finite(p, n);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidArgument) fail("bad field literal", s);
        throw;
    }
}

namespace {

class ExprParser {
public:
    ExprParser(const FieldDescriptor& d, std::string_view s) : d_(d), s_(s) {}

    FieldElement run() {
        FieldElement v = expr();
        skip();
        if (i_ != s_.size()) fail("trailing characters in element", s_);
        return v;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    FieldElement expr() {
        FieldElement v = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    FieldElement term() {
        FieldElement v = factor();
        for (;;) {
            if (eat('*')) v = v * factor();
            else if (eat('/')) v = v / factor();
            else return v;
        }
    }
    FieldElement factor() {
        FieldElement v = primary();
        if (eat('^')) {
            const bool neg = eat('-');
            const std::int64_t k = integer();
            v = v.pow(neg ? -k : k);
        }
        return v;
    }
    std::int64_t integer() {
        skip();
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected digits", s_);
        return parse_int(s_.substr(start, i_ - start));
    }
    FieldElement primary() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of element", s_);
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            FieldElement v = expr();
            if (!eat(')')) fail("missing ')'", s_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            const std::string digits(s_.substr(start, i_ - start));
            if (d_.is_rational()) return FieldElement(mpq_class(mpz_class(digits)));
            const mpz_class z(digits);
            const unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), d_.characteristic());
            return FieldElement::from_int(d_, static_cast<std::int64_t>(r));
        }
        if (c == '#' && d_.is_finite()) {
            ++i_;
            const std::int64_t code = integer();
            if (code < 0 || code >= d_.ff().order()) fail("code out of range", s_);
            return FieldElement(d_, static_cast<FiniteField::Elem>(code));
        }
        if (c == 't' && d_.is_function_field()) {
            ++i_;
            return FieldElement(d_.characteristic(), RatFunc::t(d_.characteristic()));
        }
        if (c == 'x' && d_.is_finite()) {
            ++i_;
            return FieldElement(d_, d_.ff().from_poly(PolyFp::monomial(d_.characteristic(), 1)));
        }
        if (c == 'g' && d_.is_finite()) {
            ++i_;
            return FieldElement(d_, d_.ff().generator());
        }
        fail("unexpected character in element", s_);
    }

    const FieldDescriptor& d_;
    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

FieldElement parse_element(const FieldDescriptor& d, std::string_view s) {
    try {
        return ExprParser(d, s).run();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DivisionByZero) fail("division by zero in element", s);
        throw;
    }
}

std::pair<std::string, std::map<std::string, std::string>> split_literal(std::string_view s) {
    const auto parts = split(s, ':');
    if (parts.empty() || parts[0].empty()) fail("empty literal", s);
    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos || eq == 0) fail("expected key=value", parts[i]);
        const std::string key = trim(parts[i].substr(0, eq));
        if (!kv.emplace(key, trim(parts[i].substr(eq + 1))).second) fail("duplicate key", key);
    }
    return {parts[0], kv};
}

namespace {

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key, std::string_view lit) {
    auto it = kv.find(key);
    if (it == kv.end()) fail("missing key '" + key + "' in", lit);
    return it->second;
}

void only(const std::map<std::string, std::string>& kv, std::initializer_list<const char*> keys, std::string_view lit) {
    for (const auto& [k, v] : kv) {
        bool ok = false;
        for (auto* a : keys) ok |= k == a;
        if (!ok) fail("unknown key '" + k + "' in", lit);
    }
}

mpq_class parse_rational(std::string_view s0) {
    const std::string s = trim(s0);
    mpq_class q;
    if (q.set_str(s, 10) == 0) {
        q.canonicalize();
        return q;
    }
    fail("expected a rational", s);
}

}  // namespace

AdditiveCharacter parse_additive_character(const FieldDescriptor& d, std::string_view s) {
    const auto [head, kv] = split_literal(s);
    if (head == "trivial") {
        only(kv, {}, s);
        return AdditiveCharacter::trivial(d);
    }
    if (head == "trace") {
        only(kv, {"beta"}, s);
        if (!d.is_finite()) throw Error(ErrorCode::DescriptorMismatch, "trace characters need a finite field");
        return AdditiveCharacter::trace(parse_element(d, need(kv, "beta", s)));
    }
    if (head == "arch") {
        only(kv, {"alpha"}, s);
        if (!d.is_rational()) throw Error(ErrorCode::DescriptorMismatch, "archimedean characters live on Q");
        const std::string& a = need(kv, "alpha", s);
        if (a.find_first_of(".eE") != std::string::npos) {
            char* end = nullptr;
            const double v = std::strtod(a.c_str(), &end);
            if (end != a.c_str() + a.size()) fail("bad alpha", a);
            return AdditiveCharacter::archimedean_float(v);
        }
        return AdditiveCharacter::archimedean(parse_rational(a));
    }
    if (head == "residue") {
        only(kv, {"beta", "depth"}, s);
        if (!d.is_function_field()) throw Error(ErrorCode::DescriptorMismatch, "residue characters live on F_p(t)");
        const std::int64_t depth = parse_int(need(kv, "depth", s));
        if (depth <= 0) fail("depth must be positive", s);
        return AdditiveCharacter::residue(parse_element(d, need(kv, "beta", s)), static_cast<unsigned>(depth));
    }
    fail("unknown additive character", s);
}

MultiplicativeCharacter parse_multiplicative_character(const FieldDescriptor& d, std::string_view s) {
    const auto [head, kv] = split_literal(s);
    if (head == "trivial") {
        only(kv, {}, s);
        return MultiplicativeCharacter::trivial(d);
    }
    if (head == "sign") {
        only(kv, {}, s);
        if (!d.is_rational()) throw Error(ErrorCode::DescriptorMismatch, "sign lives on Q");
        return MultiplicativeCharacter::sign();
    }
    if (head == "dlog") {
        only(kv, {"k", "g"}, s);
        std::optional<FiniteField::Elem> g;
        if (kv.count("g")) g = parse_element(d, kv.at("g")).code();
        return MultiplicativeCharacter::dlog_power(d, parse_int(need(kv, "k", s)), g);
    }
    if (head == "valpar") {
        only(kv, {"S"}, s);
        std::vector<FieldElement> S;
        for (const auto& e : split(need(kv, "S", s), ','))
            if (!e.empty()) S.push_back(parse_element(d, e));
        return MultiplicativeCharacter::valuation_parity(d, std::move(S));
    }
    fail("unknown multiplicative character", s);
}

FolnerRecipe parse_recipe(std::string_view s) {
    const auto [head, kv] = split_literal(s);
    try {
        if (head == "tower") {
            only(kv, {"p", "sched"}, s);
            std::vector<unsigned> sched;
            for (const auto& e : split(need(kv, "sched", s), ',')) {
                const std::int64_t v = parse_int(e);
                if (v <= 0) fail("tower degrees must be positive", s);
                sched.push_back(static_cast<unsigned>(v));
            }
            return FolnerRecipe::tower(static_cast<std::uint32_t>(parse_int(need(kv, "p", s))), sched);
        }
        if (head == "addbox" || head == "dilbox") {
            const FieldDescriptor field = kv.count("field") ? parse_field(kv.at("field")) : FieldDescriptor::rational();
            const std::int64_t R = parse_int(need(kv, "R", s));
            if (head == "addbox") {
                only(kv, {"d", "R", "field"}, s);
                return FolnerRecipe::addbox(field, parse_element(field, need(kv, "d", s)), R);
            }
            only(kv, {"P", "E", "d", "R", "field"}, s);
            const std::int64_t P = parse_int(need(kv, "P", s)), E = parse_int(need(kv, "E", s));
            if (P <= 0 || E < 0) fail("dilbox needs P > 0 and E >= 0", s);
            std::optional<FieldElement> d;
            if (kv.count("d")) d = parse_element(field, kv.at("d"));
            return FolnerRecipe::dilbox(field, static_cast<unsigned>(P), static_cast<unsigned>(E), d, R);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) fail(e.what(), s);
        throw;
    }
    fail("unknown recipe", s);
}

}  // namespace fklab
