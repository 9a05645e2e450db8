#include "fklab/modulus_registry.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

namespace {

// Evaluate g at the residue y modulo f.
PolyFp eval_at_residue(const PolyFp& g, const PolyFp& y, const PolyFp& f) {
    PolyFp acc(g.prime());
    for (std::size_t i = g.coeffs().size(); i-- > 0;)
        acc = (acc * y + PolyFp::constant(g.prime(), g.coeffs()[i])) % f;
    return acc;
}

}  // namespace

PolyFp conway_style_modulus(std::uint32_t p, unsigned n) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "characteristic must be prime");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be positive");
    check_cap(ipow(p, n), "field order");

    std::vector<std::pair<unsigned, PolyFp>> lower;
    for (unsigned m : divisors(n))
        if (m < n) lower.emplace_back(m, ModulusRegistry::global().modulus(p, m));

    const std::uint64_t q = ipow(p, n);
    std::vector<std::uint32_t> a(n, 0);  // a[0] = a_{n-1}, ..., a[n-1] = a_0
    const PolyFp t = PolyFp::monomial(p, 1);
    for (std::uint64_t idx = 0; idx < q; ++idx) {
        std::uint64_t x = idx;
        for (unsigned i = n; i-- > 0;) {
            a[i] = static_cast<std::uint32_t>(x % p);
            x /= p;
        }
        if (a[n - 1] == 0) continue;  // constant term must be nonzero
        std::vector<std::uint32_t> c(n + 1, 0);
        c[n] = 1;
        for (unsigned i = 0; i < n; ++i) {
            // coefficient of x^i is (-1)^(n-i) a_i, and a_i sits at a[n-1-i]
            const std::uint32_t ai = a[n - 1 - i];
            c[i] = ((n - i) % 2 == 0) ? ai : (ai ? p - ai : 0);
        }
        PolyFp f(p, std::move(c));
        if (!is_irreducible(f) || !is_primitive(f)) continue;
        bool compatible = true;
        for (const auto& [m, g] : lower) {
            const std::uint64_t e = (q - 1) / (ipow(p, m) - 1);
            if (!eval_at_residue(g, t.pow_mod(e, f), f).is_zero()) {
                compatible = false;
                break;
            }
        }
        if (compatible) return f;
    }
    throw Error(ErrorCode::InvalidArgument, "no compatible primitive polynomial found");
}

ModulusRegistry& ModulusRegistry::global() {
    static ModulusRegistry registry;
    return registry;
}

PolyFp ModulusRegistry::modulus(std::uint32_t p, unsigned n) {
    {
        std::lock_guard lock(mu_);
        auto it = table_.find({p, n});
        if (it != table_.end()) return it->second;
    }
    // generation recurses into subfields, so it must run unlocked
    PolyFp f = conway_style_modulus(p, n);
    std::lock_guard lock(mu_);
    auto [it, inserted] = table_.emplace(std::make_pair(p, n), f);
    return it->second;
}

bool ModulusRegistry::contains(std::uint32_t p, unsigned n) const {
    std::lock_guard lock(mu_);
    return table_.count({p, n}) != 0;
}

void ModulusRegistry::insert(const PolyFp& f) {
    if (!f.is_monic() || !is_irreducible(f))
        throw Error(ErrorCode::InvalidArgument, "modulus " + f.to_string("x") + " is not monic irreducible");
    std::lock_guard lock(mu_);
    table_[{f.prime(), static_cast<unsigned>(f.degree())}] = f;
}

std::string ModulusRegistry::format_line(const PolyFp& f) {
    std::ostringstream os;
    os << f.prime() << ' ' << f.degree() << " :";
    for (auto c : f.coeffs()) os << ' ' << c;
    return os.str();
}

PolyFp ModulusRegistry::parse_line(const std::string& line) {
    std::istringstream is(line);
    std::uint64_t p = 0;
    unsigned n = 0;
    std::string colon;
    if (!(is >> p >> n >> colon) || colon != ":" || !is_prime(p))
        throw Error(ErrorCode::ParseError, "bad modulus line: " + line);
    std::vector<std::uint32_t> c;
    std::uint64_t v;
    while (is >> v) {
        if (v >= p) throw Error(ErrorCode::ParseError, "coefficient out of range: " + line);
        c.push_back(static_cast<std::uint32_t>(v));
    }
    if (!is.eof() || c.size() != n + 1) throw Error(ErrorCode::ParseError, "expected n+1 coefficients: " + line);
    return PolyFp(static_cast<std::uint32_t>(p), std::move(c));
}

void ModulusRegistry::load(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        insert(parse_line(line));
    }
}

void ModulusRegistry::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open modulus registry " + path);
    load(in);
}

void ModulusRegistry::save(std::ostream& out) const {
    std::lock_guard lock(mu_);
    for (const auto& [key, f] : table_) out << format_line(f) << '\n';
}

}  // namespace fklab
