#include "fklab/patterns.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

std::vector<Point2> hyperbola(const FiniteField& F, FiniteField::Elem t) {
    if (t == 0) throw Error(ErrorCode::InvalidArgument, "hyperbola needs t != 0");
    std::vector<Point2> out;
    for (FiniteField::Elem a = 1; a < F.order(); ++a) out.emplace_back(a, F.div(t, a));
    return out;
}

bool on_hyperbola(const FiniteField& F, FiniteField::Elem t, Point2 v) { return F.mul(v.first, v.second) == t; }

bool is_hyperbola_triple(const FiniteField& F, const kernels::Triple& t) {
    const auto [x, y, z] = t;
    if (!x || !y || !z) return false;
    const auto xy = F.add(x, y), yz = F.add(y, z), xyz = F.add(xy, z);
    if (!xy || !yz || !xyz) return false;
    return F.inv(xy) == F.add(F.inv(x), F.inv(y)) && F.inv(yz) == F.add(F.inv(y), F.inv(z)) &&
           F.inv(xyz) == F.add(F.add(F.inv(x), F.inv(y)), F.inv(z));
}

PatternReport hyperbola_triple_search(const FieldDescriptor& d) {
    const auto& F = d.ff();
    const std::uint64_t q1 = F.order() - 1;
    check_cap(q1 * q1 * q1, "hyperbola_triple_search");
    PatternReport r;
    r.search_space = "(F_" + std::to_string(F.order()) + "^*)^3";
    r.exhaustive = true;
    for (const auto& t : kernels::hyperbola_triples_parallel(F))
        r.hits.push_back({FieldElement(d, t.x), FieldElement(d, t.y), FieldElement(d, t.z)});
    return r;
}

namespace {

std::uint64_t encode(const FiniteField& F, Point2 v) { return std::uint64_t{v.first} * F.order() + v.second; }

bool diff_ok(const FiniteField& F, FiniteField::Elem t, Point2 a, Point2 b) {
    const FiniteField::Elem dx = F.sub(a.first, b.first), dy = F.sub(a.second, b.second);
    return dx != 0 && F.mul(dx, dy) == t;
}

void grow(const FiniteField& F, FiniteField::Elem t, unsigned size, std::vector<Point2>& cur,
          const std::vector<Point2>& cands, std::vector<std::vector<Point2>>& out) {
    if (cur.size() == size) {
        out.push_back(cur);
        return;
    }
    for (const auto& c : cands) {
        if (encode(F, c) <= encode(F, cur.back())) continue;
        if (!std::all_of(cur.begin(), cur.end(), [&](Point2 v) { return diff_ok(F, t, c, v); })) continue;
        cur.push_back(c);
        grow(F, t, size, cur, cands, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<Point2>> hyperbola_diffsets(const FiniteField& F, FiniteField::Elem t, unsigned size) {
    if (t == 0) throw Error(ErrorCode::InvalidArgument, "hyperbola needs t != 0");
    const std::uint64_t q = F.order();
    check_cap(q * q, "hyperbola_diffset_search");
    std::vector<std::vector<Point2>> out;
    if (size == 0) return out;
    std::vector<Point2> all;
    for (FiniteField::Elem x = 0; x < q; ++x)
        for (FiniteField::Elem y = 0; y < q; ++y) all.emplace_back(x, y);
    // every later point differs from the first by a hyperbola point
    const auto H = hyperbola(F, t);
    std::vector<std::vector<std::vector<Point2>>> parts(all.size());
    kernels::parallel_for(all.size(), [&](std::size_t i) {
        std::vector<Point2> cur{all[i]};
        if (size == 1) {
            parts[i].push_back(cur);
            return;
        }
        std::vector<Point2> cands;
        for (const auto& h : H) {
            const Point2 c{F.add(all[i].first, h.first), F.add(all[i].second, h.second)};
            if (encode(F, c) > encode(F, all[i])) cands.push_back(c);
        }
        std::sort(cands.begin(), cands.end(), [&](Point2 a, Point2 b) { return encode(F, a) < encode(F, b); });
        grow(F, t, size, cur, cands, parts[i]);
    });
    for (auto& part : parts)
        for (auto& s : part) out.push_back(std::move(s));
    return out;
}

std::vector<std::vector<Point2>> hyperbola_diffsets_naive(const FiniteField& F, FiniteField::Elem t, unsigned size) {
    const std::uint64_t n = std::uint64_t{F.order()} * F.order();
    std::vector<std::vector<Point2>> out;
    std::vector<std::uint64_t> idx(size);
    for (unsigned i = 0; i < size; ++i) idx[i] = i;
    if (size == 0 || size > n) return out;
    auto point = [&](std::uint64_t c) { return Point2{static_cast<FiniteField::Elem>(c / F.order()), static_cast<FiniteField::Elem>(c % F.order())}; };
    for (;;) {
        std::vector<Point2> s;
        for (auto c : idx) s.push_back(point(c));
        bool ok = true;
        for (unsigned i = 0; i < size && ok; ++i)
            for (unsigned j = i + 1; j < size && ok; ++j) ok = diff_ok(F, t, s[i], s[j]) && diff_ok(F, t, s[j], s[i]);
        if (ok) out.push_back(s);
        int i = static_cast<int>(size) - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + static_cast<std::uint64_t>(i)) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

PatternReport hyperbola_diffset_search(const FieldDescriptor& d, const FieldElement& t, unsigned size) {
    const auto& F = d.ff();
    PatternReport r;
    r.search_space = "subsets of F_" + std::to_string(F.order()) + "^2 of size " + std::to_string(size) +
                     " with nonzero differences on H_" + t.to_string();
    r.exhaustive = true;
    r.exploratory = F.characteristic() == 2;
    for (const auto& s : hyperbola_diffsets(F, t.code(), size)) {
        std::vector<FieldElement> w;
        for (auto [x, y] : s) {
            w.emplace_back(d, x);
            w.emplace_back(d, y);
        }
        r.hits.push_back(std::move(w));
    }
    return r;
}

ProdCoverage prod_coverage(const FiniteField& F, const std::vector<Point2>& E) {
    if (E.size() < 2) throw Error(ErrorCode::InvalidArgument, "prod_coverage needs |E| >= 2");
    std::vector<char> hit(F.order(), 0);
    for (const auto& u : E)
        for (const auto& v : E) hit[F.mul(F.sub(u.first, v.first), F.sub(u.second, v.second))] = 1;
    ProdCoverage c;
    for (FiniteField::Elem x = 0; x < F.order(); ++x)
        if (hit[x]) c.covered.push_back(x);
    c.fraction = double(c.covered.size()) / double(F.order());
    return c;
}

namespace {

FiniteField::Elem minkowski(const FiniteField& F, Point2 u, Point2 v) {
    const auto d1 = F.sub(u.first, v.first), d2 = F.sub(u.second, v.second);
    return F.sub(F.mul(d1, d1), F.mul(d2, d2));
}

}  // namespace

std::vector<std::pair<Point2, Point2>> spacetime_scan(const FiniteField& F, FiniteField::Elem z, const std::vector<Point2>& E) {
    std::vector<std::pair<Point2, Point2>> out;
    for (const auto& u : E)
        for (const auto& v : E)
            if (minkowski(F, u, v) == z) out.emplace_back(u, v);
    return out;
}

std::vector<FiniteField::Elem> spacetime_values(const FiniteField& F, const std::vector<Point2>& E) {
    if (F.characteristic() == 2) {
        // (x1+x2) maps onto one coordinate only; the form is the square of that difference
        std::vector<char> hit(F.order(), 0);
        for (const auto& u : E)
            for (const auto& v : E) hit[minkowski(F, u, v)] = 1;
        std::vector<FiniteField::Elem> out;
        for (FiniteField::Elem x = 0; x < F.order(); ++x)
            if (hit[x]) out.push_back(x);
        return out;
    }
    std::vector<Point2> T;
    T.reserve(E.size());
    for (const auto& [a, b] : E) T.emplace_back(F.add(a, b), F.sub(a, b));
    if (T.size() < 2) return T.empty() ? std::vector<FiniteField::Elem>{} : std::vector<FiniteField::Elem>{0};
    return prod_coverage(F, T).covered;
}

PatternReport spacetime_search(const FieldDescriptor& d, const FieldElement& z, const std::vector<Point2>& E,
                               std::size_t max_hits) {
    const auto& F = d.ff();
    PatternReport r;
    r.search_space = "pairs in E x E, |E| = " + std::to_string(E.size());
    r.exhaustive = true;
    r.exploratory = true;
    const FiniteField::Elem zc = z.code();
    auto emit = [&](Point2 u, Point2 v) {
        r.hits.push_back({FieldElement(d, u.first), FieldElement(d, u.second), FieldElement(d, v.first), FieldElement(d, v.second)});
    };
    if (zc == 0 && !E.empty()) {
        emit(E.front(), E.front());
        return r;
    }
    if (F.characteristic() == 2) {
        for (const auto& [u, v] : spacetime_scan(F, zc, E)) {
            if (r.hits.size() >= max_hits) break;
            emit(u, v);
        }
        return r;
    }
    // (u1-v1)^2 - (u2-v2)^2 = (s_u - s_v)(d_u - d_v) with s = x1 + x2, d = x1 - x2
    std::vector<Point2> T;
    for (const auto& [a, b] : E) T.emplace_back(F.add(a, b), F.sub(a, b));
    for (std::size_t i = 0; i < E.size() && r.hits.size() < max_hits; ++i)
        for (std::size_t j = 0; j < E.size() && r.hits.size() < max_hits; ++j)
            if (F.mul(F.sub(T[i].first, T[j].first), F.sub(T[i].second, T[j].second)) == zc) emit(E[i], E[j]);
    return r;
}

SpacetimeCounterexample spacetime_char2_counterexample(const FiniteField& F, std::vector<FiniteField::Elem> Eo) {
    if (F.characteristic() != 2) throw Error(ErrorCode::InvalidArgument, "the counterexample needs characteristic 2");
    SpacetimeCounterexample c;
    std::sort(Eo.begin(), Eo.end());
    c.Eo = Eo;
    c.one_not_in_sumset = true;
    for (auto a : Eo)
        for (auto b : Eo)
            if (F.add(a, b) == 1) c.one_not_in_sumset = false;
    for (FiniteField::Elem x1 = 0; x1 < F.order(); ++x1)
        for (FiniteField::Elem x2 = 0; x2 < F.order(); ++x2)
            if (std::binary_search(Eo.begin(), Eo.end(), F.add(x1, x2))) c.E.emplace_back(x1, x2);
    c.witness_for_one = !spacetime_scan(F, 1, c.E).empty();
    return c;
}

FieldElement LaurentPoly::eval(const FieldElement& a) const {
    FieldElement acc = FieldElement::zero(a.descriptor());
    for (const auto& [e, c] : terms) acc = acc + c * a.pow(e);
    return acc;
}

std::string LaurentPoly::to_string() const {
    std::string s;
    for (const auto& [e, c] : terms) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")*X^" + std::to_string(e);
    }
    return s.empty() ? "0" : s;
}

PatternReport laurent_fs_search(const std::vector<FieldElement>& T, const std::vector<FieldElement>& E,
                                const LaurentPoly& poly) {
    bool nonzero = false;
    for (const auto& [e, c] : poly.terms) {
        if (e == 0 && !c.is_zero()) throw Error(ErrorCode::InvalidArgument, "Laurent polynomial needs p_0 = 0");
        if (!c.is_zero()) nonzero = true;
    }
    if (!nonzero) throw Error(ErrorCode::InvalidArgument, "Laurent polynomial is zero");
    PatternReport r;
    r.search_space = "a in T \\ {0}, |T| = " + std::to_string(T.size()) + ", |E| = " + std::to_string(E.size());
    r.exhaustive = true;
    r.exploratory = true;
    std::unordered_set<FieldElement, FieldElementHash> diffs;
    for (const auto& x : E)
        for (const auto& y : E) diffs.insert(x - y);
    for (const auto& a : T) {
        if (a.is_zero()) continue;
        const FieldElement v = poly.eval(a);
        if (diffs.count(v)) {
            for (const auto& x : E)
                for (const auto& y : E)
                    if (x - y == v) {
                        r.hits.push_back({a, x, y});
                        return r;
                    }
        }
    }
    return r;
}

}  // namespace fklab
