#include "fklab/folner.hpp"

#include <algorithm>

#include "fklab/error.hpp"
#include "fklab/kernels.hpp"
#include "fklab/modarith.hpp"
#include "fklab/tower.hpp"

namespace fklab {

namespace {

bool entry_less(const WeightedSet::Entry& a, const WeightedSet::Entry& b) { return a.x < b.x; }

std::vector<WeightedSet::Entry> merge_sorted(std::vector<WeightedSet::Entry> v) {
    std::sort(v.begin(), v.end(), entry_less);
    std::vector<WeightedSet::Entry> out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!out.empty() && out.back().x == e.x) out.back().w += e.w;
        else out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

WeightedSet::WeightedSet(FieldDescriptor d, std::vector<Entry> entries) : desc_(std::move(d)) {
    if (entries.empty()) throw Error(ErrorCode::BadWeight, "empty weighted set");
    for (const auto& e : entries) {
        if (!(e.x.descriptor() == desc_)) throw Error(ErrorCode::DescriptorMismatch, "support point from another field");
        if (sgn(e.w) <= 0) throw Error(ErrorCode::BadWeight, "weights must be positive");
    }
    entries_ = merge_sorted(std::move(entries));
    mpq_class total = 0;
    for (const auto& e : entries_) total += e.w;
    if (total != 1) throw Error(ErrorCode::BadWeight, "total mass " + total.get_str() + " != 1");
    uniform_ = std::all_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.w == entries_[0].w; });
}

WeightedSet WeightedSet::uniform(FieldDescriptor d, std::vector<FieldElement> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const mpq_class w(1, static_cast<unsigned long>(xs.size()));
    std::vector<Entry> es;
    es.reserve(xs.size());
    for (auto& x : xs) es.push_back({std::move(x), w});
    return WeightedSet(std::move(d), std::move(es));
}

mpq_class WeightedSet::weight(const FieldElement& x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x, [](const Entry& e, const FieldElement& v) { return e.x < v; });
    return (it != entries_.end() && it->x == x) ? it->w : mpq_class(0);
}

bool WeightedSet::contains(const FieldElement& x) const { return sgn(weight(x)) > 0; }

mpq_class WeightedSet::mass_of_zero() const { return weight(FieldElement::zero(desc_)); }

WeightedSet WeightedSet::without_zero() const {
    const mpq_class z = mass_of_zero();
    if (sgn(z) == 0) return *this;
    const mpq_class rest = 1 - z;
    if (sgn(rest) == 0) throw Error(ErrorCode::EmptyAfterDrop, "support is {0}");
    std::vector<Entry> es;
    es.reserve(entries_.size() - 1);
    for (const auto& e : entries_)
        if (!e.x.is_zero()) es.push_back({e.x, e.w / rest});
    return WeightedSet(desc_, std::move(es));
}

FolnerRecipe FolnerRecipe::tower(std::uint32_t p, std::vector<unsigned> schedule) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "tower needs a prime p");
    if (schedule.empty()) throw Error(ErrorCode::InvalidArgument, "empty tower schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] == 0) throw Error(ErrorCode::InvalidArgument, "tower degrees must be positive");
        if (i && schedule[i] % schedule[i - 1] != 0)
            throw Error(ErrorCode::InvalidArgument, "tower degree " + std::to_string(schedule[i - 1]) +
                                                        " does not divide " + std::to_string(schedule[i]));
    }
    FolnerRecipe r;
    r.kind_ = Kind::SubfieldTower;
    r.p_ = p;
    r.sched_ = std::move(schedule);
    check_cap(ipow(p, r.sched_.back()), "tower top field");
    r.desc_ = FieldDescriptor::finite(p, r.sched_.back());
    return r;
}

FolnerRecipe FolnerRecipe::addbox(const FieldDescriptor& field, const FieldElement& d, std::int64_t R) {
    if (field.is_finite()) throw Error(ErrorCode::DescriptorMismatch, "boxes live in Q or F_p(t)");
    if (!(d.descriptor() == field) || d.is_zero()) throw Error(ErrorCode::InvalidArgument, "box denominator must be nonzero");
    if (field.is_rational() && (d.rational().get_den() != 1 || d.rational() <= 0))
        throw Error(ErrorCode::InvalidArgument, "box denominator must be a positive integer");
    if (field.is_function_field() && !d.ratfunc().den().is_one())
        throw Error(ErrorCode::InvalidArgument, "box denominator must be a polynomial");
    if (R <= 0) throw Error(ErrorCode::InvalidArgument, "box range must be positive");
    FolnerRecipe r;
    r.kind_ = Kind::AdditiveBox;
    r.desc_ = field;
    r.p_ = field.characteristic();
    r.d_ = d;
    r.R_ = R;
    return r;
}

namespace {

std::vector<FieldElement> box_primes(const FieldDescriptor& field, unsigned P) {
    std::vector<FieldElement> out;
    if (field.is_rational()) {
        for (auto p : primes_up_to(P)) out.emplace_back(mpq_class(static_cast<unsigned long>(p)));
    } else {
        for (unsigned deg = 1; deg <= P; ++deg)
            for (auto& f : monic_irreducibles(field.characteristic(), deg))
                out.emplace_back(field.characteristic(), RatFunc(f));
    }
    return out;
}

}  // namespace

FolnerRecipe FolnerRecipe::dilbox(const FieldDescriptor& field, unsigned P, unsigned E, std::optional<FieldElement> d,
                                  std::int64_t R) {
    if (field.is_finite()) throw Error(ErrorCode::DescriptorMismatch, "boxes live in Q or F_p(t)");
    const auto primes = box_primes(field, P);
    if (primes.empty()) throw Error(ErrorCode::InvalidArgument, "prime bound admits no primes");
    FieldElement expect = FieldElement::one(field);
    for (const auto& pi : primes) expect = expect * pi.pow(E);
    if (d && !(*d == expect))
        throw Error(ErrorCode::InvalidArgument, "dilbox denominator must be " + expect.to_string());
    FolnerRecipe r = addbox(field, expect, R);
    r.kind_ = Kind::DilatedBoxAverage;
    r.P_ = P;
    r.E_ = E;
    return r;
}

std::int64_t FolnerRecipe::range_at(unsigned k) const {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "recipe indices start at 1");
    if (desc_.is_function_field()) return R_ + static_cast<std::int64_t>(k) - 1;
    if (k > 40) throw Error(ErrorCode::CapExceeded, "box index too large");
    return R_ << (k - 1);
}

std::optional<unsigned> FolnerRecipe::max_index() const {
    if (kind_ == Kind::SubfieldTower) return static_cast<unsigned>(sched_.size());
    return std::nullopt;
}

unsigned FolnerRecipe::degree_at(unsigned k) const {
    if (kind_ != Kind::SubfieldTower) throw Error(ErrorCode::InvalidArgument, "not a tower recipe");
    if (k == 0 || k > sched_.size()) throw Error(ErrorCode::InvalidArgument, "tower index out of range");
    return sched_[k - 1];
}

std::vector<FieldElement> FolnerRecipe::multipliers() const {
    if (kind_ != Kind::DilatedBoxAverage) return {FieldElement::one(desc_)};
    std::vector<FieldElement> us{FieldElement::one(desc_)};
    for (const auto& pi : box_primes(desc_, P_)) {
        std::vector<FieldElement> next;
        for (const auto& u : us)
            for (std::int64_t e = -static_cast<std::int64_t>(E_); e <= static_cast<std::int64_t>(E_); ++e)
                next.push_back(u * pi.pow(e));
        us = std::move(next);
    }
    std::sort(us.begin(), us.end());
    return us;
}

std::string FolnerRecipe::to_string() const {
    switch (kind_) {
        case Kind::SubfieldTower: {
            std::string s = "tower:p=" + std::to_string(p_) + ":sched=";
            for (std::size_t i = 0; i < sched_.size(); ++i) s += (i ? "," : "") + std::to_string(sched_[i]);
            return s;
        }
        case Kind::AdditiveBox: return "addbox:d=" + d_.to_string() + ":R=" + std::to_string(R_);
        case Kind::DilatedBoxAverage:
            return "dilbox:P=" + std::to_string(P_) + ":E=" + std::to_string(E_) + ":d=" + d_.to_string() +
                   ":R=" + std::to_string(R_);
    }
    return "?";
}

namespace {

/// Numerators of the additive box: +-1..+-R over Q, nonzero polynomials of degree < R over F_p(t).
std::vector<FieldElement> box_numerators(const FieldDescriptor& field, std::int64_t R) {
    std::vector<FieldElement> out;
    if (field.is_rational()) {
        check_cap(static_cast<std::uint64_t>(2 * R), "additive box");
        out.reserve(static_cast<std::size_t>(2 * R));
        for (std::int64_t j = 1; j <= R; ++j) {
            out.emplace_back(mpq_class(static_cast<long>(j)));
            out.emplace_back(mpq_class(-static_cast<long>(j)));
        }
        return out;
    }
    const std::uint32_t p = field.characteristic();
    if (R > 63) throw Error(ErrorCode::CapExceeded, "additive box too large");
    const std::uint64_t n = ipow(p, static_cast<unsigned>(R));
    check_cap(n, "additive box");
    out.reserve(n - 1);
    for (std::uint64_t code = 1; code < n; ++code) {
        std::vector<std::uint32_t> c;
        for (std::uint64_t x = code; x; x /= p) c.push_back(static_cast<std::uint32_t>(x % p));
        out.emplace_back(p, RatFunc(PolyFp(p, c)));
    }
    return out;
}

}  // namespace

WeightedSet realize(const FolnerRecipe& recipe, unsigned k) {
    const FieldDescriptor& D = recipe.descriptor();
    if (recipe.kind() == FolnerRecipe::Kind::SubfieldTower) {
        const unsigned n = recipe.degree_at(k);
        const TowerMap emb(FiniteField::get(recipe.p(), n), D.ff_ptr());
        const std::uint32_t q = emb.source()->order();
        std::vector<FieldElement> xs;
        xs.reserve(q);
        for (FiniteField::Elem c = 0; c < q; ++c) xs.emplace_back(D, emb(c));
        return WeightedSet::uniform(D, std::move(xs));
    }
    const auto nums = box_numerators(D, recipe.range_at(k));
    const FieldElement dinv = recipe.d().inv();
    if (recipe.kind() == FolnerRecipe::Kind::AdditiveBox) {
        std::vector<FieldElement> xs;
        xs.reserve(nums.size());
        for (const auto& j : nums) xs.push_back(j * dinv);
        return WeightedSet::uniform(D, std::move(xs));
    }
    const auto us = recipe.multipliers();
    check_cap(static_cast<std::uint64_t>(us.size()) * nums.size(), "dilated box average");
    const mpq_class w(1, static_cast<unsigned long>(us.size() * nums.size()));
    std::vector<WeightedSet::Entry> es(us.size() * nums.size(), WeightedSet::Entry{FieldElement::zero(D), w});
    kernels::parallel_for(us.size(), [&](std::size_t i) {
        const FieldElement s = us[i] * dinv;
        for (std::size_t j = 0; j < nums.size(); ++j) es[i * nums.size() + j].x = s * nums[j];
    });
    return WeightedSet(D, std::move(es));
}

mpq_class folner_defect(const WeightedSet& mu0, const FieldElement& a, DefectMode mode, ZeroPolicy zeros) {
    const WeightedSet* mu = &mu0;
    std::optional<WeightedSet> dropped;
    if (mode != DefectMode::Additive) {
        if (mode == DefectMode::Multiplicative && a.is_zero()) throw Error(ErrorCode::ZeroArgument, "dilation by 0");
        if (sgn(mu0.mass_of_zero()) > 0) {
            if (zeros == ZeroPolicy::Reject) throw Error(ErrorCode::ZeroInSupport, "0 in support");
            dropped.emplace(mu0.without_zero());
            mu = &*dropped;
        }
    }
    if (mode != DefectMode::Inversion && !(a.descriptor() == mu->descriptor()))
        throw Error(ErrorCode::DescriptorMismatch, "shift from another field");
    const auto& es = mu->entries();
    std::vector<WeightedSet::Entry> moved(es.size(), WeightedSet::Entry{FieldElement::zero(mu->descriptor()), 0});
    kernels::parallel_for(es.size(), [&](std::size_t i) {
        const FieldElement& x = es[i].x;
        moved[i].w = es[i].w;
        switch (mode) {
            case DefectMode::Additive: moved[i].x = x + a; break;
            case DefectMode::Multiplicative: moved[i].x = a * x; break;
            case DefectMode::Inversion: moved[i].x = x.inv(); break;
        }
    });
    // T is injective, so the pushforward has distinct points; merge-walk the two sorted lists
    std::sort(moved.begin(), moved.end(), entry_less);
    mpq_class tv = 0;
    std::size_t i = 0, j = 0;
    while (i < es.size() || j < moved.size()) {
        if (j == moved.size() || (i < es.size() && es[i].x < moved[j].x)) {
            tv += es[i++].w;
        } else if (i == es.size() || moved[j].x < es[i].x) {
            tv += moved[j++].w;
        } else {
            tv += abs(es[i].w - moved[j].w);
            ++i;
            ++j;
        }
    }
    return tv;
}

WeightedSet inverse_pushforward(const WeightedSet& mu, ZeroPolicy zeros) {
    if (sgn(mu.mass_of_zero()) > 0 && zeros == ZeroPolicy::Reject) throw Error(ErrorCode::ZeroInSupport, "0 in support");
    const WeightedSet base = mu.without_zero();
    std::vector<WeightedSet::Entry> es;
    es.reserve(base.size());
    for (const auto& e : base.entries()) es.push_back({e.x.inv(), e.w});
    return WeightedSet(base.descriptor(), std::move(es));
}

}  // namespace fklab
