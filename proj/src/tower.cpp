#include "fklab/tower.hpp"

#include "fklab/error.hpp"
#include "fklab/modarith.hpp"

namespace fklab {

namespace {

FiniteField::Elem eval_in(const FiniteField& target, const PolyFp& f, FiniteField::Elem x) {
    FiniteField::Elem acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = target.add(target.mul(acc, x), target.from_int(f.coeff(i)));
    return acc;
}

}  // namespace

TowerMap::TowerMap(FiniteFieldPtr source, FiniteFieldPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (source_->characteristic() != target_->characteristic() || target_->degree() % source_->degree() != 0)
        throw Error(ErrorCode::DescriptorMismatch, "no embedding F_" + std::to_string(source_->order()) + " -> F_" +
                                                       std::to_string(target_->order()));
    const PolyFp& fm = source_->modulus();
    const std::uint64_t r = (target_->order() - 1) / (source_->order() - 1);
    // Conway compatibility puts the source's x at g^r; otherwise search the roots of f_m.
    Elem cand = target_->exp(r);
    if (source_->degree() == 1) {
        cand = static_cast<Elem>(sub_mod(0, fm.coeff(0), fm.prime()));
    } else if (eval_in(*target_, fm, cand) != 0) {
        cand = 0;
        for (std::uint64_t j = 0; j < target_->order() - 1; j += r) {
            const Elem z = target_->exp(j);
            if (eval_in(*target_, fm, z) == 0) {
                cand = z;
                break;
            }
        }
        if (cand == 0) throw Error(ErrorCode::InvalidArgument, "modulus has no root in target");
    }
    theta_ = cand;
    build();
}

TowerMap::TowerMap(FiniteFieldPtr source, FiniteFieldPtr target, Elem theta)
    : source_(std::move(source)), target_(std::move(target)), theta_(theta) {
    build();
}

void TowerMap::build() {
    const unsigned m = source_->degree(), n = target_->degree();
    matrix_.assign(n, std::vector<std::uint32_t>(m, 0));
    Elem pw = 1;
    for (unsigned i = 0; i < m; ++i) {
        const auto d = target_->digits(pw);
        for (unsigned r = 0; r < n; ++r) matrix_[r][i] = d[r];
        pw = target_->mul(pw, theta_);
    }
    const Elem g_img = apply_matrix(source_->generator());
    shift_ = target_->log(g_img);
}

TowerMap TowerMap::between(std::uint32_t p, unsigned m, unsigned n) {
    return TowerMap(FiniteField::get(p, m), FiniteField::get(p, n));
}

TowerMap::Elem TowerMap::apply_matrix(Elem a) const {
    const std::uint32_t p = source_->characteristic();
    const auto x = source_->digits(a);
    std::vector<std::uint32_t> y(target_->degree(), 0);
    for (unsigned r = 0; r < y.size(); ++r) {
        std::uint64_t acc = 0;
        for (unsigned i = 0; i < x.size(); ++i) acc += std::uint64_t{matrix_[r][i]} * x[i];
        y[r] = static_cast<std::uint32_t>(acc % p);
    }
    return target_->from_digits(y);
}

bool TowerMap::in_image(Elem b) const { return target_->in_subfield(b, source_->degree()); }

TowerMap::Elem TowerMap::preimage(Elem b) const {
    if (!in_image(b)) throw Error(ErrorCode::InvalidArgument, "element not in the embedded subfield");
    if (b == 0) return 0;
    const std::uint64_t qm1 = source_->order() - 1;
    const std::uint64_t r = (target_->order() - 1) / qm1;
    // shift_ = r * u with u a unit mod q_m - 1
    const std::uint64_t u = (shift_ / r) % qm1;
    const std::uint64_t j = (target_->log(b) / r) % qm1;
    const std::uint64_t uinv = qm1 == 1 ? 0 : inv_mod_u64(u, qm1);
    return source_->exp(static_cast<std::uint64_t>((static_cast<unsigned __int128>(j) * uinv) % (qm1 == 1 ? 1 : qm1)));
}

TowerMap TowerMap::then(const TowerMap& next) const {
    if (!same_field(*next.source_, *target_)) throw Error(ErrorCode::DescriptorMismatch, "tower maps do not compose");
    return TowerMap(source_, next.target_, next(theta_));
}

}  // namespace fklab
