#include "fklab/pgl2.hpp"

#include <algorithm>

#include "fklab/error.hpp"
#include "fklab/kernels.hpp"

namespace fklab {

ProjPoint::ProjPoint(FieldElement x, FieldElement y) {
    if (x.is_zero() && y.is_zero()) throw Error(ErrorCode::InvalidArgument, "[0:0] is not a point");
    if (y.is_zero()) {
        x_ = FieldElement::one(x.descriptor());
        y_ = std::move(y);
    } else {
        x_ = x / y;
        y_ = FieldElement::one(y.descriptor());
    }
}

std::string ProjPoint::to_string() const { return "[" + x_.to_string() + ":" + y_.to_string() + "]"; }

Pgl2Element::Pgl2Element(FieldElement a, FieldElement b, FieldElement c, FieldElement d) : m_{a, b, c, d} {
    if ((a * d - b * c).is_zero()) throw Error(ErrorCode::InvalidArgument, "singular matrix");
    const FieldElement* lead = nullptr;
    for (const auto& e : m_)
        if (!e.is_zero()) {
            lead = &e;
            break;
        }
    const FieldElement s = lead->inv();
    for (auto& e : m_) e = e * s;
}

Pgl2Element Pgl2Element::u_plus(const FieldElement& b) {
    const auto& D = b.descriptor();
    return Pgl2Element(FieldElement::one(D), b, FieldElement::zero(D), FieldElement::one(D));
}

Pgl2Element Pgl2Element::u_minus(const FieldElement& b) {
    const auto& D = b.descriptor();
    return Pgl2Element(FieldElement::one(D), FieldElement::zero(D), b, FieldElement::one(D));
}

ProjPoint Pgl2Element::act(const ProjPoint& v) const {
    return ProjPoint(m_[0] * v.x() + m_[1] * v.y(), m_[2] * v.x() + m_[3] * v.y());
}

Pgl2Element operator*(const Pgl2Element& g, const Pgl2Element& h) {
    const auto& a = g.m_;
    const auto& b = h.m_;
    return Pgl2Element(a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                       a[2] * b[1] + a[3] * b[3]);
}

std::size_t Pgl2Element::hash() const noexcept {
    std::size_t h = 0;
    for (const auto& e : m_) h = h * 0x100000001B3ull ^ e.hash();
    return h;
}

std::string Pgl2Element::to_string() const {
    return "[[" + m_[0].to_string() + "," + m_[1].to_string() + "],[" + m_[2].to_string() + "," + m_[3].to_string() + "]]";
}

std::array<ProjPoint, 3> standard_frame(const FieldDescriptor& d) {
    const auto one = FieldElement::one(d), zero = FieldElement::zero(d);
    return {ProjPoint(one, zero), ProjPoint(zero, one), ProjPoint(one, one)};
}

Pgl2Element frame_map(const FieldElement& x1, const FieldElement& x2, const FieldElement& x3) {
    // columns are multiples of (x1, 1) and (x2, 1) chosen so that their sum is a multiple of (x3, 1)
    const FieldElement l = x3 - x2, m = x1 - x3;
    return Pgl2Element(x1 * l, x2 * m, l, m);
}

mpz_class q_set_size(std::size_t n) {
    if (n < 3) return 0;
    return mpz_class(static_cast<unsigned long>(n)) * (n - 1) * (n - 2);
}

namespace {

std::vector<FieldElement> dedup(std::vector<FieldElement> A) {
    std::sort(A.begin(), A.end());
    A.erase(std::unique(A.begin(), A.end()), A.end());
    return A;
}

}  // namespace

Pgl2Set q_set(const std::vector<FieldElement>& A0) {
    const auto A = dedup(A0);
    if (A.size() < 3) throw Error(ErrorCode::TooSmall, "Q(A) needs |A| >= 3");
    const std::size_t n = A.size();
    std::vector<std::vector<Pgl2Element>> parts(n);
    kernels::parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (j != i && k != i && k != j) parts[i].push_back(frame_map(A[i], A[j], A[k]));
    });
    Pgl2Set out;
    out.reserve(n * (n - 1) * (n - 2));
    for (auto& part : parts)
        for (auto& g : part) out.insert(std::move(g));
    return out;
}

FieldElement phi_b(const FieldElement& b, const FieldElement& x) {
    return x / (FieldElement::one(x.descriptor()) + b * x);
}

std::vector<FieldElement> phi_b_image(const FieldElement& b, const std::vector<FieldElement>& A) {
    std::vector<FieldElement> out;
    for (const auto& x : A)
        if (!(FieldElement::one(x.descriptor()) + b * x).is_zero()) out.push_back(phi_b(b, x));
    return dedup(std::move(out));
}

namespace {

Pgl2Set left_multiply(const Pgl2Element& h, const Pgl2Set& S) {
    Pgl2Set out;
    out.reserve(S.size());
    for (const auto& g : S) out.insert(h * g);
    return out;
}

bool contains_all(const Pgl2Set& big, const Pgl2Set& small) {
    return std::all_of(small.begin(), small.end(), [&](const Pgl2Element& g) { return big.count(g) > 0; });
}

std::vector<FieldElement> intersect(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    const auto A = dedup(a), B = dedup(b);
    std::vector<FieldElement> out;
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
    return out;
}

std::vector<FieldElement> shifted(const std::vector<FieldElement>& A, const FieldElement& b) {
    std::vector<FieldElement> out;
    for (const auto& x : A) out.push_back(x + b);
    return out;
}

}  // namespace

TranslateCheck translate_identity_check(const std::vector<FieldElement>& A, const FieldElement& b) {
    TranslateCheck r;
    const auto QA = q_set(A);
    r.plus_equal = left_multiply(Pgl2Element::u_plus(b), QA) == q_set(shifted(A, b));
    const auto img = phi_b_image(b, A);
    const auto uQ = left_multiply(Pgl2Element::u_minus(b), QA);
    r.minus_contains = img.size() < 3 || contains_all(uQ, q_set(img));
    return r;
}

SectionCheck inversion_section_check(const std::vector<FieldElement>& A0, const FieldElement& b) {
    const auto A = dedup(A0);
    for (const auto& x : A) {
        if (x.is_zero()) throw Error(ErrorCode::NotInverseClosed, "0 in A");
        if (!std::binary_search(A.begin(), A.end(), x.inv()))
            throw Error(ErrorCode::NotInverseClosed, "1/" + x.to_string() + " not in A");
    }
    SectionCheck r;
    r.lhs = intersect(A, phi_b_image(b, A)).size();
    std::vector<FieldElement> nz;
    for (const auto& x : A)
        if (!x.is_zero()) nz.push_back(x);
    r.rhs = intersect(nz, shifted(A, b)).size();
    r.equal = r.lhs == r.rhs;
    return r;
}

std::vector<FieldElement> symmetric_support(const std::vector<FieldElement>& F) {
    std::vector<FieldElement> out;
    for (const auto& x : F)
        if (!x.is_zero()) {
            out.push_back(x);
            out.push_back(x.inv());
        }
    return dedup(std::move(out));
}

FolnerRatio pgl2_folner_ratio(const std::vector<FieldElement>& F, const FieldElement& b, Generator gen,
                              std::size_t explicit_limit, RatioSupport support) {
    std::vector<FieldElement> A = F;
    if (support == RatioSupport::Symmetric) {
        A = symmetric_support(F);
    } else {
        std::sort(A.begin(), A.end());
        A.erase(std::unique(A.begin(), A.end()), A.end());
    }
    const mpz_class total = q_set_size(A.size());
    if (total == 0) throw Error(ErrorCode::TooSmall, "Q(A) is empty");
    FolnerRatio r;
    if (gen == Generator::Plus) {
        r.ratio = mpq_class(q_set_size(intersect(A, shifted(A, b)).size()), total);
        r.ratio.canonicalize();
        return r;
    }
    r.ratio = mpq_class(q_set_size(intersect(A, phi_b_image(b, A)).size()), total);
    r.ratio.canonicalize();
    if (A.size() <= explicit_limit) {
        const auto QA = q_set(A);
        const auto uQ = left_multiply(Pgl2Element::u_minus(b), QA);
        std::size_t common = 0;
        for (const auto& g : QA) common += uQ.count(g);
        r.true_ratio = mpq_class(mpz_class(static_cast<unsigned long>(common)), total);
        r.true_ratio->canonicalize();
    }
    return r;
}

}  // namespace fklab
