#include "fklab/kernels.hpp"

#include <atomic>

namespace fklab::kernels {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n > 0 ? n : 0); }

int threads() noexcept {
    const int n = g_threads.load();
    return n > 0 ? n : omp_get_max_threads();
}

std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
    if (v.empty()) return {};
    if (v.size() <= 8) {
        std::complex<double> s = v[0];
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i];
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

std::complex<double> serial_sum(std::span<const std::complex<double>> v) {
    std::complex<double> s{};
    for (const auto& z : v) s += z;
    return s;
}

std::vector<std::int64_t> kloosterman_histogram_serial(const FiniteField& F, FiniteField::Elem b1, FiniteField::Elem b2) {
    const std::uint32_t p = F.characteristic();
    std::vector<std::int64_t> hist(p, 0);
    for (FiniteField::Elem a = 1; a < F.order(); ++a) {
        const std::uint32_t e = F.trace(F.mul(b1, a)) + F.trace(F.mul(b2, F.inv(a)));
        ++hist[e % p];
    }
    return hist;
}

std::vector<std::int64_t> kloosterman_histogram_parallel(const FiniteField& F, FiniteField::Elem b1, FiniteField::Elem b2) {
    const std::uint32_t p = F.characteristic();
    const std::int64_t q = F.order();
    const auto tr = F.trace_table();
    const auto ex = F.exp_table();
    const std::int64_t m = q - 1;
    const std::uint32_t l1 = b1 ? F.log(b1) : 0, l2 = b2 ? F.log(b2) : 0;
    const int nt = threads();
    std::vector<std::vector<std::int64_t>> local(static_cast<std::size_t>(nt), std::vector<std::int64_t>(p, 0));
    // a = g^j runs over F_q^*; b a = g^{l1+j}, b / a = g^{l2-j}
#pragma omp parallel num_threads(nt)
    {
        auto& h = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < m; ++j) {
            const std::uint32_t t1 = b1 ? tr[ex[static_cast<std::size_t>((l1 + j) % m)]] : 0;
            const std::uint32_t t2 = b2 ? tr[ex[static_cast<std::size_t>(((l2 - j) % m + m) % m)]] : 0;
            ++h[(t1 + t2) % p];
        }
    }
    std::vector<std::int64_t> hist(p, 0);
    for (const auto& h : local)
        for (std::uint32_t e = 0; e < p; ++e) hist[e] += h[e];
    return hist;
}

std::vector<std::int64_t> phase_histogram_serial(std::span<const std::uint64_t> exps, std::uint64_t m) {
    std::vector<std::int64_t> hist(m, 0);
    for (auto e : exps) ++hist[e % m];
    return hist;
}

std::vector<std::int64_t> phase_histogram_parallel(std::span<const std::uint64_t> exps, std::uint64_t m) {
    const int nt = threads();
    if (nt == 1 || exps.size() < 4096) return phase_histogram_serial(exps, m);
    std::vector<std::vector<std::int64_t>> local(static_cast<std::size_t>(nt), std::vector<std::int64_t>(m, 0));
#pragma omp parallel num_threads(nt)
    {
        auto& h = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(exps.size()); ++i) ++h[exps[static_cast<std::size_t>(i)] % m];
    }
    std::vector<std::int64_t> hist(m, 0);
    for (const auto& h : local)
        for (std::uint64_t e = 0; e < m; ++e) hist[e] += h[e];
    return hist;
}

namespace {

void triples_with_x(const FiniteField& F, FiniteField::Elem x, std::vector<Triple>& out) {
    const FiniteField::Elem ix = F.inv(x);
    for (FiniteField::Elem y = 1; y < F.order(); ++y) {
        const FiniteField::Elem xy = F.add(x, y);
        if (xy == 0) continue;
        const FiniteField::Elem iy = F.inv(y);
        if (F.inv(xy) != F.add(ix, iy)) continue;
        for (FiniteField::Elem z = 1; z < F.order(); ++z) {
            const FiniteField::Elem yz = F.add(y, z), xyz = F.add(xy, z);
            if (yz == 0 || xyz == 0) continue;
            const FiniteField::Elem iz = F.inv(z);
            if (F.inv(yz) != F.add(iy, iz)) continue;
            if (F.inv(xyz) != F.add(F.add(ix, iy), iz)) continue;
            out.push_back({x, y, z});
        }
    }
}

}  // namespace

std::vector<Triple> hyperbola_triples_serial(const FiniteField& F) {
    std::vector<Triple> out;
    for (FiniteField::Elem x = 1; x < F.order(); ++x) triples_with_x(F, x, out);
    return out;
}

std::vector<Triple> hyperbola_triples_parallel(const FiniteField& F) {
    // partition by x, merge in x order
    std::vector<std::vector<Triple>> parts(F.order());
    parallel_for(F.order() - 1, [&](std::size_t i) { triples_with_x(F, static_cast<FiniteField::Elem>(i + 1), parts[i + 1]); });
    std::vector<Triple> out;
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

}  // namespace fklab::kernels
