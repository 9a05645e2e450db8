#pragma once

#include <omp.h>

#include <complex>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

#include "fklab/finite_field.hpp"

namespace fklab::kernels {

void set_threads(int n);
int threads() noexcept;

/// Runs f(i) for i in [0, n) on the OpenMP team. An exception thrown by any iteration is
/// rethrown after the loop; when several iterations throw, the lowest index wins.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    std::exception_ptr err;
    std::size_t err_at = n;
    std::mutex mu;
#pragma omp parallel for schedule(static) num_threads(threads())
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(mu);
            if (static_cast<std::size_t>(i) < err_at) {
                err_at = static_cast<std::size_t>(i);
                err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
}

/// Fixed-shape pairwise reduction; the result depends only on the input order.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v);
/// Plain left-to-right accumulation, the reference for pairwise_sum.
std::complex<double> serial_sum(std::span<const std::complex<double>> v);

/// hist[e] = #{a in F_q^* : Tr(b1 a) + Tr(b2 / a) = e mod p}
std::vector<std::int64_t> kloosterman_histogram_serial(const FiniteField& F, FiniteField::Elem b1, FiniteField::Elem b2);
std::vector<std::int64_t> kloosterman_histogram_parallel(const FiniteField& F, FiniteField::Elem b1, FiniteField::Elem b2);

/// hist[e] = #{i : exps[i] = e}, e < m
std::vector<std::int64_t> phase_histogram_serial(std::span<const std::uint64_t> exps, std::uint64_t m);
std::vector<std::int64_t> phase_histogram_parallel(std::span<const std::uint64_t> exps, std::uint64_t m);

struct Triple {
    FiniteField::Elem x, y, z;
    friend bool operator==(const Triple&, const Triple&) = default;
};
/// (x,y,z) in (F_q^*)^3 with x+y, y+z, x+y+z nonzero and the three reciprocal-sum equations,
/// in lexicographic code order.
std::vector<Triple> hyperbola_triples_serial(const FiniteField& F);
std::vector<Triple> hyperbola_triples_parallel(const FiniteField& F);

}  // namespace fklab::kernels
