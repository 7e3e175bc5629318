#include "mpfa/dft.hpp"

#include "mpfa/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace mpfa {

namespace {

constexpr double kSnap = 1e-12;

template <class Build>
const Schedule& cached(std::map<std::size_t, std::unique_ptr<Schedule>>& cache, std::mutex& mu,
                       std::size_t n, Build build) {
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<Schedule>(build());
    return *slot;
}

} // namespace

cplx twiddle(std::size_t n, std::size_t q) {
    if (n == 0)
        throw DomainError("twiddle: n = 0");
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(q % n) / static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

std::vector<cplx> twiddle_table(std::size_t n) {
    std::vector<cplx> t(n);
    for (std::size_t q = 0; q < n; ++q)
        t[q] = twiddle(n, q);
    return t;
}

ComplexMatrix dft_matrix(std::size_t n) {
    if (n == 0)
        throw DomainError("dft_matrix: n must be positive");
    const auto w = twiddle_table(n);
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = w[(r * c) % n];
    return m;
}

std::vector<cplx> dft_direct(std::span<const cplx> x) {
    const std::size_t n = x.size();
    if (n == 0)
        throw DomainError("dft_direct: empty input");
    const auto w = twiddle_table(n);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t m = 0; m < n; ++m)
            acc += w[(m * k) % n] * x[m];
        out[k] = acc;
    }
    return out;
}

bool has_fast_exact(std::size_t n) { return n == 3 || n == 11 || n == 31; }

const Schedule& fast_exact_schedule(std::size_t n) {
    if (!has_fast_exact(n))
        throw DomainError("fast_exact: supported lengths are 3, 11, 31");
    static std::map<std::size_t, std::unique_ptr<Schedule>> cache;
    static std::mutex mu;
    return cached(cache, mu, n, [n] { return butterfly_schedule(dft_matrix(n), kSnap); });
}

std::vector<cplx> fast_exact(std::size_t n, std::span<const cplx> x) {
    const Schedule& s = fast_exact_schedule(n);
    if (x.size() != n)
        throw DomainError("fast_exact: length mismatch");
    return s.apply(x);
}

const Schedule& direct_schedule(std::size_t n) {
    if (n == 0)
        throw DomainError("direct_schedule: n must be positive");
    static std::map<std::size_t, std::unique_ptr<Schedule>> cache;
    static std::mutex mu;
    return cached(cache, mu, n, [n] { return dense_schedule(dft_matrix(n), kSnap); });
}

} // namespace mpfa
