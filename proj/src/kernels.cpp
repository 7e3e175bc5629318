#include "mpfa/kernels.hpp"

#include "mpfa/errors.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>

namespace mpfa {

namespace {

void require_ground(std::size_t n) {
    if (!is_ground_length(n))
        throw DomainError("ground kernels exist for n = 3, 11, 31 only");
}

LowComplexityMatrix product(const LowComplexityMatrix& a, const LowComplexityMatrix& b) {
    const std::size_t n = a.size();
    LowComplexityMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) {
            if (a(r, k).is_zero())
                continue;
            for (std::size_t c = 0; c < n; ++c)
                out(r, c) = out(r, c) + a(r, k) * b(k, c);
        }
    return out;
}

LowComplexityMatrix transposed(const LowComplexityMatrix& a) {
    LowComplexityMatrix t(a.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c)
            t(c, r) = a(r, c);
    return t;
}

KernelFactorization build(std::size_t n) {
    const LowComplexityMatrix& t = kernel(n);
    KernelFactorization f;
    f.n = n;

    const Stage a = butterfly_stage(n);
    f.a_matrix = LowComplexityMatrix(n);
    for (std::size_t r = 0; r < n; ++r)
        for (const Term& term : a.rows[r])
            f.a_matrix(r, term.src) = DyadicComplex(term.coef.neg ? -1 : 1, 0);

    const std::size_t h = (n + 1) / 2;
    f.core = LowComplexityMatrix(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const DyadicComplex& e = t(r, c);
            if (r < h && c < h)
                f.core(r, c) = DyadicComplex(e.re_num(), 0, e.log2_den());
            else if (r >= h && c >= h)
                f.core(r, c) = DyadicComplex(0, e.im_num(), e.log2_den());
        }

    f.schedule = butterfly_schedule(t.to_complex(), 0.0);
    f.op_count = f.schedule.cost();
    return f;
}

} // namespace

bool is_ground_length(std::size_t n) { return n == 3 || n == 11 || n == 31; }

const LowComplexityMatrix& kernel(std::size_t n) {
    require_ground(n);
    static std::map<std::size_t, std::unique_ptr<LowComplexityMatrix>> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<LowComplexityMatrix>(candidate_matrix(n, kAlphaStar));
    return *slot;
}

Rational kernel_eta(std::size_t n) {
    const ScaleVector s = scale_vector(kernel(n));
    for (std::size_t i = 2; i < n; ++i)
        if (!(s.radicands[i] == s.radicands[1]))
            throw InternalError("kernel rows do not share a common norm");
    return s.radicands[1];
}

ScaleVector kernel_scale(std::size_t n, ScaleMode mode) {
    ScaleVector s = scale_vector(kernel(n));
    s.mode = mode;
    return s;
}

LowComplexityMatrix KernelFactorization::expand() const {
    return product(transposed(a_matrix), product(core, a_matrix));
}

const KernelFactorization& factorization(std::size_t n) {
    require_ground(n);
    static std::map<std::size_t, std::unique_ptr<KernelFactorization>> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<KernelFactorization>(build(n));
    return *slot;
}

std::vector<cplx> apply_kernel_fast(std::size_t n, std::span<const cplx> x) {
    const KernelFactorization& f = factorization(n);
    if (x.size() != n)
        throw DomainError("apply_kernel_fast: length mismatch");
    return f.schedule.apply(x);
}

std::vector<cplx> apply_scale(const ScaleVector& scale, std::span<const cplx> x) {
    if (x.size() != scale.size())
        throw DomainError("apply_scale: length mismatch");
    const auto coefs = scale.coefs();
    return Schedule({diagonal_stage(coefs)}).apply(x);
}

std::string kernel_to_json(std::size_t n) {
    const LowComplexityMatrix& t = kernel(n);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < n; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < n; ++c)
            row.push_back({t(r, c).re_num(), t(r, c).im_num(), t(r, c).log2_den()});
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"n", n}, {"alpha", kAlphaStar}, {"entries", rows}}.dump();
}

} // namespace mpfa
