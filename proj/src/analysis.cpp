#include "mpfa/analysis.hpp"

#include "mpfa/dft.hpp"
#include "mpfa/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace mpfa {

namespace {

std::mutex& fftw_mutex() {
    static std::mutex mu;
    return mu;
}

// Owns one in-place complex FFTW plan and its buffer.
class Fft {
public:
    Fft(std::size_t n, int sign) : n_(n) {
        std::lock_guard lock(fftw_mutex());
        buf_ = fftw_alloc_complex(n);
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, sign, FFTW_ESTIMATE);
    }
    ~Fft() {
        std::lock_guard lock(fftw_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(buf_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    cplx* data() { return reinterpret_cast<cplx*>(buf_); }
    void run() { fftw_execute(plan_); }

private:
    std::size_t n_;
    fftw_complex* buf_ = nullptr;
    fftw_plan plan_ = nullptr;
};

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

// |H| on the grid w_k = -pi + 2 pi k / g.
void response_into(Fft& fft, std::span<const cplx> h, std::size_t g) {
    cplx* b = fft.data();
    std::fill(b, b + g, cplx{});
    for (std::size_t m = 0; m < h.size(); ++m)
        b[m] = (m % 2 ? -1.0 : 1.0) * h[m];
    fft.run();
}

std::vector<double> grid(std::size_t g) {
    std::vector<double> w(g);
    for (std::size_t k = 0; k < g; ++k)
        w[k] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(g);
    return w;
}

double to_db(double ratio) {
    if (ratio <= 0.0)
        return kDbFloor;
    return std::max(kDbFloor, 20.0 * std::log10(ratio));
}

void check_grid(std::size_t row_len, std::size_t g) {
    if (row_len == 0 || g < 2 * row_len)
        throw DomainError("response grid needs at least twice the row length");
}

} // namespace

double half_band_energy(std::span<const cplx> e) {
    const std::size_t n = e.size();
    double e0 = 0.0;
    for (const cplx& v : e)
        e0 += std::norm(v);
    if (n < 2)
        return std::numbers::pi * e0;
    // r[d] = sum_a e[a+d] conj(e[a]) from a zero-padded circular autocorrelation
    const std::size_t len = next_pow2(2 * n);
    Fft fwd(len, FFTW_FORWARD), inv(len, FFTW_BACKWARD);
    std::fill(fwd.data(), fwd.data() + len, cplx{});
    std::copy(e.begin(), e.end(), fwd.data());
    fwd.run();
    for (std::size_t k = 0; k < len; ++k)
        inv.data()[k] = std::norm(fwd.data()[k]);
    inv.run();
    double odd = 0.0;
    for (std::size_t d = 1; d < n; d += 2)
        odd += inv.data()[d].imag() / static_cast<double>(len) / static_cast<double>(d);
    return std::numbers::pi * e0 + 4.0 * odd;
}

std::vector<RowErrorEnergy> row_error_table(const ComplexMatrix& approx, const ComplexMatrix& exact) {
    if (approx.rows() != exact.rows() || approx.cols() != exact.cols())
        throw DomainError("row_error_table: shape mismatch");
    std::vector<RowErrorEnergy> out(exact.rows());
    std::vector<cplx> e(exact.cols());
    for (std::size_t r = 0; r < exact.rows(); ++r) {
        double coeff = 0.0;
        for (std::size_t c = 0; c < exact.cols(); ++c) {
            e[c] = exact(r, c) - approx(r, c);
            coeff += std::norm(e[c]);
        }
        out[r] = {r, half_band_energy(e), std::numbers::pi * coeff};
    }
    return out;
}

std::vector<RowErrorEnergy> row_error_table(const ExecutionPlan& p) {
    return row_error_table(assemble_matrix(p), dft_matrix(p.n()));
}

std::vector<RowErrorEnergy> worst_rows(std::vector<RowErrorEnergy> table, std::size_t k) {
    std::stable_sort(table.begin(), table.end(),
                     [](const RowErrorEnergy& a, const RowErrorEnergy& b) { return a.energy > b.energy; });
    table.resize(std::min(k, table.size()));
    return table;
}

ResponseCurve filter_response(std::span<const cplx> row, std::size_t grid_points, std::size_t row_index) {
    check_grid(row.size(), grid_points);
    Fft fft(grid_points, FFTW_FORWARD);
    response_into(fft, row, grid_points);
    double peak = 0.0;
    for (std::size_t k = 0; k < grid_points; ++k)
        peak = std::max(peak, std::abs(fft.data()[k]));
    if (peak == 0.0)
        throw DomainError("filter_response: zero row cannot be normalized");
    ResponseCurve c{row_index, grid(grid_points), std::vector<double>(grid_points)};
    for (std::size_t k = 0; k < grid_points; ++k)
        c.magnitude_db[k] = to_db(std::abs(fft.data()[k]) / peak);
    return c;
}

ResponseCurve response_error_curve(std::span<const cplx> approx_row, std::span<const cplx> exact_row,
                                   std::size_t grid_points, std::size_t row_index) {
    if (approx_row.size() != exact_row.size())
        throw DomainError("response_error_curve: length mismatch");
    check_grid(exact_row.size(), grid_points);
    Fft fft(grid_points, FFTW_FORWARD);
    response_into(fft, exact_row, grid_points);
    double peak = 0.0;
    for (std::size_t k = 0; k < grid_points; ++k)
        peak = std::max(peak, std::abs(fft.data()[k]));
    if (peak == 0.0)
        throw DomainError("response_error_curve: zero reference row");
    std::vector<cplx> diff(exact_row.size());
    for (std::size_t m = 0; m < diff.size(); ++m)
        diff[m] = exact_row[m] - approx_row[m];
    response_into(fft, diff, grid_points);
    ResponseCurve c{row_index, grid(grid_points), std::vector<double>(grid_points)};
    for (std::size_t k = 0; k < grid_points; ++k)
        c.magnitude_db[k] = to_db(std::abs(fft.data()[k]) / peak);
    return c;
}

double max_db(const ResponseCurve& c) { return *std::max_element(c.magnitude_db.begin(), c.magnitude_db.end()); }

double max_response_error(const ComplexMatrix& approx, const ComplexMatrix& exact, std::size_t grid_points) {
    double worst = kDbFloor;
    for (std::size_t r = 0; r < exact.rows(); ++r)
        worst = std::max(worst, max_db(response_error_curve(approx.row(r), exact.row(r), grid_points, r)));
    return worst;
}

CosineProbe cosine_probe(const ExecutionPlan& p, std::size_t bin) {
    const std::size_t n = p.n();
    if (bin == 0 || 2 * bin >= n)
        throw DomainError("cosine_probe: bin must satisfy 0 < bin < n/2");
    std::vector<cplx> x(n);
    for (std::size_t m = 0; m < n; ++m)
        x[m] = twiddle(n, bin * m).real();
    const auto X = execute(p, x);

    CosineProbe r;
    r.magnitude.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        r.magnitude[k] = std::abs(X[k]);
    std::vector<std::size_t> idx(n);
    for (std::size_t k = 0; k < n; ++k)
        idx[k] = k;
    std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(),
                      [&](std::size_t a, std::size_t b) { return r.magnitude[a] > r.magnitude[b]; });
    r.dominant_bins = {std::min(idx[0], idx[1]), std::max(idx[0], idx[1])};
    r.dominant_heights = {r.magnitude[r.dominant_bins[0]], r.magnitude[r.dominant_bins[1]]};
    r.max_other = r.magnitude[idx[2]];
    r.leakage_ratio = r.max_other / std::max(r.dominant_heights[0], r.dominant_heights[1]);
    return r;
}

ErrorReport evaluate_plan(const ExecutionPlan& p, const ComplexMatrix& assembled) {
    const std::size_t n = p.n();
    const auto w = twiddle_table(n);
    double err = 0.0, rel = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const cplx f = w[(r * c) % n];
            const cplx d = f - assembled(r, c);
            err += std::norm(d);
            rel += std::abs(d / f);
        }
    const double nn = static_cast<double>(n);

    double diag = 0.0, total = 0.0;
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k)
            v[k] = std::conj(assembled(j, k));
        const auto g = execute(p, v);
        for (std::size_t i = 0; i < n; ++i) {
            const double e = std::norm(g[i]);
            total += e;
            if (i == j)
                diag += e;
        }
    }
    return {std::numbers::pi * err, 100.0 * rel / (nn * nn * nn), 1.0 - std::sqrt(diag / total)};
}

ErrorReport evaluate_plan(const ExecutionPlan& p) { return evaluate_plan(p, assemble_matrix(p)); }

} // namespace mpfa
