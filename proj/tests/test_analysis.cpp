#include "mpfa/analysis.hpp"
#include "mpfa/dft.hpp"
#include "mpfa/errors.hpp"
#include "mpfa/kernels.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace mpfa;
using mpfa::testing::random_vector;

namespace {

double simpson_energy(std::span<const cplx> e, int intervals = 20000) {
    auto f = [&](double w) {
        cplx h = 0.0;
        for (std::size_t n = 0; n < e.size(); ++n)
            h += e[n] * std::polar(1.0, -w * static_cast<double>(n));
        return std::norm(h);
    };
    const double h = std::numbers::pi / intervals;
    double s = f(0.0) + f(std::numbers::pi);
    for (int i = 1; i < intervals; ++i)
        s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

ComplexMatrix csd_kernel(std::size_t n) {
    return apply_rows(kernel_scale(n, ScaleMode::Csd), kernel(n).to_complex());
}

} // namespace

TEST(HalfBandEnergy, MatchesQuadrature) {
    std::mt19937_64 rng(41);
    for (std::size_t n : {1u, 2u, 3u, 8u, 31u}) {
        const auto e = random_vector(n, rng);
        EXPECT_NEAR(half_band_energy(e), simpson_energy(e), 1e-8 * simpson_energy(e)) << n;
    }
}

TEST(RowErrorTable, ThreeAndElevenPoint) {
    const double t3[] = {0.00, 0.08, 0.01};
    const double t11[] = {0.00, 0.44, 1.01, 0.93, 1.09, 1.33, 0.46, 0.69, 0.85, 0.77, 1.34};
    const auto r3 = row_error_table(csd_kernel(3), dft_matrix(3));
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(r3[i].energy, t3[i], 0.01) << i;
    const auto r11 = row_error_table(csd_kernel(11), dft_matrix(11));
    for (std::size_t i = 0; i < 11; ++i)
        EXPECT_NEAR(r11[i].energy, t11[i], 0.01) << i;
}

TEST(RowErrorTable, SumsToTotalEnergy) {
    for (std::size_t n : {3u, 11u, 31u}) {
        const auto approx = csd_kernel(n);
        const auto f = dft_matrix(n);
        double s = 0.0, c = 0.0;
        for (const auto& r : row_error_table(approx, f)) {
            s += r.energy;
            c += r.coefficient_energy;
        }
        EXPECT_NEAR(s, error_energy(approx, f), 1e-10) << n;
        EXPECT_NEAR(c, error_energy(approx, f), 1e-10) << n;
    }
}

TEST(RowErrorTable, WorstRows) {
    const auto w = worst_rows(row_error_table(csd_kernel(11), dft_matrix(11)), 2);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[0].row, 10u);
    EXPECT_EQ(w[1].row, 5u);
}

TEST(FilterResponse, DirichletKernel) {
    const std::vector<cplx> ones(8, 1.0);
    const auto c = filter_response(ones, 256);
    ASSERT_EQ(c.omega.size(), 256u);
    EXPECT_DOUBLE_EQ(c.omega[0], -std::numbers::pi);
    EXPECT_DOUBLE_EQ(c.omega[128], 0.0);
    EXPECT_NEAR(c.magnitude_db[128], 0.0, 1e-12);
    EXPECT_NEAR(max_db(c), 0.0, 1e-12);
    for (std::size_t k = 0; k < 256; ++k) {
        const double w = c.omega[k];
        const double want = std::abs(w) < 1e-12 ? 1.0 : std::abs(std::sin(4.0 * w) / std::sin(w / 2.0)) / 8.0;
        EXPECT_NEAR(c.magnitude_db[k], std::max(kDbFloor, 20.0 * std::log10(want)), 1e-6) << k;
    }
}

TEST(FilterResponse, SingleTapAndScaling) {
    const std::vector<cplx> tap = {cplx(0.0, 3.0)};
    for (double v : filter_response(tap, 64).magnitude_db)
        EXPECT_NEAR(v, 0.0, 1e-12);
    std::mt19937_64 rng(42);
    auto row = random_vector(11, rng);
    const auto a = filter_response(row, 512);
    for (auto& v : row)
        v *= 7.5;
    const auto b = filter_response(row, 512);
    for (std::size_t k = 0; k < 512; ++k)
        EXPECT_NEAR(a.magnitude_db[k], b.magnitude_db[k], 1e-9);
    EXPECT_NEAR(max_db(b), 0.0, 1e-12);
}

TEST(FilterResponse, Errors) {
    EXPECT_THROW(filter_response(std::vector<cplx>(4, 0.0), 64), DomainError);
    EXPECT_THROW(filter_response(std::vector<cplx>(40, 1.0), 64), DomainError);
}

TEST(ResponseError, IdenticalRowsHitFloor) {
    const auto f = dft_matrix(11);
    const auto c = response_error_curve(f.row(3), f.row(3), 128);
    for (double v : c.magnitude_db)
        EXPECT_EQ(v, kDbFloor);
}

TEST(ResponseError, GroundKernelsStayBelowBound) {
    for (std::size_t n : {3u, 11u, 31u})
        EXPECT_LE(max_response_error(csd_kernel(n), dft_matrix(n), 4096), -17.0) << n;
}

TEST(CosineProbe, ExactTransformHasNoLeakage) {
    const auto p = cosine_probe(plan(93, "exact"), 10);
    EXPECT_EQ(p.dominant_bins[0], 10u);
    EXPECT_EQ(p.dominant_bins[1], 83u);
    EXPECT_NEAR(p.dominant_heights[0], 46.5, 1e-9);
    EXPECT_LT(p.leakage_ratio, 1e-9);
    EXPECT_THROW(cosine_probe(plan(93, "exact"), 0), DomainError);
    EXPECT_THROW(cosine_probe(plan(93, "exact"), 47), DomainError);
}

TEST(EvaluatePlan, MatchesDenseMetrics) {
    const ExecutionPlan p = plan(33, "csd");
    const ComplexMatrix m = assemble_matrix(p);
    const ErrorReport a = evaluate_plan(p, m);
    const ErrorReport b = evaluate(m, dft_matrix(33));
    EXPECT_NEAR(a.epsilon, b.epsilon, 1e-10);
    EXPECT_NEAR(a.mape_percent, b.mape_percent, 1e-12);
    EXPECT_NEAR(a.phi, b.phi, 1e-12);
}
