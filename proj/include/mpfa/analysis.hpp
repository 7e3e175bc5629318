#pragma once

#include "mpfa/approx_design.hpp"
#include "mpfa/matrix.hpp"
#include "mpfa/pfa.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace mpfa {

struct RowErrorEnergy {
    std::size_t row = 0;
    // integral over [0, pi] of |H(w) - Hhat(w)|^2, treating the row as an FIR filter
    double energy = 0.0;
    // pi * sum_k |f(row,k) - fhat(row,k)|^2
    double coefficient_energy = 0.0;
};

// One-sided response error energy of a difference row e, in closed form.
double half_band_energy(std::span<const cplx> e);

std::vector<RowErrorEnergy> row_error_table(const ComplexMatrix& approx, const ComplexMatrix& exact);
std::vector<RowErrorEnergy> row_error_table(const ExecutionPlan& p);

// Rows sorted by descending energy, first k.
std::vector<RowErrorEnergy> worst_rows(std::vector<RowErrorEnergy> table, std::size_t k);

inline constexpr double kDbFloor = -300.0;

struct ResponseCurve {
    std::size_t row_index = 0;
    std::vector<double> omega;         // uniform over [-pi, pi)
    std::vector<double> magnitude_db;
};

// H(w) = sum_n h[n] exp(-j w n), normalized to its own peak.
ResponseCurve filter_response(std::span<const cplx> row, std::size_t grid_points, std::size_t row_index = 0);

// 20 log10(|H - Hhat| / max|H|)
ResponseCurve response_error_curve(std::span<const cplx> approx_row, std::span<const cplx> exact_row,
                                   std::size_t grid_points, std::size_t row_index = 0);

double max_db(const ResponseCurve& c);

// Largest response error over every row of the matrix pair.
double max_response_error(const ComplexMatrix& approx, const ComplexMatrix& exact, std::size_t grid_points);

struct CosineProbe {
    std::vector<double> magnitude;
    std::array<std::size_t, 2> dominant_bins{};
    std::array<double, 2> dominant_heights{};
    double max_other = 0.0;
    // max_other relative to the larger dominant height
    double leakage_ratio = 0.0;
};

// Transforms x[m] = cos(2 pi bin m / n) with the plan.
CosineProbe cosine_probe(const ExecutionPlan& p, std::size_t bin);

// Error report of an assembled plan matrix against F_n; phi uses plan executions for the Gram columns.
ErrorReport evaluate_plan(const ExecutionPlan& p, const ComplexMatrix& assembled);
ErrorReport evaluate_plan(const ExecutionPlan& p);

} // namespace mpfa
