#pragma once

#include "mpfa/approx_design.hpp"
#include "mpfa/counting.hpp"
#include "mpfa/matrix.hpp"
#include "mpfa/schedule.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mpfa {

inline constexpr double kAlphaStar = 9.0 / 8.0;

bool is_ground_length(std::size_t n);

// T*_n = g(9/8 * F_n) for n in {3, 11, 31}.
const LowComplexityMatrix& kernel(std::size_t n);

// Common radicand of rows 1..n-1 of T*_n.
Rational kernel_eta(std::size_t n);

ScaleVector kernel_scale(std::size_t n, ScaleMode mode);

struct KernelFactorization {
    std::size_t n = 0;
    LowComplexityMatrix a_matrix;  // diag(1, B_{n-1})
    LowComplexityMatrix core;      // real block (+) imaginary block
    Schedule schedule;
    OpCount op_count;

    // a_matrix^T * core * a_matrix, in exact dyadic arithmetic.
    LowComplexityMatrix expand() const;
};

const KernelFactorization& factorization(std::size_t n);

std::vector<cplx> apply_kernel_fast(std::size_t n, std::span<const cplx> x);
std::vector<cplx> apply_scale(const ScaleVector& scale, std::span<const cplx> x);

// Dense entries as [re_num, im_num, log2_den] triples.
std::string kernel_to_json(std::size_t n);

} // namespace mpfa
