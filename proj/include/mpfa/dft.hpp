#pragma once

#include "mpfa/matrix.hpp"
#include "mpfa/schedule.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mpfa {

// exp(-j*2*pi*q/n), q reduced mod n first.
cplx twiddle(std::size_t n, std::size_t q);

// Table of twiddle(n, q) for q = 0..n-1.
std::vector<cplx> twiddle_table(std::size_t n);

ComplexMatrix dft_matrix(std::size_t n);
std::vector<cplx> dft_direct(std::span<const cplx> x);

bool has_fast_exact(std::size_t n);

// Butterfly factorization of F_n (n in {3, 11, 31}).
const Schedule& fast_exact_schedule(std::size_t n);
std::vector<cplx> fast_exact(std::size_t n, std::span<const cplx> x);

// Literal matrix-vector product; +-1 and +-j entries are free, every other entry is a complex multiply.
const Schedule& direct_schedule(std::size_t n);

} // namespace mpfa
