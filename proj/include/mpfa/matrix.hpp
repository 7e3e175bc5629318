#pragma once

#include "mpfa/errors.hpp"
#include "mpfa/numeric.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mpfa {

// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    std::vector<cplx> apply(std::span<const cplx> x) const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix adjoint() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// Square matrix of exact dyadic entries.
class LowComplexityMatrix {
public:
    LowComplexityMatrix() = default;
    explicit LowComplexityMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const { return n_; }
    DyadicComplex& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const DyadicComplex& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    bool kernel_grade() const;
    ComplexMatrix to_complex() const;

    friend bool operator==(const LowComplexityMatrix&, const LowComplexityMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<DyadicComplex> data_;
};

} // namespace mpfa
