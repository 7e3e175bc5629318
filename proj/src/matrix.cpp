#include "mpfa/matrix.hpp"

#include <algorithm>

namespace mpfa {

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> x) const {
    if (x.size() != cols_)
        throw DomainError("ComplexMatrix::apply: length mismatch");
    std::vector<cplx> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        cplx acc = 0.0;
        const cplx* a = data_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c)
            acc += a[c] * x[c];
        y[r] = acc;
    }
    return y;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DomainError("ComplexMatrix: shape mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx a = (*this)(r, k);
            if (a == 0.0)
                continue;
            cplx* o = out.data_.data() + r * rhs.cols_;
            const cplx* b = rhs.data_.data() + k * rhs.cols_;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                o[c] += a * b[c];
        }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

bool LowComplexityMatrix::kernel_grade() const {
    return std::all_of(data_.begin(), data_.end(), [](const DyadicComplex& d) { return d.kernel_grade(); });
}

ComplexMatrix LowComplexityMatrix::to_complex() const {
    ComplexMatrix out(n_, n_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data()[i] = data_[i].value();
    return out;
}

} // namespace mpfa
