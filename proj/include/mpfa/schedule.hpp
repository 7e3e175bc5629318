#pragma once

#include "mpfa/counting.hpp"
#include "mpfa/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mpfa {

// A constant multiplier together with the way it is realized in hardware terms.
struct Coef {
    enum class Kind { Pow2, Real, Complex, Csd };

    Kind kind = Kind::Pow2;
    int shift = 0;      // Pow2: magnitude 2^-shift
    bool imag = false;  // Pow2/Real: multiply by j as well
    bool neg = false;   // Pow2: negate
    double real = 0.0;  // Real
    cplx value_c{};     // Complex
    CsdCode csd{};      // Csd

    static Coef pow2(int shift, bool imag = false, bool neg = false);
    static Coef real_const(double c, bool imag = false);
    static Coef complex_const(cplx c);
    static Coef csd_const(const CsdCode& code);

    // Picks the cheapest realization; values within tol of a signed power of two snap to it.
    static Coef classify(cplx c, double tol = 0.0);

    cplx value() const;
    OpCount cost() const;
};

struct Term {
    std::size_t src = 0;
    Coef coef;
};

using Row = std::vector<Term>;

// One sparse linear map; output r = sum of its terms.
struct Stage {
    std::size_t in_size = 0;
    std::vector<Row> rows;

    std::size_t out_size() const { return rows.size(); }
    OpCount cost() const;
};

class Schedule {
public:
    Schedule() = default;
    explicit Schedule(std::vector<Stage> stages);

    std::size_t in_size() const { return stages_.empty() ? 0 : stages_.front().in_size; }
    std::size_t out_size() const { return stages_.empty() ? 0 : stages_.back().out_size(); }
    const std::vector<Stage>& stages() const { return stages_; }

    OpCount cost() const;
    ComplexMatrix to_dense() const;

    template <class R>
    void run(std::span<const Cx<R>> in, std::span<Cx<R>> out) const;

    std::vector<cplx> apply(std::span<const cplx> x) const;

private:
    std::vector<Stage> stages_;
};

extern template void Schedule::run<double>(std::span<const Cx<double>>, std::span<Cx<double>>) const;
extern template void Schedule::run<Counted>(std::span<const Cx<Counted>>, std::span<Cx<Counted>>) const;

// x0 kept, then pairwise sums x_m + x_{n-m} and differences x_p - x_{n-p}.
Stage butterfly_stage(std::size_t n);
Stage transpose(const Stage& s);
Stage diagonal_stage(std::span<const Coef> diag);

// A^T * core * A for a matrix with DFT-type symmetry; core keeps Re of the leading
// (n+1)/2 block and j*Im of the trailing block.
ComplexMatrix symmetric_core(const ComplexMatrix& m);
Schedule butterfly_schedule(const ComplexMatrix& m, double snap_tol);

// Every entry as its own term; entries at +-1 or +-j are free.
Schedule dense_schedule(const ComplexMatrix& m, double snap_tol);

} // namespace mpfa
