#pragma once

#include "mpfa/counting.hpp"
#include "mpfa/matrix.hpp"
#include "mpfa/numeric.hpp"
#include "mpfa/schedule.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mpfa {

struct AlphaInterval {
    double low = 0.0;
    double high = 0.0;
    bool high_inclusive = true;

    bool contains(double a) const { return a >= low && (high_inclusive ? a <= high : a < high); }
};

// Analytic range of alpha for which g(alpha * gamma_max) is nonzero and does not exceed p_max.
AlphaInterval alpha_interval(double p_max, double gamma_max = 1.0);

// Sampling domain used for the reference candidate counts.
inline constexpr AlphaInterval kSweepDomain{0.26, 1.25, false};

// g(alpha * F_n) applied to real and imaginary parts.
LowComplexityMatrix candidate_matrix(std::size_t n, double alpha);

enum class ScaleMode { None, Exact, Csd };

const char* to_string(ScaleMode m);
ScaleMode scale_mode_from_string(const std::string& s);

// Diagonal of positive factors, entry i = sqrt(radicands[i]); in Csd mode each root is
// replaced by its 3-digit canonical signed-digit approximation.
struct ScaleVector {
    std::vector<Rational> radicands;
    ScaleMode mode = ScaleMode::Exact;

    std::size_t size() const { return radicands.size(); }
    std::vector<double> values() const;
    std::vector<Coef> coefs() const;
    OpCount cost() const;
};

double exact_root(const Rational& radicand);
CsdCode csd_root(const Rational& radicand);

ScaleVector scale_vector(const LowComplexityMatrix& t);

// diag(s) * t
ComplexMatrix apply_rows(const ScaleVector& s, const ComplexMatrix& t);

struct ErrorReport {
    double epsilon = 0.0;
    double mape_percent = 0.0;
    double phi = 0.0;
};

// pi * ||exact - approx||_F^2
double error_energy(const ComplexMatrix& approx, const ComplexMatrix& exact);

// Normalized as in the reference tables: 100 / N^3 * sum |(f - fhat) / f|.
double mape(const ComplexMatrix& approx, const ComplexMatrix& exact);

// Literal mean over entries: 100 / N^2 * sum |(f - fhat) / f|  (= N * mape).
double mape_per_entry(const ComplexMatrix& approx, const ComplexMatrix& exact);

// 1 - ||diag(G)|| / ||G|| with G = approx * approx^H.
double orth_deviation(const ComplexMatrix& approx);

ErrorReport evaluate(const ComplexMatrix& approx, const ComplexMatrix& exact);

struct CandidateApproximation {
    AlphaInterval alpha;  // first and last sampled alpha producing t_matrix
    LowComplexityMatrix t_matrix;
    ScaleVector scale;
    ErrorReport metrics;
};

std::vector<CandidateApproximation> sweep_alpha(std::size_t n, double step,
                                                AlphaInterval domain = kSweepDomain);

// Candidates not dominated in (epsilon, mape, phi).
std::vector<CandidateApproximation> select_optimal(const std::vector<CandidateApproximation>& candidates);

} // namespace mpfa
