#include "mpfa/approx_design.hpp"

#include "mpfa/dft.hpp"
#include "mpfa/errors.hpp"

#include <cmath>
#include <map>
#include <algorithm>
#include <mutex>
#include <numbers>

namespace mpfa {

AlphaInterval alpha_interval(double p_max, double gamma_max) {
    if (!(p_max > 0.0) || !(gamma_max > 0.0))
        throw DomainError("alpha_interval: p_max and gamma_max must be positive");
    return {0.25 / gamma_max, (p_max + 0.25) / gamma_max, false};
}

LowComplexityMatrix candidate_matrix(std::size_t n, double alpha) {
    if (n == 0)
        throw DomainError("candidate_matrix: n must be positive");
    if (!alpha_interval(1.0).contains(alpha))
        throw DomainError("candidate_matrix: alpha outside [0.25, 1.25)");
    const auto w = twiddle_table(n);
    LowComplexityMatrix t(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const cplx f = w[(r * c) % n];
            t(r, c) = DyadicComplex::from_double(round_to_half(alpha * f.real()),
                                                 round_to_half(alpha * f.imag()), 1);
        }
    return t;
}

const char* to_string(ScaleMode m) {
    switch (m) {
    case ScaleMode::None:
        return "none";
    case ScaleMode::Exact:
        return "exact";
    case ScaleMode::Csd:
        return "csd";
    }
    return "?";
}

ScaleMode scale_mode_from_string(const std::string& s) {
    if (s == "none")
        return ScaleMode::None;
    if (s == "exact")
        return ScaleMode::Exact;
    if (s == "csd")
        return ScaleMode::Csd;
    throw DomainError("unknown scale mode: " + s);
}

double exact_root(const Rational& radicand) { return std::sqrt(radicand.to_double()); }

CsdCode csd_root(const Rational& radicand) {
    static std::map<std::pair<std::int64_t, std::int64_t>, CsdCode> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    const auto key = std::make_pair(radicand.num, radicand.den);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, csd_encode(exact_root(radicand))).first;
    return it->second;
}

std::vector<double> ScaleVector::values() const {
    std::vector<double> v(radicands.size(), 1.0);
    for (std::size_t i = 0; i < radicands.size(); ++i) {
        if (mode == ScaleMode::Exact)
            v[i] = exact_root(radicands[i]);
        else if (mode == ScaleMode::Csd)
            v[i] = csd_eval(csd_root(radicands[i])).to_double();
    }
    return v;
}

std::vector<Coef> ScaleVector::coefs() const {
    std::vector<Coef> c(radicands.size(), Coef::pow2(0));
    for (std::size_t i = 0; i < radicands.size(); ++i) {
        if (mode == ScaleMode::None || radicands[i] == Rational(1))
            continue;
        c[i] = mode == ScaleMode::Exact ? Coef::real_const(exact_root(radicands[i]))
                                        : Coef::csd_const(csd_root(radicands[i]));
    }
    return c;
}

OpCount ScaleVector::cost() const {
    OpCount total;
    for (const Coef& c : coefs())
        total += c.cost();
    return total;
}

ScaleVector scale_vector(const LowComplexityMatrix& t) {
    const std::size_t n = t.size();
    ScaleVector s;
    s.radicands.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        Rational energy(0);
        for (std::size_t c = 0; c < n; ++c) {
            const DyadicComplex& d = t(r, c);
            const std::int64_t num = d.re_num() * d.re_num() + d.im_num() * d.im_num();
            energy = energy + Rational(num, std::int64_t{1} << (2 * d.log2_den()));
        }
        if (energy.num == 0)
            throw DegenerateRowError("scale_vector: row " + std::to_string(r) + " is zero");
        s.radicands[r] = Rational(static_cast<std::int64_t>(n)) / energy;
    }
    return s;
}

ComplexMatrix apply_rows(const ScaleVector& s, const ComplexMatrix& t) {
    if (s.size() != t.rows())
        throw DomainError("apply_rows: length mismatch");
    const auto v = s.values();
    ComplexMatrix out = t;
    for (std::size_t r = 0; r < t.rows(); ++r)
        for (cplx& z : out.row(r))
            z *= v[r];
    return out;
}

namespace {

void check_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("shape mismatch");
}

double sum_rel_abs(const ComplexMatrix& approx, const ComplexMatrix& exact) {
    check_shape(approx, exact);
    double s = 0.0;
    for (std::size_t i = 0; i < exact.data().size(); ++i) {
        const cplx f = exact.data()[i];
        if (f == 0.0)
            throw DomainError("mape: exact matrix has a zero entry");
        s += std::abs((f - approx.data()[i]) / f);
    }
    return s;
}

} // namespace

double error_energy(const ComplexMatrix& approx, const ComplexMatrix& exact) {
    check_shape(approx, exact);
    double s = 0.0;
    for (std::size_t i = 0; i < exact.data().size(); ++i)
        s += std::norm(exact.data()[i] - approx.data()[i]);
    return std::numbers::pi * s;
}

double mape_per_entry(const ComplexMatrix& approx, const ComplexMatrix& exact) {
    const double n = static_cast<double>(exact.rows());
    return 100.0 * sum_rel_abs(approx, exact) / (n * n);
}

double mape(const ComplexMatrix& approx, const ComplexMatrix& exact) {
    return mape_per_entry(approx, exact) / static_cast<double>(exact.rows());
}

double orth_deviation(const ComplexMatrix& approx) {
    const ComplexMatrix g = approx * approx.adjoint();
    double diag = 0.0, total = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) {
            const double e = std::norm(g(r, c));
            total += e;
            if (r == c)
                diag += e;
        }
    if (total == 0.0)
        throw DomainError("orth_deviation: zero matrix");
    return 1.0 - std::sqrt(diag / total);
}

ErrorReport evaluate(const ComplexMatrix& approx, const ComplexMatrix& exact) {
    return {error_energy(approx, exact), mape(approx, exact), orth_deviation(approx)};
}

std::vector<CandidateApproximation> sweep_alpha(std::size_t n, double step, AlphaInterval domain) {
    if (!(step > 0.0))
        throw DomainError("sweep_alpha: step must be positive");
    const auto w = twiddle_table(n);
    std::vector<double> levels;
    for (const cplx& z : w) {
        levels.push_back(z.real());
        levels.push_back(z.imag());
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    struct Run {
        double first, last;
    };
    std::vector<Run> runs;
    std::vector<double> key(levels.size()), prev;
    for (std::size_t k = 0;; ++k) {
        const double a = domain.low + static_cast<double>(k) * step;
        if (!domain.contains(a))
            break;
        for (std::size_t i = 0; i < levels.size(); ++i)
            key[i] = round_to_half(a * levels[i]);
        if (runs.empty() || key != prev) {
            runs.push_back({a, a});
            prev = key;
        } else {
            runs.back().last = a;
        }
    }

    const ComplexMatrix exact = dft_matrix(n);
    std::vector<CandidateApproximation> out;
    out.reserve(runs.size());
    for (const Run& r : runs) {
        CandidateApproximation c;
        c.alpha = {r.first, r.last, true};
        c.t_matrix = candidate_matrix(n, r.first);
        c.scale = scale_vector(c.t_matrix);
        c.metrics = evaluate(apply_rows(c.scale, c.t_matrix.to_complex()), exact);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CandidateApproximation> select_optimal(const std::vector<CandidateApproximation>& candidates) {
    if (candidates.empty())
        throw DomainError("select_optimal: no candidates");
    auto dominates = [](const ErrorReport& a, const ErrorReport& b) {
        const bool no_worse = a.epsilon <= b.epsilon && a.mape_percent <= b.mape_percent && a.phi <= b.phi;
        const bool better = a.epsilon < b.epsilon || a.mape_percent < b.mape_percent || a.phi < b.phi;
        return no_worse && better;
    };
    std::vector<CandidateApproximation> front;
    for (const auto& c : candidates) {
        bool dominated = false;
        for (const auto& o : candidates)
            if (dominates(o.metrics, c.metrics)) {
                dominated = true;
                break;
            }
        if (!dominated)
            front.push_back(c);
    }
    return front;
}

} // namespace mpfa
