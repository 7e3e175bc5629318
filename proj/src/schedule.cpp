#include "mpfa/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace mpfa {

Coef Coef::pow2(int shift, bool imag, bool neg) {
    Coef c;
    c.kind = Kind::Pow2;
    c.shift = shift;
    c.imag = imag;
    c.neg = neg;
    return c;
}

Coef Coef::real_const(double v, bool imag) {
    Coef c;
    c.kind = Kind::Real;
    c.real = v;
    c.imag = imag;
    return c;
}

Coef Coef::complex_const(cplx v) {
    Coef c;
    c.kind = Kind::Complex;
    c.value_c = v;
    return c;
}

Coef Coef::csd_const(const CsdCode& code) {
    Coef c;
    c.kind = Kind::Csd;
    c.csd = code;
    return c;
}

namespace {

// Returns k >= 0 with |v| == 2^-k (within tol), or -1.
int pow2_shift(double v, double tol) {
    const double a = std::abs(v);
    for (int k = 0; k <= 30; ++k)
        if (std::abs(a - std::ldexp(1.0, -k)) <= tol)
            return k;
    return -1;
}

} // namespace

Coef Coef::classify(cplx c, double tol) {
    const bool re_zero = std::abs(c.real()) <= tol;
    const bool im_zero = std::abs(c.imag()) <= tol;
    if (re_zero != im_zero) {
        const double v = im_zero ? c.real() : c.imag();
        const int k = pow2_shift(v, tol);
        if (k >= 0)
            return pow2(k, re_zero, v < 0);
        return real_const(v, re_zero);
    }
    return complex_const(c);
}

cplx Coef::value() const {
    switch (kind) {
    case Kind::Pow2: {
        cplx v = std::ldexp(1.0, -shift);
        if (imag)
            v *= cplx(0, 1);
        return neg ? -v : v;
    }
    case Kind::Real:
        return imag ? cplx(0, real) : cplx(real, 0);
    case Kind::Complex:
        return value_c;
    case Kind::Csd:
        return csd_eval(csd).to_double();
    }
    return 0.0;
}

OpCount Coef::cost() const {
    switch (kind) {
    case Kind::Pow2:
        return {0, 0, shift > 0 ? 2u : 0u};
    case Kind::Real:
        return {2, 0, 0};
    case Kind::Complex:
        return {3, 3, 0};
    case Kind::Csd: {
        OpCount c;
        int nz = 0;
        for (int i = 0; i < kCsdDigits; ++i)
            if (csd.digits[i] != 0) {
                ++nz;
                if (i > 0)
                    c.shifts += 2;
            }
        c.adds = nz > 1 ? 2u * (nz - 1) : 0u;
        return c;
    }
    }
    return {};
}

OpCount Stage::cost() const {
    OpCount total;
    for (const Row& r : rows) {
        for (const Term& t : r)
            total += t.coef.cost();
        if (r.size() > 1)
            total.adds += 2 * (r.size() - 1);
    }
    return total;
}

Schedule::Schedule(std::vector<Stage> stages) : stages_(std::move(stages)) {
    for (std::size_t i = 1; i < stages_.size(); ++i)
        if (stages_[i].in_size != stages_[i - 1].out_size())
            throw DomainError("Schedule: stage sizes do not chain");
}

OpCount Schedule::cost() const {
    OpCount total;
    for (const Stage& s : stages_)
        total += s.cost();
    return total;
}

namespace {

template <class R>
Cx<R> rotate_j(const Cx<R>& x) {
    return {arith::neg(x.im), x.re};
}

template <class R>
Cx<R> scaled_component_csd(const Cx<R>& x, const CsdCode& code) {
    Cx<R> acc;
    bool started = false;
    for (int i = 0; i < kCsdDigits; ++i) {
        const int d = code.digits[i];
        if (d == 0)
            continue;
        Cx<R> t = x;
        if (i > 0)
            t = {arith::shr(x.re, i), arith::shr(x.im, i)};
        if (!started) {
            acc = d > 0 ? t : Cx<R>{arith::neg(t.re), arith::neg(t.im)};
            started = true;
        } else if (d > 0) {
            acc = {arith::add(acc.re, t.re), arith::add(acc.im, t.im)};
        } else {
            acc = {arith::sub(acc.re, t.re), arith::sub(acc.im, t.im)};
        }
    }
    if (!started)
        acc = {arith::zero(x.re), arith::zero(x.im)};
    return acc;
}

template <class R>
Cx<R> multiply(const Cx<R>& x, const Coef& c) {
    switch (c.kind) {
    case Coef::Kind::Pow2: {
        Cx<R> y = x;
        if (c.shift > 0)
            y = {arith::shr(x.re, c.shift), arith::shr(x.im, c.shift)};
        if (c.imag)
            y = rotate_j(y);
        if (c.neg)
            y = {arith::neg(y.re), arith::neg(y.im)};
        return y;
    }
    case Coef::Kind::Real: {
        Cx<R> y{arith::mul(x.re, c.real), arith::mul(x.im, c.real)};
        return c.imag ? rotate_j(y) : y;
    }
    case Coef::Kind::Complex: {
        const double a = c.value_c.real();
        const double b = c.value_c.imag();
        const R k1 = arith::mul(arith::add(x.re, x.im), a);
        const R k2 = arith::mul(x.re, b - a);
        const R k3 = arith::mul(x.im, a + b);
        return {arith::sub(k1, k3), arith::add(k1, k2)};
    }
    case Coef::Kind::Csd:
        return scaled_component_csd(x, c.csd);
    }
    return x;
}

template <class R>
void run_stage(const Stage& s, std::span<const Cx<R>> in, std::span<Cx<R>> out) {
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
        const Row& row = s.rows[r];
        if (row.empty()) {
            out[r] = {};
            continue;
        }
        Cx<R> acc = multiply(in[row[0].src], row[0].coef);
        for (std::size_t t = 1; t < row.size(); ++t) {
            const Cx<R> p = multiply(in[row[t].src], row[t].coef);
            acc = {arith::add(acc.re, p.re), arith::add(acc.im, p.im)};
        }
        out[r] = acc;
    }
}

} // namespace

template <class R>
void Schedule::run(std::span<const Cx<R>> in, std::span<Cx<R>> out) const {
    if (in.size() != in_size() || out.size() != out_size())
        throw DomainError("Schedule::run: length mismatch");
    if (stages_.size() == 1) {
        run_stage<R>(stages_[0], in, out);
        return;
    }
    std::vector<Cx<R>> a(in.begin(), in.end()), b;
    for (std::size_t i = 0; i < stages_.size(); ++i) {
        if (i + 1 == stages_.size()) {
            run_stage<R>(stages_[i], a, out);
            break;
        }
        b.assign(stages_[i].out_size(), Cx<R>{});
        run_stage<R>(stages_[i], a, b);
        a.swap(b);
    }
}

template void Schedule::run<double>(std::span<const Cx<double>>, std::span<Cx<double>>) const;
template void Schedule::run<Counted>(std::span<const Cx<Counted>>, std::span<Cx<Counted>>) const;

std::vector<cplx> Schedule::apply(std::span<const cplx> x) const {
    std::vector<Cx<double>> in(x.size()), out(out_size());
    for (std::size_t i = 0; i < x.size(); ++i)
        in[i] = lift(x[i], 0.0);
    run<double>(in, out);
    std::vector<cplx> y(out.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = lower(out[i]);
    return y;
}

ComplexMatrix Schedule::to_dense() const {
    ComplexMatrix m(out_size(), in_size());
    std::vector<cplx> e(in_size());
    for (std::size_t c = 0; c < in_size(); ++c) {
        std::fill(e.begin(), e.end(), cplx{});
        e[c] = 1.0;
        const auto col = apply(e);
        for (std::size_t r = 0; r < col.size(); ++r)
            m(r, c) = col[r];
    }
    return m;
}

Stage butterfly_stage(std::size_t n) {
    Stage s;
    s.in_size = n;
    s.rows.resize(n);
    const std::size_t h = (n + 1) / 2;
    s.rows[0] = {Term{0, Coef::pow2(0)}};
    for (std::size_t m = 1; m < h; ++m)
        s.rows[m] = {Term{m, Coef::pow2(0)}, Term{n - m, Coef::pow2(0)}};
    for (std::size_t p = h; p < n; ++p)
        s.rows[p] = {Term{p, Coef::pow2(0)}, Term{n - p, Coef::pow2(0, false, true)}};
    return s;
}

Stage transpose(const Stage& s) {
    Stage t;
    t.in_size = s.out_size();
    t.rows.resize(s.in_size);
    for (std::size_t r = 0; r < s.rows.size(); ++r)
        for (const Term& term : s.rows[r])
            t.rows[term.src].push_back(Term{r, term.coef});
    return t;
}

Stage diagonal_stage(std::span<const Coef> diag) {
    Stage s;
    s.in_size = diag.size();
    s.rows.resize(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        s.rows[i] = {Term{i, diag[i]}};
    return s;
}

ComplexMatrix symmetric_core(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols() || n % 2 == 0)
        throw DomainError("symmetric_core: odd square matrix required");
    const std::size_t h = (n + 1) / 2;
    ComplexMatrix core(n, n);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t k = 0; k < h; ++k)
            core(i, k) = m(i, k).real();
    for (std::size_t i = h; i < n; ++i)
        for (std::size_t k = h; k < n; ++k)
            core(i, k) = cplx(0.0, m(i, k).imag());
    return core;
}

namespace {

Stage core_stage(const ComplexMatrix& core, double snap_tol) {
    const std::size_t n = core.rows();
    Stage s;
    s.in_size = n;
    s.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx v = core(i, k);
            if (std::abs(v) <= snap_tol)
                continue;
            s.rows[i].push_back(Term{k, Coef::classify(v, snap_tol)});
        }
    return s;
}

} // namespace

Schedule butterfly_schedule(const ComplexMatrix& m, double snap_tol) {
    const Stage a = butterfly_stage(m.rows());
    return Schedule({a, core_stage(symmetric_core(m), snap_tol), transpose(a)});
}

Schedule dense_schedule(const ComplexMatrix& m, double snap_tol) {
    Stage s;
    s.in_size = m.cols();
    s.rows.resize(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) {
            const cplx v = m(i, k);
            if (std::abs(v) <= snap_tol)
                continue;
            Coef c = Coef::complex_const(v);
            const Coef t = Coef::classify(v, snap_tol);
            if (t.kind == Coef::Kind::Pow2 && t.shift == 0)
                c = t;
            s.rows[i].push_back(Term{k, c});
        }
    return Schedule({s});
}

} // namespace mpfa
