#include "mpfa/numeric.hpp"

#include "mpfa/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace mpfa {

double round_to_half(double x) {
    if (!std::isfinite(x))
        throw DomainError("round_to_half: non-finite input");
    return 0.5 * std::round(2.0 * x);
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d == 0)
        throw DomainError("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num, b.den);
    const std::int64_t g2 = std::gcd(b.num, a.den);
    const std::int64_t d1 = g1 == 0 ? 1 : g1;
    const std::int64_t d2 = g2 == 0 ? 1 : g2;
    return {(a.num / d1) * (b.num / d2), (a.den / d2) * (b.den / d1)};
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0)
        throw DomainError("Rational: division by zero");
    return a * Rational(b.den, b.num);
}

Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t l = std::lcm(a.den, b.den);
    return {a.num * (l / a.den) + b.num * (l / b.den), l};
}

Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num, b.den);
}

DyadicComplex::DyadicComplex(std::int64_t re, std::int64_t im, int shift)
    : re_(re), im_(im), shift_(shift) {
    if (shift < 0)
        throw DomainError("DyadicComplex: negative exponent");
    normalize();
}

void DyadicComplex::normalize() {
    if (re_ == 0 && im_ == 0) {
        shift_ = 0;
        return;
    }
    while (shift_ > 0 && re_ % 2 == 0 && im_ % 2 == 0) {
        re_ /= 2;
        im_ /= 2;
        --shift_;
    }
}

namespace {

std::int64_t dyadic_numerator(double v, int shift) {
    const double scaled = std::ldexp(v, shift);
    if (std::abs(scaled) > 9.0e15 || scaled != std::trunc(scaled))
        throw DomainError("DyadicComplex: value is not a dyadic rational");
    return static_cast<std::int64_t>(scaled);
}

int needed_shift(double v, int max_shift) {
    for (int s = 0; s <= max_shift; ++s)
        if (std::ldexp(v, s) == std::trunc(std::ldexp(v, s)))
            return s;
    throw DomainError("DyadicComplex: value needs too many fractional bits");
}

} // namespace

DyadicComplex DyadicComplex::from_double(double re, double im, int max_shift) {
    if (!std::isfinite(re) || !std::isfinite(im))
        throw DomainError("DyadicComplex: non-finite value");
    const int s = std::max(needed_shift(re, max_shift), needed_shift(im, max_shift));
    return {dyadic_numerator(re, s), dyadic_numerator(im, s), s};
}

double DyadicComplex::re() const { return std::ldexp(static_cast<double>(re_), -shift_); }
double DyadicComplex::im() const { return std::ldexp(static_cast<double>(im_), -shift_); }

bool DyadicComplex::kernel_grade() const {
    if (shift_ > 1)
        return false;
    const std::int64_t lim = shift_ == 1 ? 2 : 1;
    return std::abs(re_) <= lim && std::abs(im_) <= lim;
}

DyadicComplex operator+(const DyadicComplex& a, const DyadicComplex& b) {
    const int s = std::max(a.shift_, b.shift_);
    return {(a.re_ << (s - a.shift_)) + (b.re_ << (s - b.shift_)),
            (a.im_ << (s - a.shift_)) + (b.im_ << (s - b.shift_)), s};
}

DyadicComplex operator-(const DyadicComplex& a, const DyadicComplex& b) { return a + (-b); }

DyadicComplex operator*(const DyadicComplex& a, const DyadicComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_, a.shift_ + b.shift_};
}

int CsdCode::nonzero_count() const {
    int c = 0;
    for (int d : digits)
        c += d != 0;
    return c;
}

bool CsdCode::is_canonical() const {
    for (int i = 0; i < kCsdDigits; ++i) {
        if (digits[i] < -1 || digits[i] > 1)
            return false;
        if (i + 1 < kCsdDigits && digits[i] != 0 && digits[i + 1] != 0)
            return false;
    }
    return true;
}

std::string CsdCode::str() const {
    auto digit = [](int d) { return d < 0 ? std::string("(-1)") : std::to_string(d); };
    std::string out = digit(digits[0]) + ".";
    for (int i = 1; i < kCsdDigits; ++i)
        out += digit(digits[i]);
    return out;
}

Rational csd_eval(const CsdCode& code) {
    std::int64_t num = 0;
    for (int i = 0; i < kCsdDigits; ++i)
        num += static_cast<std::int64_t>(code.digits[i]) << (kCsdDigits - 1 - i);
    return {num, std::int64_t{1} << (kCsdDigits - 1)};
}

CsdCode csd_encode(double v, int max_nonzero, int frac_bits) {
    if (!(v > 0.0 && v < 2.0))
        throw DomainError("csd_encode: value outside (0, 2)");
    if (max_nonzero < 1 || frac_bits < 0 || frac_bits >= kCsdDigits)
        throw DomainError("csd_encode: invalid word format");

    const int width = frac_bits + 1;
    int combos = 1;
    for (int i = 0; i < width; ++i)
        combos *= 3;

    CsdCode best;
    double best_err = std::numeric_limits<double>::infinity();
    int best_nz = 0;
    double best_val = 0.0;
    bool found = false;
    for (int c = 0; c < combos; ++c) {
        CsdCode code;
        int rest = c;
        for (int i = 0; i < width; ++i) {
            code.digits[i] = rest % 3 - 1;
            rest /= 3;
        }
        const int nz = code.nonzero_count();
        if (nz == 0 || nz > max_nonzero || !code.is_canonical())
            continue;
        const double val = csd_eval(code).to_double();
        const double err = std::abs(v - val);
        const bool better = !found || err < best_err ||
                            (err == best_err && (nz < best_nz ||
                                                 (nz == best_nz && std::abs(val) < std::abs(best_val))));
        if (better) {
            best = code;
            best_err = err;
            best_nz = nz;
            best_val = val;
            found = true;
        }
    }
    if (!found)
        throw InternalError("csd_encode: no representable code");
    return best;
}

} // namespace mpfa
