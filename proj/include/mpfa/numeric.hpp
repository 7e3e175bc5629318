#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace mpfa {

using cplx = std::complex<double>;

// g(x) = round(2x) / 2, ties away from zero.
double round_to_half(double x);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) = default;
};

// (re + j*im) / 2^shift, kept normalized so equality is structural.
class DyadicComplex {
public:
    DyadicComplex() = default;
    DyadicComplex(std::int64_t re, std::int64_t im, int shift = 0);

    // Throws DomainError unless x is an exact dyadic with at most max_shift fractional bits.
    static DyadicComplex from_double(double re, double im, int max_shift = 30);

    std::int64_t re_num() const { return re_; }
    std::int64_t im_num() const { return im_; }
    int log2_den() const { return shift_; }

    double re() const;
    double im() const;
    cplx value() const { return {re(), im()}; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }

    // Real and imaginary parts both in {0, +-1/2, +-1}.
    bool kernel_grade() const;

    DyadicComplex conj() const { return {re_, -im_, shift_}; }

    friend DyadicComplex operator+(const DyadicComplex& a, const DyadicComplex& b);
    friend DyadicComplex operator-(const DyadicComplex& a, const DyadicComplex& b);
    friend DyadicComplex operator*(const DyadicComplex& a, const DyadicComplex& b);
    friend DyadicComplex operator-(const DyadicComplex& a) { return {-a.re_, -a.im_, a.shift_}; }
    friend bool operator==(const DyadicComplex& a, const DyadicComplex& b) = default;

private:
    void normalize();
    std::int64_t re_ = 0;
    std::int64_t im_ = 0;
    int shift_ = 0;
};

inline constexpr int kCsdDigits = 8;

// digits[0] has weight 1, digits[i] has weight 2^-i.
struct CsdCode {
    std::array<int, kCsdDigits> digits{};

    int nonzero_count() const;
    bool is_canonical() const;
    std::string str() const;
};

CsdCode csd_encode(double v, int max_nonzero = 3, int frac_bits = 7);
Rational csd_eval(const CsdCode& code);

} // namespace mpfa
