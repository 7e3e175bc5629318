#pragma once

#include "mpfa/numeric.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>

namespace mpfa {

struct OpCount {
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;
    std::uint64_t shifts = 0;

    OpCount& operator+=(const OpCount& o) {
        mults += o.mults;
        adds += o.adds;
        shifts += o.shifts;
        return *this;
    }
    friend OpCount operator+(OpCount a, const OpCount& b) { return a += b; }
    friend OpCount operator*(std::uint64_t k, const OpCount& c) { return {k * c.mults, k * c.adds, k * c.shifts}; }
    friend bool operator==(const OpCount&, const OpCount&) = default;
    friend std::ostream& operator<<(std::ostream& os, const OpCount& c) {
        return os << "(" << c.mults << ", " << c.adds << ", " << c.shifts << ")";
    }
};

namespace detail {
OpCount*& active_ledger();
}

// Installs a fresh per-thread ledger for Counted arithmetic; restores the previous one on exit.
class CountingScope {
public:
    CountingScope() : prev_(detail::active_ledger()) { detail::active_ledger() = &count_; }
    ~CountingScope() { detail::active_ledger() = prev_; }
    CountingScope(const CountingScope&) = delete;
    CountingScope& operator=(const CountingScope&) = delete;

    const OpCount& count() const { return count_; }

private:
    OpCount count_;
    OpCount* prev_;
};

// A real scalar whose arithmetic is tallied into the active ledger.
struct Counted {
    double v = 0.0;
};

namespace arith {

inline double add(double a, double b) { return a + b; }
inline double sub(double a, double b) { return a - b; }
inline double mul(double a, double c) { return a * c; }
inline double shr(double a, int k) { return std::ldexp(a, -k); }
inline double neg(double a) { return -a; }
inline double zero(double) { return 0.0; }

inline void tally(std::uint64_t OpCount::*field) {
    if (OpCount* l = detail::active_ledger())
        ++(l->*field);
}

inline Counted add(Counted a, Counted b) {
    tally(&OpCount::adds);
    return {a.v + b.v};
}
inline Counted sub(Counted a, Counted b) {
    tally(&OpCount::adds);
    return {a.v - b.v};
}
inline Counted mul(Counted a, double c) {
    tally(&OpCount::mults);
    return {a.v * c};
}
inline Counted shr(Counted a, int k) {
    tally(&OpCount::shifts);
    return {std::ldexp(a.v, -k)};
}
inline Counted neg(Counted a) { return {-a.v}; }
inline Counted zero(Counted) { return {0.0}; }

} // namespace arith

template <class R>
struct Cx {
    R re{};
    R im{};
};

inline Cx<double> lift(cplx z, double) { return {z.real(), z.imag()}; }
inline Cx<Counted> lift(cplx z, Counted) { return {{z.real()}, {z.imag()}}; }
inline cplx lower(const Cx<double>& z) { return {z.re, z.im}; }
inline cplx lower(const Cx<Counted>& z) { return {z.re.v, z.im.v}; }

} // namespace mpfa
