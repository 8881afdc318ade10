#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "gapcert/errors.hpp"

namespace gapcert {

// Directed rounding by error-free transformations. Every function returns a
// machine number on the requested side of the exact result.
namespace fp {

inline double next_up(double x) {
    if (std::isnan(x) || x == std::numeric_limits<double>::infinity()) return x;
    if (x == 0.0) return std::numeric_limits<double>::denorm_min();
    auto bits = std::bit_cast<std::uint64_t>(x);
    bits = x > 0 ? bits + 1 : bits - 1;
    return std::bit_cast<double>(bits);
}

inline double next_down(double x) { return -next_up(-x); }

inline constexpr double kTiny = 0x1p-900;

inline double add_down(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return e < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return e > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    double p = a * b;
    if (a == 0.0 || b == 0.0) return 0.0;
    if (!(std::fabs(p) >= kTiny)) return next_down(p);
    double e = std::fma(a, b, -p);
    return e < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
    double p = a * b;
    if (a == 0.0 || b == 0.0) return 0.0;
    if (!(std::fabs(p) >= kTiny)) return next_up(p);
    double e = std::fma(a, b, -p);
    return e > 0 ? next_up(p) : p;
}

inline double div_down(double a, double b) {
    double q = a / b;
    if (a == 0.0) return 0.0;
    if (!(std::fabs(q) >= kTiny) || !(std::fabs(a) >= kTiny)) return next_down(q);
    double r = std::fma(-q, b, a);
    bool q_too_big = (r < 0) != (b < 0) && r != 0.0;
    return q_too_big ? next_down(q) : q;
}

inline double div_up(double a, double b) {
    double q = a / b;
    if (a == 0.0) return 0.0;
    if (!(std::fabs(q) >= kTiny) || !(std::fabs(a) >= kTiny)) return next_up(q);
    double r = std::fma(-q, b, a);
    bool q_too_small = (r > 0) != (b < 0) && r != 0.0;
    return q_too_small ? next_up(q) : q;
}

inline double sqrt_down(double a) {
    if (a <= 0.0) return 0.0;
    double r = std::sqrt(a);
    if (a < kTiny) return std::max(0.0, next_down(r));
    double res = std::fma(-r, r, a);
    return res < 0 ? next_down(r) : r;
}

inline double sqrt_up(double a) {
    if (a <= 0.0) return 0.0;
    double r = std::sqrt(a);
    if (a < kTiny) return next_up(r);
    double res = std::fma(-r, r, a);
    return res > 0 ? next_up(r) : r;
}

}  // namespace fp

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    Interval(double x) : lo(x), hi(x) {  // NOLINT(google-explicit-constructor)
        if (!std::isfinite(x)) throw Overflow("non-finite interval endpoint");
    }
    Interval(double l, double h) : lo(l), hi(h) {
        if (!std::isfinite(l) || !std::isfinite(h)) throw Overflow("non-finite interval endpoint");
        if (!(l <= h)) throw DomainError("interval with lo > hi");
    }

    // Builds from already-directed endpoints; only checks finiteness.
    static Interval make(double l, double h) {
        if (!std::isfinite(l) || !std::isfinite(h)) throw Overflow("interval endpoint overflow");
        Interval r;
        r.lo = l;
        r.hi = h;
        return r;
    }

    double mid() const {
        if (lo == hi) return lo;
        double m = 0.5 * lo + 0.5 * hi;
        return std::clamp(m, lo, hi);
    }
    double width() const { return fp::sub_up(hi, lo); }
    double rad() const { return std::max(fp::sub_up(hi, mid()), fp::sub_up(mid(), lo)); }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    double mig() const {
        if (lo <= 0.0 && hi >= 0.0) return 0.0;
        return std::min(std::fabs(lo), std::fabs(hi));
    }
    bool is_point() const { return lo == hi; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool interior_contains(const Interval& o) const { return lo < o.lo && o.hi < hi; }
    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    bool subset_of(const Interval& o) const { return o.contains(*this); }
};

inline bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval::make(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline bool intersects(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

// Caller must check intersects() first.
inline Interval intersect(const Interval& a, const Interval& b) {
    if (!intersects(a, b)) throw DomainError("empty intersection");
    return Interval::make(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
}

inline bool certainly_lt(const Interval& a, const Interval& b) { return a.hi < b.lo; }
inline bool certainly_le(const Interval& a, const Interval& b) { return a.hi <= b.lo; }
inline bool certainly_positive(const Interval& a) { return a.lo > 0.0; }
inline bool certainly_negative(const Interval& a) { return a.hi < 0.0; }

inline Interval operator-(const Interval& a) { return Interval::make(-a.hi, -a.lo); }

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval::make(fp::add_down(a.lo, b.lo), fp::add_up(a.hi, b.hi));
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval::make(fp::sub_down(a.lo, b.hi), fp::sub_up(a.hi, b.lo));
}

inline Interval operator*(const Interval& x, const Interval& y) {
    using fp::mul_down;
    using fp::mul_up;
    double l, h;
    if (x.lo >= 0) {
        if (y.lo >= 0) {
            l = mul_down(x.lo, y.lo);
            h = mul_up(x.hi, y.hi);
        } else if (y.hi <= 0) {
            l = mul_down(x.hi, y.lo);
            h = mul_up(x.lo, y.hi);
        } else {
            l = mul_down(x.hi, y.lo);
            h = mul_up(x.hi, y.hi);
        }
    } else if (x.hi <= 0) {
        if (y.lo >= 0) {
            l = mul_down(x.lo, y.hi);
            h = mul_up(x.hi, y.lo);
        } else if (y.hi <= 0) {
            l = mul_down(x.hi, y.hi);
            h = mul_up(x.lo, y.lo);
        } else {
            l = mul_down(x.lo, y.hi);
            h = mul_up(x.lo, y.lo);
        }
    } else {
        if (y.lo >= 0) {
            l = mul_down(x.lo, y.hi);
            h = mul_up(x.hi, y.hi);
        } else if (y.hi <= 0) {
            l = mul_down(x.hi, y.lo);
            h = mul_up(x.lo, y.lo);
        } else {
            l = std::min(mul_down(x.lo, y.hi), mul_down(x.hi, y.lo));
            h = std::max(mul_up(x.lo, y.lo), mul_up(x.hi, y.hi));
        }
    }
    return Interval::make(l, h);
}

inline Interval operator/(const Interval& x, const Interval& y) {
    using fp::div_down;
    using fp::div_up;
    if (y.contains_zero()) throw DivisionByZeroInterval("divisor interval contains zero");
    double l, h;
    if (y.lo > 0) {
        if (x.lo >= 0) {
            l = div_down(x.lo, y.hi);
            h = div_up(x.hi, y.lo);
        } else if (x.hi <= 0) {
            l = div_down(x.lo, y.lo);
            h = div_up(x.hi, y.hi);
        } else {
            l = div_down(x.lo, y.lo);
            h = div_up(x.hi, y.lo);
        }
    } else {
        if (x.lo >= 0) {
            l = div_down(x.hi, y.hi);
            h = div_up(x.lo, y.lo);
        } else if (x.hi <= 0) {
            l = div_down(x.hi, y.lo);
            h = div_up(x.lo, y.hi);
        } else {
            l = div_down(x.hi, y.hi);
            h = div_up(x.lo, y.hi);
        }
    }
    return Interval::make(l, h);
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

inline Interval abs(const Interval& x) {
    if (x.lo >= 0) return x;
    if (x.hi <= 0) return -x;
    return Interval::make(0.0, std::max(-x.lo, x.hi));
}

inline Interval sqr(const Interval& x) {
    Interval a = abs(x);
    return Interval::make(fp::mul_down(a.lo, a.lo), fp::mul_up(a.hi, a.hi));
}

inline Interval sqrt(const Interval& x) {
    if (x.lo < 0) throw DomainError("sqrt of interval with negative part");
    return Interval::make(fp::sqrt_down(x.lo), fp::sqrt_up(x.hi));
}

enum class ArithKind { Add, Sub, Mul, Div };
Interval arith(const Interval& x, const Interval& y, ArithKind kind);

enum class ElementaryKind { Sqrt, Cbrt, Exp, Log, Sin, Cos, Tan, PowInt, Pow2_3, Pow4_3, Pow1_3, Abs };
Interval elementary(const Interval& x, ElementaryKind kind, int power = 0);

Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval tan(const Interval& x);
Interval cbrt(const Interval& x);
Interval pow_int(const Interval& x, int n);
// x^(p/q) for p > 0, q > 0; requires x.lo >= 0.
Interval pow_frac(const Interval& x, int p, int q);
inline Interval pow_2_3(const Interval& x) { return pow_frac(x, 2, 3); }
inline Interval pow_4_3(const Interval& x) { return pow_frac(x, 4, 3); }
inline Interval pow_1_3(const Interval& x) { return pow_frac(x, 1, 3); }

Interval pi_enclosure();
Interval ln2_enclosure();

// Pieces share endpoints; the first starts at x.lo and the last ends at x.hi.
std::vector<Interval> subdivide(const Interval& x, int n);

std::string to_string(const Interval& x);
std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace gapcert
