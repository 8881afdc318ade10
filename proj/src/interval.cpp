#include "gapcert/interval.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace gapcert {

namespace {

constexpr double kPiLo = 0x1.921fb54442d18p+1;
constexpr double kPiHi = 0x1.921fb54442d19p+1;
constexpr double kLn2Lo = 0x1.62e42fefa39efp-1;
constexpr double kLn2Hi = 0x1.62e42fefa39f0p-1;
// Cody-Waite split: kLn2Head has 32 significant bits, so n * kLn2Head is exact for |n| < 2^20.
constexpr double kLn2Head = 0x1.62e42fee00000p-1;
constexpr double kLn2TailLo = 0x1.a39ef35793c76p-33;
constexpr double kLn2TailHi = 0x1.a39ef35793c77p-33;

constexpr int kExpTerms = 24;
constexpr int kLogTerms = 24;
constexpr int kTrigTerms = 12;

// Enclosures of 1/k! for k = 0..n.
template <int N>
std::array<Interval, N + 1> inverse_factorials() {
    std::array<Interval, N + 1> f;
    f[0] = Interval(1.0);
    for (int k = 1; k <= N; ++k) f[k] = f[k - 1] / Interval(static_cast<double>(k));
    return f;
}

constexpr int kFactTable = 60;

const std::array<Interval, kFactTable + 1>& inv_fact() {
    static const auto table = inverse_factorials<kFactTable>();
    return table;
}

Interval symmetric(double r) { return Interval::make(-r, r); }

// Bound for |x|^n / n! with x an interval, rounded up.
double power_over_factorial(const Interval& x, int n) {
    Interval p = pow_int(Interval(x.mag()), n) * inv_fact()[n];
    return p.hi;
}

Interval exp_point(double a) {
    if (a > 709.0) throw Overflow("exp overflow");
    if (a < -700.0) {
        Interval e = exp_point(-700.0);
        return Interval::make(0.0, e.hi);
    }
    if (a == 0.0) return Interval(1.0);
    double n = std::nearbyint(a / kLn2Lo);
    Interval r = Interval(a) - Interval(n * kLn2Head) - Interval(n) * Interval(kLn2TailLo, kLn2TailHi);
    const auto& c = inv_fact();
    Interval p = c[kExpTerms];
    for (int k = kExpTerms - 1; k >= 0; --k) p = p * r + c[k];
    // |r| <= 0.35, so the Lagrange remainder is at most 2 |r|^(N+1)/(N+1)!.
    double rem = fp::mul_up(2.0, power_over_factorial(r, kExpTerms + 1));
    p = p + symmetric(rem);
    int e = static_cast<int>(n);
    double lo = std::ldexp(p.lo, e);
    double hi = std::ldexp(p.hi, e);
    if (lo < 0x1p-1000) lo = 0.0;
    if (hi < 0x1p-1000) hi = fp::next_up(hi);
    if (lo < 0.0) lo = 0.0;
    return Interval::make(lo, hi);
}

Interval log_point(double a) {
    if (!(a > 0.0)) throw DomainError("log of nonpositive argument");
    if (a == 1.0) return Interval(0.0);
    int e = 0;
    double f = std::frexp(a, &e);
    if (f < 0.70710678118654752) {
        f *= 2.0;
        e -= 1;
    }
    Interval fi(f);
    Interval z = (fi - Interval(1.0)) / (fi + Interval(1.0));
    Interval w = sqr(z);
    Interval s = Interval(1.0) / Interval(2.0 * kLogTerms + 1.0);
    for (int k = kLogTerms - 1; k >= 0; --k) s = s * w + Interval(1.0) / Interval(2.0 * k + 1.0);
    // Tail of sum w^k/(2k+1) beyond k = N is at most |z|^(2N+2) / ((2N+3)(1-z^2)).
    Interval zm(z.mag());
    Interval tail = pow_int(zm, 2 * kLogTerms + 2) /
                    (Interval(2.0 * kLogTerms + 3.0) * (Interval(1.0) - sqr(zm)));
    Interval lf = Interval(2.0) * z * (s + symmetric(tail.hi));
    return Interval(static_cast<double>(e)) * ln2_enclosure() + lf;
}

struct TrigParts {
    Interval s;
    Interval c;
};

// sin and cos of a reduced argument |r| <= 0.8 with alternating-series remainders.
TrigParts sincos_reduced(const Interval& r) {
    const auto& f = inv_fact();
    Interval w = sqr(r);
    auto signed_coeff = [&](int j, int offset) { return j % 2 == 0 ? f[2 * j + offset] : -f[2 * j + offset]; };
    Interval s_sum = signed_coeff(kTrigTerms, 1);
    Interval c_sum = signed_coeff(kTrigTerms, 0);
    for (int j = kTrigTerms - 1; j >= 0; --j) {
        s_sum = s_sum * w + signed_coeff(j, 1);
        c_sum = c_sum * w + signed_coeff(j, 0);
    }
    double rs = power_over_factorial(r, 2 * kTrigTerms + 3);
    double rc = power_over_factorial(r, 2 * kTrigTerms + 2);
    TrigParts out;
    out.s = r * s_sum + symmetric(rs);
    out.c = c_sum + symmetric(rc);
    return out;
}

Interval clip_unit(const Interval& x) {
    return Interval::make(std::max(-1.0, x.lo), std::min(1.0, x.hi));
}

// quadrant 0: sin, 1: cos
Interval sincos_point(double a, int which) {
    if (std::fabs(a) > 1e6) return Interval(-1.0, 1.0);
    Interval half_pi = pi_enclosure() * Interval(0.5);
    double k = std::nearbyint(a / (0.5 * kPiLo));
    Interval r = Interval(a) - Interval(k) * half_pi;
    TrigParts p = sincos_reduced(r);
    long q = static_cast<long>(k) + which;
    int m = static_cast<int>(((q % 4) + 4) % 4);
    Interval v;
    switch (m) {
        case 0: v = p.s; break;
        case 1: v = p.c; break;
        case 2: v = -p.s; break;
        default: v = -p.c; break;
    }
    return clip_unit(v);
}

// Range of sin(x + phase*pi/2) over an interval.
Interval sincos_interval(const Interval& x, int which) {
    Interval pi = pi_enclosure();
    if (x.width() >= 2.0 * kPiHi) return Interval(-1.0, 1.0);
    Interval r = hull(sincos_point(x.lo, which), sincos_point(x.hi, which));
    if (x.is_point()) return r;
    // Extremes of sin(y + which*pi/2) occur at y = pi/2 - which*pi/2 + j*pi.
    Interval base = pi * Interval(0.5) - Interval(static_cast<double>(which)) * pi * Interval(0.5);
    double jlo = std::floor((x.lo - base.hi) / kPiLo) - 1.0;
    double jhi = std::ceil((x.hi - base.lo) / kPiLo) + 1.0;
    bool has_max = false, has_min = false;
    for (double j = jlo; j <= jhi; j += 1.0) {
        Interval p = base + Interval(j) * pi;
        if (!intersects(p, x)) continue;
        long ji = static_cast<long>(j);
        if (((ji % 2) + 2) % 2 == 0)
            has_max = true;
        else
            has_min = true;
    }
    if (has_max) r = hull(r, Interval(1.0));
    if (has_min) r = hull(r, Interval(-1.0));
    return clip_unit(r);
}

Interval cbrt_point_pos(double a, bool want_lower) {
    if (a == 0.0) return Interval(0.0);
    double g = std::cbrt(a);
    auto cube_up = [](double v) { return fp::mul_up(fp::mul_up(v, v), v); };
    auto cube_down = [](double v) { return fp::mul_down(fp::mul_down(v, v), v); };
    if (want_lower) {
        double l = g;
        while (cube_up(l) > a) l = fp::next_down(l);
        return Interval(l);
    }
    double h = g;
    while (cube_down(h) < a) h = fp::next_up(h);
    return Interval(h);
}

}  // namespace

Interval pi_enclosure() { return Interval(kPiLo, kPiHi); }
Interval ln2_enclosure() { return Interval(kLn2Lo, kLn2Hi); }

Interval arith(const Interval& x, const Interval& y, ArithKind kind) {
    switch (kind) {
        case ArithKind::Add: return x + y;
        case ArithKind::Sub: return x - y;
        case ArithKind::Mul: return x * y;
        case ArithKind::Div: return x / y;
    }
    throw DomainError("unknown arithmetic kind");
}

Interval exp(const Interval& x) {
    if (x.is_point()) return exp_point(x.lo);
    return Interval::make(exp_point(x.lo).lo, exp_point(x.hi).hi);
}

Interval log(const Interval& x) {
    if (!(x.lo > 0.0)) throw DomainError("log of interval with nonpositive part");
    if (x.is_point()) return log_point(x.lo);
    return Interval::make(log_point(x.lo).lo, log_point(x.hi).hi);
}

Interval sin(const Interval& x) { return sincos_interval(x, 0); }
Interval cos(const Interval& x) { return sincos_interval(x, 1); }

Interval tan(const Interval& x) {
    Interval c = cos(x);
    if (c.contains_zero()) throw BranchError("tan across a pole");
    auto tan_point = [](double a) { return sincos_point(a, 0) / sincos_point(a, 1); };
    if (x.is_point()) return tan_point(x.lo);
    return Interval::make(tan_point(x.lo).lo, tan_point(x.hi).hi);
}

Interval cbrt(const Interval& x) {
    auto lower = [](double a) {
        return a >= 0 ? cbrt_point_pos(a, true).lo : -cbrt_point_pos(-a, false).lo;
    };
    auto upper = [](double a) {
        return a >= 0 ? cbrt_point_pos(a, false).lo : -cbrt_point_pos(-a, true).lo;
    };
    return Interval::make(lower(x.lo), upper(x.hi));
}

Interval pow_int(const Interval& x, int n) {
    if (n == 0) return Interval(1.0);
    if (n < 0) return Interval(1.0) / pow_int(x, -n);
    auto point_pow = [n](double a) {
        Interval base(a), r(1.0);
        int e = n;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    };
    if (n % 2 == 0) {
        Interval a = abs(x);
        return Interval::make(point_pow(a.lo).lo, point_pow(a.hi).hi);
    }
    return Interval::make(point_pow(x.lo).lo, point_pow(x.hi).hi);
}

Interval pow_frac(const Interval& x, int p, int q) {
    if (p <= 0 || q <= 0) throw DomainError("pow_frac expects positive exponent parts");
    if (x.lo < 0.0) throw DomainError("fractional power of negative argument");
    Interval e = Interval(static_cast<double>(p)) / Interval(static_cast<double>(q));
    auto at = [&](double a) { return a == 0.0 ? Interval(0.0) : exp(e * log_point(a)); };
    if (x.is_point()) return at(x.lo);
    return Interval::make(at(x.lo).lo, at(x.hi).hi);
}

Interval elementary(const Interval& x, ElementaryKind kind, int power) {
    switch (kind) {
        case ElementaryKind::Sqrt: return sqrt(x);
        case ElementaryKind::Cbrt: return cbrt(x);
        case ElementaryKind::Exp: return exp(x);
        case ElementaryKind::Log: return log(x);
        case ElementaryKind::Sin: return sin(x);
        case ElementaryKind::Cos: return cos(x);
        case ElementaryKind::Tan: return tan(x);
        case ElementaryKind::PowInt: return pow_int(x, power);
        case ElementaryKind::Pow2_3: return pow_2_3(x);
        case ElementaryKind::Pow4_3: return pow_4_3(x);
        case ElementaryKind::Pow1_3: return pow_1_3(x);
        case ElementaryKind::Abs: return abs(x);
    }
    throw DomainError("unknown elementary kind");
}

std::vector<Interval> subdivide(const Interval& x, int n) {
    if (n < 1) throw DomainError("subdivide needs n >= 1");
    std::vector<Interval> out;
    out.reserve(n);
    double prev = x.lo;
    for (int i = 1; i <= n; ++i) {
        double next = (i == n) ? x.hi : x.lo + (x.hi - x.lo) * (static_cast<double>(i) / n);
        next = std::clamp(next, prev, x.hi);
        out.push_back(Interval::make(prev, next));
        prev = next;
    }
    return out;
}

std::string to_string(const Interval& x) {
    char buf[64];
    std::string s = "[";
    auto r = std::to_chars(buf, buf + sizeof buf, x.lo);
    s.append(buf, r.ptr);
    s += ", ";
    r = std::to_chars(buf, buf + sizeof buf, x.hi);
    s.append(buf, r.ptr);
    s += "]";
    return s;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << to_string(x); }

}  // namespace gapcert
