#include "gapcert/airy.hpp"

#include <array>
#include <cmath>

namespace gapcert {

namespace {

constexpr double kErr = 0x1p-100;

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, double b) {
    double q1 = a.hi / b;
    DD p = two_prod(q1, b);
    DD r = two_sum(a.hi, -p.hi);
    r.lo += a.lo - p.lo;
    double q2 = (r.hi + r.lo) / b;
    return quick_two_sum(q1, q2);
}

// |hi + lo| rounded up.
inline double dd_mag(DD a) { return fp::mul_up(std::fabs(a.hi), 1.0 + 0x1p-50); }

// Midpoint in double-double with an upward-rounded radius that absorbs every
// double-double rounding error (each op is bounded by kErr times its magnitude).
struct Ball {
    DD m;
    double r = 0.0;

    static Ball exact(double x) { return Ball{DD{x, 0.0}, 0.0}; }

    double mag() const { return fp::add_up(dd_mag(m), r); }

    Interval to_interval() const {
        Interval c = Interval(m.hi) + Interval(m.lo);
        return c + Interval::make(-r, r);
    }

    friend Ball operator*(const Ball& a, const Ball& b) {
        Ball out;
        out.m = dd_mul(a.m, b.m);
        double r = fp::mul_up(dd_mag(a.m), b.r);
        r = fp::add_up(r, fp::mul_up(dd_mag(b.m), a.r));
        r = fp::add_up(r, fp::mul_up(a.r, b.r));
        r = fp::add_up(r, fp::mul_up(kErr, dd_mag(out.m)));
        out.r = r;
        return out;
    }

    friend Ball operator/(const Ball& a, double d) {
        Ball out;
        out.m = dd_div(a.m, d);
        out.r = fp::add_up(fp::div_up(a.r, std::fabs(d)), fp::mul_up(kErr, dd_mag(out.m)));
        return out;
    }

    friend Ball operator+(const Ball& a, const Ball& b) {
        Ball out;
        out.m = dd_add(a.m, b.m);
        double r = fp::add_up(a.r, b.r);
        r = fp::add_up(r, fp::mul_up(kErr, fp::add_up(dd_mag(a.m), dd_mag(b.m))));
        out.r = r;
        return out;
    }

    friend Ball operator-(const Ball& a) { return Ball{DD{-a.m.hi, -a.m.lo}, a.r}; }
};

struct IntervalNum {
    Interval v;
    static IntervalNum exact(double x) { return {Interval(x)}; }
    double mag() const { return v.mag(); }
    Interval to_interval() const { return v; }
    friend IntervalNum operator*(const IntervalNum& a, const IntervalNum& b) { return {a.v * b.v}; }
    friend IntervalNum operator/(const IntervalNum& a, double d) { return {a.v / Interval(d)}; }
    friend IntervalNum operator+(const IntervalNum& a, const IntervalNum& b) { return {a.v + b.v}; }
    friend IntervalNum operator-(const IntervalNum& a) { return {-a.v}; }
};

// Denominators of the term ratio t_{j+1} = t_j * (-x^3) / p(j).
enum class Chain { F, G, F1, G1, F2, G2 };

double chain_den(Chain c, int j) {
    double d = 3.0 * j;
    switch (c) {
        case Chain::F: return (d + 3.0) * (d + 2.0);
        case Chain::G: return (d + 4.0) * (d + 3.0);
        case Chain::F1: return d * (d + 2.0);
        case Chain::G1: return (d + 1.0) * (d + 3.0);
        case Chain::F2: return d * (d - 1.0);
        case Chain::G2: return (d + 1.0) * d;
    }
    return 1.0;
}

int chain_start(Chain c) { return (c == Chain::F || c == Chain::G || c == Chain::G1) ? 0 : 1; }

template <class Num>
Num chain_first(Chain c, double x) {
    Num xn = Num::exact(x);
    switch (c) {
        case Chain::F: return Num::exact(1.0);
        case Chain::G: return xn;
        case Chain::F1: return -(xn * xn) / 2.0;
        case Chain::G1: return Num::exact(1.0);
        case Chain::F2: return -xn;
        case Chain::G2: return -(xn * xn);
    }
    return Num::exact(0.0);
}

// Sums one auxiliary series with a geometric tail bound.
template <class Num>
Interval sum_chain(Chain c, double x, const Num& neg_x3, double x3_mag, int max_terms) {
    Num term = chain_first<Num>(c, x);
    Num sum = term;
    int j = chain_start(c);
    for (int n = 0; n < max_terms; ++n, ++j) {
        double den = chain_den(c, j);
        double ratio = fp::div_up(x3_mag, den);
        if (ratio < 0.5) {
            double tail = fp::mul_up(term.mag(), fp::div_up(ratio, 1.0 - ratio));
            if (tail < 1e-40 || term.mag() == 0.0) {
                Interval s = sum.to_interval();
                return s + Interval::make(-tail, tail);
            }
        }
        term = (term * neg_x3) / den;
        sum = sum + term;
    }
    throw DomainError("Airy series did not reach its tail bound within max_terms");
}

struct Aux {
    Interval f, g, f1, g1, f2, g2;
};

template <class Num>
Aux aux_series(double x, int max_terms, bool second) {
    Num xn = Num::exact(x);
    Num neg_x3 = -(xn * xn * xn);
    double x3_mag = fp::mul_up(fp::mul_up(std::fabs(x), std::fabs(x)), std::fabs(x));
    Aux a;
    a.f = sum_chain<Num>(Chain::F, x, neg_x3, x3_mag, max_terms);
    a.g = sum_chain<Num>(Chain::G, x, neg_x3, x3_mag, max_terms);
    a.f1 = sum_chain<Num>(Chain::F1, x, neg_x3, x3_mag, max_terms);
    a.g1 = sum_chain<Num>(Chain::G1, x, neg_x3, x3_mag, max_terms);
    if (second) {
        a.f2 = sum_chain<Num>(Chain::F2, x, neg_x3, x3_mag, max_terms);
        a.g2 = sum_chain<Num>(Chain::G2, x, neg_x3, x3_mag, max_terms);
    }
    return a;
}

Aux aux_at(double x, const AirySeriesConfig& cfg, bool second) {
    if (cfg.accumulation_precision == Accumulation::DoubleDouble)
        return aux_series<Ball>(x, cfg.max_terms, second);
    return aux_series<IntervalNum>(x, cfg.max_terms, second);
}

void check_domain(const Interval& x, const AirySeriesConfig& cfg) {
    if (x.mag() > cfg.domain_radius) throw DomainError("Airy argument outside the series domain");
}

AiryPair point_pair(double x, const AirySeriesConfig& cfg) {
    Aux a = aux_at(x, cfg, false);
    Interval b0 = airy_ai_zero(), b1 = airy_minus_aip_zero();
    return {b0 * a.f + b1 * a.g, b0 * a.f1 + b1 * a.g1};
}

constexpr int kTaylorOrder = 30;

// Taylor form about the midpoint with coefficients from (k+2)(k+1) y_{k+2} = -m y_k - y_{k-1}.
AiryPair interval_pair(const Interval& x, const AirySeriesConfig& cfg) {
    double m = x.mid();
    Interval tau = x - Interval(m);
    double delta = tau.mag();
    double am = std::fabs(m);
    constexpr int K = kTaylorOrder;
    double q = fp::div_up(fp::add_up(fp::mul_up(am, fp::mul_up(delta, delta)),
                                     fp::mul_up(delta, fp::mul_up(delta, delta))),
                          static_cast<double>((K + 1) * K));
    if (q > 0.5) {
        Interval left = Interval::make(x.lo, m), right = Interval::make(m, x.hi);
        AiryPair a = interval_pair(left, cfg), b = interval_pair(right, cfg);
        return {hull(a.value, b.value), hull(a.derivative, b.derivative)};
    }
    AiryPair c = point_pair(m, cfg);
    std::array<Interval, K + 1> y;
    y[0] = c.value;
    y[1] = c.derivative;
    Interval mi(m);
    for (int k = 0; k + 2 <= K; ++k) {
        Interval prev = (k >= 1) ? y[k - 1] : Interval(0.0);
        y[k + 2] = -(mi * y[k] + prev) / Interval(static_cast<double>((k + 2) * (k + 1)));
    }
    double z = 0.0;
    for (int k = K - 2; k <= K; ++k) z = std::max(z, (Interval(y[k].mag()) * pow_int(Interval(delta), k)).hi);
    double geo = fp::div_up(q, 1.0 - q);
    double tail = fp::mul_up(3.0 * z, geo);
    double tail_d = 0.0;
    if (delta > 0.0) {
        double part = fp::add_up(fp::mul_up(static_cast<double>(K), geo),
                                 fp::div_up(fp::mul_up(3.0, q), fp::mul_up(1.0 - q, 1.0 - q)));
        tail_d = fp::div_up(fp::mul_up(3.0 * z, part), delta);
    }
    Interval v = y[K];
    for (int k = K - 1; k >= 0; --k) v = v * tau + y[k];
    Interval d = y[K] * Interval(static_cast<double>(K));
    for (int k = K - 1; k >= 1; --k) d = d * tau + y[k] * Interval(static_cast<double>(k));
    return {v + Interval::make(-tail, tail), d + Interval::make(-tail_d, tail_d)};
}

}  // namespace

Interval airy_ai_zero() { return Interval(0x1.6b8c7962715b8p-2, 0x1.6b8c7962715b9p-2); }
Interval airy_minus_aip_zero() { return Interval(0x1.0907f42b70f8ap-2, 0x1.0907f42b70f8bp-2); }

AiryPair eval_A_pair(const Interval& x, const AirySeriesConfig& cfg) {
    check_domain(x, cfg);
    if (x.is_point()) return point_pair(x.lo, cfg);
    return interval_pair(x, cfg);
}

Interval eval_A(const Interval& x, const AirySeriesConfig& cfg, bool* precision_loss) {
    Interval v = eval_A_pair(x, cfg).value;
    if (precision_loss) *precision_loss = v.width() > 1e-6;
    return v;
}

Interval eval_A_prime(const Interval& x, const AirySeriesConfig& cfg, bool* precision_loss) {
    Interval v = eval_A_pair(x, cfg).derivative;
    if (precision_loss) *precision_loss = v.width() > 1e-6;
    return v;
}

Interval eval_A_second(const Interval& x, const AirySeriesConfig& cfg) {
    check_domain(x, cfg);
    if (x.is_point()) {
        Aux a = aux_at(x.lo, cfg, true);
        return airy_ai_zero() * a.f2 + airy_minus_aip_zero() * a.g2;
    }
    return -(x * eval_A_pair(x, cfg).value);
}

}  // namespace gapcert
