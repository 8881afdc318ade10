#include "gapcert/geometry.hpp"

namespace gapcert {

namespace {

Interval pi_sq() { return sqr(pi_enclosure()); }

Interval t_scale(const Interval& t) {
    if (!(t.lo > 0.0)) throw DomainError("t must be positive");
    return Interval(1.0) / pow_2_3(t);
}

}  // namespace

Interval t0_enclosure() {
    static const Interval t0 = tan(pi_enclosure() / Interval(60.0));
    return t0;
}

ModuliRegion omega_down() { return ModuliRegion{RegionKind::OmegaDown, t0_enclosure()}; }

Interval barrier_constant() { return (Interval(3.0) + Interval(4.0) * pi_sq()) / Interval(12.0); }

Interval height_profile(const TriangleParams& p, const Interval& x) {
    if (x.lo < -1.0 || x.hi > 1.0) throw DomainError("height profile outside [-1,1]");
    const Interval& s = p.s;
    const Interval& t = p.t;
    bool have = false;
    Interval r;
    auto merge = [&](const Interval& v) {
        r = have ? hull(r, v) : v;
        have = true;
    };
    if (x.lo <= s.hi) {
        Interval xl = Interval::make(x.lo, std::min(x.hi, s.hi));
        if (s.lo <= -1.0) {
            merge(Interval::make(0.0, t.hi));
        } else {
            Interval v = t * (xl + Interval(1.0)) / (Interval(1.0) + s);
            merge(Interval::make(std::max(0.0, v.lo), std::min(v.hi, t.hi)));
        }
    }
    if (x.hi >= s.lo) {
        Interval xr = Interval::make(std::max(x.lo, s.lo), x.hi);
        if (s.hi >= 1.0) {
            merge(Interval::make(0.0, t.hi));
        } else {
            Interval v = t * (Interval(1.0) - xr) / (Interval(1.0) - s);
            merge(Interval::make(std::max(0.0, v.lo), std::min(v.hi, t.hi)));
        }
    }
    return r;
}

Interval height_slope(const TriangleParams& p, const Interval& x) {
    if (x.lo < -1.0 || x.hi > 1.0) throw DomainError("height slope outside [-1,1]");
    bool left = x.lo <= p.s.hi;
    bool right = x.hi >= p.s.lo;
    Interval r;
    if (left) r = p.t / (Interval(1.0) + p.s);
    if (right) {
        Interval v = -p.t / (Interval(1.0) - p.s);
        r = left ? hull(r, v) : v;
    }
    return r;
}

ScaledInterval scaled_interval(const TriangleParams& p) {
    Interval T = t_scale(p.t);
    return ScaledInterval{-(T * (Interval(1.0) + p.s)), T * (Interval(1.0) - p.s)};
}

Interval potential_vt(const TriangleParams& p, const Interval& x) {
    ScaledInterval I = scaled_interval(p);
    if (x.lo < I.a_left.lo || x.hi > I.a_right.hi) throw DomainError("x outside the scaled interval");
    Interval T = t_scale(p.t);
    Interval c0 = barrier_constant();
    Interval k = pi_sq() * T;
    auto piece = [&](const Interval& a, const Interval& d) {
        if (d.contains_zero()) throw EndpointSingularity("potential evaluated at an interval endpoint");
        return k * (sqr(a / d) - Interval(1.0)) + c0 / sqr(d);
    };
    bool have = false;
    Interval r;
    if (x.lo <= 0.0) {
        Interval xl = Interval::make(x.lo, std::min(x.hi, 0.0));
        r = piece(I.a_left, xl - I.a_left);
        have = true;
    }
    if (x.hi >= 0.0) {
        Interval xr = Interval::make(std::max(x.lo, 0.0), x.hi);
        Interval v = piece(I.a_right, I.a_right - xr);
        r = have ? hull(r, v) : v;
    }
    return r;
}

Interval potential_vt_direct(const TriangleParams& p, const Interval& x) {
    Interval X = pow_2_3(p.t) * x + p.s;
    X = Interval::make(std::max(X.lo, -1.0), std::min(X.hi, 1.0));
    Interval h = height_profile(p, X);
    if (!(h.lo > 0.0)) throw EndpointSingularity("height vanishes");
    Interval hp = height_slope(p, X);
    Interval pi2 = pi_sq();
    Interval inner = pi2 / sqr(h) + (Interval(3.0) + Interval(4.0) * pi2) * sqr(hp) / (Interval(12.0) * sqr(h)) -
                     pi2 / sqr(p.t);
    return pow_4_3(p.t) * inner;
}

Interval potential_limit(const Interval& s, const Interval& x) {
    Interval pi2 = pi_sq();
    bool have = false;
    Interval r;
    if (x.lo <= 0.0) {
        if (s.lo <= -1.0) throw DomainError("1+s vanishes");
        Interval xl = Interval::make(x.lo, std::min(x.hi, 0.0));
        r = Interval(2.0) * pi2 * abs(xl) / (Interval(1.0) + s);
        have = true;
    }
    if (x.hi > 0.0) {
        if (s.hi >= 1.0) throw DomainError("1-s vanishes on the right branch");
        Interval xr = Interval::make(std::max(x.lo, 0.0), x.hi);
        Interval v = Interval(2.0) * pi2 * xr / (Interval(1.0) - s);
        r = have ? hull(r, v) : v;
    }
    return r;
}

bool in_omega_down(const TriangleParams& p) {
    Interval t0 = t0_enclosure();
    if (p.s.hi < 0.0 || p.s.lo >= 1.0 || p.t.hi <= 0.0 || p.t.lo > t0.hi) return false;
    if (p.s.lo >= 0.0 && p.s.hi < 1.0 && p.t.lo > 0.0 && p.t.hi <= t0.lo) return true;
    throw Indeterminate("parameters straddle the boundary of Omega_down");
}

}  // namespace gapcert
