#pragma once

#include "gapcert/interval.hpp"

namespace gapcert {

// Triangle T(s,t) with vertices (-1,0), (1,0), (s,t).
struct TriangleParams {
    Interval s;
    Interval t;
};

// Scaled interval I^t = [-t^(-2/3)(1+s), t^(-2/3)(1-s)].
struct ScaledInterval {
    Interval a_left;
    Interval a_right;
};

enum class RegionKind { Omega, OmegaDown };

struct ModuliRegion {
    RegionKind kind = RegionKind::OmegaDown;
    Interval t0;
};

// Certified enclosure of tan(pi/60).
Interval t0_enclosure();
ModuliRegion omega_down();

Interval height_profile(const TriangleParams& p, const Interval& x);
// Slope of the height profile; hull of both one-sided slopes when x straddles s.
Interval height_slope(const TriangleParams& p, const Interval& x);

ScaledInterval scaled_interval(const TriangleParams& p);

// Problem-2 potential in the cancelled form, per piece left/right of the apex preimage x = 0.
Interval potential_vt(const TriangleParams& p, const Interval& x);
// Direct evaluation through the height profile; used to check the cancelled form.
Interval potential_vt_direct(const TriangleParams& p, const Interval& x);
// Limit potential 2 pi^2 |x| / (1 -+ s).
Interval potential_limit(const Interval& s, const Interval& x);

// Throws Indeterminate when the intervals straddle the region boundary.
bool in_omega_down(const TriangleParams& p);

// (3 + 4 pi^2) / 12
Interval barrier_constant();

}  // namespace gapcert
