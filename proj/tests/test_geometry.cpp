#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gapcert/geometry.hpp"

using namespace gapcert;

namespace {

TriangleParams tri(double s, double t) { return {Interval(s), Interval(t)}; }
TriangleParams tri0(double s) { return {Interval(s), t0_enclosure()}; }

}  // namespace

TEST(Geometry, T0Enclosure) {
    Interval t0 = t0_enclosure();
    EXPECT_TRUE(t0.contains(0.05240777928304121));
    EXPECT_LE(t0.width(), 1e-16);
    EXPECT_TRUE(omega_down().t0 == t0);
}

TEST(Geometry, HeightProfile) {
    for (double s : {-0.4, 0.0, 0.5, 0.9}) {
        TriangleParams p = tri(s, 0.3);
        EXPECT_TRUE(height_profile(p, Interval(s)).contains(0.3));
        EXPECT_TRUE(height_profile(p, Interval(-1.0)).contains(0.0));
        EXPECT_TRUE(height_profile(p, Interval(1.0)).contains(0.0));
        EXPECT_TRUE(height_profile(p, Interval((s - 1) / 2)).contains(0.15));
    }
    EXPECT_THROW(height_profile(tri(0, 0.3), Interval(0.5, 1.5)), DomainError);
}

TEST(Geometry, HeightSlope) {
    TriangleParams p = tri(0.5, 0.3);
    EXPECT_TRUE(height_slope(p, Interval(0.0)).contains(0.2));
    EXPECT_TRUE(height_slope(p, Interval(0.8)).contains(-0.6));
    Interval both = height_slope(p, Interval(0.4, 0.6));
    EXPECT_TRUE(both.contains(0.2) && both.contains(-0.6));
}

TEST(Geometry, ScaledInterval) {
    ScaledInterval I = scaled_interval(tri0(0.0));
    // t0^(-2/3) = 7.14062394210389
    EXPECT_TRUE(I.a_left.contains(-7.14062394210389));
    EXPECT_TRUE(I.a_right.contains(7.14062394210389));
    EXPECT_TRUE(scaled_interval(tri(1.0, 0.02)).a_right.contains(0.0));
    for (double s : {0.0, 0.3, 0.77}) {
        ScaledInterval J = scaled_interval(tri0(s));
        Interval w = J.a_right - J.a_left;
        EXPECT_TRUE(w.contains(2 * 7.14062394210389));
        EXPECT_LT(J.a_left.hi, 0.0);
        EXPECT_GE(J.a_right.lo, 0.0);
    }
}

TEST(Geometry, CancelledFormMatchesDirect) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> us(-0.95, 0.95), ut(0.005, 0.0524), uu(0.01, 0.99);
    for (int i = 0; i < 500; ++i) {
        TriangleParams p = tri(us(rng), ut(rng));
        ScaledInterval I = scaled_interval(p);
        double x = I.a_left.mid() + uu(rng) * (I.a_right.mid() - I.a_left.mid());
        if (x == 0.0) continue;
        Interval a = potential_vt(p, Interval(x)), b = potential_vt_direct(p, Interval(x));
        EXPECT_TRUE(intersects(a, b)) << a << " vs " << b;
        EXPECT_GE(a.lo, 0.0);
    }
}

TEST(Geometry, EndpointHandling) {
    TriangleParams p = tri0(0.2);
    ScaledInterval I = scaled_interval(p);
    EXPECT_THROW(potential_vt(p, Interval(I.a_left.lo - 1.0)), DomainError);
    EXPECT_THROW(potential_vt(p, I.a_left), EndpointSingularity);
}

TEST(Geometry, ApexValueIsHullOfBranches) {
    for (double s : {0.0, 0.5, 0.9}) {
        TriangleParams p = tri0(s);
        Interval left = potential_vt(p, Interval(-1e-12)), right = potential_vt(p, Interval(1e-12));
        Interval at = potential_vt(p, Interval(0.0));
        // Branch values 1e-12 away from the apex differ from the apex values by far less than 1e-9.
        EXPECT_TRUE(at.lo <= left.mid() + 1e-9 && left.mid() - 1e-9 <= at.hi);
        EXPECT_TRUE(at.lo <= right.mid() + 1e-9 && right.mid() - 1e-9 <= at.hi);
        EXPECT_GE(at.width(), std::abs(left.mid() - right.mid()) - 2e-9);
        if (s == 0.0) EXPECT_TRUE(intersects(left, right));
    }
}

TEST(Geometry, MonotoneInT) {
    Interval t0 = t0_enclosure();
    ScaledInterval shared = scaled_interval({Interval(0.3), t0});
    std::vector<double> ts;
    for (int i = 0; i < 50; ++i) ts.push_back(t0.lo * (0.1 + 0.9 * i / 49.0));
    for (int j = 0; j < 50; ++j) {
        double x = shared.a_left.hi + (shared.a_right.lo - shared.a_left.hi) * (j + 0.5) / 50.0;
        for (int i = 0; i + 1 < 50; ++i) {
            Interval v1 = potential_vt(tri(0.3, ts[i]), Interval(x));
            Interval v2 = potential_vt(tri(0.3, ts[i + 1]), Interval(x));
            EXPECT_LE(v1.lo, v2.hi + v1.width() + v2.width()) << "x " << x << " t " << ts[i];
            EXPECT_LE(v1.mid(), v2.mid() + 1e-12 * (1 + v2.mag()));
        }
    }
}

TEST(Geometry, PotentialLimit) {
    EXPECT_TRUE(potential_limit(Interval(0.3), Interval(0.0)).contains(0.0));
    EXPECT_TRUE(potential_limit(Interval(0.0), Interval(1.0)).contains(19.739208802178716));
    EXPECT_TRUE(potential_limit(Interval(0.5), Interval(-1.0)).contains(19.739208802178716 / 1.5));
    Interval h = potential_limit(Interval(0.5), Interval(-1.0, 1.0));
    EXPECT_TRUE(h.contains(0.0) && h.contains(2 * 19.739208802178716));
    EXPECT_THROW(potential_limit(Interval(0.5, 1.0), Interval(0.1)), DomainError);
}

TEST(Geometry, LimitDominanceAndConvergence) {
    double s = 0.4;
    for (double x : {-3.0, -1.0, -0.2, 0.3, 1.5, 2.5}) {
        Interval lim = potential_limit(Interval(s), Interval(x));
        double prev = 1e300;
        for (double t : {0.05, 0.02, 0.01, 0.005, 0.002, 0.001, 1e-4, 1e-6, 1e-8}) {
            Interval v = potential_vt(tri(s, t), Interval(x));
            EXPECT_LE(lim.lo, v.hi);
            double err = v.mid() - lim.mid();
            EXPECT_LT(err, prev);
            prev = err;
        }
        // The gap decays like t^(2/3).
        EXPECT_LT(prev, 0.01);
    }
}

TEST(Geometry, ReflectionSymmetry) {
    for (double s : {0.1, 0.45, 0.8})
        for (double x : {-2.5, -0.7, 0.6, 1.2}) {
            Interval a = potential_vt(tri0(s), Interval(x));
            Interval b = potential_vt(tri0(-s), Interval(-x));
            EXPECT_TRUE(intersects(a, b)) << s << " " << x;
        }
}

TEST(Geometry, OmegaDown) {
    EXPECT_TRUE(in_omega_down(tri(0.3, 0.05)));
    EXPECT_FALSE(in_omega_down(tri(0.3, 0.06)));
    EXPECT_FALSE(in_omega_down(tri(1.0, 0.01)));
    EXPECT_THROW(in_omega_down({Interval(0.3), Interval(0.05, 0.06)}), Indeterminate);
}

TEST(Geometry, BarrierConstant) {
    EXPECT_TRUE(barrier_constant().contains((3 + 4 * 9.869604401089358) / 12));
}
