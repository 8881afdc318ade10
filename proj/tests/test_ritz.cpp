#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gapcert/oracle.hpp"
#include "gapcert/ritz.hpp"

using namespace gapcert;

namespace {

IntervalMatrix point_matrix(const Matrix& m) {
    IntervalMatrix r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r(i, j) = Interval(m(i, j));
    return r;
}

TrialBasis basis_at(const Interval& s, int n) { return make_basis(scaled_interval({s, t0_enclosure()}), n); }

double fd_mu2(double s) {
    return oracle::fd_eigs_extrapolated(oracle::Potential::problem2(s, t0_enclosure().mid()), 4000, 2).values[1];
}

}  // namespace

TEST(RitzBasis, Centers) {
    TrialBasis b = make_basis({Interval(-1.0), Interval(1.0)}, 3);
    ASSERT_EQ(b.centers.size(), 3u);
    EXPECT_TRUE(b.centers[0].contains(0.0));
    EXPECT_TRUE(b.centers[1].contains(0.5));
    EXPECT_TRUE(b.centers[2].contains(1.0));
    TrialBasis b2 = make_basis({Interval(-3.0), Interval(1.0)}, 2);
    EXPECT_TRUE(b2.centers[0].contains(-1.0));
    EXPECT_TRUE(b2.centers[1].contains(1.0));
    TrialBasis b17 = basis_at(Interval(0.0), 17);
    EXPECT_TRUE(b17.centers[0].contains(0.0));
    EXPECT_TRUE(b17.centers[16].contains(7.14062394210389));
    EXPECT_EQ(b17.size(), 17);
    EXPECT_EQ(with_apex(b17, 0.95).size(), 18);
    EXPECT_THROW(make_basis({Interval(-1.0), Interval(1.0)}, 1), DomainError);
}

TEST(RitzPencil, SymmetricPositiveAndContaining) {
    TrialBasis b = basis_at(Interval(0.0, 0.01), 4);
    IntervalPencil wide = assemble_pencil(Interval(0.0, 0.01), t0_enclosure(), b, 1e-6);
    IntervalPencil point = assemble_pencil(Interval(0.0), t0_enclosure(), b, 1e-6);
    for (int i = 0; i < 4; ++i) {
        EXPECT_GT(wide.B(i, i).lo, 0.0);
        for (int j = 0; j < 4; ++j) {
            EXPECT_TRUE(wide.A(i, j) == wide.A(j, i));
            EXPECT_TRUE(wide.B(i, j) == wide.B(j, i));
            EXPECT_TRUE(wide.A(i, j).contains(point.A(i, j))) << i << "," << j;
            // The mass matrix does not depend on s; both enclose the same value.
            EXPECT_TRUE(intersects(wide.B(i, j), point.B(i, j))) << i << "," << j;
            EXPECT_LE(wide.A(i, j).width(), wide.assembly_width);
        }
    }
    EXPECT_LE(point.assembly_width, 1e-6);
    EXPECT_FALSE(point.budget_exceeded);
    IntervalPencil floor = assemble_pencil(Interval(0.0), t0_enclosure(), b, 1e-12);
    EXPECT_TRUE(floor.budget_exceeded);
    EXPECT_TRUE(intersects(floor.A(0, 0), point.A(0, 0)));
}

TEST(RitzPencil, FloatPencilInsideIntervalPencil) {
    TrialBasis b = basis_at(Interval(0.3), 5);
    IntervalPencil pen = assemble_pencil(Interval(0.3), t0_enclosure(), b, 1e-7);
    Matrix A, B;
    float_pencil(0.3, t0_enclosure().mid(), b, A, B);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            EXPECT_NEAR(A(i, j), pen.A(i, j).mid(), 1e-8 * (1 + std::abs(A(i, j))));
            EXPECT_NEAR(B(i, j), pen.B(i, j).mid(), 1e-8 * (1 + std::abs(B(i, j))));
        }
}

TEST(RitzSpectrum, SmallPencils) {
    Matrix A(2, 2), B = Matrix::identity(2);
    A(0, 0) = 2;
    A(1, 1) = 3;
    auto sp = approx_spectrum(A, B);
    EXPECT_NEAR(sp[0].value, 2.0, 1e-14);
    EXPECT_NEAR(sp[1].value, 3.0, 1e-14);
    Matrix S(3, 3);
    double v[9] = {4, 1, 0.5, 1, 3, 0.2, 0.5, 0.2, 2};
    S.a.assign(v, v + 9);
    for (const EigenPair& p : approx_spectrum(S, S)) EXPECT_NEAR(p.value, 1.0, 1e-12);
    Matrix bad(2, 2);
    bad(0, 0) = -1;
    bad(1, 1) = 1;
    EXPECT_THROW(approx_spectrum(A, bad), NotPosDef);
}

TEST(RitzSpectrum, SecondValueAtZero) {
    TrialBasis b = basis_at(Interval(0.0), 17);
    Matrix A, B;
    float_pencil(0.0, t0_enclosure().mid(), b, A, B);
    auto sp = approx_spectrum(A, B);
    double exact = fd_mu2(0.0);  // 18.8955
    EXPECT_GT(sp[1].value, exact);
    EXPECT_NEAR(sp[1].value, 19.48, 0.05);
    EXPECT_LT(sp[1].value, 21.091);
}

TEST(RitzCertify, DiagonalPencil) {
    IntervalMatrix A(2, 2), B(2, 2);
    A(0, 0) = Interval(2.0);
    A(1, 1) = Interval(3.0);
    B(0, 0) = B(1, 1) = Interval(1.0);
    double u = reduced_upper(A, B);
    EXPECT_GE(u, 3.0);
    EXPECT_LE(u, 3.0 + 1e-14);
    IntervalPencil pen;
    pen.A = A;
    pen.B = B;
    UpperBoundResult r = certified_upper_mu2(pen, {1.0, 0.0}, {0.0, 1.0});
    EXPECT_TRUE(r.posdef_certified);
    EXPECT_GE(r.upper, 3.0);
    EXPECT_LE(r.upper, 3.0 + 1e-14);
}

TEST(RitzCertify, IndefiniteMassFails) {
    IntervalMatrix A(2, 2), B(2, 2);
    A(0, 0) = A(1, 1) = Interval(1.0);
    B(0, 0) = Interval(1.0);
    B(1, 1) = Interval(-0.5, 0.5);
    EXPECT_THROW(reduced_upper(A, B), PosDefFail);
}

TEST(RitzCertify, ZeroWidthMatchesQuadraticFormula) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 200; ++k) {
        double a = 5 + u(rng), d = 7 + u(rng), b = u(rng);
        double p = 1 + 0.3 * u(rng), r = 1 + 0.3 * u(rng), q = 0.3 * u(rng);
        IntervalMatrix A(2, 2), B(2, 2);
        A(0, 0) = Interval(a);
        A(1, 1) = Interval(d);
        A(0, 1) = A(1, 0) = Interval(b);
        B(0, 0) = Interval(p);
        B(1, 1) = Interval(r);
        B(0, 1) = B(1, 0) = Interval(q);
        long double c2 = (long double)p * r - (long double)q * q;
        long double c1 = -((long double)a * r + (long double)d * p - 2.0L * b * q);
        long double c0 = (long double)a * d - (long double)b * b;
        long double root = (-c1 + std::sqrt(c1 * c1 - 4 * c2 * c0)) / (2 * c2);
        double up = reduced_upper(A, B);
        EXPECT_GE((long double)up, root * (1 - 1e-18L));
        EXPECT_LE(up, static_cast<double>(root) * (1 + 4 * std::numeric_limits<double>::epsilon()) + 1e-300);
    }
}

TEST(RitzCertify, SeedEigenvectorsReproduceEigenvalue) {
    TrialBasis b = basis_at(Interval(0.2), 5);
    Matrix A, B;
    float_pencil(0.2, t0_enclosure().mid(), b, A, B);
    auto sp = approx_spectrum(A, B);
    IntervalPencil pen;
    pen.A = point_matrix(A);
    pen.B = point_matrix(B);
    UpperBoundResult r = certified_upper_mu2(pen, sp[0].vector, sp[1].vector);
    EXPECT_NEAR(r.upper, sp[1].value, 1e-9 * sp[1].value);
    EXPECT_GE(r.upper, r.float_estimate - 1e-9);
}

TEST(RitzCertify, WideningNeverDeflates) {
    TrialBasis b = basis_at(Interval(0.2), 5);
    Matrix A, B;
    float_pencil(0.2, t0_enclosure().mid(), b, A, B);
    auto sp = approx_spectrum(A, B);
    double prev = -1;
    for (double delta : {0.0, 1e-8, 1e-6, 1e-4}) {
        IntervalPencil pen;
        pen.A = point_matrix(A);
        pen.B = point_matrix(B);
        for (Interval& x : pen.A.a) x = Interval(fp::sub_down(x.lo, delta), fp::add_up(x.hi, delta));
        for (Interval& x : pen.B.a) x = Interval(fp::sub_down(x.lo, delta * 1e-3), fp::add_up(x.hi, delta * 1e-3));
        double up = certified_upper_mu2(pen, sp[0].vector, sp[1].vector).upper;
        EXPECT_GE(up, prev);
        if (delta > 0) EXPECT_LT(up - sp[1].value, 1e4 * delta + 1e-8);
        prev = up;
    }
}

TEST(RitzCertify, IntervalPencilRouteAgreesWithReducedRoute) {
    // Entry widths grow with |J|, and the n x n route amplifies them by sum |w_i|.
    Interval J(0.40, 0.4001);
    TrialBasis b = basis_at(J, 5);
    Matrix A, B;
    float_pencil(J.mid(), t0_enclosure().mid(), b, A, B);
    auto sp = approx_spectrum(A, B);
    IntervalPencil pen = assemble_pencil(J, t0_enclosure(), b, 1e-9);
    UpperBoundResult full = certified_upper_mu2(pen, sp[0].vector, sp[1].vector);
    UpperBoundResult red = certified_upper_reduced(J, t0_enclosure(), b, sp[0].vector, sp[1].vector, 1e-9);
    EXPECT_NEAR(full.upper, red.upper, 0.05);
    EXPECT_GE(full.upper, sp[1].value);
    EXPECT_GE(red.upper, sp[1].value);
}

TEST(RitzSweep, UpperBoundsAreValid) {
    SweepConfig cfg;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 0.999);
    for (int k = 0; k < 10; ++k) {
        double s = u(rng);
        double lo = std::floor(s * 100) / 100;
        Interval J(lo, std::min(1.0, lo + 0.01));
        UpperBoundResult r = upper_on_subinterval(J, cfg);
        double oracle = fd_mu2(s);
        EXPECT_GE(r.upper, oracle - 1e-3) << "s = " << s;
        EXPECT_GE(r.upper, r.float_estimate) << "s = " << s;
        EXPECT_TRUE(r.posdef_certified);
    }
}

TEST(RitzSweep, NestedBasesGiveNonincreasingUppers) {
    SweepConfig cfg;
    cfg.basis = BasisKind::Plain;
    for (double s : {0.1, 0.55}) {
        double oracle = fd_mu2(s);
        double prev = std::numeric_limits<double>::infinity();
        for (int n : {5, 9, 17}) {
            cfg.n_basis = n;
            double up = upper_on_subinterval(Interval(s), cfg).upper;
            EXPECT_GE(up, oracle - 1e-3) << "n = " << n;
            EXPECT_LE(up, prev + 1e-6) << "n = " << n;
            prev = up;
        }
    }
}

TEST(RitzSweep, RefinementMonotone) {
    SweepConfig cfg;
    for (double lo : {0.3, 0.95}) {
        Interval J(lo, lo + 0.01);
        double parent = upper_on_subinterval(J, cfg).upper;
        double child = -1;
        for (const Interval& h : subdivide(J, 2)) child = std::max(child, upper_on_subinterval(h, cfg).upper);
        EXPECT_LE(child, parent + 1e-9) << lo;
    }
}

TEST(RitzSweep, QuadratureConverged) {
    SweepConfig cfg;
    Interval J(0.5, 0.51);
    double a = upper_on_subinterval(J, cfg).upper;
    cfg.quad_target /= 2;
    double b = upper_on_subinterval(J, cfg).upper;
    EXPECT_LT(std::abs(a - b), 1e-3);
}

TEST(RitzSweep, SinglePieceHullIsCoarser) {
    SweepConfig cfg;
    cfg.n_s = 1;
    cfg.refine_above = std::numeric_limits<double>::infinity();
    SweepResult r = algorithm1_sweep(cfg);
    ASSERT_EQ(r.per_subinterval.size(), 1u);
    EXPECT_TRUE(std::isfinite(r.U));
    EXPECT_GT(r.U, 21.12);
}

TEST(RitzSweep, RejectsBadConfig) {
    EXPECT_THROW(algorithm1_sweep(1, 10, t0_enclosure(), 1e-6), DomainError);
    EXPECT_THROW(algorithm1_sweep(5, 0, t0_enclosure(), 1e-6), DomainError);
}
