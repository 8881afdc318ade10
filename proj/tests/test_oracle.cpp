#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gapcert/oracle.hpp"

using namespace gapcert;
using namespace gapcert::oracle;

namespace {

const double kT0 = 0.0524077792830412;
// Largest double certified inside Omega_down.
const double kT0In = t0_enclosure().lo;

ProofCertificate stub_certificate(double U, double L) {
    ProofCertificate c;
    c.verdict = Verdict::Proven;
    c.U = U;
    c.L = L;
    return c;
}

}  // namespace

TEST(Sturm, SmallMatrix) {
    // tridiag(-1, 2, -1) of size 5: 2 - 2 cos(j pi / 6)
    Tridiagonal m{{2, 2, 2, 2, 2}, {-1, -1, -1, -1}};
    auto ev = sturm_eigenvalues(m, 5);
    for (int j = 1; j <= 5; ++j) EXPECT_NEAR(ev[j - 1], 2 - 2 * std::cos(j * std::numbers::pi / 6), 1e-13);
    EXPECT_EQ(sturm_count(m, 0.0), 0);
    EXPECT_EQ(sturm_count(m, 2.0 + 1e-9), 3);
    EXPECT_EQ(sturm_count(m, 10.0), 5);
}

TEST(Fd, HarmonicOscillator) {
    Potential v = Potential::from_function([](double x) { return x * x; });
    FdResult r = fd_eigs_1d(v, -10.0, 10.0, 4000, 3);
    ASSERT_EQ(r.values.size(), 3u);
    EXPECT_NEAR(r.values[0], 1.0, 1e-3);
    EXPECT_NEAR(r.values[1], 3.0, 1e-3);
    EXPECT_NEAR(r.values[2], 5.0, 1e-3);
    EXPECT_FALSE(r.truncation_warning);
    double e1 = std::abs(fd_eigs_1d(v, -10.0, 10.0, 1000, 3).values[2] - 5.0);
    double e2 = std::abs(fd_eigs_1d(v, -10.0, 10.0, 2000, 3).values[2] - 5.0);
    EXPECT_NEAR(e1 / e2, 4.0, 0.1);
    double e4 = fd_eigs_1d(v, -10.0, 10.0, 4000, 3).values[2];
    double e2v = fd_eigs_1d(v, -10.0, 10.0, 2000, 3).values[2];
    EXPECT_NEAR((4 * e4 - e2v) / 3, 5.0, 1e-7);
}

TEST(Fd, TruncationWarning) {
    Potential v = Potential::from_function([](double x) { return x * x; });
    EXPECT_TRUE(fd_eigs_1d(v, -2.0, 2.0, 1000, 3).truncation_warning);
}

TEST(Fd, RejectsBadInput) {
    Potential v = Potential::from_function([](double x) { return x * x; });
    EXPECT_THROW(fd_eigs_1d(v, -1.0, 1.0, 50, 1), DomainError);
    EXPECT_THROW(fd_eigs_1d(v, 1.0, -1.0, 1000, 1), DomainError);
    EXPECT_THROW(fd_eigs_1d(v, 1000, 1), DomainError);
    EXPECT_THROW(Potential::problem2(0.2, 0.0), DomainError);
}

TEST(Fd, LimitProblemValues) {
    FdResult r = fd_eigs_extrapolated(Potential::problem3(0.0), 4000, 3);
    EXPECT_NEAR(r.values[0], 7.441134, 1e-5);
    EXPECT_NEAR(r.values[1], 17.077238, 1e-5);
    EXPECT_NEAR(r.values[2], 23.724420, 1e-5);
    // (2 pi^2)^(2/3) kappa_3(0)
    EXPECT_NEAR(r.values[2], 7.30387211937511 * 3.248197582179837, 1e-5);
}

TEST(Fd, Problem2AtT0) {
    FdResult r = fd_eigs_extrapolated(Potential::problem2(0.0, kT0), 4000, 3);
    EXPECT_NEAR(r.values[1], 18.8955, 1e-3);
    EXPECT_LE(r.values[1], 21.101);
    EXPECT_LT(r.values[0], r.values[1]);
    EXPECT_LT(r.values[1], r.values[2]);
}

TEST(Fd, MonotoneInT) {
    for (double s : {0.0, 0.5, 0.9}) {
        double prev = -1.0;
        for (double t = kT0 / 8; t <= kT0 * (1 + 1e-12); t += kT0 / 8) {
            double mu2 = fd_eigs_extrapolated(Potential::problem2(s, t), 4000, 2).values[1];
            EXPECT_GE(mu2, prev - 1e-4) << "s=" << s << " t=" << t;
            prev = mu2;
        }
    }
}

TEST(Fd, ApproachesLimitAsTShrinks) {
    for (double s : {0.0, 0.5}) {
        double limit = fd_eigs_extrapolated(Potential::problem3(s), 4000, 2).values[1];
        double prev_gap = 1e300, first_gap = 0.0;
        for (int j = 0; j <= 5; ++j) {
            double t = kT0 / std::pow(2.0, j);
            double gap = fd_eigs_extrapolated(Potential::problem2(s, t), 4000, 2).values[1] - limit;
            EXPECT_GT(gap, -1e-4) << "s=" << s << " t=" << t;
            EXPECT_LT(gap, prev_gap) << "s=" << s << " t=" << t;
            if (j == 0) first_gap = gap;
            prev_gap = gap;
        }
        // The gap decays like t^(2/3): a factor 32^(-2/3) ~ 0.099 over five halvings.
        EXPECT_LT(prev_gap, 0.12 * first_gap) << s;
        EXPECT_LT(prev_gap, 0.2) << s;
    }
}

TEST(Fd, BelowCertifiedUpper) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 0.999);
    for (int i = 0; i < 20; ++i) {
        double s = u(rng);
        double mu2 = fd_eigs_extrapolated(Potential::problem2(s, kT0), 4000, 2).values[1];
        EXPECT_LE(mu2, 21.12) << s;
    }
}

TEST(Scaling, OracleEquivalence) {
    for (int k = 1; k <= 3; ++k) {
        auto rows = cross_check_scaling(k);
        ASSERT_EQ(rows.size(), 3u);
        for (const ScalingRow& r : rows) EXPECT_LE(r.deviation, 1e-3) << "k=" << k << " s=" << r.s;
    }
    EXPECT_THROW(cross_check_scaling(4), DomainError);
}

TEST(Mesh, Structure) {
    TriangleMesh m = triangle_mesh(0.3, 0.2, 3);
    ASSERT_FALSE(m.elements.empty());
    double area = 0.0;
    for (const auto& e : m.elements) {
        const auto& a = m.vertices[e[0]];
        const auto& b = m.vertices[e[1]];
        const auto& c = m.vertices[e[2]];
        double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
        EXPECT_GT(det, 0.0);
        area += det / 2;
    }
    // T(s,t) has base 2 and height t
    EXPECT_NEAR(area, 0.2, 1e-12);
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        double x = m.vertices[i][0], y = m.vertices[i][1];
        bool on_edge = std::abs(y) < 1e-14 || std::abs(y - 0.2 * (x + 1) / 1.3) < 1e-12 ||
                       std::abs(y - 0.2 * (1 - x) / 0.7) < 1e-12;
        EXPECT_EQ(static_cast<bool>(m.boundary[i]), on_edge) << x << "," << y;
    }
    EXPECT_THROW(triangle_mesh(0.3, 0.2, -1), DomainError);
}

TEST(Fem, RightIsoscelesTriangle) {
    FemResult r = fem_triangle_eigs(0.0, 1.0, 6, 2);
    double pi2 = std::numbers::pi * std::numbers::pi;
    // Legs of length sqrt(2): pi^2 (m^2 + n^2) / 2 for (m, n) = (2, 1), (3, 1)
    EXPECT_NEAR(r.values[0] / (2.5 * pi2), 1.0, 0.02);
    EXPECT_NEAR(r.values[1] / (5.0 * pi2), 1.0, 0.02);
    EXPECT_GT(r.values[0], 2.5 * pi2);
    EXPECT_GT(r.values[1], 5.0 * pi2);
}

TEST(Fem, MonotoneUnderRefinement) {
    auto levels = fem_triangle_levels(0.4, kT0, 6, 4);
    ASSERT_EQ(levels.size(), 4u);
    for (std::size_t l = 1; l < levels.size(); ++l) {
        EXPECT_GT(levels[l].unknowns, levels[l - 1].unknowns);
        for (int k = 0; k < 4; ++k) EXPECT_LE(levels[l].values[k], levels[l - 1].values[k] * (1 + 1e-12)) << l << " " << k;
    }
    for (int k = 1; k < 4; ++k) EXPECT_LT(levels.back().values[k - 1], levels.back().values[k]);
    EXPECT_THROW(fem_triangle_eigs(0.4, kT0, 2, 2), DomainError);
    EXPECT_THROW(fem_triangle_eigs(0.4, kT0, 4, 5), DomainError);
}

TEST(Fem, AgreesWithOneDimensionalReduction) {
    auto levels = fem_triangle_levels(0.0, kT0, 6, 2);
    double pi2 = std::numbers::pi * std::numbers::pi;
    double c = std::pow(kT0, 4.0 / 3.0), shift = pi2 / (kT0 * kT0);
    double mu2 = c * ((4 * levels[3].values[1] - levels[2].values[1]) / 3 - shift);
    double fd = fd_eigs_extrapolated(Potential::problem2(0.0, kT0), 4000, 2).values[1];
    EXPECT_NEAR(mu2, fd, 0.05);
}

TEST(Sandwich, SamplePoints) {
    ProofCertificate cert = stub_certificate(21.0489, 21.1492);
    SandwichReport a = cross_check_sandwich(0.0, kT0In, cert, 6);
    EXPECT_LT(a.lambda2, a.lambda3);
    EXPECT_LE(a.mu2, a.U + a.tol2);
    EXPECT_GE(a.mu3, a.L - a.tol3);
    SandwichReport b = cross_check_sandwich(0.9, kT0In / 2, cert, 6);
    EXPECT_LT(b.lambda2, b.lambda3);
    EXPECT_LE(b.mu2, b.U + b.tol2);
    EXPECT_GE(b.mu3, b.L - b.tol3);
}

TEST(Sandwich, RejectsOutsideRegionAndBadCertificates) {
    ProofCertificate cert = stub_certificate(21.0489, 21.1492);
    EXPECT_THROW(cross_check_sandwich(0.5, 1.5 * kT0In, cert, 5), DomainError);
    EXPECT_THROW(cross_check_sandwich(0.5, kT0In, cert, 3), DomainError);
    ProofCertificate bad = cert;
    bad.verdict = Verdict::NotProven;
    EXPECT_THROW(cross_check_sandwich(0.5, kT0In, bad, 5), DomainError);
    ProofCertificate tight = stub_certificate(10.0, 21.1492);
    EXPECT_THROW(cross_check_sandwich(0.0, kT0In, tight, 5), CheckFailed);
}
