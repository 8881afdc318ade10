#pragma once

#include <optional>
#include <vector>

#include "gapcert/dense.hpp"
#include "gapcert/geometry.hpp"

namespace gapcert {

// Gaussian trial functions phi_i(x) = (x - a_left)(x - a_right) exp(-(x - c_i)^2),
// optionally enriched by one apex function supported left of the apex preimage.
// In the reference coordinate u = (x - a_left)/(a_right - a_left) the centers
// sit at nu_i = (i + N - 2)/(2(N - 1)) independently of s.
struct TrialBasis {
    int n = 0;
    std::vector<Interval> centers;
    ScaledInterval endpoints;
    std::vector<Interval> nu;
    // Apex function L^2 u (u_c - u) exp(-(L(u - u_c) + 1)^2) on [0, u_c], zero beyond.
    std::optional<double> apex_u;

    int size() const { return n + (apex_u ? 1 : 0); }
};

TrialBasis make_basis(const ScaledInterval& endpoints, int n);
// Adds the apex function with u_c = (1 + s_lo)/2 rounded down.
TrialBasis with_apex(TrialBasis basis, double s_lo);

struct IntervalPencil {
    Interval s_interval;
    IntervalMatrix A;
    IntervalMatrix B;
    double assembly_width = 0.0;
    bool budget_exceeded = false;
};

struct UpperBoundResult {
    Interval s_interval;
    double upper = 0.0;
    double float_estimate = 0.0;
    bool posdef_certified = false;
};

// Rigorous pencil over the basis. Potential entries use a mean-value form in s
// about a dyadic midpoint of s_interval.
IntervalPencil assemble_pencil(const Interval& s_interval, const Interval& t0, const TrialBasis& basis,
                               double quad_target);

// Floating-point pencil at a point s by composite Gauss-Legendre quadrature.
void float_pencil(double s, double t0, const TrialBasis& basis, Matrix& A, Matrix& B);

std::vector<EigenPair> approx_spectrum(const Matrix& A, const Matrix& B);

// Larger root of det(A - theta B) = 0 for a 2x2 interval pencil, upper endpoint.
// Throws PosDefFail or ComplexRoots.
double reduced_upper(const IntervalMatrix& A2, const IntervalMatrix& B2);

UpperBoundResult certified_upper_mu2(const IntervalPencil& pencil, const std::vector<double>& seed1,
                                     const std::vector<double>& seed2);

// Reduced route: integrates the two seed combinations directly and certifies
// their 2x2 pencil over s_interval.
UpperBoundResult certified_upper_reduced(const Interval& s_interval, const Interval& t0, const TrialBasis& basis,
                                         const std::vector<double>& seed1, const std::vector<double>& seed2,
                                         double quad_target);

enum class BasisKind { Plain, Enriched };

struct SweepConfig {
    int n_basis = 17;
    int n_s = 100;
    Interval t0 = t0_enclosure();
    double quad_target = 1e-6;
    BasisKind basis = BasisKind::Enriched;
    double apex_from = 0.9;
    // Subintervals whose upper exceeds this are bisected, at most max_depth times, while the
    // float estimate at the midpoint (apex function clamped there) stays below it.
    double refine_above = 21.05;
    int max_depth = 8;
    int threads = 0;
};

struct SweepResult {
    double U = 0.0;
    std::vector<UpperBoundResult> per_subinterval;
    int refinements = 0;
};

// Seeds from the float pencil at the midpoint, then the reduced certification.
UpperBoundResult upper_on_subinterval(const Interval& s_interval, const SweepConfig& cfg);

SweepResult algorithm1_sweep(const SweepConfig& cfg);
SweepResult algorithm1_sweep(int n, int n_s, const Interval& t0, double quad_target);

}  // namespace gapcert
