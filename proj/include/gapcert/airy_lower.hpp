#pragma once

#include <utility>
#include <vector>

#include "gapcert/airy.hpp"

namespace gapcert {

enum class RootEvidence { SignChange, IntervalNewtonUnique };

struct RootEnclosure {
    Interval root;
    int index = 0;
    RootEvidence evidence = RootEvidence::SignChange;
};

struct PositivityCertificate {
    Interval kappa_box;
    std::vector<Interval> s_cover;
    double min_inf = 0.0;
};

// f_s(k) = (1+s)^(1/3) A(a+) A'(a-) + (1-s)^(1/3) A(a-) A'(a+), a+- = (1 +- s)^(2/3) k.
Interval eval_fs(const Interval& s, const Interval& kappa);
// Variant with a minus between the two products; vanishes identically at s = 0.
Interval eval_fs_minus(const Interval& s, const Interval& kappa);
// d f_s / d kappa = 2 A'(a+) A'(a-) - 2 k (1+s)^(1/3) (1-s)^(1/3) A(a+) A(a-).
Interval fs_dkappa(const Interval& s, const Interval& kappa);

// All roots of f_s in (0, kappa_max], in increasing order. Throws Inconclusive.
std::vector<RootEnclosure> isolate_positive_roots(const Interval& s, double kappa_max, double target_width = 1e-10);

// Covers s in [0,1] by pieces on which f_s > 0 over kappa_box. Throws DepthExceeded.
PositivityCertificate certify_no_crossing(const Interval& kappa_box, int max_depth = 24);

Interval default_kappa_box();

// (2 pi^2)^(2/3) kappa_lower.
Interval mu_bar_bound(double kappa_lower);
Interval scaling_constant();

// Nullspace direction (alpha_minus, alpha_plus) of the matching matrix
// [[A(a+), -A(a-)], [A'(a+)/(1+s)^(1/3), A'(a-)/(1-s)^(1/3)]]. Throws DegenerateRow.
std::pair<Interval, Interval> matching_coeffs(double s, const RootEnclosure& root);

}  // namespace gapcert
