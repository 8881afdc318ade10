#include "gapcert/airy_lower.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gapcert {

namespace {

struct Args {
    Interval p, m;  // (1 +- s)^(1/3)
    AiryPair plus, minus;
};

Args airy_args(const Interval& s, const Interval& kappa) {
    if (s.lo < 0.0 || s.hi > 1.0) throw DomainError("s outside [0,1]");
    if (kappa.lo < 0.0) throw DomainError("kappa must be nonnegative");
    Interval sp = Interval(1.0) + s;
    Interval sm = Interval::make(std::max(0.0, fp::sub_down(1.0, s.hi)), fp::sub_up(1.0, s.lo));
    Args a;
    a.p = pow_1_3(sp);
    a.m = pow_1_3(sm);
    a.plus = eval_A_pair(pow_2_3(sp) * kappa);
    a.minus = eval_A_pair(pow_2_3(sm) * kappa);
    return a;
}

}  // namespace

Interval eval_fs(const Interval& s, const Interval& kappa) {
    Args a = airy_args(s, kappa);
    return a.p * a.plus.value * a.minus.derivative + a.m * a.minus.value * a.plus.derivative;
}

Interval eval_fs_minus(const Interval& s, const Interval& kappa) {
    Args a = airy_args(s, kappa);
    return a.p * a.plus.value * a.minus.derivative - a.m * a.minus.value * a.plus.derivative;
}

Interval fs_dkappa(const Interval& s, const Interval& kappa) {
    Args a = airy_args(s, kappa);
    Interval two(2.0);
    return two * a.plus.derivative * a.minus.derivative - two * kappa * a.p * a.m * a.plus.value * a.minus.value;
}

std::vector<RootEnclosure> isolate_positive_roots(const Interval& s, double kappa_max, double target_width) {
    if (!(kappa_max > 0.0)) throw DomainError("kappa_max must be positive");
    constexpr double kMinWidth = 1e-13;
    std::vector<RootEnclosure> roots;
    std::vector<Interval> stack{Interval(0.0, kappa_max)};
    while (!stack.empty()) {
        Interval X = stack.back();
        stack.pop_back();
        Interval F = eval_fs(s, X);
        if (!F.contains_zero()) continue;
        Interval D = fs_dkappa(s, X);
        if (!D.contains_zero()) {
            double c = X.mid();
            Interval N = Interval(c) - eval_fs(s, Interval(c)) / D;
            if (!intersects(N, X)) continue;
            if (X.interior_contains(N)) {
                Interval R = N;
                for (int it = 0; it < 60 && R.width() > target_width; ++it) {
                    double rc = R.mid();
                    Interval next = Interval(rc) - eval_fs(s, Interval(rc)) / fs_dkappa(s, R);
                    if (!intersects(next, R)) throw Inconclusive("Newton iterate left its own enclosure");
                    next = intersect(next, R);
                    if (next.width() >= R.width()) break;
                    R = next;
                }
                roots.push_back({R, 0, RootEvidence::IntervalNewtonUnique});
                continue;
            }
        }
        if (X.width() < kMinWidth) throw Inconclusive("root isolation stalled near kappa = " + to_string(X));
        double c = X.mid();
        // Off-center split keeps a root from sitting exactly on a split point.
        double split = X.lo + (c - X.lo) * 1.0009765625;
        if (!(split > X.lo && split < X.hi)) split = c;
        stack.push_back(Interval(split, X.hi));
        stack.push_back(Interval(X.lo, split));
    }
    std::sort(roots.begin(), roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) { return a.root.lo < b.root.lo; });
    for (std::size_t i = 0; i < roots.size(); ++i) roots[i].index = static_cast<int>(i) + 1;
    return roots;
}

Interval default_kappa_box() { return Interval(3.2174, 3.2175); }

PositivityCertificate certify_no_crossing(const Interval& kappa_box, int max_depth) {
    PositivityCertificate cert;
    cert.kappa_box = kappa_box;
    cert.min_inf = std::numeric_limits<double>::infinity();
    struct Item {
        Interval s;
        int depth;
    };
    std::vector<Item> stack{{Interval(0.0, 1.0), 0}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        Interval F = eval_fs(it.s, kappa_box);
        if (F.lo > 0.0) {
            cert.s_cover.push_back(it.s);
            cert.min_inf = std::min(cert.min_inf, F.lo);
            continue;
        }
        if (it.depth >= max_depth)
            throw DepthExceeded("f_s not certified positive over kappa box for s in " + to_string(it.s));
        std::vector<Interval> halves = subdivide(it.s, 2);
        stack.push_back({halves[1], it.depth + 1});
        stack.push_back({halves[0], it.depth + 1});
    }
    return cert;
}

Interval scaling_constant() { return pow_2_3(Interval(2.0) * sqr(pi_enclosure())); }

Interval mu_bar_bound(double kappa_lower) {
    if (!(kappa_lower > 0.0)) throw DomainError("kappa_lower must be positive");
    return scaling_constant() * Interval(kappa_lower);
}

std::pair<Interval, Interval> matching_coeffs(double s, const RootEnclosure& root) {
    if (!(s >= 0.0 && s < 1.0)) throw DomainError("matching coefficients need 0 <= s < 1");
    Args a = airy_args(Interval(s), root.root);
    bool row1 = !(a.plus.value.contains_zero() && a.minus.value.contains_zero());
    if (row1) return {a.minus.value, a.plus.value};
    Interval d1 = a.plus.derivative / a.p, d2 = a.minus.derivative / a.m;
    if (d1.contains_zero() && d2.contains_zero()) throw DegenerateRow("both matching rows enclose zero");
    return {d2, -d1};
}

}  // namespace gapcert
