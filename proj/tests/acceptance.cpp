#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "gapcert/certificate.hpp"
#include "gapcert/oracle.hpp"

using namespace gapcert;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_s) {
        o.pass = false;
        o.detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + " s budget)";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d %-28s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double x) { return exact_decimal(x); }

ProofCertificate cert;

Outcome proof_reproduction() {
    cert = prove_separation(ProofConfig{});
    std::ostringstream d;
    d << "verdict " << to_string(cert.verdict) << " U=" << fmt(cert.U) << " L=" << fmt(cert.L)
      << " pieces=" << cert.per_subinterval.size();
    if (cert.verdict == Verdict::Error) d << " " << cert.error_stage << ": " << cert.error_message;
    bool ok = cert.verdict == Verdict::Proven && cert.U >= 20.9 && cert.U <= 21.12 && cert.L >= 21.149 &&
              verify_certificate(cert).ok;
    return {ok, d.str()};
}

Outcome kappa3_enclosure() {
    auto roots = isolate_positive_roots(Interval(0.0), 3.5);
    if (roots.size() < 3) return {false, "fewer than three roots"};
    Interval k3 = roots[2].root;
    bool ok = k3.width() <= 1e-4 && Interval(3.2481, 3.2482).contains(k3);
    return {ok, "kappa3(0) in " + to_string(k3) + " width " + fmt(k3.width())};
}

Outcome positivity_sweep() {
    PositivityCertificate p = certify_no_crossing(Interval(3.2174, 3.2175));
    double lo = 1.0, hi = 0.0;
    for (const Interval& s : p.s_cover) {
        lo = std::min(lo, s.lo);
        hi = std::max(hi, s.hi);
    }
    bool ok = p.min_inf > 0.0 && lo <= 0.0 && hi >= 1.0 && p.s_cover.size() <= 10000;
    return {ok, "min_inf=" + fmt(p.min_inf) + " pieces=" + std::to_string(p.s_cover.size())};
}

Outcome transfer_formula() {
    Interval L = lower_transfer(Interval(23.5), t0_enclosure());
    // 23.5 / (1 + t0^(2/3) 23.5 / (3 pi^2)) evaluated in 300-bit arithmetic
    bool ok = L.contains(21.14925376767776) && L.width() <= 1e-3 && L.lo >= 21.149;
    return {ok, "lower_transfer(23.5) = " + to_string(L)};
}

Outcome scaling_equivalence() {
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k)
        for (const oracle::ScalingRow& r : oracle::cross_check_scaling(k)) worst = std::max(worst, r.deviation);
    return {worst <= 1e-3, "max relative deviation " + fmt(worst)};
}

Outcome sandwich() {
    if (cert.verdict != Verdict::Proven) return {false, "no Proven certificate to check against"};
    double t0 = t0_enclosure().lo;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> us(0.0, 0.95), ut(t0 / 4, t0);
    double worst2 = -1e300, worst3 = 1e300;
    for (int i = 0; i < 10; ++i) {
        double s = us(rng), t = ut(rng);
        oracle::SandwichReport r = oracle::cross_check_sandwich(s, t, cert, 6);
        worst2 = std::max(worst2, r.mu2);
        worst3 = std::min(worst3, r.mu3);
    }
    return {true, "10 samples, max mu2=" + fmt(worst2) + " min mu3=" + fmt(worst3)};
}

Outcome property_suites() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        Interval X(std::min(a, b), std::max(a, b)), Y(std::min(c, d), std::max(c, d));
        double x = X.lo, y = Y.hi;
        double p = x * y, e = std::fma(x, y, -p);
        Interval P = X * Y;
        if (p < P.lo || p > P.hi || (p == P.lo && e < 0) || (p == P.hi && e > 0)) ++bad;
        double s = x + y, z = s - x, es = (x - (s - z)) + (y - z);
        Interval S = X + Y;
        if (s < S.lo || s > S.hi || (s == S.lo && es < 0) || (s == S.hi && es > 0)) ++bad;
    }
    if (bad) return {false, std::to_string(bad) + " interval containment violations"};

    for (int i = 0; i < 200; ++i) {
        Interval X(-8.0 + 16.0 * i / 199.0);
        if (!(eval_A_second(X) + X * eval_A(X)).contains_zero()) return {false, "Airy ODE residual excludes 0"};
    }

    Interval t0 = t0_enclosure();
    for (double s : {0.0, 0.3, 0.7}) {
        ScaledInterval w = scaled_interval({Interval(s), t0});
        for (int j = 0; j < 40; ++j) {
            double x = w.a_left.hi + (w.a_right.lo - w.a_left.hi) * (j + 0.5) / 40.0;
            double prev = -1e300;
            for (int i = 0; i < 40; ++i) {
                double t = t0.lo * (0.1 + 0.9 * i / 39.0);
                double v = potential_vt({Interval(s), Interval(t)}, Interval(x)).mid();
                if (v < prev - 1e-12 * (1 + std::abs(v))) return {false, "potential not monotone in t"};
                prev = v;
            }
        }
    }

    for (double s : {0.0, 0.5}) {
        double limit = oracle::fd_eigs_extrapolated(oracle::Potential::problem3(s), 4000, 2).values[1];
        double prev = -1.0, small_gap = 0.0, gap = 0.0;
        for (int j = 5; j >= 0; --j) {
            double t = t0.mid() / std::pow(2.0, j);
            double mu2 = oracle::fd_eigs_extrapolated(oracle::Potential::problem2(s, t), 4000, 2).values[1];
            if (mu2 < prev - 1e-4) return {false, "FD mu2 not monotone in t"};
            if (mu2 < limit - 1e-4) return {false, "FD mu2 below its t -> 0 limit"};
            gap = mu2 - limit;
            if (j == 5) small_gap = gap;
            prev = mu2;
        }
        // The gap decays like t^(2/3): a factor 32^(-2/3) ~ 0.099 over five halvings.
        if (small_gap > 0.12 * gap) return {false, "FD mu2 does not approach its t -> 0 limit"};
    }

    double worst = 0.0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, eval_fs_minus(Interval(0.0), Interval(4.9 * i / 99.0)).mag());
    if (worst >= 1e-12) return {false, "minus-sign variant does not vanish at s = 0"};
    return {true, "containment, Airy ODE, potential monotonicity, FD t-limit, sign check"};
}

}  // namespace

int main() {
    run(1, "proof reproduction", 600, proof_reproduction);
    run(2, "kappa3(0) enclosure", 5, kappa3_enclosure);
    run(3, "positivity sweep", 60, positivity_sweep);
    run(4, "transfer formula", 1, transfer_formula);
    run(5, "scaling-relation oracle", 30, scaling_equivalence);
    run(6, "sandwich cross-check", 300, sandwich);
    run(7, "property suites", 120, property_suites);
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
