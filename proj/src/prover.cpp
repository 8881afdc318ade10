#include "gapcert/prover.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>

namespace gapcert {

namespace {

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void require_positive(const Interval& t, const char* what) {
    if (!(t.lo > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

SweepConfig ProofConfig::sweep() const {
    SweepConfig s;
    s.n_basis = n_basis;
    s.n_s = n_s;
    s.t0 = t0;
    s.quad_target = quad_target;
    s.basis = basis;
    s.refine_above = refine_above;
    s.max_depth = max_depth;
    s.threads = threads;
    return s;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Proven: return "Proven";
        case Verdict::NotProven: return "NotProven";
        case Verdict::Error: return "Error";
    }
    return "Error";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "Proven") return Verdict::Proven;
    if (s == "NotProven") return Verdict::NotProven;
    if (s == "Error") return Verdict::Error;
    throw DomainError("unknown verdict " + s);
}

Interval lower_transfer(const Interval& mu_bar, const Interval& t0) {
    require_positive(mu_bar, "mu_bar");
    require_positive(t0, "t0");
    Interval c = pow_2_3(t0) / (Interval(3.0) * sqr(pi_enclosure()));
    return Interval(1.0) / (Interval(1.0) / mu_bar + c);
}

Interval lambda_from_mu(const Interval& mu, const Interval& t) {
    require_positive(t, "t");
    return mu / pow_4_3(t) + sqr(pi_enclosure()) / sqr(t);
}

Interval mu_from_lambda(const Interval& lambda, const Interval& t) {
    require_positive(t, "t");
    return pow_4_3(t) * (lambda - sqr(pi_enclosure()) / sqr(t));
}

ProofCertificate prove_separation(const ProofConfig& cfg) {
    ProofCertificate cert;
    cert.config = cfg;
    cert.started = utc_now();
    std::string stage = "config";
    try {
        if (cfg.n_basis < 2 || cfg.n_s < 1 || !(cfg.quad_target > 0.0)) throw DomainError("invalid proof configuration");

        stage = "step2";
        std::vector<RootEnclosure> roots = isolate_positive_roots(Interval(0.0), cfg.kappa_max);
        for (const RootEnclosure& r : roots) cert.roots_at_zero.push_back(r.root);
        if (roots.size() < 3) throw CheckFailed("fewer than three roots of f_0 below kappa_max");
        cert.kappa3_zero = roots[2].root;
        if (!(cert.kappa3_zero.lo > cfg.kappa_box.hi)) throw CheckFailed("kappa_3(0) is not above the kappa box");
        cert.positivity = certify_no_crossing(cfg.kappa_box);
        cert.mu_bar3_lower = mu_bar_bound(cfg.kappa_box.hi);
        if (cert.mu_bar3_lower.lo < cfg.threshold_mu)
            throw CheckFailed("certified mu_bar_3 lower bound " + to_string(cert.mu_bar3_lower) +
                              " is below the threshold");

        stage = "transfer";
        cert.L = lower_transfer(Interval(cfg.threshold_mu), cfg.t0).lo;

        stage = "step1";
        SweepResult sw = algorithm1_sweep(cfg.sweep());
        cert.U = sw.U;
        cert.per_subinterval = std::move(sw.per_subinterval);

        bool all_posdef = true;
        for (const UpperBoundResult& r : cert.per_subinterval) all_posdef = all_posdef && r.posdef_certified;
        cert.verdict = (all_posdef && cert.U < cert.L) ? Verdict::Proven : Verdict::NotProven;
    } catch (const std::exception& e) {
        cert.verdict = Verdict::Error;
        cert.error_stage = stage;
        cert.error_message = e.what();
    }
    cert.finished = utc_now();
    return cert;
}

std::vector<CurveRow> scan_curves(int grid, const ProofConfig& cfg) {
    if (grid < 2) throw DomainError("grid must be at least 2");
    std::vector<CurveRow> rows;
    SweepConfig sc = cfg.sweep();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < grid; ++i) {
        CurveRow row;
        row.s = i == grid - 1 ? 1.0 : static_cast<double>(i) / (grid - 1);
        try {
            row.mu_hat2_upper = upper_on_subinterval(Interval(row.s), sc).upper;
        } catch (const Error&) {
            row.mu_hat2_upper = nan;
            row.inconclusive = true;
        }
        try {
            std::vector<RootEnclosure> roots = isolate_positive_roots(Interval(row.s), 4.0);
            if (roots.size() < 3) throw Inconclusive("fewer than three roots");
            Interval mu = scaling_constant() * roots[2].root;
            row.mu_bar3_lo = mu.lo;
            row.mu_bar3_hi = mu.hi;
            row.mu3_transferred_lo = lower_transfer(mu, cfg.t0).lo;
        } catch (const Error&) {
            row.mu_bar3_lo = row.mu_bar3_hi = row.mu3_transferred_lo = nan;
            row.inconclusive = true;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<AiryScanRow> airy_scan(double s, const Interval& kappa_range, int steps) {
    if (steps < 2) throw DomainError("steps must be at least 2");
    if (kappa_range.lo < 0.0 || kappa_range.hi > 4.9) throw DomainError("kappa range must lie in [0, 4.9]");
    std::vector<AiryScanRow> rows;
    double h = (kappa_range.hi - kappa_range.lo) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        double k = i == steps - 1 ? kappa_range.hi : kappa_range.lo + h * i;
        Interval f = eval_fs(Interval(s), Interval(k));
        rows.push_back({k, f.mid(), f.width()});
    }
    return rows;
}

}  // namespace gapcert
