#pragma once

#include <string>
#include <vector>

#include "gapcert/airy_lower.hpp"
#include "gapcert/ritz.hpp"

namespace gapcert {

inline constexpr const char* kCodeVersion = "gapcert 1.0.0";

struct ProofConfig {
    int n_basis = 17;
    int n_s = 100;
    Interval t0 = t0_enclosure();
    double quad_target = 1e-6;
    Interval kappa_box = default_kappa_box();
    double threshold_mu = 23.5;
    BasisKind basis = BasisKind::Enriched;
    double refine_above = 21.05;
    int max_depth = 8;
    double kappa_max = 3.5;
    int threads = 0;

    SweepConfig sweep() const;
};

enum class Verdict { Proven, NotProven, Error };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct ProofCertificate {
    ProofConfig config;
    double U = 0.0;
    double L = 0.0;
    Interval kappa3_zero;
    std::vector<Interval> roots_at_zero;
    PositivityCertificate positivity;
    Interval mu_bar3_lower;
    std::vector<UpperBoundResult> per_subinterval;
    Verdict verdict = Verdict::Error;
    std::string error_stage;
    std::string error_message;
    std::string code_version = kCodeVersion;
    std::string started;
    std::string finished;
};

// mu_bar / (1 + t0^(2/3) mu_bar / (3 pi^2)).
Interval lower_transfer(const Interval& mu_bar, const Interval& t0);
// lambda = t^(-4/3) mu + pi^2 / t^2 and its inverse mu = t^(4/3) (lambda - pi^2 / t^2).
Interval lambda_from_mu(const Interval& mu, const Interval& t);
Interval mu_from_lambda(const Interval& lambda, const Interval& t);

ProofCertificate prove_separation(const ProofConfig& cfg);

struct CurveRow {
    double s = 0.0;
    double mu_hat2_upper = 0.0;
    double mu_bar3_lo = 0.0;
    double mu_bar3_hi = 0.0;
    double mu3_transferred_lo = 0.0;
    bool inconclusive = false;
};

std::vector<CurveRow> scan_curves(int grid, const ProofConfig& cfg = {});

struct AiryScanRow {
    double kappa = 0.0;
    double f_mid = 0.0;
    double f_width = 0.0;
};

std::vector<AiryScanRow> airy_scan(double s, const Interval& kappa_range, int steps);

}  // namespace gapcert
