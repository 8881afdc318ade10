#include <cmath>
#include <numbers>
#include <sstream>

#include "gapcert/oracle.hpp"

namespace gapcert::oracle {

namespace {

double mu_of(double lambda, double t) {
    return std::pow(t, 4.0 / 3.0) * (lambda - std::numbers::pi * std::numbers::pi / (t * t));
}

}  // namespace

SandwichReport cross_check_sandwich(double s, double t, const ProofCertificate& cert, int level) {
    if (cert.verdict != Verdict::Proven) throw DomainError("sandwich check needs a Proven certificate");
    if (!in_omega_down(TriangleParams{Interval(s), Interval(t)}))
        throw DomainError("(s, t) = (" + std::to_string(s) + ", " + std::to_string(t) + ") lies outside Omega_down");
    if (level < 4) throw DomainError("sandwich check needs level >= 4");
    std::vector<FemResult> levels = fem_triangle_levels(s, t, level, 3);
    const FemResult& coarse = levels[levels.size() - 2];
    const FemResult& fine = levels.back();

    SandwichReport r;
    r.s = s;
    r.t = t;
    r.U = cert.U;
    r.L = cert.L;
    r.lambda2 = fine.values[1];
    r.lambda3 = fine.values[2];
    r.ill_conditioned = fine.ill_conditioned;
    double c2 = mu_of(coarse.values[1], t), f2 = mu_of(fine.values[1], t);
    double c3 = mu_of(coarse.values[2], t), f3 = mu_of(fine.values[2], t);
    r.mu2 = (4.0 * f2 - c2) / 3.0;
    r.mu3 = (4.0 * f3 - c3) / 3.0;
    r.tol2 = std::abs(f2 - c2) / 3.0;
    r.tol3 = std::abs(f3 - c3) / 3.0;

    std::ostringstream msg;
    msg.precision(10);
    if (!(r.lambda2 < r.lambda3)) msg << "FEM lambda_2 = " << r.lambda2 << " is not below lambda_3 = " << r.lambda3 << "; ";
    if (!(r.mu2 <= r.U + r.tol2)) msg << "mu_2 = " << r.mu2 << " exceeds U + tol = " << r.U + r.tol2 << "; ";
    if (!(r.mu3 >= r.L - r.tol3)) msg << "mu_3 = " << r.mu3 << " is below L - tol = " << r.L - r.tol3 << "; ";
    if (!msg.str().empty()) throw CheckFailed(msg.str());
    return r;
}

std::vector<ScalingRow> cross_check_scaling(int k) {
    if (k < 1 || k > 3) throw DomainError("k must lie in 1..3");
    std::vector<ScalingRow> rows;
    for (double s : {0.0, 0.25, 0.5}) {
        ScalingRow row;
        row.s = s;
        row.fd = fd_eigs_extrapolated(Potential::problem3(s), 4000, k).values[k - 1];
        std::vector<RootEnclosure> roots = isolate_positive_roots(Interval(s), 4.0);
        if (static_cast<int>(roots.size()) < k) throw CheckFailed("too few roots of f_s below 4");
        row.airy = scaling_constant() * roots[k - 1].root;
        row.deviation = std::abs(row.fd - row.airy.mid()) / row.fd;
        if (!(row.deviation <= 1e-3)) {
            std::ostringstream msg;
            msg.precision(10);
            msg << "scaling mismatch at s = " << s << ": FD " << row.fd << " vs " << row.airy.mid();
            throw CheckFailed(msg.str());
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gapcert::oracle
