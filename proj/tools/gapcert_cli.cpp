#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "gapcert/certificate.hpp"
#include "gapcert/oracle.hpp"

using namespace gapcert;

namespace {

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw DomainError("cannot open " + out + " for writing");
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string d(double x) { return exact_decimal(x); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified eigenvalue separation for thin triangles"};
    app.require_subcommand(1);

    ProofConfig pcfg;
    std::string basis = "enriched";
    std::string out;
    auto* prove = app.add_subcommand("prove", "Run the proof pipeline and write a JSON certificate");
    prove->add_option("--n-basis", pcfg.n_basis, "Trial functions")->capture_default_str();
    prove->add_option("--ns", pcfg.n_s, "Initial s-subintervals")->capture_default_str();
    prove->add_option("--quad-target", pcfg.quad_target, "Quadrature width target")->capture_default_str();
    prove->add_option("--basis", basis, "Trial basis")->check(CLI::IsMember({"plain", "enriched"}))->capture_default_str();
    prove->add_option("--threads", pcfg.threads, "Worker threads, 0 for all cores");
    prove->add_option("--out", out, "Certificate path (stdout when omitted)");

    int grid = 0;
    auto* scan = app.add_subcommand("scan", "Per-s upper and lower curves as CSV");
    scan->add_option("--grid", grid, "Number of s points")->required();
    scan->add_option("--out", out, "CSV path");

    double s = 0.0, kmin = 0.0, kmax = 4.0;
    int steps = 401;
    auto* ascan = app.add_subcommand("airy-scan", "Tabulate f_s(kappa) as CSV");
    ascan->add_option("--s", s)->capture_default_str();
    ascan->add_option("--kappa-min", kmin)->capture_default_str();
    ascan->add_option("--kappa-max", kmax)->capture_default_str();
    ascan->add_option("--steps", steps)->capture_default_str();
    ascan->add_option("--out", out, "CSV path");

    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "Re-check a certificate from its stored endpoints");
    verify->add_option("--cert", cert_path)->required();

    auto* oracle = app.add_subcommand("oracle", "Floating-point reference solvers");
    oracle->require_subcommand(1);
    int problem = 2, n_grid = 4000, k = 3, level = 6;
    double t = t0_enclosure().mid();
    auto* fd = oracle->add_subcommand("fd", "Finite-difference eigenvalues of Problem 2 or 3");
    fd->add_option("--problem", problem)->check(CLI::IsMember({2, 3}))->capture_default_str();
    fd->add_option("--s", s)->required();
    fd->add_option("--t", t)->capture_default_str();
    fd->add_option("--grid", n_grid)->capture_default_str();
    fd->add_option("--k", k)->capture_default_str();
    fd->add_option("--out", out, "CSV path");
    auto* fem = oracle->add_subcommand("fem", "P1 finite-element eigenvalues of T(s,t)");
    fem->add_option("--s", s)->required();
    fem->add_option("--t", t)->required();
    fem->add_option("--level", level)->capture_default_str();
    fem->add_option("--k", k)->capture_default_str();
    fem->add_option("--out", out, "CSV path");
    auto* check = oracle->add_subcommand("check", "FEM sandwich check against a certificate");
    check->add_option("--cert", cert_path)->required();
    check->add_option("--s", s)->required();
    check->add_option("--t", t)->required();
    check->add_option("--level", level)->capture_default_str();
    check->add_option("--out", out, "JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prove) {
            pcfg.basis = basis == "plain" ? BasisKind::Plain : BasisKind::Enriched;
            ProofCertificate cert = prove_separation(pcfg);
            emit(certificate_to_json(cert) + "\n", out);
            std::ostream& log = out.empty() ? std::cerr : std::cout;
            log << "verdict " << to_string(cert.verdict);
            if (cert.verdict == Verdict::Error) log << " at " << cert.error_stage << ": " << cert.error_message;
            else log << "  U = " << d(cert.U) << "  L = " << d(cert.L) << "  pieces = " << cert.per_subinterval.size();
            log << "\n";
            return cert.verdict == Verdict::Proven ? 0 : cert.verdict == Verdict::NotProven ? 2 : 1;
        }
        if (*scan) {
            std::ostringstream csv;
            csv << "s,mu_hat2_upper,mu_bar3_lo,mu_bar3_hi,mu3_transferred_lo\n";
            for (const CurveRow& r : scan_curves(grid, pcfg))
                csv << d(r.s) << ',' << d(r.mu_hat2_upper) << ',' << d(r.mu_bar3_lo) << ',' << d(r.mu_bar3_hi) << ','
                    << d(r.mu3_transferred_lo) << '\n';
            emit(csv.str(), out);
            return 0;
        }
        if (*ascan) {
            std::ostringstream csv;
            csv << "kappa,f_mid,f_width\n";
            for (const AiryScanRow& r : airy_scan(s, Interval(kmin, kmax), steps))
                csv << d(r.kappa) << ',' << d(r.f_mid) << ',' << d(r.f_width) << '\n';
            emit(csv.str(), out);
            return 0;
        }
        if (*verify) {
            VerifyReport rep = verify_certificate(certificate_from_json(read_file(cert_path)));
            for (const std::string& f : rep.failures) std::cout << "FAIL " << f << "\n";
            std::cout << (rep.ok ? "certificate verified" : "certificate rejected") << "\n";
            return rep.ok ? 0 : 2;
        }
        if (*fd) {
            oracle::Potential v = problem == 2 ? oracle::Potential::problem2(s, t) : oracle::Potential::problem3(s);
            oracle::FdResult r = oracle::fd_eigs_1d(v, n_grid, k);
            if (r.truncation_warning) std::cerr << "warning: eigenfunction mass near the truncated boundary\n";
            std::ostringstream csv;
            csv << "k,mu\n";
            for (int i = 0; i < k; ++i) csv << i + 1 << ',' << d(r.values[i]) << '\n';
            emit(csv.str(), out);
            return 0;
        }
        if (*fem) {
            oracle::FemResult r = oracle::fem_triangle_eigs(s, t, level, k);
            if (r.ill_conditioned) std::cerr << "warning: extreme aspect ratio, FEM ill-conditioned\n";
            std::ostringstream csv;
            csv << "k,lambda,mu\n";
            double c = std::pow(t, 4.0 / 3.0), shift = std::numbers::pi * std::numbers::pi / (t * t);
            for (int i = 0; i < k; ++i) csv << i + 1 << ',' << d(r.values[i]) << ',' << d(c * (r.values[i] - shift)) << '\n';
            emit(csv.str(), out);
            return 0;
        }
        if (*check) {
            ProofCertificate cert = certificate_from_json(read_file(cert_path));
            try {
                oracle::SandwichReport r = oracle::cross_check_sandwich(s, t, cert, level);
                nlohmann::json j = {{"s", r.s},       {"t", r.t},       {"lambda2", r.lambda2}, {"lambda3", r.lambda3},
                                    {"mu2", r.mu2},   {"mu3", r.mu3},   {"tol2", r.tol2},       {"tol3", r.tol3},
                                    {"U", r.U},       {"L", r.L},       {"ill_conditioned", r.ill_conditioned},
                                    {"pass", true}};
                emit(j.dump(2) + "\n", out);
                return 0;
            } catch (const CheckFailed& e) {
                nlohmann::json j = {{"s", s}, {"t", t}, {"pass", false}, {"message", e.what()}};
                emit(j.dump(2) + "\n", out);
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
