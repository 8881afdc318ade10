#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "gapcert/prover.hpp"

// Plain floating-point reference solvers. Nothing here is rigorous.
namespace gapcert::oracle {

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i+1
    int size() const { return static_cast<int>(diag.size()); }
};

// Number of eigenvalues strictly below x (Sturm count through the LDL^T pivots).
int sturm_count(const Tridiagonal& m, double x);
// Lowest k eigenvalues by bisection on the Sturm count.
std::vector<double> sturm_eigenvalues(const Tridiagonal& m, int k);

enum class PotentialKind { Problem2, Problem3, Custom };

struct Potential {
    PotentialKind kind = PotentialKind::Custom;
    double s = 0.0;
    double t = 0.0;
    std::function<double(double)> custom;

    static Potential problem2(double s, double t);
    static Potential problem3(double s);
    static Potential from_function(std::function<double(double)> v);
    double operator()(double x) const;
};

// Scaled interval for Problem 2, [-30(1+s), 30(1-s)] for Problem 3.
std::pair<double, double> default_domain(const Potential& v);

struct FdResult {
    std::vector<double> values;
    bool truncation_warning = false;
};

// Second-difference discretization of -u'' + V u with Dirichlet ends on n_grid intervals.
FdResult fd_eigs_1d(const Potential& v, double a, double b, int n_grid, int k);
FdResult fd_eigs_1d(const Potential& v, int n_grid, int k);
// Richardson combination of grids n and 2n.
FdResult fd_eigs_extrapolated(const Potential& v, int n_grid, int k);

struct TriangleMesh {
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::array<int, 3>> elements;
    std::vector<bool> boundary;
    std::vector<std::array<int, 2>> parents;  // edge endpoints of midpoint vertices, -1 for original ones
    std::size_t coarse_vertices = 0;          // vertex count before the last refinement
};

// Column mesh of T(s,t) refined `level` times by midpoint subdivision.
TriangleMesh triangle_mesh(double s, double t, int level);

struct FemResult {
    std::vector<double> values;
    int unknowns = 0;
    bool ill_conditioned = false;
};

// Lowest k Dirichlet eigenvalues of T(s,t) with P1 elements.
FemResult fem_triangle_eigs(double s, double t, int level, int k);
// Results at every level from 3 up to `level`; each level starts from the prolongated coarser eigenvectors.
std::vector<FemResult> fem_triangle_levels(double s, double t, int level, int k);

struct SandwichReport {
    double s = 0.0;
    double t = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0;
    double tol2 = 0.0;
    double tol3 = 0.0;
    double U = 0.0;
    double L = 0.0;
    bool ill_conditioned = false;
};

// FEM at levels level-1 and level, Richardson-extrapolated mu_2, mu_3 compared with the certificate.
SandwichReport cross_check_sandwich(double s, double t, const ProofCertificate& cert, int level);

struct ScalingRow {
    double s = 0.0;
    double fd = 0.0;
    Interval airy;
    double deviation = 0.0;
};

// FD Problem-3 eigenvalue k against (2 pi^2)^(2/3) kappa_k(s) at s = 0, 0.25, 0.5.
std::vector<ScalingRow> cross_check_scaling(int k);

}  // namespace gapcert::oracle
