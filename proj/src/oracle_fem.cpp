#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <unordered_map>

#include "gapcert/dense.hpp"
#include "gapcert/oracle.hpp"

namespace gapcert::oracle {

namespace {

// Symmetric band matrix, lower band stored row by row: entry (i, j) with i - b <= j <= i at i*(b+1) + (j - i + b).
struct BandMatrix {
    int n = 0;
    int b = 0;
    std::vector<double> v;

    BandMatrix(int n_, int b_) : n(n_), b(b_), v(static_cast<std::size_t>(n_) * (b_ + 1), 0.0) {}
    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * (b + 1) + (j - i + b)]; }
    double get(int i, int j) const {
        if (j > i) std::swap(i, j);
        if (i - j > b) return 0.0;
        return v[static_cast<std::size_t>(i) * (b + 1) + (j - i + b)];
    }
};

void band_multiply(const BandMatrix& m, const std::vector<double>& x, std::vector<double>& y) {
    y.assign(m.n, 0.0);
    for (int i = 0; i < m.n; ++i) {
        const double* row = &m.v[static_cast<std::size_t>(i) * (m.b + 1)];
        int j0 = std::max(0, i - m.b);
        double acc = row[m.b] * x[i];
        for (int j = j0; j < i; ++j) {
            double a = row[j - i + m.b];
            acc += a * x[j];
            y[j] += a * x[i];
        }
        y[i] += acc;
    }
}

// In-place band Cholesky; false when a pivot is not positive.
bool band_cholesky(BandMatrix& m) {
    for (int i = 0; i < m.n; ++i) {
        int j0 = std::max(0, i - m.b);
        for (int j = j0; j <= i; ++j) {
            double sum = m.at(i, j);
            int k0 = std::max(j0, std::max(0, j - m.b));
            for (int k = k0; k < j; ++k) sum -= m.at(i, k) * m.at(j, k);
            if (j == i) {
                if (!(sum > 0.0)) return false;
                m.at(i, i) = std::sqrt(sum);
            } else {
                m.at(i, j) = sum / m.at(j, j);
            }
        }
    }
    return true;
}

void band_solve(BandMatrix& l, std::vector<double>& x) {
    for (int i = 0; i < l.n; ++i) {
        double sum = x[i];
        for (int k = std::max(0, i - l.b); k < i; ++k) sum -= l.at(i, k) * x[k];
        x[i] = sum / l.at(i, i);
    }
    for (int i = l.n - 1; i >= 0; --i) {
        x[i] /= l.at(i, i);
        double xi = x[i];
        for (int k = std::max(0, i - l.b); k < i; ++k) x[k] -= l.at(i, k) * xi;
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TriangleMesh triangle_mesh(double s, double t, int level) {
    if (!(s > -1.0 && s < 1.0) || !(t > 0.0)) throw DomainError("invalid triangle parameters");
    if (level < 0) throw DomainError("level must be nonnegative");
    // Columns scale like t^(-1/3) so refined elements resolve both directions alike.
    int columns = std::max(4, static_cast<int>(std::ceil(4.5 * std::pow(t, -1.0 / 3.0))));
    int cl = std::max(1, static_cast<int>(std::lround(columns * (1.0 + s) / 2.0)));
    int cr = std::max(1, columns - cl);
    std::vector<double> xs;
    for (int i = 0; i <= cl; ++i) xs.push_back(i == cl ? s : -1.0 + (1.0 + s) * i / cl);
    for (int i = 1; i <= cr; ++i) xs.push_back(i == cr ? 1.0 : s + (1.0 - s) * i / cr);
    auto height = [&](double x) { return x <= s ? t * (x + 1.0) / (1.0 + s) : t * (1.0 - x) / (1.0 - s); };

    TriangleMesh mesh;
    std::vector<int> bottom, top;
    for (double x : xs) {
        bottom.push_back(static_cast<int>(mesh.vertices.size()));
        mesh.vertices.push_back({x, 0.0});
        double h = height(x);
        if (h > 0.0) {
            top.push_back(static_cast<int>(mesh.vertices.size()));
            mesh.vertices.push_back({x, h});
        } else {
            top.push_back(bottom.back());
        }
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        int b0 = bottom[i], b1 = bottom[i + 1], t0 = top[i], t1 = top[i + 1];
        if (t1 != b1) mesh.elements.push_back({b0, b1, t1});
        if (t0 != b0) mesh.elements.push_back({b0, t1, t0});
    }

    mesh.parents.assign(mesh.vertices.size(), {-1, -1});
    for (int l = 0; l < level; ++l) {
        mesh.coarse_vertices = mesh.vertices.size();
        std::unordered_map<std::uint64_t, int> mid;
        auto midpoint = [&](int a, int b) {
            std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint32_t>(std::max(a, b));
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            int id = static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back({0.5 * (mesh.vertices[a][0] + mesh.vertices[b][0]),
                                     0.5 * (mesh.vertices[a][1] + mesh.vertices[b][1])});
            mesh.parents.push_back({a, b});
            mid.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(mesh.elements.size() * 4);
        for (const auto& e : mesh.elements) {
            int m01 = midpoint(e[0], e[1]), m12 = midpoint(e[1], e[2]), m20 = midpoint(e[2], e[0]);
            next.push_back({e[0], m01, m20});
            next.push_back({m01, e[1], m12});
            next.push_back({m20, m12, e[2]});
            next.push_back({m01, m12, m20});
        }
        mesh.elements = std::move(next);
    }

    for (auto& e : mesh.elements) {
        const auto &p0 = mesh.vertices[e[0]], &p1 = mesh.vertices[e[1]], &p2 = mesh.vertices[e[2]];
        double area2 = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        if (area2 < 0.0) std::swap(e[1], e[2]);
    }

    std::unordered_map<std::uint64_t, int> edge_count;
    for (const auto& e : mesh.elements)
        for (int k = 0; k < 3; ++k) {
            int a = e[k], b = e[(k + 1) % 3];
            ++edge_count[(static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint32_t>(std::max(a, b))];
        }
    mesh.boundary.assign(mesh.vertices.size(), false);
    for (const auto& [key, count] : edge_count)
        if (count == 1) {
            mesh.boundary[key >> 32] = true;
            mesh.boundary[key & 0xffffffffu] = true;
        }
    return mesh;
}

namespace {

struct LevelSolution {
    FemResult result;
    std::vector<std::vector<double>> vectors;  // by mesh vertex, zero on the boundary
};

LevelSolution solve_level(const TriangleMesh& mesh, double t, int k, const std::vector<std::vector<double>>* start) {
    // Interior unknowns ordered by (x, y) for a narrow band.
    std::vector<int> interior;
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        if (!mesh.boundary[i]) interior.push_back(static_cast<int>(i));
    std::sort(interior.begin(), interior.end(), [&](int a, int b) { return mesh.vertices[a] < mesh.vertices[b]; });
    std::vector<int> dof(mesh.vertices.size(), -1);
    for (std::size_t i = 0; i < interior.size(); ++i) dof[interior[i]] = static_cast<int>(i);
    int n = static_cast<int>(interior.size());
    int p = k + 4;
    if (n < p) throw DomainError("mesh too coarse for the requested eigenvalues");

    int band = 0;
    for (const auto& e : mesh.elements)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (dof[e[a]] >= 0 && dof[e[b]] >= 0) band = std::max(band, dof[e[a]] - dof[e[b]]);

    BandMatrix K(n, band), M(n, band);
    for (const auto& e : mesh.elements) {
        const auto &p0 = mesh.vertices[e[0]], &p1 = mesh.vertices[e[1]], &p2 = mesh.vertices[e[2]];
        double area2 = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        double area = 0.5 * area2;
        double gx[3] = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
        double gy[3] = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
        for (int a = 0; a < 3; ++a) {
            int i = dof[e[a]];
            if (i < 0) continue;
            for (int b = 0; b < 3; ++b) {
                int j = dof[e[b]];
                if (j < 0 || j > i) continue;
                K.at(i, j) += (gx[a] * gx[b] + gy[a] * gy[b]) / (4.0 * area);
                M.at(i, j) += area / 12.0 * (a == b ? 2.0 : 1.0);
            }
        }
    }

    // Shift below the spectrum: every Dirichlet eigenvalue of T(s,t) exceeds pi^2 / t^2.
    double sigma = std::numbers::pi * std::numbers::pi / (t * t);
    BandMatrix F = K;
    for (std::size_t i = 0; i < F.v.size(); ++i) F.v[i] -= sigma * M.v[i];
    if (!band_cholesky(F)) throw NotPosDef("shifted FEM matrix is not positive definite");

    std::vector<std::vector<double>> X(p, std::vector<double>(n));
    if (start) {
        for (int j = 0; j < p; ++j)
            for (int i = 0; i < n; ++i) X[j][i] = (*start)[j][interior[i]];
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (auto& x : X)
            for (double& v : x) v = uni(rng);
    }

    std::vector<double> theta(p, 0.0), prev(p, 0.0), tmp;
    std::vector<std::vector<double>> KX(p), MX(p);
    for (int it = 0; it < 1000; ++it) {
        for (int j = 0; j < p; ++j) {
            band_multiply(M, X[j], tmp);
            band_solve(F, tmp);
            X[j] = tmp;
        }
        Matrix A(p, p), B(p, p);
        for (int j = 0; j < p; ++j) {
            band_multiply(K, X[j], KX[j]);
            band_multiply(M, X[j], MX[j]);
        }
        for (int i = 0; i < p; ++i)
            for (int j = 0; j <= i; ++j) {
                A(i, j) = A(j, i) = dot(X[i], KX[j]);
                B(i, j) = B(j, i) = dot(X[i], MX[j]);
            }
        std::vector<EigenPair> pairs = generalized_eigen(A, B);
        std::vector<std::vector<double>> Y(p, std::vector<double>(n, 0.0));
        for (int j = 0; j < p; ++j) {
            theta[j] = pairs[j].value;
            for (int i = 0; i < p; ++i) {
                double c = pairs[j].vector[i];
                for (int r = 0; r < n; ++r) Y[j][r] += c * X[i][r];
            }
        }
        X = std::move(Y);
        bool converged = it > 0;
        for (int j = 0; j < k; ++j) converged = converged && std::abs(theta[j] - prev[j]) <= 1e-12 * theta[j];
        prev = theta;
        if (converged) break;
    }

    LevelSolution sol;
    sol.result.values.assign(theta.begin(), theta.begin() + k);
    sol.result.unknowns = n;
    sol.result.ill_conditioned = t < 1e-3;
    sol.vectors.assign(p, std::vector<double>(mesh.vertices.size(), 0.0));
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) sol.vectors[j][interior[i]] = X[j][i];
    return sol;
}

}  // namespace

std::vector<FemResult> fem_triangle_levels(double s, double t, int level, int k) {
    if (level < 3) throw DomainError("level must be at least 3");
    if (k < 1 || k > 4) throw DomainError("k must lie in 1..4");
    std::vector<FemResult> out;
    std::vector<std::vector<double>> start;
    for (int l = 3; l <= level; ++l) {
        TriangleMesh mesh = triangle_mesh(s, t, l);
        if (!start.empty()) {
            // Vertices of the coarser mesh keep their indices; new ones sit on edge midpoints.
            for (auto& v : start) {
                v.resize(mesh.vertices.size(), 0.0);
                for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
                    if (mesh.parents[i][0] >= 0 && i >= mesh.coarse_vertices)
                        v[i] = 0.5 * (v[mesh.parents[i][0]] + v[mesh.parents[i][1]]);
                for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
                    if (mesh.boundary[i]) v[i] = 0.0;
            }
        }
        LevelSolution sol = solve_level(mesh, t, k, start.empty() ? nullptr : &start);
        out.push_back(sol.result);
        start = std::move(sol.vectors);
    }
    return out;
}

FemResult fem_triangle_eigs(double s, double t, int level, int k) { return fem_triangle_levels(s, t, level, k).back(); }

}  // namespace gapcert::oracle
