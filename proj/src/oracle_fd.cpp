#include "gapcert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gapcert::oracle {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kC0 = (3.0 + 4.0 * kPi2) / 12.0;

double problem2_side(double s, double t, double x, bool left) {
    double T = std::pow(t, -2.0 / 3.0);
    double a = left ? -T * (1.0 + s) : T * (1.0 - s);
    double d = left ? x - a : a - x;
    double r = a / d;
    return kPi2 * T * (r * r - 1.0) + kC0 / (d * d);
}

// Value used at a grid node; averages the one-sided limits at the apex jump.
double node_value(const Potential& v, double x) {
    if (v.kind == PotentialKind::Problem2 && x == 0.0)
        return 0.5 * (problem2_side(v.s, v.t, 0.0, true) + problem2_side(v.s, v.t, 0.0, false));
    return v(x);
}

std::vector<double> inverse_iteration(const Tridiagonal& m, double lambda) {
    int n = m.size();
    double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
    std::vector<double> u(n, 1.0), c(n), d(n);
    for (int it = 0; it < 3; ++it) {
        // Thomas algorithm on (m - shift I) x = u.
        d[0] = m.diag[0] - shift;
        std::vector<double> y = u;
        for (int i = 1; i < n; ++i) {
            c[i] = m.off[i - 1] / d[i - 1];
            d[i] = m.diag[i] - shift - c[i] * m.off[i - 1];
            if (d[i] == 0.0) d[i] = 1e-300;
            y[i] -= c[i] * y[i - 1];
        }
        u[n - 1] = y[n - 1] / d[n - 1];
        for (int i = n - 2; i >= 0; --i) u[i] = (y[i] - m.off[i] * u[i + 1]) / d[i];
        double norm = 0.0;
        for (double x : u) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : u) x /= norm;
    }
    return u;
}

}  // namespace

int sturm_count(const Tridiagonal& m, double x) {
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < m.size(); ++i) {
        double off2 = i == 0 ? 0.0 : m.off[i - 1] * m.off[i - 1];
        d = (m.diag[i] - x) - (i == 0 ? 0.0 : off2 / d);
        if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * (std::abs(m.diag[i]) + std::abs(x) + 1.0);
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> sturm_eigenvalues(const Tridiagonal& m, int k) {
    int n = m.size();
    if (k < 1 || k > n) throw DomainError("requested eigenvalue count out of range");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(m.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(m.off[i]) : 0.0);
        lo = std::min(lo, m.diag[i] - r);
        hi = std::max(hi, m.diag[i] + r);
    }
    std::vector<double> out;
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 200; ++it) {
            double c = 0.5 * (a + b);
            if (c <= a || c >= b) break;
            if (sturm_count(m, c) > j) b = c;
            else a = c;
            if (b - a <= 1e-14 * std::max(1.0, std::abs(b))) break;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

Potential Potential::problem2(double s, double t) {
    if (!(s > -1.0 && s <= 1.0) || !(t > 0.0)) throw DomainError("invalid triangle parameters");
    Potential v;
    v.kind = PotentialKind::Problem2;
    v.s = s;
    v.t = t;
    return v;
}

Potential Potential::problem3(double s) {
    if (!(s > -1.0 && s < 1.0)) throw DomainError("Problem 3 needs -1 < s < 1");
    Potential v;
    v.kind = PotentialKind::Problem3;
    v.s = s;
    return v;
}

Potential Potential::from_function(std::function<double(double)> f) {
    Potential v;
    v.custom = std::move(f);
    return v;
}

double Potential::operator()(double x) const {
    switch (kind) {
        case PotentialKind::Problem2: return problem2_side(s, t, x, x <= 0.0);
        case PotentialKind::Problem3: return 2.0 * kPi2 * std::abs(x) / (x > 0.0 ? 1.0 - s : 1.0 + s);
        case PotentialKind::Custom: return custom(x);
    }
    return 0.0;
}

std::pair<double, double> default_domain(const Potential& v) {
    switch (v.kind) {
        case PotentialKind::Problem2: {
            double T = std::pow(v.t, -2.0 / 3.0);
            return {-T * (1.0 + v.s), T * (1.0 - v.s)};
        }
        case PotentialKind::Problem3: return {-30.0 * (1.0 + v.s), 30.0 * (1.0 - v.s)};
        case PotentialKind::Custom: break;
    }
    throw DomainError("a custom potential needs an explicit domain");
}

FdResult fd_eigs_1d(const Potential& v, double a, double b, int n_grid, int k) {
    if (n_grid < 100) throw DomainError("n_grid must be at least 100");
    if (!(b > a)) throw DomainError("empty domain");
    double h = (b - a) / n_grid;
    int zero_node = -1;
    if (a < 0.0 && b > 0.0) {
        // Put a node on x = 0 where the potential has its kink or jump.
        int nl = static_cast<int>(std::lround(-a / h));
        nl = std::clamp(nl, 1, n_grid - 1);
        a = -nl * h;
        zero_node = nl;
    }
    int n = n_grid - 1;
    Tridiagonal m;
    m.diag.resize(n);
    m.off.assign(n - 1, -1.0 / (h * h));
    for (int i = 0; i < n; ++i) {
        double x = i + 1 == zero_node ? 0.0 : a + (i + 1) * h;
        m.diag[i] = 2.0 / (h * h) + node_value(v, x);
    }
    FdResult res;
    res.values = sturm_eigenvalues(m, k);
    std::vector<double> u = inverse_iteration(m, res.values.back());
    int margin = std::max(1, n / 20);
    double edge = 0.0;
    for (int i = 0; i < margin; ++i) edge += u[i] * u[i] + u[n - 1 - i] * u[n - 1 - i];
    res.truncation_warning = edge > 1e-6;
    return res;
}

FdResult fd_eigs_1d(const Potential& v, int n_grid, int k) {
    auto [a, b] = default_domain(v);
    return fd_eigs_1d(v, a, b, n_grid, k);
}

FdResult fd_eigs_extrapolated(const Potential& v, int n_grid, int k) {
    FdResult coarse = fd_eigs_1d(v, n_grid, k);
    FdResult fine = fd_eigs_1d(v, 2 * n_grid, k);
    FdResult res;
    for (int i = 0; i < k; ++i) res.values.push_back((4.0 * fine.values[i] - coarse.values[i]) / 3.0);
    res.truncation_warning = coarse.truncation_warning || fine.truncation_warning;
    return res;
}

}  // namespace gapcert::oracle
