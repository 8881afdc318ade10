#include "gapcert/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gapcert {

Matrix IntervalMatrix::midpoint() const {
    Matrix m(rows, cols);
    for (std::size_t k = 0; k < a.size(); ++k) m.a[k] = a[k].mid();
    return m;
}

double IntervalMatrix::max_width() const {
    double w = 0.0;
    for (const Interval& x : a) w = std::max(w, x.width());
    return w;
}

bool cholesky(Matrix& m) {
    int n = m.rows;
    for (int j = 0; j < n; ++j) {
        double d = m(j, j);
        for (int k = 0; k < j; ++k) d -= m(j, k) * m(j, k);
        if (!(d > 0.0)) return false;
        d = std::sqrt(d);
        m(j, j) = d;
        for (int i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= m(i, k) * m(j, k);
            m(i, j) = s / d;
        }
        for (int i = 0; i < j; ++i) m(i, j) = 0.0;
    }
    return true;
}

void jacobi_eigen(const Matrix& sym, std::vector<double>& values, Matrix& vectors, int max_sweeps) {
    int n = sym.rows;
    Matrix a = sym;
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < n; ++i) {
            diag += a(i, i) * a(i, i);
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        }
        if (off <= 1e-32 * diag || off == 0.0) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
    values.assign(n, 0.0);
    vectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        values[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) vectors(i, k) = v(i, order[k]);
    }
}

std::vector<EigenPair> generalized_eigen(const Matrix& A, const Matrix& B) {
    int n = A.rows;
    // Symmetric diagonal scaling keeps the Cholesky factor well balanced.
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        if (!(B(i, i) > 0.0)) throw NotPosDef("mass matrix has a nonpositive diagonal");
        d[i] = 1.0 / std::sqrt(B(i, i));
    }
    Matrix Bs(n, n), As(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Bs(i, j) = B(i, j) * d[i] * d[j];
            As(i, j) = A(i, j) * d[i] * d[j];
        }
    Matrix L = Bs;
    if (!cholesky(L)) throw NotPosDef("mass matrix is not positive definite");
    // C = L^{-1} As L^{-T}
    Matrix Y(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double s = As(i, j);
            for (int k = 0; k < i; ++k) s -= L(i, k) * Y(k, j);
            Y(i, j) = s / L(i, i);
        }
    Matrix C(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = Y(i, j);
            for (int k = 0; k < j; ++k) s -= L(j, k) * C(i, k);
            C(i, j) = s / L(j, j);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double m = 0.5 * (C(i, j) + C(j, i));
            C(i, j) = C(j, i) = m;
        }
    std::vector<double> vals;
    Matrix V;
    jacobi_eigen(C, vals, V);
    std::vector<EigenPair> out(n);
    for (int k = 0; k < n; ++k) {
        std::vector<double> z(n);
        for (int i = n - 1; i >= 0; --i) {
            double s = V(i, k);
            for (int j = i + 1; j < n; ++j) s -= L(j, i) * z[j];
            z[i] = s / L(i, i);
        }
        for (int i = 0; i < n; ++i) z[i] *= d[i];
        out[k] = EigenPair{vals[k], std::move(z)};
    }
    return out;
}

}  // namespace gapcert
