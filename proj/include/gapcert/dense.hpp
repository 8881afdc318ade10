#pragma once

#include <vector>

#include "gapcert/interval.hpp"

namespace gapcert {

// Row-major dense matrix of doubles.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c, double v = 0.0) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, v) {}
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

struct IntervalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Interval> a;

    IntervalMatrix() = default;
    IntervalMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Interval(0.0)) {}
    Interval& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Interval& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    Matrix midpoint() const;
    double max_width() const;
};

// In-place lower Cholesky factor; returns false when a pivot is not positive.
bool cholesky(Matrix& m);

// Cyclic Jacobi for a symmetric matrix. Eigenvalues ascending; eigenvectors in the columns.
void jacobi_eigen(const Matrix& sym, std::vector<double>& values, Matrix& vectors, int max_sweeps = 100);

struct EigenPair {
    double value;
    std::vector<double> vector;
};

// Generalized symmetric-definite problem A v = theta B v, ascending, vectors B-normalized.
std::vector<EigenPair> generalized_eigen(const Matrix& A, const Matrix& B);

}  // namespace gapcert
