// Copyright 2026 The proxyreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense row-major linear algebra: matrices, column standardization, sample
// covariance, Cholesky solves and a cyclic Jacobi symmetric eigensolver.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace proxyreg {

using Vector = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    // Zero-filled rows x cols matrix. Both dimensions must be >= 1.
    Matrix(std::size_t rows, std::size_t cols);
    // Takes ownership of row-major `entries`; validates size and finiteness.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {entries_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }

    std::span<const double> entries() const noexcept { return entries_; }

    Matrix transposed() const;
    Matrix top_rows(std::size_t count) const;
    Matrix select_rows(std::span<const std::size_t> indices) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

// Symmetric d x d matrix. Writes go through set(), which keeps (i,j) and (j,i)
// identical, so symmetry is exact.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t dim);

    static SymmetricMatrix identity(std::size_t dim);
    // Throws InvalidArgument unless the rows describe an exactly symmetric matrix.
    static SymmetricMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static SymmetricMatrix diagonal(std::span<const double> diag);

    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    void set(std::size_t i, std::size_t j, double value) {
        entries_[i * dim_ + j] = value;
        entries_[j * dim_ + i] = value;
    }
    std::span<const double> row(std::size_t i) const {
        return {entries_.data() + i * dim_, dim_};
    }
    std::span<const double> entries() const noexcept { return entries_; }

    double trace() const;
    double max_abs_diagonal() const;
    // Largest absolute row sum, an upper bound on the spectral norm.
    double norm_inf() const;

    SymmetricMatrix& operator+=(const SymmetricMatrix& other);
    SymmetricMatrix& operator*=(double factor);
    void add_to_diagonal(double value);

    friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> entries_;
};

struct StandardizedMatrix {
    Matrix matrix;
    // original column norm / target norm; divide a raw column by it to standardize,
    // multiply a standardized-space coefficient by 1/scale to map it back.
    Vector scales;
};

// Rescales every column so that its squared Euclidean norm equals rows().
// Throws ZeroNormColumn naming the first all-zero column.
StandardizedMatrix standardize_columns(const Matrix& x);

// Divides column j of `x` by scales[j].
Matrix apply_column_scales(const Matrix& x, std::span<const double> scales);

// X^T X.
SymmetricMatrix gram(const Matrix& x);
// (1/n) X^T X.
SymmetricMatrix sample_covariance(const Matrix& x);

Vector matvec(const Matrix& x, std::span<const double> v);
Vector matvec(const SymmetricMatrix& a, std::span<const double> v);
// X^T v.
Vector transpose_matvec(const Matrix& x, std::span<const double> v);

// Lower-triangular Cholesky factor A = L L^T. Pivots at or below
// 1e-12 * max|diag(A)| are rejected with NotPositiveDefinite.
class Cholesky {
public:
    static constexpr double kRelativePivotTolerance = 1e-12;

    explicit Cholesky(const SymmetricMatrix& a);

    std::size_t dim() const noexcept { return dim_; }
    Vector solve(std::span<const double> b) const;
    // Row-major lower factor.
    std::span<const double> lower() const noexcept { return lower_; }

private:
    std::size_t dim_;
    std::vector<double> lower_;
};

Vector cholesky_solve(const SymmetricMatrix& a, std::span<const double> b);

struct SymmetricEigen {
    Vector values;    // ascending
    Matrix vectors;   // column k is the unit eigenvector for values[k]
    std::size_t sweeps = 0;
};

// Cyclic Jacobi eigendecomposition.
SymmetricEigen symmetric_eigen(const SymmetricMatrix& a);

double min_eigenvalue(const SymmetricMatrix& a);

// Vector helpers.
double norm1(std::span<const double> v);
double norm2_squared(std::span<const double> v);
double norm_inf(std::span<const double> v);
bool all_finite(std::span<const double> v);

}  // namespace proxyreg
