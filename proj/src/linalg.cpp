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

#include "proxyreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "proxyreg/error.hpp"
#include "proxyreg/kernels.hpp"

namespace proxyreg {

namespace {

void require_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw InvalidArgument("matrix dimensions must be >= 1, got " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_dims(rows, cols);
    entries_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require_dims(rows, cols);
    if (entries_.size() != rows * cols) {
        throw InvalidArgument("matrix entry count " + std::to_string(entries_.size()) +
                              " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (!std::isfinite(entries_[k])) {
            throw InvalidArgument("non-finite matrix entry at (" + std::to_string(k / cols) + ", " +
                                  std::to_string(k % cols) + ")");
        }
    }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<double> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw InvalidArgument("ragged matrix rows");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(entries));
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

Matrix Matrix::top_rows(std::size_t count) const {
    if (count == 0 || count > rows_) {
        throw InvalidArgument("top_rows: count " + std::to_string(count) + " outside [1, " +
                              std::to_string(rows_) + "]");
    }
    return Matrix(count, cols_,
                  std::vector<double>(entries_.begin(), entries_.begin() + count * cols_));
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= rows_) throw InvalidArgument("select_rows: index out of range");
        std::copy_n(entries_.begin() + indices[k] * cols_, cols_, out.row(k).begin());
    }
    return out;
}

// ---------------------------------------------------------------------------
// SymmetricMatrix

SymmetricMatrix::SymmetricMatrix(std::size_t dim) : dim_(dim) {
    require_dims(dim, dim);
    entries_.assign(dim * dim, 0.0);
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t dim) {
    SymmetricMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
}

SymmetricMatrix SymmetricMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const Matrix dense = Matrix::from_rows(rows);
    if (dense.rows() != dense.cols()) throw InvalidArgument("symmetric matrix must be square");
    SymmetricMatrix m(dense.rows());
    for (std::size_t i = 0; i < dense.rows(); ++i) {
        for (std::size_t j = i; j < dense.cols(); ++j) {
            if (dense(i, j) != dense(j, i)) {
                throw InvalidArgument("matrix is not symmetric at (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
            }
            m.set(i, j, dense(i, j));
        }
    }
    return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> diag) {
    SymmetricMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
}

double SymmetricMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymmetricMatrix::max_abs_diagonal() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, std::fabs((*this)(i, i)));
    return m;
}

double SymmetricMatrix::norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, kernels::abs_sum(row(i)));
    return m;
}

SymmetricMatrix& SymmetricMatrix::operator+=(const SymmetricMatrix& other) {
    if (other.dim_ != dim_) throw InvalidArgument("symmetric matrix dimension mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

SymmetricMatrix& SymmetricMatrix::operator*=(double factor) {
    for (double& e : entries_) e *= factor;
    return *this;
}

void SymmetricMatrix::add_to_diagonal(double value) {
    for (std::size_t i = 0; i < dim_; ++i) entries_[i * dim_ + i] += value;
}

// ---------------------------------------------------------------------------
// Free functions

StandardizedMatrix standardize_columns(const Matrix& x) {
    const Matrix cols = x.transposed();
    const double n = static_cast<double>(x.rows());
    const double target = std::sqrt(n);
    Vector scales(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        const double norm = std::sqrt(kernels::dot(cols.row(j), cols.row(j)));
        if (norm == 0.0) throw ZeroNormColumn(j);
        scales[j] = norm / target;
    }
    return {apply_column_scales(x, scales), std::move(scales)};
}

Matrix apply_column_scales(const Matrix& x, std::span<const double> scales) {
    if (scales.size() != x.cols()) throw InvalidArgument("column scale count mismatch");
    Matrix out = x;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto r = out.row(i);
        for (std::size_t j = 0; j < x.cols(); ++j) {
            // Exactly-standardized columns keep their entries bit-for-bit.
            if (scales[j] != 1.0) r[j] /= scales[j];
        }
    }
    return out;
}

SymmetricMatrix gram(const Matrix& x) {
    const Matrix cols = x.transposed();
    const std::size_t d = x.cols();
    std::vector<double> upper(d * d, 0.0);
    kernels::active().gram_upper(cols.entries().data(), x.rows(), d, upper.data());
    SymmetricMatrix g(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) g.set(i, j, upper[i * d + j]);
    }
    return g;
}

SymmetricMatrix sample_covariance(const Matrix& x) {
    SymmetricMatrix g = gram(x);
    g *= 1.0 / static_cast<double>(x.rows());
    return g;
}

Vector matvec(const Matrix& x, std::span<const double> v) {
    if (v.size() != x.cols()) throw InvalidArgument("matvec: dimension mismatch");
    Vector out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = kernels::dot(x.row(i), v);
    return out;
}

Vector matvec(const SymmetricMatrix& a, std::span<const double> v) {
    if (v.size() != a.dim()) throw InvalidArgument("matvec: dimension mismatch");
    Vector out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = kernels::dot(a.row(i), v);
    return out;
}

Vector transpose_matvec(const Matrix& x, std::span<const double> v) {
    if (v.size() != x.rows()) throw InvalidArgument("transpose_matvec: dimension mismatch");
    Vector out(x.cols(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) kernels::axpy(v[i], x.row(i), out);
    return out;
}

// ---------------------------------------------------------------------------
// Cholesky

Cholesky::Cholesky(const SymmetricMatrix& a) : dim_(a.dim()), lower_(a.dim() * a.dim(), 0.0) {
    const double tol = kRelativePivotTolerance * a.max_abs_diagonal();
    const auto& k = kernels::active();
    for (std::size_t j = 0; j < dim_; ++j) {
        double* lj = lower_.data() + j * dim_;
        const double pivot = a(j, j) - k.dot(lj, lj, j);
        if (!(pivot > tol)) throw NotPositiveDefinite(j, pivot);
        const double ljj = std::sqrt(pivot);
        lj[j] = ljj;
        for (std::size_t i = j + 1; i < dim_; ++i) {
            double* li = lower_.data() + i * dim_;
            li[j] = (a(i, j) - k.dot(li, lj, j)) / ljj;
        }
    }
}

Vector Cholesky::solve(std::span<const double> b) const {
    if (b.size() != dim_) throw InvalidArgument("cholesky solve: dimension mismatch");
    const auto& k = kernels::active();
    Vector y(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        const double* li = lower_.data() + i * dim_;
        y[i] = (b[i] - k.dot(li, y.data(), i)) / li[i];
    }
    // Back substitution with L^T, column-oriented so the updates stay contiguous.
    for (std::size_t i = dim_; i-- > 0;) {
        const double* li = lower_.data() + i * dim_;
        y[i] /= li[i];
        k.axpy(-y[i], li, y.data(), i);
    }
    return y;
}

Vector cholesky_solve(const SymmetricMatrix& a, std::span<const double> b) {
    return Cholesky(a).solve(b);
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

SymmetricEigen symmetric_eigen(const SymmetricMatrix& input) {
    const std::size_t d = input.dim();
    std::vector<double> a(input.entries().begin(), input.entries().end());
    std::vector<double> v(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0;

    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * d + j]; };

    double total = 0.0;
    for (double e : a) total += e * e;

    constexpr std::size_t kMaxSweeps = 100;
    std::size_t sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) off += at(p, q) * at(p, q);
        }
        if (off == 0.0 || off <= 1e-32 * total) break;

        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double app = at(p, p);
                const double aqq = at(q, q);
                if (std::fabs(apq) <= 1e-18 * (std::fabs(app) + std::fabs(aqq))) {
                    at(p, q) = 0.0;
                    at(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < d; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    double* vk = v.data() + k * d;
                    const double vkp = vk[p];
                    const double vkq = vk[q];
                    vk[p] = c * vkp - s * vkq;
                    vk[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return at(l, l) < at(r, r); });

    SymmetricEigen out;
    out.values.resize(d);
    out.vectors = Matrix(d, d);
    out.sweeps = sweep;
    for (std::size_t k = 0; k < d; ++k) {
        out.values[k] = at(order[k], order[k]);
        for (std::size_t i = 0; i < d; ++i) out.vectors(i, k) = v[i * d + order[k]];
    }
    return out;
}

double min_eigenvalue(const SymmetricMatrix& a) { return symmetric_eigen(a).values.front(); }

double norm1(std::span<const double> v) { return kernels::abs_sum(v); }

double norm2_squared(std::span<const double> v) { return kernels::dot(v, v); }

double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace proxyreg
