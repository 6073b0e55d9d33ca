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

// Data-parallel inner loops used by the dense linear algebra and the solvers.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active table is chosen once at first use from the CPU
// feature bits (overridable with PROXYREG_SIMD=scalar|avx2 or force_isa()).
// Variants agree to rounding, not bitwise: FMA and lane-wise partial sums
// reorder the floating-point additions.

#include <cstddef>
#include <span>
#include <string_view>

namespace proxyreg::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // sum_i (a[i] - b[i])^2
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    // sum_i |a[i]|
    double (*abs_sum)(const double* a, std::size_t n);
    // out[i*cols + j] = dot(column i, column j) for j >= i, where the input is
    // column-major (each of the `cols` columns is `rows` contiguous doubles).
    // Only the upper triangle of `out` is written.
    void (*gram_upper)(const double* columns, std::size_t rows, std::size_t cols, double* out);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double abs_sum(const double* a, std::size_t n);
void gram_upper(const double* columns, std::size_t rows, std::size_t cols, double* out);
}  // namespace scalar

#if defined(PROXYREG_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double abs_sum(const double* a, std::size_t n);
void gram_upper(const double* columns, std::size_t rows, std::size_t cols, double* out);
}  // namespace avx2
#endif

bool isa_supported(Isa isa) noexcept;
const KernelTable& table_for(Isa isa);

// The table used by the library. Safe to call concurrently.
const KernelTable& active() noexcept;
Isa active_isa() noexcept;

// Switches the process-wide table. Throws InvalidArgument if the CPU lacks the ISA.
void force_isa(Isa isa);

// Span conveniences over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    return active().squared_distance(a.data(), b.data(), a.size());
}
inline double abs_sum(std::span<const double> a) {
    return active().abs_sum(a.data(), a.size());
}

}  // namespace proxyreg::kernels
