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

// Penalized regression kernels: OLS, ridge, offset-target LASSO (coordinate
// descent), logistic regression (Newton) and offset-target L1 logistic
// regression (proximal gradient).
//
// Conventions shared by every solver:
//   squared loss   (1/n) ||y - X b||_2^2
//   logistic loss  (1/n) sum_i [log(1 + exp(x_i^T b)) - y_i x_i^T b]
// There is no intercept; append a constant column to the design if one is wanted.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "proxyreg/linalg.hpp"

namespace proxyreg {

enum class LossFamily { squared, logistic };

std::string_view to_string(LossFamily loss) noexcept;
LossFamily parse_loss_family(std::string_view name);

struct FitResult {
    Vector beta;
    std::size_t iterations = 0;
    bool converged = true;
    double objective = 0.0;
    // Objective after every sweep / iteration, filled only when requested.
    std::vector<double> objective_trace;
};

double soft_threshold(double z, double threshold);

double squared_loss(const Matrix& x, std::span<const double> y, std::span<const double> beta);
double logistic_loss(const Matrix& x, std::span<const double> y, std::span<const double> beta);
Vector logistic_gradient(const Matrix& x, std::span<const double> y, std::span<const double> beta);
SymmetricMatrix logistic_hessian(const Matrix& x, std::span<const double> beta);

// Minimizes (1/n)||y - X b||^2. Throws SingularDesign when X^T X is not positive definite.
FitResult fit_ols(const Matrix& x, std::span<const double> y);

// (X^T X + lambda I)^{-1} X^T y.
FitResult fit_ridge(const Matrix& x, std::span<const double> y, double lambda);

struct LassoOptions {
    double tolerance = 1e-10;       // max coordinate change in a full sweep
    std::size_t max_sweeps = 10000;
    bool record_trace = false;
    Vector warm_start;  // initial d; empty means zero
};

// Solves   min_d (1/n)||y - X (d + offset)||^2 + lambda ||d||_1
// by cyclic coordinate descent with an active-set inner loop, and returns
// beta = d + offset. `iterations` counts sweeps (full and active-set).
FitResult fit_lasso_offset(const Matrix& x, std::span<const double> y,
                           std::span<const double> offset, double lambda,
                           const LassoOptions& options = {});

// max over coordinates of the subgradient-optimality violation of the problem
// above at `delta` (0 means exactly optimal).
double lasso_kkt_violation(const Matrix& x, std::span<const double> y,
                           std::span<const double> offset, std::span<const double> delta,
                           double lambda);

struct LogisticOptions {
    double gradient_tolerance = 1e-8;
    std::size_t max_iterations = 200;
    double divergence_bound = 1e4;
};

// Mean negative log-likelihood + ridge_eps ||b||^2, Newton with step halving.
// `converged` is false when the data are separated (no finite optimum) or
// ||b||_inf exceeds divergence_bound. Single-class labels with ridge_eps = 0
// and no finite optimum throw DegenerateLabels.
FitResult fit_logistic(const Matrix& x, std::span<const double> y, double ridge_eps,
                       const LogisticOptions& options = {});

// As fit_logistic with per-row weights; the loss is sum_i w_i l_i / sum_i w_i.
FitResult fit_logistic_weighted(const Matrix& x, std::span<const double> y,
                                std::span<const double> weights, double ridge_eps,
                                const LogisticOptions& options = {});

struct ProximalOptions {
    std::size_t max_iterations = 20000;
    double kkt_tolerance = 1e-8;
    bool record_trace = false;
};

// Solves   min_d logistic_loss(offset + d) + lambda ||d||_1
// by proximal gradient (ISTA) with backtracking; returns beta = d + offset.
FitResult fit_logistic_l1_offset(const Matrix& x, std::span<const double> y,
                                 std::span<const double> offset, double lambda,
                                 const ProximalOptions& options = {});

double logistic_l1_kkt_violation(const Matrix& x, std::span<const double> y,
                                 std::span<const double> offset, std::span<const double> delta,
                                 double lambda);

}  // namespace proxyreg
