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

// Closed-form error bounds for the gold/proxy estimators and diagnostics for
// the eigenvalue and compatibility assumptions behind them. Logarithms are natural.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "proxyreg/linalg.hpp"
#include "proxyreg/rng.hpp"

namespace proxyreg {

struct ProblemConstants {
    std::size_t d = 100;
    std::size_t n_gold = 150;
    std::size_t n_proxy = 1000;
    double sigma_gold = 1.0;
    double sigma_proxy = 1.0;
    std::size_t s = 10;
    double b = 1.0;
    double psi = 1.0;
    double phi = 1.0;
    double delta_l1 = 1.0;

    void validate() const;
};

// Lower bound for gold-only OLS: d sqrt(2 sigma_g^2 / (pi n_g)).
double bound_gold_ols(const ProblemConstants& c);

// Lower bound for gold-only ridge: (d sigma_g / sqrt(2 pi)) / (b sqrt(n_g) + d sigma_g sqrt(2/pi)).
double bound_gold_ridge(const ProblemConstants& c);

// Lower bound for proxy-only OLS: max(||delta||_1 / 2, d sqrt(sigma_p^2 / (2 pi n_p))).
double bound_proxy_ols(const ProblemConstants& c);

// Shared lower bound for averaging and weighted:
// min(d sigma_g / (3 sqrt(2 pi n_g)), ||delta||_1 / 6 + d sigma_p / (3 sqrt(2 pi n_p))).
double bound_avg_weighted(const ProblemConstants& c);

struct JointTail {
    double error_level;
    double tail_probability;
};

// P(||beta_joint - beta*||_1 >= error_level) <= tail_probability.
JointTail bound_joint_tail(const ProblemConstants& c, double lambda);

double lambda_bar(const ProblemConstants& c);

// Expected-error upper bound for the truncated joint estimator.
double bound_joint_expected(const ProblemConstants& c, double lambda);

// sqrt(min eigenvalue) when positive, otherwise empty.
std::optional<double> compat_sufficient(const SymmetricMatrix& sigma);

// Monte Carlo upper estimate of the best compatibility constant on `support`:
// sqrt of the smallest |S| u^T Sigma u / ||u_S||_1^2 seen over `samples` draws
// from the cone ||u_{S^c}||_1 <= 3 ||u_S||_1.
double compat_estimate(const SymmetricMatrix& sigma, std::span<const std::size_t> support,
                       std::size_t samples, Rng& rng);

// sqrt(2/pi) * sum_i sqrt(cov_ii).
double gaussian_l1_moment(std::span<const double> cov_diag);

}  // namespace proxyreg
