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

// Gold/proxy transfer estimators built from the solvers: the gold-only and
// proxy-only baselines, model averaging, the weighted loss, the two-step joint
// estimator (proxy fit, then an L1-penalized gold fit around it), its
// simultaneous variant, truncation, the oracle benchmark, and cross-validated
// selection of the tuning parameter.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "proxyreg/linalg.hpp"
#include "proxyreg/solvers.hpp"

namespace proxyreg {

struct TwoTaskData {
    Matrix gold_x;
    Vector gold_y;
    Matrix proxy_x;
    Vector proxy_y;

    TwoTaskData() = default;
    // Validates that both designs share a column count and match their responses.
    TwoTaskData(Matrix gold_x, Vector gold_y, Matrix proxy_x, Vector proxy_y);

    std::size_t d() const noexcept { return gold_x.cols(); }
    std::size_t n_gold() const noexcept { return gold_x.rows(); }
    std::size_t n_proxy() const noexcept { return proxy_x.rows(); }
};

enum class EstimatorKind {
    gold_ols,
    gold_ridge,
    proxy_ols,
    averaging,
    weighted,
    joint,
    joint_simultaneous,
    oracle,
};

std::string_view to_string(EstimatorKind kind) noexcept;
EstimatorKind parse_estimator_kind(std::string_view name);
bool requires_lambda(EstimatorKind kind) noexcept;

struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::joint;
    LossFamily loss = LossFamily::squared;
    std::optional<double> lambda;            // absent: select by cross-validation
    std::optional<double> truncation_bound;  // b; zero the fit when ||beta||_1 > 2b

    // Throws InvalidArgument when lambda lies outside the kind's domain.
    void validate() const;
};

struct BiasVector {
    Vector delta;
    std::vector<std::size_t> support;  // indices of nonzero entries, ascending

    static BiasVector from(Vector delta);
};

struct JointFit {
    FitResult fit;
    BiasVector bias;
};

// First-stage summary that every proxy-based estimator can share: the proxy fit
// plus X_p^T X_p and X_p^T y_p for the squared-loss weighted estimator.
struct ProxySummary {
    FitResult fit;
    SymmetricMatrix gram;
    Vector xty;
};

ProxySummary summarize_proxy(const TwoTaskData& data, LossFamily loss);

FitResult estimate_gold(const TwoTaskData& data, const EstimatorSpec& spec);
FitResult estimate_proxy(const TwoTaskData& data, LossFamily loss = LossFamily::squared);

// (1 - lambda) gold fit + lambda proxy fit, lambda in [0, 1].
FitResult estimate_averaging(const TwoTaskData& data, double lambda,
                             LossFamily loss = LossFamily::squared,
                             const ProxySummary* proxy = nullptr);

// argmin lambda * gold loss-sum + proxy loss-sum, lambda >= 0.
FitResult estimate_weighted(const TwoTaskData& data, double lambda,
                            LossFamily loss = LossFamily::squared,
                            const ProxySummary* proxy = nullptr);

// Two-step joint estimator; the gold design may be rank deficient.
JointFit estimate_joint(const TwoTaskData& data, double lambda,
                        LossFamily loss = LossFamily::squared,
                        const ProxySummary* proxy = nullptr);

struct SimultaneousOptions {
    double relative_tolerance = 1e-10;
    std::size_t max_alternations = 1000;
};

// Minimizes ||y_g - X_g b||^2 + ||y_p - X_p (b - d)||^2 + lambda n_g ||d||_1 by
// alternating a closed-form b-step with a coordinate-descent d-step. The
// returned bias is d; fit.objective_trace holds the objective per alternation.
JointFit estimate_joint_simultaneous(const TwoTaskData& data, double lambda,
                                     const SimultaneousOptions& options = {});

// The b-step above for a fixed d.
Vector joint_simultaneous_beta_step(const TwoTaskData& data, std::span<const double> delta);

// Zero vector when ||beta||_1 > 2b, otherwise unchanged.
FitResult truncate_estimator(const FitResult& fit, double bound);

// Proxy fit corrected by the known bias: beta_proxy_hat + delta_star.
FitResult estimate_oracle(const TwoTaskData& data, const BiasVector& delta_star,
                          LossFamily loss = LossFamily::squared,
                          const ProxySummary* proxy = nullptr);

// Uniform output of any estimator.
struct Estimate {
    FitResult fit;
    std::optional<BiasVector> bias;
    std::optional<double> lambda;
    std::vector<double> cv_scores;  // validation score per grid point when CV ran
};

// Fits `spec` at a fixed lambda (spec.lambda must be set when the kind needs one).
Estimate fit_estimator(const TwoTaskData& data, const EstimatorSpec& spec,
                       const BiasVector* delta_star = nullptr,
                       const ProxySummary* proxy = nullptr);

std::vector<double> log_grid(double min, double max, std::size_t points);
std::vector<double> linear_grid(double min, double max, std::size_t points);

// 30 log-spaced points on [1e-4, 1e1] for penalty parameters; 30 evenly spaced
// points on [0, 1] for the averaging weight.
std::vector<double> default_grid(EstimatorKind kind);

struct CvResult {
    double lambda = 0.0;
    std::size_t chosen_index = 0;
    std::vector<double> scores;
    Estimate refit;  // chosen lambda refit on every gold row
};

// Splits the gold rows 70/30 (seeded), fits every grid value on the training
// rows plus all proxy rows, scores validation MSE (squared) or mean log-loss
// (logistic), keeps the smallest score (scores within a relative 1e-12 tie,
// and the larger lambda wins a tie) and refits on all gold rows.
CvResult select_lambda_cv(const TwoTaskData& data, const EstimatorSpec& spec,
                          std::span<const double> grid, std::uint64_t split_seed,
                          const ProxySummary* proxy = nullptr);

// Runs CV when spec.lambda is absent, then applies truncation if requested.
Estimate run_estimator(const TwoTaskData& data, const EstimatorSpec& spec,
                       std::span<const double> grid, std::uint64_t split_seed,
                       const BiasVector* delta_star = nullptr,
                       const ProxySummary* proxy = nullptr);

struct ScaledData {
    TwoTaskData data;
    double factor;
};

// Multiplies y_proxy by `factor`; when absent, estimates it as
// mean|y_gold| / mean|y_proxy| over a seeded 30% slice of each dataset.
ScaledData scale_proxy_responses(const TwoTaskData& data, std::optional<double> factor,
                                 std::uint64_t seed = 0);

}  // namespace proxyreg
