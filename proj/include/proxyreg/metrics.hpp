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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "proxyreg/estimators.hpp"

namespace proxyreg {

struct ParamError {
    double l1;
    double l2sq;
};

ParamError param_error(std::span<const double> beta_hat, std::span<const double> beta_star);

// (1/n) ||y - y_hat||^2.
double mse(std::span<const double> y_hat, std::span<const double> y);

// Mann-Whitney AUC with half credit for tied scores, O(n log n).
// Throws DegenerateLabels unless both classes are present.
double auc(std::span<const double> scores, std::span<const double> labels);

// One estimator on one trial.
struct TrialReport {
    std::size_t trial = 0;
    EstimatorKind kind = EstimatorKind::joint;
    std::optional<double> lambda;
    // Absent when the truth is unknown (CSV mode) or the cell was skipped.
    std::optional<double> l1_error;
    std::optional<double> l2sq_error;
    std::optional<double> validation_score;  // best CV score when lambda was tuned
    std::optional<double> test_score;        // held-out MSE or mean log-loss
    std::optional<double> auc;
    // |supp(delta_hat) & supp(delta*)| for bias-estimating fits with known truth.
    std::optional<std::size_t> n_support_recovered;
    std::optional<std::size_t> n_support_estimated;
    std::optional<double> runtime_ms;
    std::string skip_reason;  // machine-readable code, empty when the fit ran

    bool skipped() const noexcept { return !skip_reason.empty(); }
};

}  // namespace proxyreg
