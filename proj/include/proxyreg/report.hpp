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

// Text outputs: per-trial CSV, aggregate summary, SVG bar chart, bounds table.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proxyreg/bounds.hpp"
#include "proxyreg/experiment.hpp"

namespace proxyreg {

// trial,estimator,lambda,l1_error,l2sq_error,auc,n_support_recovered,runtime_ms,
// skip_reason,validation_score,test_score. Absent values are empty cells.
void write_results_csv(std::ostream& out, const std::vector<TrialReport>& reports);

void write_summary_csv(std::ostream& out, const AggregateReport& report);

// Bar chart of mean squared-L2 error (or mean AUC when `auc` is set) with CI whiskers.
std::string render_svg(const AggregateReport& report, bool auc = false);

struct BoundRow {
    std::string estimator;
    std::string bound_type;  // lower | upper
    std::optional<double> lambda;
    double value = 0.0;
    std::string note;
};

// Gold OLS / ridge, proxy OLS, averaging and weighted lower bounds, then the
// truncated joint upper bound at each lambda (lambda_bar when the list is empty).
std::vector<BoundRow> emit_bounds_table(const ProblemConstants& c, const std::vector<double>& lambdas);
void write_bounds_table(std::ostream& out, const std::vector<BoundRow>& rows);

}  // namespace proxyreg
