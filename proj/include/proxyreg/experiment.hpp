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

// Multi-trial estimator comparison on synthetic scenarios or a CSV pair.

#include <cstdint>
#include <string>
#include <vector>

#include "proxyreg/config.hpp"
#include "proxyreg/metrics.hpp"

namespace proxyreg {

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;  // 1.96 sd / sqrt(n), sample sd
    std::size_t count = 0;
};

MeanCi mean_ci(const std::vector<double>& values);

struct EstimatorAggregate {
    EstimatorKind kind = EstimatorKind::joint;
    std::size_t trials_run = 0;
    std::size_t trials_skipped = 0;
    MeanCi l1_error;
    MeanCi l2sq_error;
    MeanCi auc;
    MeanCi test_score;
    MeanCi lambda;
};

struct AggregateReport {
    std::vector<EstimatorAggregate> estimators;  // config order

    const EstimatorAggregate* find(EstimatorKind kind) const;
};

AggregateReport aggregate(const std::vector<TrialReport>& reports,
                          const std::vector<EstimatorSpec>& estimators);

struct ExperimentResult {
    std::vector<TrialReport> reports;  // trial-major, estimators in config order
    AggregateReport aggregate;
    std::vector<std::string> notes;    // dropped rows, scale factors, ...
};

// Seed of trial t: mix_seed(base_seed, t).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

// Runs every trial (up to config.jobs at once) and aggregates. Reports are
// ordered by trial index regardless of completion order.
ExperimentResult run_experiment(const ExperimentConfig& config);

// One trial; exposed for tests.
std::vector<TrialReport> run_trial(const ExperimentConfig& config, std::size_t trial,
                                   std::vector<std::string>* notes = nullptr);

}  // namespace proxyreg
