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

// Experiment configuration and its flat "key = value" text format.
//
//   schema_version = 1
//   mode = synthetic            # synthetic | csv
//   trials = 100
//   seed = 7
//   estimators = gold_ols, proxy_ols, averaging, weighted, joint, oracle
//   n_gold = 150                # scenario keys, see ScenarioConfig
//   grid = 1e-4:1e1:30          # or "default"; grid_scale = log | linear
//
// Lines starting with '#' are comments. Unknown keys are errors.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proxyreg/estimators.hpp"
#include "proxyreg/synthgen.hpp"

namespace proxyreg {

inline constexpr int kConfigSchemaVersion = 1;

enum class DataMode { synthetic, csv };

struct GridSpec {
    double min = 1e-4;
    double max = 1e1;
    std::size_t points = 30;
    bool log_spaced = true;

    std::vector<double> values() const;
};

// Parses "MIN:MAX:POINTS".
GridSpec parse_grid(const std::string& text, bool log_spaced = true);

struct ProxyScale {
    enum class Mode { off, automatic, fixed } mode = Mode::off;
    double factor = 1.0;
};

// "off", "auto" or a positive number.
ProxyScale parse_proxy_scale(const std::string& text);

// "joint", "joint=0.5", "gold_ridge=1e-2" ... separated by commas.
std::vector<EstimatorSpec> parse_estimator_list(const std::string& text, LossFamily loss);

struct ExperimentConfig {
    DataMode mode = DataMode::synthetic;
    ScenarioConfig scenario;
    std::string gold_path;
    std::string proxy_path;
    std::string target = "y";
    LossFamily loss = LossFamily::squared;
    std::vector<EstimatorSpec> estimators;
    std::size_t trials = 100;
    std::uint64_t base_seed = 0;
    std::optional<GridSpec> grid;  // absent: per-estimator default grid
    ProxyScale scale;
    bool standardize = false;
    double test_frac = 0.3;        // held-out gold rows for test scores (csv mode, or no test rows)
    std::optional<double> truncation_bound;  // applied to joint estimators
    std::string output_dir = "results";
    bool plot_svg = false;
    bool record_runtime = false;   // runtime_ms is wall-clock, so off keeps outputs reproducible
    std::size_t jobs = 1;

    ExperimentConfig();
    void validate() const;
};

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);
void write_config(std::ostream& out, const ExperimentConfig& config);

}  // namespace proxyreg
