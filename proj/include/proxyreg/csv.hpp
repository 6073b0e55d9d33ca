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

// CSV ingestion for the gold/proxy file pair and the coefficient file formats.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "proxyreg/estimators.hpp"

namespace proxyreg {

struct CsvDataset {
    Matrix x;
    Vector y;
    std::vector<std::string> features;  // header order, target removed
    std::size_t dropped_rows = 0;       // rows with a missing cell
};

// Reads a header row plus numeric rows. The target column becomes y, the rest
// form X in header order. Empty, NA, NaN and nan cells count as missing and
// drop their row. Logistic mode requires a {0,1} target.
CsvDataset ingest_csv(const std::string& path, const std::string& target, LossFamily loss);
CsvDataset parse_csv(std::istream& in, const std::string& source, const std::string& target,
                     LossFamily loss);

std::vector<std::string> read_csv_header(const std::string& path);

struct CsvPair {
    TwoTaskData data;
    std::vector<std::string> features;
    std::size_t dropped_gold = 0;
    std::size_t dropped_proxy = 0;
};

// Both files must share one header (as a set); mismatch lists the symmetric difference.
// Proxy columns are reordered to the gold header order.
CsvPair ingest_csv_pair(const std::string& gold_path, const std::string& proxy_path,
                        const std::string& target, LossFamily loss);

// Single-column "beta" file.
Vector read_coefficients(const std::string& path);
void write_coefficients(std::ostream& out, std::span<const double> beta);
// Two-column "feature,delta" listing of the nonzero bias entries.
void write_bias(std::ostream& out, const BiasVector& bias, std::span<const std::string> features);

// Shortest decimal text that round-trips.
std::string format_double(double v);

}  // namespace proxyreg
