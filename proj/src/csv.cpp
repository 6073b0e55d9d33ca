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

#include "proxyreg/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "proxyreg/error.hpp"

namespace proxyreg {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Splits one line on commas; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "N/A";
}

bool parse_number(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path + "'");
    return in;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

}  // namespace

CsvDataset parse_csv(std::istream& in, const std::string& source, const std::string& target,
                     LossFamily loss) {
    std::string line;
    if (!std::getline(in, line)) throw CsvError(source + ": empty file, expected a header row");
    const std::vector<std::string> header = split_line(line);
    const auto it = std::find(header.begin(), header.end(), target);
    if (it == header.end()) {
        throw CsvError(source + ": target column '" + target + "' not found; available columns: " +
                       join(header));
    }
    if (header.size() < 2) throw CsvError(source + ": need at least one feature column besides the target");
    const std::size_t target_col = static_cast<std::size_t>(it - header.begin());

    CsvDataset ds;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c != target_col) ds.features.push_back(header[c]);
    }
    const std::size_t d = ds.features.size();
    std::vector<double> entries;
    std::size_t line_no = 1;
    std::vector<double> row(d);
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            throw CsvError(source + ": row " + std::to_string(line_no) + " has " +
                           std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(header.size()));
        }
        if (std::any_of(cells.begin(), cells.end(), is_missing)) {
            ++ds.dropped_rows;
            continue;
        }
        double yv = 0.0;
        std::size_t k = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            if (!parse_number(cells[c], v)) {
                throw CsvError(source + ": non-numeric cell '" + cells[c] + "' at row " +
                               std::to_string(line_no) + ", column '" + header[c] + "'");
            }
            if (c == target_col) {
                yv = v;
            } else {
                row[k++] = v;
            }
        }
        if (loss == LossFamily::logistic && yv != 0.0 && yv != 1.0) {
            throw CsvError(source + ": logistic target must be 0 or 1, got " + cells[target_col] +
                           " at row " + std::to_string(line_no));
        }
        ds.y.push_back(yv);
        entries.insert(entries.end(), row.begin(), row.end());
    }
    if (ds.y.empty()) throw CsvError(source + ": no complete data rows");
    ds.x = Matrix(ds.y.size(), d, std::move(entries));
    return ds;
}

CsvDataset ingest_csv(const std::string& path, const std::string& target, LossFamily loss) {
    std::ifstream in = open(path);
    return parse_csv(in, path, target, loss);
}

std::vector<std::string> read_csv_header(const std::string& path) {
    std::ifstream in = open(path);
    std::string line;
    if (!std::getline(in, line)) throw CsvError(path + ": empty file, expected a header row");
    return split_line(line);
}

CsvPair ingest_csv_pair(const std::string& gold_path, const std::string& proxy_path,
                        const std::string& target, LossFamily loss) {
    const std::vector<std::string> gh = read_csv_header(gold_path);
    const std::vector<std::string> ph = read_csv_header(proxy_path);
    const std::set<std::string> gs(gh.begin(), gh.end()), ps(ph.begin(), ph.end());
    if (gs != ps || gs.size() != gh.size() || ps.size() != ph.size()) {
        std::vector<std::string> diff;
        std::set_symmetric_difference(gs.begin(), gs.end(), ps.begin(), ps.end(), std::back_inserter(diff));
        if (diff.empty()) throw CsvError("gold and proxy headers contain duplicate column names");
        throw CsvError("gold and proxy files have different columns: " + join(diff));
    }
    CsvDataset gold = ingest_csv(gold_path, target, loss);
    CsvDataset proxy = ingest_csv(proxy_path, target, loss);

    std::vector<std::size_t> where(gold.features.size());
    for (std::size_t j = 0; j < gold.features.size(); ++j) {
        where[j] = static_cast<std::size_t>(
            std::find(proxy.features.begin(), proxy.features.end(), gold.features[j]) - proxy.features.begin());
    }
    Matrix px(proxy.x.rows(), proxy.x.cols());
    for (std::size_t i = 0; i < px.rows(); ++i) {
        for (std::size_t j = 0; j < px.cols(); ++j) px(i, j) = proxy.x(i, where[j]);
    }
    CsvPair out;
    out.features = gold.features;
    out.dropped_gold = gold.dropped_rows;
    out.dropped_proxy = proxy.dropped_rows;
    out.data = TwoTaskData(std::move(gold.x), std::move(gold.y), std::move(px), std::move(proxy.y));
    return out;
}

Vector read_coefficients(const std::string& path) {
    std::ifstream in = open(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "beta") {
        throw CsvError(path + ": coefficient file must start with the header 'beta'");
    }
    Vector beta;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string cell = trim(line);
        if (cell.empty()) continue;
        double v = 0.0;
        if (!parse_number(cell, v)) {
            throw CsvError(path + ": non-numeric coefficient '" + cell + "' at row " + std::to_string(line_no));
        }
        beta.push_back(v);
    }
    if (beta.empty()) throw CsvError(path + ": no coefficients");
    return beta;
}

void write_coefficients(std::ostream& out, std::span<const double> beta) {
    out << "beta\n";
    for (double v : beta) out << format_double(v) << '\n';
}

void write_bias(std::ostream& out, const BiasVector& bias, std::span<const std::string> features) {
    out << "feature,delta\n";
    for (std::size_t j : bias.support) {
        const std::string name = j < features.size() ? features[j] : "x" + std::to_string(j);
        out << name << ',' << format_double(bias.delta[j]) << '\n';
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace proxyreg
