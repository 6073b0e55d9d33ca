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

#include "proxyreg/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "proxyreg/csv.hpp"

namespace proxyreg {

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string cell(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); }

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << v;
    return s.str();
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<TrialReport>& reports) {
    out << "trial,estimator,lambda,l1_error,l2sq_error,auc,n_support_recovered,runtime_ms,skip_reason,"
           "validation_score,test_score\n";
    for (const TrialReport& r : reports) {
        out << r.trial << ',' << to_string(r.kind) << ',' << cell(r.lambda) << ',' << cell(r.l1_error) << ','
            << cell(r.l2sq_error) << ',' << cell(r.auc) << ',' << cell(r.n_support_recovered) << ','
            << cell(r.runtime_ms) << ',' << r.skip_reason << ',' << cell(r.validation_score) << ','
            << cell(r.test_score) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const AggregateReport& report) {
    out << "estimator,trials_run,trials_skipped,mean_l1_error,ci_l1_error,mean_l2sq_error,ci_l2sq_error,"
           "mean_auc,ci_auc,mean_test_score,ci_test_score,mean_lambda\n";
    auto pair = [](const MeanCi& m) {
        return m.count ? format_double(m.mean) + ',' + format_double(m.half_width) : std::string(",");
    };
    for (const EstimatorAggregate& a : report.estimators) {
        out << to_string(a.kind) << ',' << a.trials_run << ',' << a.trials_skipped << ',' << pair(a.l1_error) << ','
            << pair(a.l2sq_error) << ',' << pair(a.auc) << ',' << pair(a.test_score) << ','
            << (a.lambda.count ? format_double(a.lambda.mean) : std::string()) << '\n';
    }
}

std::string render_svg(const AggregateReport& report, bool auc) {
    struct Bar {
        std::string name;
        double mean, hw;
    };
    std::vector<Bar> bars;
    for (const EstimatorAggregate& a : report.estimators) {
        const MeanCi& m = auc ? a.auc : a.l2sq_error;
        if (m.count) bars.push_back({std::string(to_string(a.kind)), m.mean, m.half_width});
    }
    const int width = 120 + 90 * static_cast<int>(std::max<std::size_t>(bars.size(), 1));
    const int height = 360, top = 30, bottom = 300, left = 80;
    double ymax = 0.0;
    for (const Bar& b : bars) ymax = std::max(ymax, b.mean + b.hw);
    if (!(ymax > 0.0)) ymax = 1.0;
    auto y_of = [&](double v) { return bottom - (bottom - top) * v / ymax; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << left << "\" y=\"18\" font-size=\"13\">"
      << (auc ? "mean test AUC" : "mean squared L2 parameter error") << " (95% CI)</text>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << width - 20 << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double v = ymax * k / 4.0;
        s << "<text x=\"" << left - 6 << "\" y=\"" << fixed(y_of(v) + 4, 1) << "\" text-anchor=\"end\">"
          << format_double(std::round(v * 1e4) / 1e4) << "</text>\n";
    }
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const Bar& b = bars[i];
        const double x = left + 20 + 90.0 * static_cast<double>(i);
        const double yt = y_of(b.mean);
        s << "<rect x=\"" << fixed(x, 1) << "\" y=\"" << fixed(yt, 2) << "\" width=\"60\" height=\""
          << fixed(bottom - yt, 2) << "\" fill=\"#4c72b0\"/>\n";
        const double cx = x + 30.0;
        const double lo = y_of(std::max(b.mean - b.hw, 0.0)), hi = y_of(b.mean + b.hw);
        s << "<line x1=\"" << fixed(cx, 1) << "\" y1=\"" << fixed(lo, 2) << "\" x2=\"" << fixed(cx, 1) << "\" y2=\""
          << fixed(hi, 2) << "\" stroke=\"black\"/>\n";
        for (double yy : {lo, hi}) {
            s << "<line x1=\"" << fixed(cx - 8, 1) << "\" y1=\"" << fixed(yy, 2) << "\" x2=\"" << fixed(cx + 8, 1)
              << "\" y2=\"" << fixed(yy, 2) << "\" stroke=\"black\"/>\n";
        }
        s << "<text x=\"" << fixed(cx, 1) << "\" y=\"" << bottom + 16 << "\" text-anchor=\"middle\">" << b.name
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::vector<BoundRow> emit_bounds_table(const ProblemConstants& c, const std::vector<double>& lambdas) {
    c.validate();
    std::vector<BoundRow> rows;
    rows.push_back({"gold_ols", "lower", std::nullopt, bound_gold_ols(c), ""});
    rows.push_back({"gold_ridge", "lower", std::nullopt, bound_gold_ridge(c), "best lambda"});
    rows.push_back({"proxy_ols", "lower", std::nullopt, bound_proxy_ols(c), ""});
    rows.push_back({"averaging", "lower", std::nullopt, bound_avg_weighted(c), "best lambda"});
    rows.push_back({"weighted", "lower", std::nullopt, bound_avg_weighted(c), "best lambda"});
    const double lb = lambda_bar(c);
    if (lambdas.empty()) {
        rows.push_back({"joint", "upper", lb, bound_joint_expected(c, lb), "lambda_bar"});
    }
    for (double l : lambdas) {
        rows.push_back({"joint", "upper", l, bound_joint_expected(c, l), l == lb ? "lambda_bar" : ""});
    }
    return rows;
}

void write_bounds_table(std::ostream& out, const std::vector<BoundRow>& rows) {
    out << "estimator,bound_type,lambda,value,note\n";
    for (const BoundRow& r : rows) {
        out << r.estimator << ',' << r.bound_type << ',' << cell(r.lambda) << ',' << format_double(r.value) << ','
            << r.note << '\n';
    }
}

}  // namespace proxyreg
