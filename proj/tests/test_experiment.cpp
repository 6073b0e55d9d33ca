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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unistd.h>

#include "proxyreg/error.hpp"
#include "proxyreg/experiment.hpp"
#include "proxyreg/report.hpp"

using namespace proxyreg;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config(std::size_t trials) {
    ExperimentConfig c;
    c.trials = trials;
    c.base_seed = 5;
    c.scenario.n_proxy = 300;
    c.scenario.n_gold = 40;
    c.scenario.d = 10;
    c.grid = GridSpec{1e-3, 1.0, 6, true};
    return c;
}

std::string results_text(const ExperimentResult& r) {
    std::ostringstream out;
    write_results_csv(out, r.reports);
    return out.str();
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

TEST(MeanCiTest, HandValues) {
    const MeanCi m = mean_ci({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    // sample sd of 1..4 is sqrt(5/3)
    EXPECT_NEAR(m.half_width, 1.96 * std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_EQ(m.count, 4u);
    EXPECT_EQ(mean_ci({7.0}).half_width, 0.0);
    EXPECT_EQ(mean_ci({}).count, 0u);
}

TEST(TrialSeed, StableUnderAddedTrials) {
    const ExperimentResult three = run_experiment(small_config(3));
    const ExperimentResult five = run_experiment(small_config(5));
    const std::size_t per_trial = small_config(1).estimators.size();
    ASSERT_EQ(three.reports.size(), 3 * per_trial);
    for (std::size_t i = 0; i < three.reports.size(); ++i) {
        EXPECT_EQ(three.reports[i].l2sq_error, five.reports[i].l2sq_error);
        EXPECT_EQ(three.reports[i].lambda, five.reports[i].lambda);
    }
    EXPECT_NE(trial_seed(5, 0), trial_seed(5, 1));
    EXPECT_NE(trial_seed(5, 0), trial_seed(6, 0));
}

TEST(RunExperiment, DeterministicAndJobIndependent) {
    ExperimentConfig c = small_config(6);
    const std::string a = results_text(run_experiment(c));
    const std::string b = results_text(run_experiment(c));
    c.jobs = 3;
    const std::string threaded = results_text(run_experiment(c));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, threaded);
}

TEST(RunExperiment, ReportsAreTrialMajorInConfigOrder) {
    const ExperimentConfig c = small_config(3);
    const ExperimentResult r = run_experiment(c);
    std::size_t k = 0;
    for (std::size_t t = 0; t < 3; ++t) {
        for (const EstimatorSpec& s : c.estimators) {
            EXPECT_EQ(r.reports[k].trial, t);
            EXPECT_EQ(r.reports[k].kind, s.kind);
            ++k;
        }
    }
}

TEST(RunExperiment, AggregateRecomputableFromCsv) {
    const ExperimentResult r = run_experiment(small_config(8));
    std::istringstream in(results_text(r));
    std::string line;
    std::getline(in, line);
    const std::vector<std::string> header = split(line);
    ASSERT_EQ(header[0], "trial");
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    std::map<std::string, std::vector<double>> l1, l2;
    while (std::getline(in, line)) {
        const auto cells = split(line);
        if (!cells[col["l1_error"]].empty()) l1[cells[col["estimator"]]].push_back(std::stod(cells[col["l1_error"]]));
        if (!cells[col["l2sq_error"]].empty())
            l2[cells[col["estimator"]]].push_back(std::stod(cells[col["l2sq_error"]]));
    }
    for (const EstimatorAggregate& a : r.aggregate.estimators) {
        const std::string name(to_string(a.kind));
        const auto& v1 = l1[name];
        const auto& v2 = l2[name];
        ASSERT_EQ(v1.size(), a.l1_error.count);
        double s1 = 0.0, s2 = 0.0;
        for (double v : v1) s1 += v;
        for (double v : v2) s2 += v;
        if (!v1.empty()) {
            EXPECT_NEAR(s1 / v1.size(), a.l1_error.mean, 1e-12 * std::max(1.0, a.l1_error.mean));
            EXPECT_NEAR(s2 / v2.size(), a.l2sq_error.mean, 1e-12 * std::max(1.0, a.l2sq_error.mean));
        }
        EXPECT_EQ(a.trials_run + a.trials_skipped, 8u);
    }
}

TEST(RunExperiment, InfeasibleCellsCarryReasonCodes) {
    ExperimentConfig c = small_config(2);
    c.scenario.n_gold = 6;  // below d: gold OLS is singular, CV has too few rows
    const ExperimentResult r = run_experiment(c);
    const std::set<std::string> known{"no_ground_truth", "proxy_singular", "degenerate_labels", "empty_grid",
                                      "singular_design", "not_positive_definite", "invalid_argument"};
    bool gold_skipped = false;
    for (const TrialReport& t : r.reports) {
        if (t.skipped()) {
            EXPECT_TRUE(known.count(t.skip_reason)) << t.skip_reason;
            EXPECT_FALSE(t.l2sq_error.has_value());
        } else {
            EXPECT_TRUE(t.l2sq_error.has_value());
        }
        if (t.kind == EstimatorKind::gold_ols) {
            EXPECT_EQ(t.skip_reason, "singular_design");
            gold_skipped = true;
        }
    }
    EXPECT_TRUE(gold_skipped);
    EXPECT_EQ(r.aggregate.find(EstimatorKind::gold_ols)->trials_skipped, 2u);
}

TEST(RunExperiment, FixedLambdaSkipsCv) {
    ExperimentConfig c = small_config(2);
    c.estimators = parse_estimator_list("joint=0.05, averaging=0.3", LossFamily::squared);
    const ExperimentResult r = run_experiment(c);
    for (const TrialReport& t : r.reports) {
        EXPECT_FALSE(t.validation_score.has_value());
        EXPECT_EQ(*t.lambda, t.kind == EstimatorKind::joint ? 0.05 : 0.3);
    }
}

TEST(RunExperiment, JointRecoversLargeSparseBias) {
    // Well-conditioned design with a few large shifts: the lasso step should find them.
    ExperimentConfig c;
    c.trials = 10;
    c.base_seed = 17;
    c.scenario.n_proxy = 2000;
    c.scenario.n_gold = 100;
    c.scenario.d = 20;
    c.scenario.covariance = CovarianceKind::identity;
    c.scenario.support_size = 3;
    c.scenario.sparse_magnitude = 1.0;
    c.standardize = true;
    c.estimators = parse_estimator_list("proxy_ols, joint, oracle", LossFamily::squared);
    const ExperimentResult r = run_experiment(c);
    const EstimatorAggregate* joint = r.aggregate.find(EstimatorKind::joint);
    const EstimatorAggregate* proxy = r.aggregate.find(EstimatorKind::proxy_ols);
    EXPECT_LT(joint->l2sq_error.mean, 0.25 * proxy->l2sq_error.mean);
    double recovered = 0.0;
    for (const TrialReport& t : r.reports) {
        if (t.kind == EstimatorKind::joint) recovered += static_cast<double>(*t.n_support_recovered);
    }
    EXPECT_GE(recovered / 10.0, 2.5);
}

TEST(RunExperiment, TruncationZeroesLargeFits) {
    ExperimentConfig c = small_config(3);
    c.estimators = parse_estimator_list("joint=0.01", LossFamily::squared);
    c.truncation_bound = 1e-6;  // every fit has a larger L1 norm
    const ExperimentResult r = run_experiment(c);
    for (const TrialReport& t : r.reports) EXPECT_DOUBLE_EQ(*t.l2sq_error, 10.0);
}

TEST(RunExperiment, LogisticHoldsOutGoldRowsForAuc) {
    ExperimentConfig c;
    c.trials = 2;
    c.loss = LossFamily::logistic;
    c.scenario.loss = LossFamily::logistic;
    c.scenario.n_proxy = 800;
    c.scenario.n_gold = 120;
    c.scenario.d = 5;
    c.scenario.covariance = CovarianceKind::identity;
    c.estimators = parse_estimator_list("gold_ols, proxy_ols, joint", LossFamily::logistic);
    const ExperimentResult r = run_experiment(c);
    for (const TrialReport& t : r.reports) {
        ASSERT_FALSE(t.skipped()) << t.skip_reason;
        ASSERT_TRUE(t.auc.has_value());
        EXPECT_GT(*t.auc, 0.5);
        EXPECT_TRUE(t.test_score.has_value());
    }
}

TEST(RunExperiment, CsvModeHasNoGroundTruth) {
    const fs::path dir = fs::temp_directory_path() / ("proxyreg_exp_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::mt19937_64 gen(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto write = [&](const fs::path& p, std::size_t n, double shift) {
        std::ofstream out(p);
        out << "a,b,y\n";
        for (std::size_t i = 0; i < n; ++i) {
            const double a = normal(gen), b = normal(gen);
            out << a << ',' << b << ',' << (1.0 + shift) * a - b + 0.1 * normal(gen) << '\n';
        }
        out << "1,,2\n";
    };
    write(dir / "gold.csv", 60, 0.0);
    write(dir / "proxy.csv", 400, 0.5);
    ExperimentConfig c;
    c.mode = DataMode::csv;
    c.gold_path = (dir / "gold.csv").string();
    c.proxy_path = (dir / "proxy.csv").string();
    c.trials = 2;
    c.estimators = parse_estimator_list("gold_ols, proxy_ols, joint, oracle", LossFamily::squared);
    const ExperimentResult r = run_experiment(c);
    fs::remove_all(dir);
    EXPECT_EQ(r.notes[0], "gold rows dropped for missing values: 1");
    for (const TrialReport& t : r.reports) {
        if (t.kind == EstimatorKind::oracle) {
            EXPECT_EQ(t.skip_reason, "no_ground_truth");
            continue;
        }
        EXPECT_FALSE(t.l1_error.has_value());
        ASSERT_TRUE(t.test_score.has_value());
    }
    // Gold fit should beat the shifted proxy on held-out gold rows.
    EXPECT_LT(r.aggregate.find(EstimatorKind::gold_ols)->test_score.mean,
              r.aggregate.find(EstimatorKind::proxy_ols)->test_score.mean);
}

TEST(RunExperiment, AutomaticProxyScaleIsLogged) {
    ExperimentConfig c = small_config(2);
    c.scale.mode = ProxyScale::Mode::automatic;
    const ExperimentResult r = run_experiment(c);
    ASSERT_EQ(r.notes.size(), 2u);
    EXPECT_NE(r.notes[0].find("scale factor"), std::string::npos);
}

TEST(Report, ResultsCsvHeaderAndEmptyCells) {
    TrialReport t;
    t.trial = 3;
    t.kind = EstimatorKind::oracle;
    t.skip_reason = "no_ground_truth";
    std::ostringstream out;
    write_results_csv(out, {t});
    EXPECT_EQ(out.str(),
              "trial,estimator,lambda,l1_error,l2sq_error,auc,n_support_recovered,runtime_ms,skip_reason,"
              "validation_score,test_score\n3,oracle,,,,,,,no_ground_truth,,\n");
}

TEST(Report, SvgMentionsEveryEstimator) {
    const ExperimentResult r = run_experiment(small_config(2));
    const std::string svg = render_svg(r.aggregate);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    for (const EstimatorAggregate& a : r.aggregate.estimators) {
        if (a.l2sq_error.count) {
            EXPECT_NE(svg.find(std::string(to_string(a.kind))), std::string::npos);
        }
    }
    std::ostringstream summary;
    write_summary_csv(summary, r.aggregate);
    EXPECT_EQ(summary.str().rfind("estimator,trials_run", 0), 0u);
}

TEST(BoundsTable, StructureAtDefaultConstants) {
    const ProblemConstants c;
    const auto rows = emit_bounds_table(c, {});
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0].estimator, "gold_ols");
    EXPECT_EQ(rows[5].estimator, "joint");
    EXPECT_EQ(rows[5].bound_type, "upper");
    EXPECT_EQ(rows[5].note, "lambda_bar");
    EXPECT_DOUBLE_EQ(*rows[5].lambda, lambda_bar(c));
    // Shared lower bound sits under both single-task bounds.
    EXPECT_LE(rows[3].value, std::min(rows[0].value, rows[2].value));
    EXPECT_EQ(rows[3].value, rows[4].value);
}

TEST(BoundsTable, NoiselessProxyRowIsHalfBias) {
    ProblemConstants c;
    c.sigma_gold = 0.0;
    c.sigma_proxy = 0.0;
    c.delta_l1 = 3.0;
    const auto rows = emit_bounds_table(c, {0.5, 1.0});
    EXPECT_EQ(rows[0].value, 0.0);
    EXPECT_EQ(rows[1].value, 0.0);
    EXPECT_EQ(rows[2].value, 1.5);
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_EQ(*rows[6].lambda, 1.0);
}

TEST(BoundsTable, FullSupportHasNoSparsityAdvantage) {
    ProblemConstants c;
    c.s = c.d;
    const auto rows = emit_bounds_table(c, {});
    EXPECT_GE(rows.back().value, rows[0].value);
    std::ostringstream out;
    write_bounds_table(out, rows);
    EXPECT_EQ(out.str().rfind("estimator,bound_type,lambda,value,note\n", 0), 0u);
}
