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

#include "proxyreg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "proxyreg/csv.hpp"
#include "proxyreg/error.hpp"
#include "proxyreg/rng.hpp"
#include "proxyreg/synthgen.hpp"

namespace proxyreg {

namespace {

struct TrialData {
    TwoTaskData data;
    std::optional<Vector> beta_star;
    std::optional<BiasVector> delta_star;
    Matrix test_x;
    Vector test_y;
};

Vector take(std::span<const double> v, std::span<const std::size_t> idx) {
    Vector out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = v[idx[k]];
    return out;
}

// Moves a seeded random fraction of the gold rows into the test set.
void hold_out_gold(TrialData& t, double frac, std::uint64_t seed) {
    const std::size_t n = t.data.n_gold();
    const auto n_test = static_cast<std::size_t>(std::lround(frac * static_cast<double>(n)));
    if (n_test == 0) return;
    if (n_test >= n) throw InvalidArgument("test_frac leaves no gold training rows");
    Rng rng = make_rng(seed, Stream::test_split);
    std::vector<std::size_t> perm = random_permutation(n, rng);
    std::vector<std::size_t> test(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
    std::vector<std::size_t> train(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
    std::sort(test.begin(), test.end());
    std::sort(train.begin(), train.end());
    t.test_x = t.data.gold_x.select_rows(test);
    t.test_y = take(t.data.gold_y, test);
    t.data = TwoTaskData(t.data.gold_x.select_rows(train), take(t.data.gold_y, train),
                         std::move(t.data.proxy_x), std::move(t.data.proxy_y));
}

TrialData prepare(const ExperimentConfig& config, const CsvPair* csv, std::uint64_t seed) {
    TrialData t;
    if (config.mode == DataMode::synthetic) {
        ScenarioConfig sc = config.scenario;
        sc.seed = seed;
        sc.loss = config.loss;
        sc.standardize = config.standardize;
        ScenarioInstance inst = generate_scenario(sc);
        t.data = std::move(inst.data);
        t.beta_star = std::move(inst.beta_gold_star);
        t.delta_star = std::move(inst.delta_star);
        t.test_x = std::move(inst.test_x);
        t.test_y = std::move(inst.test_y);
        if (t.test_y.empty() && config.loss == LossFamily::logistic) hold_out_gold(t, config.test_frac, seed);
        return t;
    }
    t.data = csv->data;
    hold_out_gold(t, config.test_frac, seed);
    if (config.standardize) {
        StandardizedMatrix st = standardize_columns(t.data.proxy_x);
        Matrix gx = apply_column_scales(t.data.gold_x, st.scales);
        if (!t.test_y.empty()) t.test_x = apply_column_scales(t.test_x, st.scales);
        t.data = TwoTaskData(std::move(gx), std::move(t.data.gold_y), std::move(st.matrix),
                             std::move(t.data.proxy_y));
    }
    return t;
}

bool is_joint(EstimatorKind k) {
    return k == EstimatorKind::joint || k == EstimatorKind::joint_simultaneous;
}

std::vector<double> grid_for(const ExperimentConfig& config, EstimatorKind kind) {
    if (!config.grid) return default_grid(kind);
    std::vector<double> g = config.grid->values();
    if (kind == EstimatorKind::averaging) {
        std::erase_if(g, [](double v) { return v < 0.0 || v > 1.0; });
    }
    return g;
}

std::vector<TrialReport> run_prepared(const ExperimentConfig& config, std::size_t trial,
                                      const CsvPair* csv, std::vector<std::string>* notes) {
    const std::uint64_t seed = trial_seed(config.base_seed, trial);
    TrialData t = prepare(config, csv, seed);

    if (config.scale.mode != ProxyScale::Mode::off) {
        const std::optional<double> factor =
            config.scale.mode == ProxyScale::Mode::fixed ? std::optional<double>(config.scale.factor) : std::nullopt;
        ScaledData scaled = scale_proxy_responses(t.data, factor, seed);
        t.data = std::move(scaled.data);
        if (notes) {
            notes->push_back("trial " + std::to_string(trial) + ": proxy response scale factor " +
                             format_double(scaled.factor));
        }
    }

    std::optional<ProxySummary> summary;
    std::string proxy_failure;
    try {
        summary = summarize_proxy(t.data, config.loss);
    } catch (const SingularDesign&) {
        proxy_failure = "proxy_singular";
    } catch (const DegenerateLabels&) {
        proxy_failure = "degenerate_labels";
    }

    std::vector<TrialReport> reports;
    for (const EstimatorSpec& base : config.estimators) {
        TrialReport r;
        r.trial = trial;
        r.kind = base.kind;
        EstimatorSpec spec = base;
        spec.loss = config.loss;
        if (config.truncation_bound && is_joint(spec.kind)) spec.truncation_bound = config.truncation_bound;

        const bool needs_proxy_fit = spec.kind == EstimatorKind::proxy_ols || spec.kind == EstimatorKind::averaging ||
                                     spec.kind == EstimatorKind::joint || spec.kind == EstimatorKind::oracle;
        if (spec.kind == EstimatorKind::oracle && !t.delta_star) {
            r.skip_reason = "no_ground_truth";
        } else if (needs_proxy_fit && !summary) {
            r.skip_reason = proxy_failure;
        }
        if (r.skipped()) {
            reports.push_back(std::move(r));
            continue;
        }
        const std::vector<double> grid = grid_for(config, spec.kind);
        if (requires_lambda(spec.kind) && !spec.lambda && grid.empty()) {
            r.skip_reason = "empty_grid";
            reports.push_back(std::move(r));
            continue;
        }

        const auto start = std::chrono::steady_clock::now();
        Estimate e;
        try {
            e = run_estimator(t.data, spec, grid, seed, t.delta_star ? &*t.delta_star : nullptr,
                              summary ? &*summary : nullptr);
        } catch (const SingularDesign&) {
            r.skip_reason = "singular_design";
        } catch (const NotPositiveDefinite&) {
            r.skip_reason = "not_positive_definite";
        } catch (const DegenerateLabels&) {
            r.skip_reason = "degenerate_labels";
        } catch (const InvalidArgument&) {
            r.skip_reason = "invalid_argument";
        }
        const auto stop = std::chrono::steady_clock::now();
        if (r.skipped()) {
            reports.push_back(std::move(r));
            continue;
        }

        r.lambda = e.lambda;
        if (config.record_runtime) {
            r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        }
        if (t.beta_star) {
            const ParamError pe = param_error(e.fit.beta, *t.beta_star);
            r.l1_error = pe.l1;
            r.l2sq_error = pe.l2sq;
        }
        if (!e.cv_scores.empty()) {
            r.validation_score = *std::min_element(e.cv_scores.begin(), e.cv_scores.end());
        }
        if (!t.test_y.empty()) {
            if (config.loss == LossFamily::logistic) {
                r.test_score = logistic_loss(t.test_x, t.test_y, e.fit.beta);
                try {
                    r.auc = auc(matvec(t.test_x, e.fit.beta), t.test_y);
                } catch (const DegenerateLabels&) {
                    // single-class test split: AUC undefined for this trial
                }
            } else {
                r.test_score = mse(matvec(t.test_x, e.fit.beta), t.test_y);
            }
        }
        if (e.bias) {
            r.n_support_estimated = e.bias->support.size();
            if (t.delta_star) {
                std::size_t hits = 0;
                for (std::size_t j : e.bias->support) {
                    if (t.delta_star->delta[j] != 0.0) ++hits;
                }
                r.n_support_recovered = hits;
            }
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace

MeanCi mean_ci(const std::vector<double>& values) {
    MeanCi m;
    m.count = values.size();
    if (values.empty()) return m;
    double sum = 0.0;
    for (double v : values) sum += v;
    m.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        m.half_width = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
    }
    return m;
}

const EstimatorAggregate* AggregateReport::find(EstimatorKind kind) const {
    for (const EstimatorAggregate& a : estimators) {
        if (a.kind == kind) return &a;
    }
    return nullptr;
}

AggregateReport aggregate(const std::vector<TrialReport>& reports, const std::vector<EstimatorSpec>& estimators) {
    AggregateReport out;
    for (const EstimatorSpec& spec : estimators) {
        if (out.find(spec.kind)) continue;
        EstimatorAggregate a;
        a.kind = spec.kind;
        std::vector<double> l1, l2, au, lam, ts;
        for (const TrialReport& r : reports) {
            if (r.kind != spec.kind) continue;
            if (r.skipped()) {
                ++a.trials_skipped;
                continue;
            }
            ++a.trials_run;
            if (r.l1_error) l1.push_back(*r.l1_error);
            if (r.l2sq_error) l2.push_back(*r.l2sq_error);
            if (r.auc) au.push_back(*r.auc);
            if (r.lambda) lam.push_back(*r.lambda);
            if (r.test_score) ts.push_back(*r.test_score);
        }
        a.l1_error = mean_ci(l1);
        a.l2sq_error = mean_ci(l2);
        a.auc = mean_ci(au);
        a.lambda = mean_ci(lam);
        a.test_score = mean_ci(ts);
        out.estimators.push_back(a);
    }
    return out;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) {
    return mix_seed(base_seed, static_cast<std::uint64_t>(trial));
}

std::vector<TrialReport> run_trial(const ExperimentConfig& config, std::size_t trial,
                                   std::vector<std::string>* notes) {
    std::optional<CsvPair> csv;
    if (config.mode == DataMode::csv) {
        csv = ingest_csv_pair(config.gold_path, config.proxy_path, config.target, config.loss);
    }
    return run_prepared(config, trial, csv ? &*csv : nullptr, notes);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    std::optional<CsvPair> csv;
    if (config.mode == DataMode::csv) {
        csv = ingest_csv_pair(config.gold_path, config.proxy_path, config.target, config.loss);
        result.notes.push_back("gold rows dropped for missing values: " + std::to_string(csv->dropped_gold));
        result.notes.push_back("proxy rows dropped for missing values: " + std::to_string(csv->dropped_proxy));
    }

    const std::size_t n = config.trials;
    std::vector<std::vector<TrialReport>> per_trial(n);
    std::vector<std::vector<std::string>> per_notes(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < n; t = next++) {
            try {
                per_trial[t] = run_prepared(config, t, csv ? &*csv : nullptr, &per_notes[t]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(config.jobs, n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (errors[t]) std::rethrow_exception(errors[t]);
        result.reports.insert(result.reports.end(), per_trial[t].begin(), per_trial[t].end());
        result.notes.insert(result.notes.end(), per_notes[t].begin(), per_notes[t].end());
    }
    result.aggregate = aggregate(result.reports, config.estimators);
    return result;
}

}  // namespace proxyreg
