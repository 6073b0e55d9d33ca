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

// proxyreg command-line tool: synthetic experiments, CSV fits, bound tables,
// design diagnostics and coefficient scoring.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "proxyreg/bounds.hpp"
#include "proxyreg/config.hpp"
#include "proxyreg/csv.hpp"
#include "proxyreg/error.hpp"
#include "proxyreg/experiment.hpp"
#include "proxyreg/metrics.hpp"
#include "proxyreg/report.hpp"

namespace fs = std::filesystem;
using namespace proxyreg;

namespace {

struct SynthArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> jobs;
    std::optional<std::string> output;
    std::optional<std::string> estimators;
    std::optional<double> lambda;
    std::optional<std::string> grid;
    std::optional<std::string> scale_proxy;
    std::optional<std::string> standardize;
    std::optional<std::string> loss;
    std::optional<std::string> plot;
    std::optional<double> test_frac;
    bool runtime = false;
};

struct FitArgs {
    std::string gold, proxy, target = "y", estimator = "joint", loss = "squared";
    std::optional<double> lambda;
    std::optional<std::string> grid;
    std::string scale_proxy = "off";
    std::string standardize = "off";
    std::uint64_t seed = 0;
    std::optional<std::string> output;
};

struct BoundsArgs {
    ProblemConstants c;
    std::vector<double> lambdas;
    std::optional<std::string> output;
};

struct CompatArgs {
    std::string data, target = "y";
    std::vector<std::size_t> support;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    std::string standardize = "on";
};

struct EvalArgs {
    std::string coef, data, target = "y", loss = "squared";
};

bool switch_value(const std::string& v) {
    if (v == "on") return true;
    if (v == "off") return false;
    throw ConfigError("expected on|off, got '" + v + "'");
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

void print_summary(const AggregateReport& agg, bool logistic) {
    std::cout << std::left << std::setw(20) << "estimator" << std::right << std::setw(8) << "trials"
              << std::setw(16) << "mean_l2sq" << std::setw(14) << "ci95";
    if (logistic) std::cout << std::setw(12) << "mean_auc" << std::setw(12) << "ci95";
    std::cout << std::setw(14) << "mean_lambda" << '\n';
    for (const EstimatorAggregate& a : agg.estimators) {
        std::cout << std::left << std::setw(20) << to_string(a.kind) << std::right << std::setw(8) << a.trials_run;
        auto num = [](const MeanCi& m, int w) {
            std::ostringstream s;
            if (m.count) s << std::setprecision(6) << m.mean;
            std::cout << std::setw(w) << s.str();
            std::ostringstream h;
            if (m.count) h << std::setprecision(4) << m.half_width;
            std::cout << std::setw(w == 16 ? 14 : 12) << h.str();
        };
        num(a.l2sq_error, 16);
        if (logistic) num(a.auc, 12);
        std::ostringstream l;
        if (a.lambda.count) l << std::setprecision(4) << a.lambda.mean;
        std::cout << std::setw(14) << l.str();
        if (a.trials_skipped) std::cout << "  (" << a.trials_skipped << " skipped)";
        std::cout << '\n';
    }
}

int run_synth(const SynthArgs& a) {
    ExperimentConfig c = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
    if (a.loss) {
        c.loss = parse_loss_family(*a.loss);
        for (EstimatorSpec& s : c.estimators) s.loss = c.loss;
    }
    if (a.estimators) c.estimators = parse_estimator_list(*a.estimators, c.loss);
    if (a.lambda) {
        for (EstimatorSpec& s : c.estimators) {
            if (requires_lambda(s.kind)) s.lambda = *a.lambda;
        }
    }
    if (a.seed) c.base_seed = *a.seed;
    if (a.trials) c.trials = *a.trials;
    if (a.jobs) c.jobs = *a.jobs;
    if (a.output) c.output_dir = *a.output;
    if (a.grid) c.grid = parse_grid(*a.grid, c.grid ? c.grid->log_spaced : true);
    if (a.scale_proxy) c.scale = parse_proxy_scale(*a.scale_proxy);
    if (a.standardize) c.standardize = switch_value(*a.standardize);
    if (a.plot) {
        if (*a.plot != "off" && *a.plot != "svg") throw ConfigError("--plot must be off or svg");
        c.plot_svg = *a.plot == "svg";
    }
    if (a.test_frac) c.test_frac = *a.test_frac;
    if (a.runtime) c.record_runtime = true;
    c.scenario.standardize = c.standardize;
    c.scenario.loss = c.loss;
    c.validate();

    const ExperimentResult result = run_experiment(c);
    for (const std::string& note : result.notes) std::cerr << note << '\n';

    fs::create_directories(c.output_dir);
    const fs::path dir(c.output_dir);
    std::ostringstream results, summary, cfg;
    write_results_csv(results, result.reports);
    write_summary_csv(summary, result.aggregate);
    write_config(cfg, c);
    write_file(dir / "results.csv", results.str());
    write_file(dir / "summary.csv", summary.str());
    write_file(dir / "config.cfg", cfg.str());
    if (c.plot_svg) write_file(dir / "plot.svg", render_svg(result.aggregate, c.loss == LossFamily::logistic));

    print_summary(result.aggregate, c.loss == LossFamily::logistic);
    std::cerr << "wrote " << (dir / "results.csv").string() << '\n';
    return 0;
}

int run_fit(const FitArgs& a) {
    const LossFamily loss = parse_loss_family(a.loss);
    CsvPair pair = ingest_csv_pair(a.gold, a.proxy, a.target, loss);
    std::cerr << "dropped rows with missing values: gold " << pair.dropped_gold << ", proxy " << pair.dropped_proxy
              << '\n';
    TwoTaskData data = std::move(pair.data);

    Vector scales(data.d(), 1.0);
    if (switch_value(a.standardize)) {
        StandardizedMatrix st = standardize_columns(data.proxy_x);
        scales = st.scales;
        data = TwoTaskData(apply_column_scales(data.gold_x, scales), std::move(data.gold_y), std::move(st.matrix),
                           std::move(data.proxy_y));
    }
    const ProxyScale ps = parse_proxy_scale(a.scale_proxy);
    if (ps.mode != ProxyScale::Mode::off) {
        if (loss == LossFamily::logistic) throw ConfigError("proxy response scaling applies to the squared loss only");
        ScaledData scaled = scale_proxy_responses(
            data, ps.mode == ProxyScale::Mode::fixed ? std::optional<double>(ps.factor) : std::nullopt, a.seed);
        std::cerr << "proxy response scale factor " << format_double(scaled.factor) << '\n';
        data = std::move(scaled.data);
    }

    EstimatorSpec spec;
    spec.kind = parse_estimator_kind(a.estimator);
    spec.loss = loss;
    if (spec.kind == EstimatorKind::oracle) throw ConfigError("the oracle needs the true bias; not available on CSV data");
    if (a.lambda && requires_lambda(spec.kind)) spec.lambda = a.lambda;
    const std::vector<double> grid = a.grid ? parse_grid(*a.grid).values() : default_grid(spec.kind);
    const Estimate e = run_estimator(data, spec, grid, a.seed);

    // Back to the original feature units.
    Vector beta = e.fit.beta;
    for (std::size_t j = 0; j < beta.size(); ++j) beta[j] /= scales[j];

    if (e.lambda) std::cout << "lambda " << format_double(*e.lambda) << '\n';
    std::cout << "converged " << (e.fit.converged ? "yes" : "no") << ", iterations " << e.fit.iterations << '\n';
    std::cout << "feature,beta\n";
    for (std::size_t j = 0; j < beta.size(); ++j) std::cout << pair.features[j] << ',' << format_double(beta[j]) << '\n';
    std::optional<BiasVector> bias;
    if (e.bias) {
        Vector delta = e.bias->delta;
        for (std::size_t j = 0; j < delta.size(); ++j) delta[j] /= scales[j];
        bias = BiasVector::from(std::move(delta));
        std::cout << "bias support (" << bias->support.size() << "):";
        for (std::size_t j : bias->support) std::cout << ' ' << pair.features[j];
        std::cout << '\n';
    }
    if (a.output) {
        fs::create_directories(*a.output);
        std::ostringstream b;
        write_coefficients(b, beta);
        write_file(fs::path(*a.output) / "beta.csv", b.str());
        if (bias) {
            std::ostringstream d;
            write_bias(d, *bias, pair.features);
            write_file(fs::path(*a.output) / "delta.csv", d.str());
        }
    }
    return 0;
}

int run_bounds(const BoundsArgs& a) {
    std::ostringstream s;
    write_bounds_table(s, emit_bounds_table(a.c, a.lambdas));
    if (a.output) {
        write_file(*a.output, s.str());
    } else {
        std::cout << s.str();
    }
    return 0;
}

int run_compat(const CompatArgs& a) {
    CsvDataset ds = ingest_csv(a.data, a.target, LossFamily::squared);
    std::cerr << "dropped rows with missing values: " << ds.dropped_rows << '\n';
    Matrix x = switch_value(a.standardize) ? standardize_columns(ds.x).matrix : ds.x;
    const SymmetricMatrix sigma = sample_covariance(x);
    const double zeta = min_eigenvalue(sigma);
    std::cout << "rows " << x.rows() << ", columns " << x.cols() << '\n';
    std::cout << "min_eigenvalue " << format_double(zeta) << '\n';
    const std::optional<double> phi0 = compat_sufficient(sigma);
    std::cout << "compat_sufficient " << (phi0 ? format_double(*phi0) : std::string("none")) << '\n';
    if (!a.support.empty()) {
        Rng rng = make_rng(a.seed, Stream::compat);
        std::cout << "compat_estimate " << format_double(compat_estimate(sigma, a.support, a.samples, rng)) << '\n';
    }
    return 0;
}

int run_eval(const EvalArgs& a) {
    const LossFamily loss = parse_loss_family(a.loss);
    const Vector beta = read_coefficients(a.coef);
    const CsvDataset ds = ingest_csv(a.data, a.target, loss);
    if (beta.size() != ds.x.cols()) {
        throw InvalidArgument("coefficient file has " + std::to_string(beta.size()) + " entries but the data has " +
                              std::to_string(ds.x.cols()) + " features");
    }
    std::cout << "rows " << ds.x.rows() << " (dropped " << ds.dropped_rows << ")\n";
    const Vector pred = matvec(ds.x, beta);
    if (loss == LossFamily::squared) {
        std::cout << "mse " << format_double(mse(pred, ds.y)) << '\n';
    } else {
        std::cout << "log_loss " << format_double(logistic_loss(ds.x, ds.y, beta)) << '\n';
        std::cout << "auc " << format_double(auc(pred, ds.y)) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gold/proxy transfer regression toolkit"};
    app.require_subcommand(1);

    SynthArgs sa;
    auto* synth = app.add_subcommand("synth", "Run a multi-trial estimator comparison from a config");
    synth->add_option("--config", sa.config, "Config file (defaults: sparse synthetic scenario)");
    synth->add_option("--seed", sa.seed, "Base seed");
    synth->add_option("--trials", sa.trials, "Number of trials");
    synth->add_option("--jobs", sa.jobs, "Concurrent trials");
    synth->add_option("--output", sa.output, "Output directory");
    synth->add_option("--estimators", sa.estimators, "Comma list, e.g. joint,weighted=0.5");
    synth->add_option("--lambda", sa.lambda, "Fixed lambda for every tunable estimator");
    synth->add_option("--grid", sa.grid, "CV grid MIN:MAX:POINTS");
    synth->add_option("--scale-proxy", sa.scale_proxy, "auto|FLOAT|off");
    synth->add_option("--standardize", sa.standardize, "on|off");
    synth->add_option("--loss", sa.loss, "squared|logistic");
    synth->add_option("--plot", sa.plot, "off|svg");
    synth->add_option("--test-frac", sa.test_frac, "Held-out gold fraction for test scores");
    synth->add_flag("--runtime", sa.runtime, "Record per-fit wall time in runtime_ms");

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "Fit one estimator on a gold/proxy CSV pair");
    fit->add_option("--gold", fa.gold, "Gold CSV")->required();
    fit->add_option("--proxy", fa.proxy, "Proxy CSV")->required();
    fit->add_option("--target", fa.target, "Response column");
    fit->add_option("--estimator", fa.estimator, "Estimator kind");
    fit->add_option("--loss", fa.loss, "squared|logistic");
    fit->add_option("--lambda", fa.lambda, "Fixed lambda (default: cross-validate)");
    fit->add_option("--grid", fa.grid, "CV grid MIN:MAX:POINTS");
    fit->add_option("--scale-proxy", fa.scale_proxy, "auto|FLOAT|off");
    fit->add_option("--standardize", fa.standardize, "on|off");
    fit->add_option("--seed", fa.seed, "CV split seed");
    fit->add_option("--output", fa.output, "Directory for beta.csv and delta.csv");

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Print the estimator error-bound table");
    bounds->add_option("--d", ba.c.d, "Dimension");
    bounds->add_option("--n-gold", ba.c.n_gold, "Gold sample size");
    bounds->add_option("--n-proxy", ba.c.n_proxy, "Proxy sample size");
    bounds->add_option("--sigma-gold", ba.c.sigma_gold, "Gold noise scale");
    bounds->add_option("--sigma-proxy", ba.c.sigma_proxy, "Proxy noise scale");
    bounds->add_option("--s", ba.c.s, "Bias support size");
    bounds->add_option("--b", ba.c.b, "L1 radius of the coefficients");
    bounds->add_option("--psi", ba.c.psi, "Min eigenvalue of the proxy covariance");
    bounds->add_option("--phi", ba.c.phi, "Compatibility constant");
    bounds->add_option("--delta-l1", ba.c.delta_l1, "L1 norm of the bias");
    bounds->add_option("--lambda", ba.lambdas, "Joint lambdas (default: lambda_bar)")->delimiter(',');
    bounds->add_option("--output", ba.output, "Write the table to a file");

    CompatArgs ca;
    auto* compat = app.add_subcommand("compat", "Eigenvalue and compatibility diagnostics for a CSV design");
    compat->add_option("--data", ca.data, "CSV file")->required();
    compat->add_option("--target", ca.target, "Response column to exclude");
    compat->add_option("--support", ca.support, "Support indices for the Monte Carlo estimate")->delimiter(',');
    compat->add_option("--samples", ca.samples, "Monte Carlo draws");
    compat->add_option("--seed", ca.seed, "Monte Carlo seed");
    compat->add_option("--standardize", ca.standardize, "on|off");

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Score a saved coefficient vector on a CSV file");
    eval->add_option("--coef", ea.coef, "Coefficient file (header 'beta')")->required();
    eval->add_option("--data", ea.data, "CSV file")->required();
    eval->add_option("--target", ea.target, "Response column");
    eval->add_option("--loss", ea.loss, "squared|logistic");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) return run_synth(sa);
        if (*fit) return run_fit(fa);
        if (*bounds) return run_bounds(ba);
        if (*compat) return run_compat(ca);
        if (*eval) return run_eval(ea);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
