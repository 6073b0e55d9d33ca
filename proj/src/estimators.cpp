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

#include "proxyreg/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "proxyreg/error.hpp"
#include "proxyreg/kernels.hpp"
#include "proxyreg/rng.hpp"

namespace proxyreg {

namespace {

constexpr double kTrainFraction = 0.7;
constexpr double kScaleHoldoutFraction = 0.3;
constexpr double kTieTolerance = 1e-12;

Vector combine(double a, std::span<const double> x, double b, std::span<const double> y) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
    Vector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

double lambda_of(const EstimatorSpec& spec) {
    if (!spec.lambda) {
        throw InvalidArgument(std::string(to_string(spec.kind)) + " needs a lambda at fit time");
    }
    return *spec.lambda;
}

// Proxy fit with a clear message when the proxy design itself is degenerate.
FitResult fit_proxy(const TwoTaskData& data, LossFamily loss) {
    if (loss == LossFamily::logistic) return fit_logistic(data.proxy_x, data.proxy_y, 0.0);
    try {
        return fit_ols(data.proxy_x, data.proxy_y);
    } catch (const SingularDesign& e) {
        throw SingularDesign(std::string("proxy sample covariance is not positive definite, so the "
                                         "proxy coefficients are not identifiable: ") +
                             e.what());
    }
}

FitResult gold_unpenalized(const TwoTaskData& data, LossFamily loss) {
    if (loss == LossFamily::logistic) return fit_logistic(data.gold_x, data.gold_y, 0.0);
    return fit_ols(data.gold_x, data.gold_y);
}

double validation_score(const Matrix& x, std::span<const double> y, std::span<const double> beta,
                        LossFamily loss) {
    return loss == LossFamily::squared ? squared_loss(x, y, beta) : logistic_loss(x, y, beta);
}

}  // namespace

TwoTaskData::TwoTaskData(Matrix gx, Vector gy, Matrix px, Vector py)
    : gold_x(std::move(gx)), gold_y(std::move(gy)), proxy_x(std::move(px)), proxy_y(std::move(py)) {
    if (gold_x.cols() != proxy_x.cols()) {
        throw InvalidArgument("gold design has " + std::to_string(gold_x.cols()) +
                              " columns but proxy design has " + std::to_string(proxy_x.cols()));
    }
    if (gold_x.rows() != gold_y.size()) throw InvalidArgument("gold design/response size mismatch");
    if (proxy_x.rows() != proxy_y.size()) throw InvalidArgument("proxy design/response size mismatch");
    if (!all_finite(gold_y) || !all_finite(proxy_y)) throw InvalidArgument("non-finite response");
}

std::string_view to_string(EstimatorKind kind) noexcept {
    switch (kind) {
        case EstimatorKind::gold_ols: return "gold_ols";
        case EstimatorKind::gold_ridge: return "gold_ridge";
        case EstimatorKind::proxy_ols: return "proxy_ols";
        case EstimatorKind::averaging: return "averaging";
        case EstimatorKind::weighted: return "weighted";
        case EstimatorKind::joint: return "joint";
        case EstimatorKind::joint_simultaneous: return "joint_simultaneous";
        case EstimatorKind::oracle: return "oracle";
    }
    return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
    for (auto kind : {EstimatorKind::gold_ols, EstimatorKind::gold_ridge, EstimatorKind::proxy_ols,
                      EstimatorKind::averaging, EstimatorKind::weighted, EstimatorKind::joint,
                      EstimatorKind::joint_simultaneous, EstimatorKind::oracle}) {
        if (to_string(kind) == name) return kind;
    }
    throw InvalidArgument("unknown estimator '" + std::string(name) + "'");
}

bool requires_lambda(EstimatorKind kind) noexcept {
    switch (kind) {
        case EstimatorKind::gold_ridge:
        case EstimatorKind::averaging:
        case EstimatorKind::weighted:
        case EstimatorKind::joint:
        case EstimatorKind::joint_simultaneous:
            return true;
        default:
            return false;
    }
}

void EstimatorSpec::validate() const {
    if (!requires_lambda(kind)) {
        if (lambda) {
            throw InvalidArgument(std::string(to_string(kind)) + " takes no tuning parameter");
        }
    } else if (lambda) {
        const double l = *lambda;
        if (!std::isfinite(l)) throw InvalidArgument("lambda must be finite");
        switch (kind) {
            case EstimatorKind::averaging:
                if (l < 0.0 || l > 1.0) throw InvalidArgument("averaging lambda must lie in [0, 1]");
                break;
            case EstimatorKind::joint:
            case EstimatorKind::joint_simultaneous:
                if (!(l > 0.0)) throw InvalidArgument("joint lambda must be > 0");
                break;
            default:
                if (l < 0.0) throw InvalidArgument("lambda must be >= 0");
        }
    }
    if (truncation_bound && !(*truncation_bound > 0.0)) {
        throw InvalidArgument("truncation bound must be > 0");
    }
    if (kind == EstimatorKind::joint_simultaneous && loss != LossFamily::squared) {
        throw InvalidArgument("joint_simultaneous supports the squared loss only");
    }
}

BiasVector BiasVector::from(Vector delta) {
    BiasVector b;
    for (std::size_t j = 0; j < delta.size(); ++j) {
        if (delta[j] != 0.0) b.support.push_back(j);
    }
    b.delta = std::move(delta);
    return b;
}

ProxySummary summarize_proxy(const TwoTaskData& data, LossFamily loss) {
    ProxySummary s;
    s.fit = fit_proxy(data, loss);
    if (loss == LossFamily::squared) {
        s.gram = gram(data.proxy_x);
        s.xty = transpose_matvec(data.proxy_x, data.proxy_y);
    }
    return s;
}

FitResult estimate_gold(const TwoTaskData& data, const EstimatorSpec& spec) {
    if (spec.kind == EstimatorKind::gold_ols) return gold_unpenalized(data, spec.loss);
    if (spec.kind != EstimatorKind::gold_ridge) {
        throw InvalidArgument("estimate_gold handles gold_ols and gold_ridge only");
    }
    const double lambda = lambda_of(spec);
    if (spec.loss == LossFamily::logistic) {
        // Same scaling as the squared closed form: (1/n)(loss-sum + lambda ||b||^2).
        return fit_logistic(data.gold_x, data.gold_y, lambda / static_cast<double>(data.n_gold()));
    }
    return fit_ridge(data.gold_x, data.gold_y, lambda);
}

FitResult estimate_proxy(const TwoTaskData& data, LossFamily loss) { return fit_proxy(data, loss); }

FitResult estimate_averaging(const TwoTaskData& data, double lambda, LossFamily loss,
                             const ProxySummary* proxy) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("averaging lambda must lie in [0, 1]");
    const FitResult proxy_fit = proxy ? proxy->fit : fit_proxy(data, loss);
    if (lambda == 1.0) return proxy_fit;
    const FitResult gold_fit = gold_unpenalized(data, loss);
    if (lambda == 0.0) return gold_fit;
    FitResult out;
    out.beta = combine(1.0 - lambda, gold_fit.beta, lambda, proxy_fit.beta);
    out.converged = gold_fit.converged && proxy_fit.converged;
    out.objective = validation_score(data.gold_x, data.gold_y, out.beta, loss);
    return out;
}

FitResult estimate_weighted(const TwoTaskData& data, double lambda, LossFamily loss,
                            const ProxySummary* proxy) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("weighted lambda must be finite and >= 0");
    }
    if (lambda == 0.0) return proxy ? proxy->fit : fit_proxy(data, loss);

    if (loss == LossFamily::logistic) {
        const std::size_t ng = data.n_gold(), np = data.n_proxy(), d = data.d();
        std::vector<double> stacked((ng + np) * d);
        std::copy(data.gold_x.entries().begin(), data.gold_x.entries().end(), stacked.begin());
        std::copy(data.proxy_x.entries().begin(), data.proxy_x.entries().end(),
                  stacked.begin() + static_cast<std::ptrdiff_t>(ng * d));
        Vector y(data.gold_y);
        y.insert(y.end(), data.proxy_y.begin(), data.proxy_y.end());
        Vector w(ng, lambda);
        w.resize(ng + np, 1.0);
        return fit_logistic_weighted(Matrix(ng + np, d, std::move(stacked)), y, w, 0.0);
    }

    SymmetricMatrix a = gram(data.gold_x);
    a *= lambda;
    Vector rhs = transpose_matvec(data.gold_x, data.gold_y);
    for (double& v : rhs) v *= lambda;
    if (proxy && !proxy->xty.empty()) {
        a += proxy->gram;
        kernels::axpy(1.0, proxy->xty, rhs);
    } else {
        a += gram(data.proxy_x);
        kernels::axpy(1.0, transpose_matvec(data.proxy_x, data.proxy_y), rhs);
    }
    FitResult out;
    try {
        out.beta = cholesky_solve(a, rhs);
    } catch (const NotPositiveDefinite& e) {
        throw SingularDesign(std::string("weighted Gram matrix is singular: ") + e.what());
    }
    const double total = lambda * static_cast<double>(data.n_gold()) + static_cast<double>(data.n_proxy());
    out.objective = (lambda * squared_loss(data.gold_x, data.gold_y, out.beta) * data.n_gold() +
                     squared_loss(data.proxy_x, data.proxy_y, out.beta) * data.n_proxy()) /
                    total;
    return out;
}

JointFit estimate_joint(const TwoTaskData& data, double lambda, LossFamily loss,
                        const ProxySummary* proxy) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("joint lambda must be > 0");
    const FitResult proxy_fit = proxy ? proxy->fit : fit_proxy(data, loss);
    JointFit out;
    if (loss == LossFamily::logistic) {
        out.fit = fit_logistic_l1_offset(data.gold_x, data.gold_y, proxy_fit.beta, lambda);
    } else {
        out.fit = fit_lasso_offset(data.gold_x, data.gold_y, proxy_fit.beta, lambda);
    }
    out.bias = BiasVector::from(subtract(out.fit.beta, proxy_fit.beta));
    return out;
}

Vector joint_simultaneous_beta_step(const TwoTaskData& data, std::span<const double> delta) {
    SymmetricMatrix g = gram(data.gold_x);
    const SymmetricMatrix gp = gram(data.proxy_x);
    g += gp;
    Vector rhs = transpose_matvec(data.gold_x, data.gold_y);
    kernels::axpy(1.0, transpose_matvec(data.proxy_x, data.proxy_y), rhs);
    kernels::axpy(1.0, matvec(gp, delta), rhs);
    return cholesky_solve(g, rhs);
}

JointFit estimate_joint_simultaneous(const TwoTaskData& data, double lambda,
                                     const SimultaneousOptions& options) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("joint lambda must be > 0");
    const std::size_t d = data.d();
    const double np = static_cast<double>(data.n_proxy());
    const double penalty = lambda * static_cast<double>(data.n_gold());

    const SymmetricMatrix gp = gram(data.proxy_x);
    SymmetricMatrix g = gram(data.gold_x);
    g += gp;
    const Cholesky factor(g);
    Vector base_rhs = transpose_matvec(data.gold_x, data.gold_y);
    kernels::axpy(1.0, transpose_matvec(data.proxy_x, data.proxy_y), base_rhs);

    auto objective = [&](std::span<const double> beta, std::span<const double> delta) {
        const Vector shifted = subtract(beta, delta);
        return squared_loss(data.gold_x, data.gold_y, beta) * static_cast<double>(data.n_gold()) +
               squared_loss(data.proxy_x, data.proxy_y, shifted) * np + penalty * norm1(delta);
    };

    Vector delta(d, 0.0);
    Vector beta;
    JointFit out;
    double previous = 0.0;
    bool converged = false;
    std::size_t alternation = 0;
    LassoOptions lasso;
    for (; alternation < options.max_alternations; ++alternation) {
        Vector rhs = base_rhs;
        kernels::axpy(1.0, matvec(gp, delta), rhs);
        beta = factor.solve(rhs);

        // d-step: min ||(X_p b - y_p) - X_p d||^2 + penalty ||d||_1, scaled by 1/n_p.
        const Vector target = subtract(matvec(data.proxy_x, beta), data.proxy_y);
        lasso.warm_start = delta;
        const Vector zero(d, 0.0);
        delta = fit_lasso_offset(data.proxy_x, target, zero, penalty / np, lasso).beta;

        const double current = objective(beta, delta);
        out.fit.objective_trace.push_back(current);
        if (alternation > 0 &&
            std::fabs(previous - current) <= options.relative_tolerance * std::max(1.0, std::fabs(current))) {
            converged = true;
            ++alternation;
            break;
        }
        previous = current;
    }
    // Finish with the b-step for the final d so (b, d) is a coordinate-wise optimum.
    Vector rhs = base_rhs;
    kernels::axpy(1.0, matvec(gp, delta), rhs);
    beta = factor.solve(rhs);

    out.fit.beta = beta;
    out.fit.iterations = alternation;
    out.fit.converged = converged;
    out.fit.objective = objective(beta, delta);
    out.bias = BiasVector::from(std::move(delta));
    return out;
}

FitResult truncate_estimator(const FitResult& fit, double bound) {
    if (!(bound > 0.0)) throw InvalidArgument("truncation bound must be > 0");
    FitResult out = fit;
    if (norm1(fit.beta) > 2.0 * bound) std::fill(out.beta.begin(), out.beta.end(), 0.0);
    return out;
}

FitResult estimate_oracle(const TwoTaskData& data, const BiasVector& delta_star, LossFamily loss,
                          const ProxySummary* proxy) {
    if (delta_star.delta.size() != data.d()) throw InvalidArgument("oracle bias dimension mismatch");
    FitResult out = proxy ? proxy->fit : fit_proxy(data, loss);
    kernels::axpy(1.0, delta_star.delta, out.beta);
    out.objective = validation_score(data.gold_x, data.gold_y, out.beta, loss);
    return out;
}

Estimate fit_estimator(const TwoTaskData& data, const EstimatorSpec& spec,
                       const BiasVector* delta_star, const ProxySummary* proxy) {
    spec.validate();
    Estimate e;
    e.lambda = spec.lambda;
    switch (spec.kind) {
        case EstimatorKind::gold_ols:
        case EstimatorKind::gold_ridge:
            e.fit = estimate_gold(data, spec);
            break;
        case EstimatorKind::proxy_ols:
            e.fit = proxy ? proxy->fit : estimate_proxy(data, spec.loss);
            break;
        case EstimatorKind::averaging:
            e.fit = estimate_averaging(data, lambda_of(spec), spec.loss, proxy);
            break;
        case EstimatorKind::weighted:
            e.fit = estimate_weighted(data, lambda_of(spec), spec.loss, proxy);
            break;
        case EstimatorKind::joint: {
            JointFit j = estimate_joint(data, lambda_of(spec), spec.loss, proxy);
            e.fit = std::move(j.fit);
            e.bias = std::move(j.bias);
            break;
        }
        case EstimatorKind::joint_simultaneous: {
            JointFit j = estimate_joint_simultaneous(data, lambda_of(spec));
            e.fit = std::move(j.fit);
            e.bias = std::move(j.bias);
            break;
        }
        case EstimatorKind::oracle:
            if (!delta_star) throw InvalidArgument("oracle estimator needs the true bias vector");
            e.fit = estimate_oracle(data, *delta_star, spec.loss, proxy);
            break;
    }
    return e;
}

std::vector<double> log_grid(double min, double max, std::size_t points) {
    if (!(min > 0.0) || !(max > min) || points == 0) {
        throw InvalidArgument("log grid needs 0 < min < max and at least one point");
    }
    if (points == 1) return {min};
    std::vector<double> g(points);
    const double lo = std::log(min), hi = std::log(max);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    g.front() = min;
    g.back() = max;
    return g;
}

std::vector<double> linear_grid(double min, double max, std::size_t points) {
    if (!(max > min) || points == 0) throw InvalidArgument("linear grid needs min < max");
    if (points == 1) return {min};
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.back() = max;
    return g;
}

std::vector<double> default_grid(EstimatorKind kind) {
    if (kind == EstimatorKind::averaging) return linear_grid(0.0, 1.0, 30);
    return log_grid(1e-4, 1e1, 30);
}

CvResult select_lambda_cv(const TwoTaskData& data, const EstimatorSpec& spec,
                          std::span<const double> grid, std::uint64_t split_seed,
                          const ProxySummary* proxy) {
    if (grid.empty()) throw InvalidArgument("cross-validation grid is empty");
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw InvalidArgument("cross-validation grid must be sorted ascending");
    }
    if (!requires_lambda(spec.kind)) {
        throw InvalidArgument(std::string(to_string(spec.kind)) + " has no tuning parameter");
    }
    const std::size_t n = data.n_gold();
    if (n < 10) throw InvalidArgument("cross-validation needs at least 10 gold rows");
    const auto n_train = static_cast<std::size_t>(std::lround(kTrainFraction * static_cast<double>(n)));
    if (n - n_train < 2) throw InvalidArgument("validation split would hold fewer than 2 rows");

    Rng rng = make_rng(split_seed, Stream::cv_split);
    const std::vector<std::size_t> perm = random_permutation(n, rng);
    std::vector<std::size_t> train(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> valid(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
    // Row order inside each split follows the original data order.
    std::sort(train.begin(), train.end());
    std::sort(valid.begin(), valid.end());

    auto take = [](std::span<const double> y, const std::vector<std::size_t>& idx) {
        Vector out(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) out[k] = y[idx[k]];
        return out;
    };
    const TwoTaskData train_data(data.gold_x.select_rows(train), take(data.gold_y, train), data.proxy_x,
                                 data.proxy_y);
    const Matrix valid_x = data.gold_x.select_rows(valid);
    const Vector valid_y = take(data.gold_y, valid);

    const ProxySummary local = proxy ? ProxySummary{} : summarize_proxy(data, spec.loss);
    const ProxySummary* shared = proxy ? proxy : &local;

    CvResult result;
    result.scores.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EstimatorSpec candidate = spec;
        candidate.lambda = grid[i];
        const Estimate fit = fit_estimator(train_data, candidate, nullptr, shared);
        result.scores[i] = validation_score(valid_x, valid_y, fit.fit.beta, spec.loss);
    }
    // Scores equal up to rounding count as ties; the largest tied lambda wins.
    // The floor keeps exact fits (score ~ 0) from making every gap look real.
    const double best = *std::min_element(result.scores.begin(), result.scores.end());
    const double floor = spec.loss == LossFamily::logistic ? 1.0 : norm2_squared(valid_y) / static_cast<double>(valid_y.size());
    const double cutoff = best + kTieTolerance * std::max(std::fabs(best), floor);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (result.scores[i] <= cutoff) result.chosen_index = i;
    }
    result.lambda = grid[result.chosen_index];
    EstimatorSpec chosen = spec;
    chosen.lambda = result.lambda;
    result.refit = fit_estimator(data, chosen, nullptr, shared);
    result.refit.cv_scores = result.scores;
    return result;
}

Estimate run_estimator(const TwoTaskData& data, const EstimatorSpec& spec, std::span<const double> grid,
                       std::uint64_t split_seed, const BiasVector* delta_star, const ProxySummary* proxy) {
    Estimate e;
    if (requires_lambda(spec.kind) && !spec.lambda) {
        e = select_lambda_cv(data, spec, grid, split_seed, proxy).refit;
    } else {
        e = fit_estimator(data, spec, delta_star, proxy);
    }
    if (spec.truncation_bound) e.fit = truncate_estimator(e.fit, *spec.truncation_bound);
    return e;
}

ScaledData scale_proxy_responses(const TwoTaskData& data, std::optional<double> factor,
                                 std::uint64_t seed) {
    double f = 0.0;
    if (factor) {
        f = *factor;
    } else {
        Rng rng = make_rng(seed, Stream::scale_holdout);
        auto slice_mean_abs = [&](std::span<const double> y) {
            const auto count = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::lround(kScaleHoldoutFraction * static_cast<double>(y.size()))));
            const std::vector<std::size_t> perm = random_permutation(y.size(), rng);
            double s = 0.0;
            for (std::size_t k = 0; k < count; ++k) s += std::fabs(y[perm[k]]);
            return s / static_cast<double>(count);
        };
        const double gold = slice_mean_abs(data.gold_y);
        const double prox = slice_mean_abs(data.proxy_y);
        if (prox == 0.0) throw InvalidArgument("degenerate scale: proxy responses are all zero");
        f = gold / prox;
    }
    if (!(f > 0.0) || !std::isfinite(f)) {
        throw InvalidArgument("degenerate scale: proxy response factor must be finite and > 0, got " +
                              std::to_string(f));
    }
    ScaledData out{data, f};
    if (f != 1.0) {
        for (double& v : out.data.proxy_y) v *= f;
    }
    return out;
}

}  // namespace proxyreg
