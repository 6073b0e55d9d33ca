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

#include "proxyreg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "proxyreg/error.hpp"
#include "proxyreg/kernels.hpp"

namespace proxyreg {

namespace {

void check_shapes(const Matrix& x, std::span<const double> y) {
    if (x.rows() != y.size()) {
        throw InvalidArgument("design has " + std::to_string(x.rows()) + " rows but response has " +
                              std::to_string(y.size()) + " entries");
    }
}

void check_offset(const Matrix& x, std::span<const double> offset) {
    if (offset.size() != x.cols()) {
        throw InvalidArgument("offset dimension " + std::to_string(offset.size()) +
                              " does not match " + std::to_string(x.cols()) + " columns");
    }
}

void check_labels(std::span<const double> y) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0.0 && y[i] != 1.0) {
            throw InvalidArgument("logistic labels must be 0 or 1; entry " + std::to_string(i) +
                                  " is " + std::to_string(y[i]));
        }
    }
}

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

Vector add(std::span<const double> a, std::span<const double> b) {
    Vector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
    Vector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

// Weighted logistic loss / gradient helpers; weights are pre-normalized to sum 1.
double weighted_logistic_loss(const Matrix& x, std::span<const double> y,
                              std::span<const double> w, std::span<const double> beta) {
    double loss = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double z = kernels::dot(x.row(i), beta);
        loss += w[i] * (softplus(z) - y[i] * z);
    }
    return loss;
}

Vector weighted_logistic_gradient(const Matrix& x, std::span<const double> y,
                                  std::span<const double> w, std::span<const double> beta) {
    Vector g(x.cols(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double z = kernels::dot(x.row(i), beta);
        kernels::axpy(w[i] * (sigmoid(z) - y[i]), x.row(i), g);
    }
    return g;
}

SymmetricMatrix weighted_logistic_hessian(const Matrix& x, std::span<const double> w,
                                          std::span<const double> beta) {
    // X^T diag(w p (1-p)) X via the gram kernel on row-scaled data.
    Matrix scaled = x;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double p = sigmoid(kernels::dot(x.row(i), beta));
        const double s = std::sqrt(w[i] * p * (1.0 - p));
        for (double& e : scaled.row(i)) e *= s;
    }
    return gram(scaled);
}

}  // namespace

std::string_view to_string(LossFamily loss) noexcept {
    return loss == LossFamily::squared ? "squared" : "logistic";
}

LossFamily parse_loss_family(std::string_view name) {
    if (name == "squared") return LossFamily::squared;
    if (name == "logistic") return LossFamily::logistic;
    throw InvalidArgument("unknown loss family '" + std::string(name) + "' (expected squared|logistic)");
}

double soft_threshold(double z, double threshold) {
    if (threshold < 0.0) throw InvalidArgument("soft_threshold: negative threshold");
    if (z > threshold) return z - threshold;
    if (z < -threshold) return z + threshold;
    return 0.0;
}

double squared_loss(const Matrix& x, std::span<const double> y, std::span<const double> beta) {
    check_shapes(x, y);
    const Vector fitted = matvec(x, beta);
    return kernels::squared_distance(y, fitted) / static_cast<double>(x.rows());
}

double logistic_loss(const Matrix& x, std::span<const double> y, std::span<const double> beta) {
    check_shapes(x, y);
    const Vector w(x.rows(), 1.0 / static_cast<double>(x.rows()));
    return weighted_logistic_loss(x, y, w, beta);
}

Vector logistic_gradient(const Matrix& x, std::span<const double> y, std::span<const double> beta) {
    check_shapes(x, y);
    const Vector w(x.rows(), 1.0 / static_cast<double>(x.rows()));
    return weighted_logistic_gradient(x, y, w, beta);
}

SymmetricMatrix logistic_hessian(const Matrix& x, std::span<const double> beta) {
    const Vector w(x.rows(), 1.0 / static_cast<double>(x.rows()));
    return weighted_logistic_hessian(x, w, beta);
}

// ---------------------------------------------------------------------------
// Closed forms

FitResult fit_ols(const Matrix& x, std::span<const double> y) {
    check_shapes(x, y);
    const SymmetricMatrix g = gram(x);
    const Vector rhs = transpose_matvec(x, y);
    FitResult fit;
    try {
        fit.beta = Cholesky(g).solve(rhs);
    } catch (const NotPositiveDefinite& e) {
        throw SingularDesign("X^T X is singular (" + std::string(e.what()) + ", " +
                             std::to_string(x.rows()) + " rows, " + std::to_string(x.cols()) +
                             " columns); use the ridge or joint estimator instead");
    }
    fit.objective = squared_loss(x, y, fit.beta);
    return fit;
}

FitResult fit_ridge(const Matrix& x, std::span<const double> y, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("ridge lambda must be finite and >= 0, got " + std::to_string(lambda));
    }
    if (lambda == 0.0) return fit_ols(x, y);
    check_shapes(x, y);
    SymmetricMatrix g = gram(x);
    g.add_to_diagonal(lambda);
    FitResult fit;
    fit.beta = cholesky_solve(g, transpose_matvec(x, y));
    fit.objective = squared_loss(x, y, fit.beta) +
                    lambda * norm2_squared(fit.beta) / static_cast<double>(x.rows());
    return fit;
}

// ---------------------------------------------------------------------------
// LASSO with offset target

FitResult fit_lasso_offset(const Matrix& x, std::span<const double> y,
                           std::span<const double> offset, double lambda,
                           const LassoOptions& options) {
    check_shapes(x, y);
    check_offset(x, offset);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("lasso lambda must be finite and > 0 (use fit_ols for lambda = 0), got " +
                              std::to_string(lambda));
    }
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double half_lambda = 0.5 * lambda;
    const auto& k = kernels::active();

    const Matrix cols = x.transposed();
    Vector col_scale(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double* c = cols.entries().data() + j * n;
        col_scale[j] = k.dot(c, c, n) * inv_n;
    }

    Vector delta(d, 0.0);
    if (!options.warm_start.empty()) {
        check_offset(x, options.warm_start);
        delta = options.warm_start;
    }
    Vector residual = subtract(y, matvec(x, add(offset, delta)));

    auto objective = [&] {
        return k.dot(residual.data(), residual.data(), n) * inv_n + lambda * k.abs_sum(delta.data(), d);
    };

    // One coordinate update; returns |change|.
    auto update = [&](std::size_t j) {
        if (col_scale[j] == 0.0) return 0.0;
        const double* c = cols.entries().data() + j * n;
        const double old = delta[j];
        const double z = k.dot(c, residual.data(), n) * inv_n + col_scale[j] * old;
        const double next = soft_threshold(z, half_lambda) / col_scale[j];
        if (next != old) {
            k.axpy(old - next, c, residual.data(), n);
            delta[j] = next;
        }
        return std::fabs(next - old);
    };

    FitResult fit;
    if (options.record_trace) fit.objective_trace.push_back(objective());

    std::vector<std::size_t> active;
    active.reserve(d);
    std::size_t sweeps = 0;
    bool converged = false;
    while (sweeps < options.max_sweeps) {
        // Full sweep over every coordinate.
        double max_change = 0.0;
        for (std::size_t j = 0; j < d; ++j) max_change = std::max(max_change, update(j));
        ++sweeps;
        if (options.record_trace) fit.objective_trace.push_back(objective());
        if (max_change <= options.tolerance) {
            converged = true;
            break;
        }
        // Iterate on the current support until it settles, then re-check everything.
        active.clear();
        for (std::size_t j = 0; j < d; ++j) {
            if (delta[j] != 0.0) active.push_back(j);
        }
        while (sweeps < options.max_sweeps) {
            double change = 0.0;
            for (std::size_t j : active) change = std::max(change, update(j));
            ++sweeps;
            if (options.record_trace) fit.objective_trace.push_back(objective());
            if (change <= options.tolerance) break;
        }
    }

    fit.beta = add(delta, offset);
    fit.iterations = sweeps;
    fit.converged = converged;
    fit.objective = objective();
    return fit;
}

double lasso_kkt_violation(const Matrix& x, std::span<const double> y,
                           std::span<const double> offset, std::span<const double> delta,
                           double lambda) {
    check_shapes(x, y);
    check_offset(x, offset);
    check_offset(x, delta);
    const Vector beta = add(delta, offset);
    const Vector residual = subtract(y, matvec(x, beta));
    // Gradient of the smooth part is -(2/n) X^T r.
    Vector score = transpose_matvec(x, residual);
    const double scale = 2.0 / static_cast<double>(x.rows());
    double worst = 0.0;
    for (std::size_t j = 0; j < delta.size(); ++j) {
        const double s = scale * score[j];
        const double v = delta[j] != 0.0 ? std::fabs(s - lambda * (delta[j] > 0 ? 1.0 : -1.0))
                                         : std::max(0.0, std::fabs(s) - lambda);
        worst = std::max(worst, v);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Logistic regression

FitResult fit_logistic(const Matrix& x, std::span<const double> y, double ridge_eps,
                       const LogisticOptions& options) {
    const Vector w(x.rows(), 1.0);
    return fit_logistic_weighted(x, y, w, ridge_eps, options);
}

FitResult fit_logistic_weighted(const Matrix& x, std::span<const double> y,
                                std::span<const double> weights, double ridge_eps,
                                const LogisticOptions& options) {
    check_shapes(x, y);
    check_labels(y);
    if (weights.size() != x.rows()) throw InvalidArgument("weight count does not match rows");
    if (!(ridge_eps >= 0.0) || !std::isfinite(ridge_eps)) {
        throw InvalidArgument("ridge_eps must be finite and >= 0");
    }
    double total = 0.0;
    for (double v : weights) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("weights must be finite and >= 0");
        total += v;
    }
    if (!(total > 0.0)) throw InvalidArgument("weights sum to zero");
    Vector w(weights.begin(), weights.end());
    for (double& v : w) v /= total;

    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (w[i] == 0.0) continue;
        (y[i] == 1.0 ? has_pos : has_neg) = true;
    }
    const bool single_class = !(has_pos && has_neg);

    const std::size_t d = x.cols();
    auto objective = [&](std::span<const double> b) {
        return weighted_logistic_loss(x, y, w, b) + ridge_eps * norm2_squared(b);
    };
    auto gradient = [&](std::span<const double> b) {
        Vector g = weighted_logistic_gradient(x, y, w, b);
        for (std::size_t j = 0; j < d; ++j) g[j] += 2.0 * ridge_eps * b[j];
        return g;
    };

    FitResult fit;
    fit.beta.assign(d, 0.0);
    double f = objective(fit.beta);
    bool converged = false;
    bool diverged = false;
    std::size_t iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        const Vector g = gradient(fit.beta);
        if (norm_inf(g) <= options.gradient_tolerance) {
            converged = true;
            break;
        }
        SymmetricMatrix h = weighted_logistic_hessian(x, w, fit.beta);
        h.add_to_diagonal(2.0 * ridge_eps);
        Vector step;
        // Under separation the curvature collapses; a growing diagonal shift
        // keeps the Newton system solvable.
        double shift = 0.0;
        const double base = std::max(h.max_abs_diagonal(), 1e-300);
        for (int attempt = 0; attempt < 40; ++attempt) {
            try {
                SymmetricMatrix hs = h;
                hs.add_to_diagonal(shift);
                step = Cholesky(hs).solve(g);
                break;
            } catch (const NotPositiveDefinite&) {
                shift = shift == 0.0 ? 1e-10 * base : shift * 10.0;
            }
        }
        if (step.empty()) break;

        const double slope = kernels::dot(g, step);
        double t = 1.0;
        Vector candidate(d);
        double fc = f;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving) {
            for (std::size_t j = 0; j < d; ++j) candidate[j] = fit.beta[j] - t * step[j];
            fc = objective(candidate);
            if (fc <= f - 1e-4 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // No further decrease is representable; treat as converged at this point.
            converged = norm_inf(g) <= 1e3 * options.gradient_tolerance;
            break;
        }
        fit.beta = candidate;
        f = fc;
        if (norm_inf(fit.beta) > options.divergence_bound) {
            diverged = true;
            break;
        }
    }

    // A finite optimum cannot classify every weighted row with a positive
    // margin; if it does, the data are separated and the infimum is at infinity.
    bool separated = false;
    if (ridge_eps == 0.0 && !diverged) {
        separated = true;
        for (std::size_t i = 0; i < x.rows() && separated; ++i) {
            if (w[i] == 0.0) continue;
            const double z = kernels::dot(x.row(i), fit.beta);
            if ((y[i] == 1.0 ? z : -z) <= 0.0) separated = false;
        }
    }
    if (diverged || separated) {
        if (single_class && ridge_eps == 0.0) {
            throw DegenerateLabels("degenerate labels: every row has the same class and the "
                                   "unpenalized likelihood has no finite maximizer");
        }
        converged = false;
    }

    fit.iterations = iter;
    fit.converged = converged;
    fit.objective = f;
    return fit;
}

// ---------------------------------------------------------------------------
// L1 logistic regression with offset target

FitResult fit_logistic_l1_offset(const Matrix& x, std::span<const double> y,
                                 std::span<const double> offset, double lambda,
                                 const ProximalOptions& options) {
    check_shapes(x, y);
    check_offset(x, offset);
    check_labels(y);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("L1 logistic lambda must be finite and > 0, got " + std::to_string(lambda));
    }
    const std::size_t d = x.cols();
    const std::size_t n = x.rows();

    // Lipschitz bound of the mean logistic gradient: trace(X^T X) / (4n).
    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i) frob += kernels::dot(x.row(i), x.row(i));
    double step = frob > 0.0 ? 4.0 * static_cast<double>(n) / frob : 1.0;

    Vector delta(d, 0.0);
    Vector beta(offset.begin(), offset.end());
    double smooth = logistic_loss(x, y, beta);
    auto total = [&](double s) { return s + lambda * norm1(delta); };

    FitResult fit;
    if (options.record_trace) fit.objective_trace.push_back(total(smooth));

    bool converged = false;
    std::size_t iter = 0;
    Vector next(d), next_beta(d);
    for (; iter < options.max_iterations; ++iter) {
        const Vector g = logistic_gradient(x, y, beta);
        double violation = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double v = delta[j] != 0.0 ? std::fabs(g[j] + lambda * (delta[j] > 0 ? 1.0 : -1.0))
                                             : std::max(0.0, std::fabs(g[j]) - lambda);
            violation = std::max(violation, v);
        }
        if (violation <= options.kkt_tolerance) {
            converged = true;
            break;
        }

        step *= 1.5;
        double next_smooth = smooth;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            double quad = 0.0, lin = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                next[j] = soft_threshold(delta[j] - step * g[j], step * lambda);
                const double diff = next[j] - delta[j];
                lin += g[j] * diff;
                quad += diff * diff;
                next_beta[j] = offset[j] + next[j];
            }
            next_smooth = logistic_loss(x, y, next_beta);
            if (next_smooth <= smooth + lin + quad / (2.0 * step) + 1e-15 * std::fabs(smooth)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        const bool moved = next != delta;
        delta = next;
        beta = next_beta;
        smooth = next_smooth;
        if (options.record_trace) fit.objective_trace.push_back(total(smooth));
        if (!moved) {
            // A proximal step that does not move is a fixed point.
            converged = true;
            ++iter;
            break;
        }
    }

    fit.beta = beta;
    fit.iterations = iter;
    fit.converged = converged;
    fit.objective = total(smooth);
    return fit;
}

double logistic_l1_kkt_violation(const Matrix& x, std::span<const double> y,
                                 std::span<const double> offset, std::span<const double> delta,
                                 double lambda) {
    check_offset(x, offset);
    check_offset(x, delta);
    const Vector beta = add(delta, offset);
    const Vector g = logistic_gradient(x, y, beta);
    double worst = 0.0;
    for (std::size_t j = 0; j < delta.size(); ++j) {
        const double v = delta[j] != 0.0 ? std::fabs(g[j] + lambda * (delta[j] > 0 ? 1.0 : -1.0))
                                         : std::max(0.0, std::fabs(g[j]) - lambda);
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace proxyreg
