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

#include "proxyreg/synthgen.hpp"

#include <cmath>
#include <random>
#include <string>

#include "proxyreg/error.hpp"

namespace proxyreg {

namespace {

Vector draw_normals(std::size_t n, double sd, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector out(n);
    for (double& v : out) v = sd * normal(rng);
    return out;
}

// Row-major square matrix F with F F^T = cov.
std::vector<double> covariance_factor(const SymmetricMatrix& cov) {
    const std::size_t d = cov.dim();
    try {
        const Cholesky chol(cov);
        return {chol.lower().begin(), chol.lower().end()};
    } catch (const NotPositiveDefinite&) {
        const SymmetricEigen eig = symmetric_eigen(cov);
        std::vector<double> f(d * d);
        for (std::size_t k = 0; k < d; ++k) {
            const double root = std::sqrt(std::max(eig.values[k], 0.0));
            for (std::size_t i = 0; i < d; ++i) f[i * d + k] = eig.vectors(i, k) * root;
        }
        return f;
    }
}

Vector draw_labels(const Matrix& x, std::span<const double> beta, Rng& rng) {
    const Vector eta = matvec(x, beta);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vector y(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const double p = 1.0 / (1.0 + std::exp(-eta[i]));
        y[i] = unif(rng) < p ? 1.0 : 0.0;
    }
    return y;
}

Vector with_noise(Vector mean, double sd, Rng& rng) {
    if (sd > 0.0) {
        const Vector e = draw_normals(mean.size(), sd, rng);
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += e[i];
    }
    return mean;
}

}  // namespace

std::string_view to_string(BiasRegime regime) noexcept {
    return regime == BiasRegime::sparse ? "sparse" : "dense";
}

BiasRegime parse_bias_regime(std::string_view name) {
    if (name == "sparse") return BiasRegime::sparse;
    if (name == "dense") return BiasRegime::dense;
    throw InvalidArgument("unknown bias regime '" + std::string(name) + "' (sparse|dense)");
}

std::string_view to_string(CovarianceKind kind) noexcept {
    return kind == CovarianceKind::random ? "random" : "identity";
}

CovarianceKind parse_covariance_kind(std::string_view name) {
    if (name == "random") return CovarianceKind::random;
    if (name == "identity") return CovarianceKind::identity;
    throw InvalidArgument("unknown covariance '" + std::string(name) + "' (random|identity)");
}

void ScenarioConfig::validate() const {
    if (n_proxy < 1 || n_gold < 1 || d < 1) throw InvalidArgument("scenario counts must be >= 1");
    if (n_gold > n_proxy) {
        throw InvalidArgument("n_gold must not exceed n_proxy (gold rows are a proxy prefix)");
    }
    if (!(sparse_prob >= 0.0 && sparse_prob <= 1.0)) {
        throw InvalidArgument("sparse_prob must lie in [0, 1]");
    }
    if (support_size && *support_size > d) throw InvalidArgument("support_size exceeds d");
    if (!std::isfinite(sparse_magnitude)) throw InvalidArgument("sparse_magnitude must be finite");
    if (!(dense_sd >= 0.0) || !(noise_sd_gold >= 0.0) || !(noise_sd_proxy >= 0.0) ||
        !std::isfinite(dense_sd) || !std::isfinite(noise_sd_gold) || !std::isfinite(noise_sd_proxy)) {
        throw InvalidArgument("standard deviations must be finite and >= 0");
    }
}

SymmetricMatrix random_covariance(std::size_t d, Rng& rng) {
    if (d < 1) throw InvalidArgument("covariance dimension must be >= 1");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> m(d * d);
    for (double& v : m) v = unif(rng);
    // M^T M is the Gram matrix of M's columns.
    SymmetricMatrix s = gram(Matrix(d, d, std::move(m)));
    s *= 1.0 / s.trace();
    return s;
}

Matrix sample_design(std::size_t n, const SymmetricMatrix& cov, Rng& rng) {
    const std::size_t d = cov.dim();
    if (n < 1 || d < 1) throw InvalidArgument("design dimensions must be >= 1");
    const std::vector<double> f = covariance_factor(cov);
    Matrix x(n, d);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector z(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (double& v : z) v = normal(rng);
        auto row = x.row(i);
        for (std::size_t r = 0; r < d; ++r) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += f[r * d + k] * z[k];
            row[r] = acc;
        }
    }
    return x;
}

BiasVector sample_bias(const ScenarioConfig& config, Rng& rng) {
    Vector delta(config.d, 0.0);
    if (config.bias_regime == BiasRegime::dense) {
        delta = draw_normals(config.d, config.dense_sd, rng);
    } else if (config.support_size) {
        const std::vector<std::size_t> perm = random_permutation(config.d, rng);
        for (std::size_t k = 0; k < *config.support_size; ++k) delta[perm[k]] = config.sparse_magnitude;
    } else {
        std::bernoulli_distribution coin(config.sparse_prob);
        for (double& v : delta) v = coin(rng) ? config.sparse_magnitude : 0.0;
    }
    return BiasVector::from(std::move(delta));
}

ScenarioInstance generate_scenario(const ScenarioConfig& config) {
    config.validate();
    ScenarioInstance inst;
    inst.seed = config.seed;

    if (config.covariance == CovarianceKind::identity) {
        inst.covariance = SymmetricMatrix::identity(config.d);
    } else {
        Rng rng = make_rng(config.seed, Stream::covariance);
        inst.covariance = random_covariance(config.d, rng);
    }

    Rng design_rng = make_rng(config.seed, Stream::design);
    Matrix proxy_x = sample_design(config.n_proxy, inst.covariance, design_rng);
    Matrix test_x;
    if (config.n_test > 0) test_x = sample_design(config.n_test, inst.covariance, design_rng);
    if (config.standardize) {
        StandardizedMatrix st = standardize_columns(proxy_x);
        proxy_x = std::move(st.matrix);
        if (config.n_test > 0) test_x = apply_column_scales(test_x, st.scales);
    }
    Matrix gold_x = proxy_x.top_rows(config.n_gold);

    Rng bias_rng = make_rng(config.seed, Stream::bias);
    inst.delta_star = sample_bias(config, bias_rng);
    inst.beta_gold_star.assign(config.d, 1.0);
    Vector beta_proxy = inst.beta_gold_star;
    for (std::size_t j = 0; j < config.d; ++j) beta_proxy[j] -= inst.delta_star.delta[j];

    Vector gold_y, proxy_y;
    if (config.loss == LossFamily::logistic) {
        Rng gold_rng = make_rng(config.seed, Stream::labels_gold);
        Rng proxy_rng = make_rng(config.seed, Stream::labels_proxy);
        gold_y = draw_labels(gold_x, inst.beta_gold_star, gold_rng);
        proxy_y = draw_labels(proxy_x, beta_proxy, proxy_rng);
        if (config.n_test > 0) inst.test_y = draw_labels(test_x, inst.beta_gold_star, gold_rng);
    } else {
        Rng gold_rng = make_rng(config.seed, Stream::noise_gold);
        Rng proxy_rng = make_rng(config.seed, Stream::noise_proxy);
        gold_y = with_noise(matvec(gold_x, inst.beta_gold_star), config.noise_sd_gold, gold_rng);
        proxy_y = with_noise(matvec(proxy_x, beta_proxy), config.noise_sd_proxy, proxy_rng);
        if (config.n_test > 0) {
            inst.test_y = with_noise(matvec(test_x, inst.beta_gold_star), config.noise_sd_gold, gold_rng);
        }
    }
    inst.test_x = std::move(test_x);
    inst.data = TwoTaskData(std::move(gold_x), std::move(gold_y), std::move(proxy_x), std::move(proxy_y));
    return inst;
}

}  // namespace proxyreg
