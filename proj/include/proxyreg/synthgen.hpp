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

// Seeded synthetic gold/proxy scenarios. The proxy design is drawn from
// N(0, Sigma), the gold design is its first n_gold rows, beta*_gold is all ones
// and the proxy coefficients are beta*_gold - delta*.

#include <cstdint>
#include <optional>
#include <string_view>

#include "proxyreg/estimators.hpp"
#include "proxyreg/linalg.hpp"
#include "proxyreg/rng.hpp"

namespace proxyreg {

enum class BiasRegime { sparse, dense };
std::string_view to_string(BiasRegime regime) noexcept;
BiasRegime parse_bias_regime(std::string_view name);

// random: M with Uniform[0,1] entries, Sigma = M^T M / trace(M^T M).
// identity: Sigma = I, handy for well-conditioned checks.
enum class CovarianceKind { random, identity };
std::string_view to_string(CovarianceKind kind) noexcept;
CovarianceKind parse_covariance_kind(std::string_view name);

struct ScenarioConfig {
    std::size_t n_proxy = 1000;
    std::size_t n_gold = 150;
    std::size_t d = 100;
    BiasRegime bias_regime = BiasRegime::sparse;
    double sparse_magnitude = 0.1;
    double sparse_prob = 0.1;
    // When set, exactly this many coordinates (chosen uniformly) carry
    // sparse_magnitude and sparse_prob is ignored.
    std::optional<std::size_t> support_size;
    double dense_sd = 0.3872983346207417;  // sqrt(0.15)
    double noise_sd_gold = 1.0;
    double noise_sd_proxy = 1.0;
    CovarianceKind covariance = CovarianceKind::random;
    // Rescale proxy columns to squared norm n_proxy before responses are drawn.
    bool standardize = false;
    // logistic: labels ~ Bernoulli(sigmoid(x^T beta)), noise scales unused.
    LossFamily loss = LossFamily::squared;
    // Extra gold-distribution rows kept apart for out-of-sample scoring.
    std::size_t n_test = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ScenarioInstance {
    TwoTaskData data;
    Vector beta_gold_star;
    BiasVector delta_star;
    std::uint64_t seed = 0;
    SymmetricMatrix covariance;
    // Held-out gold-task rows (empty unless n_test > 0).
    Matrix test_x;
    Vector test_y;
};

SymmetricMatrix random_covariance(std::size_t d, Rng& rng);

// Rows i.i.d. N(0, cov): Cholesky factor times standard normals, falling back to
// a symmetric square root when the factorization rejects a pivot.
Matrix sample_design(std::size_t n, const SymmetricMatrix& cov, Rng& rng);

BiasVector sample_bias(const ScenarioConfig& config, Rng& rng);

ScenarioInstance generate_scenario(const ScenarioConfig& config);

}  // namespace proxyreg
