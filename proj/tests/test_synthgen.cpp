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
#include <numeric>

#include "proxyreg/error.hpp"
#include "proxyreg/synthgen.hpp"

using namespace proxyreg;

namespace {

ScenarioConfig small_config(std::uint64_t seed) {
    ScenarioConfig c;
    c.n_proxy = 200;
    c.n_gold = 40;
    c.d = 10;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(RandomCovariance, OneDimensionalIsOne) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng = make_rng(seed, Stream::covariance);
        EXPECT_NEAR(random_covariance(1, rng)(0, 0), 1.0, 1e-15);
    }
}

TEST(RandomCovariance, UnitTraceAndPositiveDefinite) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng = make_rng(seed, Stream::covariance);
        const SymmetricMatrix s = random_covariance(100, rng);
        EXPECT_NEAR(s.trace(), 1.0, 1e-12);
        EXPECT_GT(min_eigenvalue(s), 0.0) << seed;
    }
}

TEST(SampleDesign, IdentityCovarianceMatchesEmpirically) {
    Rng rng = make_rng(3, Stream::design);
    const std::size_t n = 100000, d = 4;
    const Matrix x = sample_design(n, SymmetricMatrix::identity(d), rng);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += x(i, a) * x(i, b);
            EXPECT_NEAR(acc / static_cast<double>(n), a == b ? 1.0 : 0.0, 0.05);
        }
    }
}

TEST(SampleDesign, CorrelatedCovarianceRecovered) {
    Rng rng = make_rng(4, Stream::design);
    const SymmetricMatrix cov = SymmetricMatrix::from_rows({{2.0, 0.8}, {0.8, 0.5}});
    const Matrix x = sample_design(100000, cov, rng);
    const SymmetricMatrix emp = sample_covariance(x);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) EXPECT_NEAR(emp(a, b), cov(a, b), 0.05);
}

TEST(SampleDesign, SingularCovarianceFallsBack) {
    Rng rng = make_rng(5, Stream::design);
    const Matrix x = sample_design(50, SymmetricMatrix::from_rows({{1, 1}, {1, 1}}), rng);
    for (std::size_t i = 0; i < 50; ++i) EXPECT_NEAR(x(i, 0), x(i, 1), 1e-12);
}

TEST(SampleDesign, SingleRowAndDeterminism) {
    Rng r1 = make_rng(6, Stream::design), r2 = make_rng(6, Stream::design);
    const SymmetricMatrix cov = SymmetricMatrix::identity(3);
    const Matrix a = sample_design(1, cov, r1);
    EXPECT_EQ(a.rows(), 1u);
    EXPECT_TRUE(all_finite(a.entries()));
    EXPECT_EQ(a, sample_design(1, cov, r2));
}

TEST(SampleBias, SparseMeanSupportSize) {
    ScenarioConfig c;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng = make_rng(seed, Stream::bias);
        const BiasVector b = sample_bias(c, rng);
        for (double v : b.delta) EXPECT_TRUE(v == 0.0 || v == 0.1);
        total += static_cast<double>(b.support.size());
    }
    const double mean = total / 1000.0;
    EXPECT_GE(mean, 9.0);
    EXPECT_LE(mean, 11.0);
}

TEST(SampleBias, DenseVariance) {
    ScenarioConfig c;
    c.bias_regime = BiasRegime::dense;
    double sum = 0.0, sum2 = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng = make_rng(seed, Stream::bias);
        for (double v : sample_bias(c, rng).delta) {
            sum += v;
            sum2 += v * v;
            ++count;
        }
    }
    const double n = static_cast<double>(count);
    const double var = (sum2 - sum * sum / n) / (n - 1.0);
    EXPECT_NEAR(var, 0.15, 0.15 * 0.15);
}

TEST(SampleBias, ZeroProbabilityAndFixedSupport) {
    ScenarioConfig c;
    c.sparse_prob = 0.0;
    Rng rng = make_rng(1, Stream::bias);
    const BiasVector zero = sample_bias(c, rng);
    EXPECT_TRUE(zero.support.empty());
    for (double v : zero.delta) EXPECT_EQ(v, 0.0);

    c.support_size = 7;
    c.sparse_magnitude = 0.5;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r = make_rng(seed, Stream::bias);
        const BiasVector b = sample_bias(c, r);
        EXPECT_EQ(b.support.size(), 7u);
        EXPECT_DOUBLE_EQ(std::accumulate(b.delta.begin(), b.delta.end(), 0.0), 3.5);
    }
}

TEST(GenerateScenario, DefaultDimensions) {
    ScenarioConfig c;
    c.seed = 1;
    const ScenarioInstance inst = generate_scenario(c);
    EXPECT_EQ(inst.data.proxy_x.rows(), 1000u);
    EXPECT_EQ(inst.data.proxy_x.cols(), 100u);
    EXPECT_EQ(inst.data.gold_x.rows(), 150u);
    EXPECT_EQ(inst.data.gold_x.cols(), 100u);
    EXPECT_EQ(inst.beta_gold_star, Vector(100, 1.0));
}

TEST(GenerateScenario, PrefixAndNoiselessModel) {
    ScenarioConfig c = small_config(2);
    c.noise_sd_gold = 0.0;
    c.noise_sd_proxy = 0.0;
    const ScenarioInstance inst = generate_scenario(c);
    EXPECT_EQ(inst.data.gold_x, inst.data.proxy_x.top_rows(c.n_gold));
    for (std::size_t i = 0; i < c.n_gold; ++i) {
        double gold = 0.0, proxy = 0.0;
        for (std::size_t j = 0; j < c.d; ++j) {
            gold += inst.data.gold_x(i, j);
            proxy += inst.data.proxy_x(i, j) * (1.0 - inst.delta_star.delta[j]);
        }
        EXPECT_NEAR(inst.data.gold_y[i], gold, 1e-12);
        EXPECT_NEAR(inst.data.proxy_y[i], proxy, 1e-12);
    }
}

TEST(GenerateScenario, ResidualScaleMatchesNoise) {
    // Sampling sd of the sd is about 2 / sqrt(2 n): 10% is ~4.5 of those at n = 1000.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ScenarioConfig c;
        c.seed = seed;
        c.n_gold = 1000;
        c.noise_sd_gold = 2.0;
        const ScenarioInstance inst = generate_scenario(c);
        const Vector fitted = matvec(inst.data.gold_x, inst.beta_gold_star);
        double ss = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < fitted.size(); ++i) mean += inst.data.gold_y[i] - fitted[i];
        mean /= static_cast<double>(fitted.size());
        for (std::size_t i = 0; i < fitted.size(); ++i) {
            const double r = inst.data.gold_y[i] - fitted[i] - mean;
            ss += r * r;
        }
        const double sd = std::sqrt(ss / static_cast<double>(fitted.size() - 1));
        EXPECT_NEAR(sd, 2.0, 0.2) << seed;
    }
}

TEST(GenerateScenario, Determinism) {
    const ScenarioInstance a = generate_scenario(small_config(9));
    const ScenarioInstance b = generate_scenario(small_config(9));
    const ScenarioInstance c = generate_scenario(small_config(10));
    EXPECT_EQ(a.data.proxy_x, b.data.proxy_x);
    EXPECT_EQ(a.data.proxy_y, b.data.proxy_y);
    EXPECT_EQ(a.delta_star.delta, b.delta_star.delta);
    EXPECT_NE(a.data.proxy_x, c.data.proxy_x);
}

TEST(GenerateScenario, StandardizedProxyColumns) {
    ScenarioConfig c = small_config(11);
    c.standardize = true;
    c.n_test = 30;
    const ScenarioInstance inst = generate_scenario(c);
    for (std::size_t j = 0; j < c.d; ++j) {
        double n2 = 0.0;
        for (std::size_t i = 0; i < c.n_proxy; ++i) n2 += inst.data.proxy_x(i, j) * inst.data.proxy_x(i, j);
        EXPECT_NEAR(n2, static_cast<double>(c.n_proxy), 1e-9);
    }
    EXPECT_EQ(inst.data.gold_x, inst.data.proxy_x.top_rows(c.n_gold));
    EXPECT_EQ(inst.test_x.rows(), 30u);
    EXPECT_EQ(inst.test_y.size(), 30u);
}

TEST(GenerateScenario, LogisticLabelsAreBinary) {
    ScenarioConfig c = small_config(12);
    c.loss = LossFamily::logistic;
    c.covariance = CovarianceKind::identity;
    c.n_test = 50;
    const ScenarioInstance inst = generate_scenario(c);
    for (double y : inst.data.gold_y) EXPECT_TRUE(y == 0.0 || y == 1.0);
    for (double y : inst.data.proxy_y) EXPECT_TRUE(y == 0.0 || y == 1.0);
    for (double y : inst.test_y) EXPECT_TRUE(y == 0.0 || y == 1.0);
}

TEST(ScenarioConfigTest, Validation) {
    ScenarioConfig c;
    c.n_gold = 2000;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = ScenarioConfig{};
    c.sparse_prob = 1.5;
    EXPECT_THROW(generate_scenario(c), InvalidArgument);
    c = ScenarioConfig{};
    c.d = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = ScenarioConfig{};
    c.noise_sd_gold = -1.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = ScenarioConfig{};
    c.support_size = 101;
    EXPECT_THROW(c.validate(), InvalidArgument);
    EXPECT_THROW(parse_bias_regime("medium"), InvalidArgument);
    EXPECT_EQ(parse_covariance_kind("identity"), CovarianceKind::identity);
}
