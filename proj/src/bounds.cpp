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

#include "proxyreg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "proxyreg/error.hpp"

namespace proxyreg {

namespace {

constexpr double kPi = std::numbers::pi;

double dd(std::size_t v) { return static_cast<double>(v); }

}  // namespace

void ProblemConstants::validate() const {
    if (d < 1 || n_gold < 1 || n_proxy < 1) throw InvalidArgument("d, n_gold, n_proxy must be >= 1");
    if (s > d) throw InvalidArgument("s must not exceed d");
    if (!(sigma_gold >= 0.0) || !(sigma_proxy >= 0.0)) throw InvalidArgument("noise scales must be >= 0");
    if (!(b > 0.0)) throw InvalidArgument("b must be > 0");
    if (!(psi > 0.0) || !(phi > 0.0)) throw InvalidArgument("psi and phi must be > 0");
    if (!(delta_l1 >= 0.0)) throw InvalidArgument("delta_l1 must be >= 0");
}

double bound_gold_ols(const ProblemConstants& c) {
    return dd(c.d) * std::sqrt(2.0 * c.sigma_gold * c.sigma_gold / (kPi * dd(c.n_gold)));
}

double bound_gold_ridge(const ProblemConstants& c) {
    const double num = dd(c.d) * c.sigma_gold / std::sqrt(2.0 * kPi);
    if (num == 0.0) return 0.0;
    return num / (c.b * std::sqrt(dd(c.n_gold)) + dd(c.d) * c.sigma_gold * std::sqrt(2.0 / kPi));
}

double bound_proxy_ols(const ProblemConstants& c) {
    const double noise = dd(c.d) * std::sqrt(c.sigma_proxy * c.sigma_proxy / (2.0 * kPi * dd(c.n_proxy)));
    return std::max(0.5 * c.delta_l1, noise);
}

double bound_avg_weighted(const ProblemConstants& c) {
    const double gold = dd(c.d) * c.sigma_gold / (3.0 * std::sqrt(2.0 * kPi * dd(c.n_gold)));
    const double proxy =
        c.delta_l1 / 6.0 + dd(c.d) * c.sigma_proxy / (3.0 * std::sqrt(2.0 * kPi * dd(c.n_proxy)));
    return std::min(gold, proxy);
}

JointTail bound_joint_tail(const ProblemConstants& c, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("lambda must be > 0");
    const double level =
        lambda * (3.0 / (4.0 * c.psi * c.psi) + 10.0 / c.psi + dd(c.s) / (c.phi * c.phi));
    const double l2 = lambda * lambda;
    auto tail = [&](double n, double denom) {
        // sigma = 0 means no noise: the exponent is -infinity.
        return denom == 0.0 ? 0.0 : std::exp(-l2 * n / denom);
    };
    const double d = dd(c.d);
    const double p = 2.0 * d * tail(dd(c.n_gold), 40.0 * c.sigma_gold * c.sigma_gold) +
                     2.0 * d * tail(dd(c.n_proxy), 2.0 * d * d * c.sigma_proxy * c.sigma_proxy);
    return {level, p};
}

double lambda_bar(const ProblemConstants& c) {
    const double d = dd(c.d), ng = dd(c.n_gold), np = dd(c.n_proxy);
    const double first = std::sqrt(40.0 * c.sigma_gold * c.sigma_gold * std::log(6.0 * c.b * d * ng) / ng);
    const double second =
        std::sqrt(2.0 * d * d * c.sigma_proxy * c.sigma_proxy * std::log(6.0 * c.b * d * np) / np);
    return std::max(first, second);
}

double bound_joint_expected(const ProblemConstants& c, double lambda) {
    const JointTail t = bound_joint_tail(c, lambda);
    // The tail term of the expectation is 6bd times the sum of the two exponentials,
    // i.e. 3b times the tail probability.
    return t.error_level + 3.0 * c.b * t.tail_probability;
}

std::optional<double> compat_sufficient(const SymmetricMatrix& sigma) {
    const double zeta = min_eigenvalue(sigma);
    if (!(zeta > 0.0)) return std::nullopt;
    return std::sqrt(zeta);
}

double compat_estimate(const SymmetricMatrix& sigma, std::span<const std::size_t> support,
                       std::size_t samples, Rng& rng) {
    const std::size_t d = sigma.dim();
    if (support.empty()) throw InvalidArgument("compatibility support must be nonempty");
    if (samples == 0) throw InvalidArgument("compat_estimate needs at least one sample");
    std::vector<char> in_support(d, 0);
    for (std::size_t j : support) {
        if (j >= d) throw InvalidArgument("support index out of range");
        in_support[j] = 1;
    }
    std::vector<std::size_t> outside;
    for (std::size_t j = 0; j < d; ++j) {
        if (!in_support[j]) outside.push_back(j);
    }

    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double s = static_cast<double>(support.size());
    double best = std::numeric_limits<double>::infinity();
    Vector u(d);
    for (std::size_t t = 0; t < samples; ++t) {
        std::fill(u.begin(), u.end(), 0.0);
        double l1_s = 0.0;
        for (std::size_t j : support) {
            u[j] = normal(rng);
            l1_s += std::fabs(u[j]);
        }
        if (!outside.empty()) {
            double l1_c = 0.0;
            for (std::size_t j : outside) {
                u[j] = normal(rng);
                l1_c += std::fabs(u[j]);
            }
            const double target = unif(rng) * 3.0 * l1_s;
            const double scale = l1_c > 0.0 ? target / l1_c : 0.0;
            for (std::size_t j : outside) u[j] *= scale;
        }
        if (l1_s == 0.0) continue;
        const Vector su = matvec(sigma, u);
        double quad = 0.0;
        for (std::size_t j = 0; j < d; ++j) quad += u[j] * su[j];
        best = std::min(best, s * quad / (l1_s * l1_s));
    }
    return std::sqrt(std::max(best, 0.0));
}

double gaussian_l1_moment(std::span<const double> cov_diag) {
    double sum = 0.0;
    for (double v : cov_diag) {
        if (!(v >= 0.0)) throw InvalidArgument("variances must be >= 0");
        sum += std::sqrt(v);
    }
    return std::sqrt(2.0 / kPi) * sum;
}

}  // namespace proxyreg
