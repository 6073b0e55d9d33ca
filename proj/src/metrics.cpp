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

#include "proxyreg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "proxyreg/error.hpp"

namespace proxyreg {

ParamError param_error(std::span<const double> beta_hat, std::span<const double> beta_star) {
    if (beta_hat.size() != beta_star.size()) throw InvalidArgument("param_error: dimension mismatch");
    ParamError e{0.0, 0.0};
    for (std::size_t j = 0; j < beta_hat.size(); ++j) {
        const double diff = beta_hat[j] - beta_star[j];
        e.l1 += std::fabs(diff);
        e.l2sq += diff * diff;
    }
    return e;
}

double mse(std::span<const double> y_hat, std::span<const double> y) {
    if (y_hat.size() != y.size()) throw InvalidArgument("mse: length mismatch");
    if (y.empty()) throw InvalidArgument("mse: empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - y_hat[i];
        s += r * r;
    }
    return s / static_cast<double>(y.size());
}

double auc(std::span<const double> scores, std::span<const double> labels) {
    if (scores.size() != labels.size()) throw InvalidArgument("auc: length mismatch");
    std::uint64_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1.0) {
            ++pos;
        } else if (labels[i] == 0.0) {
            ++neg;
        } else {
            throw InvalidArgument("auc: labels must be 0 or 1");
        }
        if (!std::isfinite(scores[i])) throw InvalidArgument("auc: non-finite score");
    }
    if (pos == 0 || neg == 0) throw DegenerateLabels("auc needs both positive and negative labels");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Walk tie groups in ascending score order; every positive beats the negatives below its group.
    std::uint64_t concordant = 0, tied = 0, neg_below = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        std::uint64_t gp = 0, gn = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (labels[order[j]] == 1.0 ? gp : gn) += 1;
            ++j;
        }
        concordant += gp * neg_below;
        tied += gp * gn;
        neg_below += gn;
        i = j;
    }
    return (static_cast<double>(concordant) + 0.5 * static_cast<double>(tied)) /
           (static_cast<double>(pos) * static_cast<double>(neg));
}

}  // namespace proxyreg
