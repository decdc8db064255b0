// Copyright 2026 The QNT Authors
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

#include "grad_oracle.h"

#include <algorithm>
#include <cmath>

namespace qnt_test {

double max_gradient_rel_error(const qnt::MlpModel &m, const std::vector<qnt::NetInput> &x,
                              const std::vector<double> &y, double step, double floor) {
    qnt::MlpGradient g;
    qnt::mae_and_gradient(m, x, y, &g);
    qnt::MlpModel probe = m;
    auto numeric = [&](double &param) {
        double keep = param;
        param = keep + step;
        double up = qnt::mae_and_gradient(probe, x, y, nullptr);
        param = keep - step;
        double down = qnt::mae_and_gradient(probe, x, y, nullptr);
        param = keep;
        return (up - down) / (2 * step);
    };
    double worst = 0;
    auto compare = [&](double analytic, double num) {
        worst = std::max(worst, std::abs(analytic - num) / std::max(std::abs(analytic) + std::abs(num), floor));
    };
    for (size_t l = 0; l < probe.layers.size(); l++) {
        for (size_t i = 0; i < probe.layers[l].weights.size(); i++) {
            compare(g.weights[l][i], numeric(probe.layers[l].weights[i]));
        }
        for (size_t i = 0; i < probe.layers[l].biases.size(); i++) {
            compare(g.biases[l][i], numeric(probe.layers[l].biases[i]));
        }
    }
    return worst;
}

GradCase random_grad_case(std::mt19937_64 &rng, const std::vector<size_t> &dims, size_t batch) {
    GradCase c;
    c.model = qnt::MlpModel::create(dims, rng());
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (qnt::DenseLayer &L : c.model.layers) {
        for (double &b : L.biases) {
            b = u(rng) - 0.5;
        }
    }
    for (size_t s = 0; s < batch; s++) {
        c.x.push_back({u(rng), u(rng), u(rng)});
        c.y.push_back(static_cast<double>(rng() % 2));
    }
    return c;
}

}  // namespace qnt_test
