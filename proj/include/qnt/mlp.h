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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnt/features.h"
#include "qnt/training_data.h"

namespace qnt {

enum class ModelKind { BASELINE, TUNED };

/// Min/max of one input feature, fitted on the training split.
struct FeatureRange {
    double min = 0.0;
    double max = 1.0;
    bool operator==(const FeatureRange &) const = default;
};

struct Provenance {
    ModelKind kind = ModelKind::BASELINE;
    std::string backend_name;
    std::optional<std::string> circuit_id;
    uint64_t seed = 0;
    int epochs = 0;
    bool operator==(const Provenance &) const = default;
};

/// Fully connected layer, weights stored row-major as [out][in].
struct DenseLayer {
    size_t in = 0;
    size_t out = 0;
    std::vector<double> weights;
    std::vector<double> biases;

    double w(size_t o, size_t i) const {
        return weights[o * in + i];
    }
    bool operator==(const DenseLayer &) const = default;
};

using NetInput = std::array<double, 3>;

/// Regression network mapping (pos, odr, pof) to an ideal probability.
/// ReLU hidden layers, logistic output.
struct MlpModel {
    std::vector<size_t> layer_dims;
    std::vector<DenseLayer> layers;
    /// Ranges for pos, transformed odr and pof, in that order.
    std::array<FeatureRange, 3> feature_norm{};
    /// odr enters the network as log1p(odr) before min-max scaling.
    bool odr_log1p = true;
    Provenance provenance;

    /// Random He-style initialization; deterministic in `seed`.
    static MlpModel create(const std::vector<size_t> &layer_dims, uint64_t seed);

    /// Feature transform + min-max scaling.
    NetInput normalize(const FeatureVector &f) const;

    /// Forward pass on already-normalized input. Output in (0, 1).
    double forward(const NetInput &x) const;

    /// Throws ValidationError if dimensions or weights are invalid.
    void validate() const;

    bool operator==(const MlpModel &) const = default;
};

enum class LrSchedule { CONSTANT, TRIANGULAR_CYCLE };

struct TrainConfig {
    int epochs = 200;
    size_t batch_size = 32;
    double learning_rate = 0.05;
    LrSchedule lr_schedule = LrSchedule::CONSTANT;
    /// Triangular cycle bounds and full period in optimizer steps.
    double cycle_min_lr = 0.005;
    double cycle_max_lr = 0.05;
    size_t cycle_period = 200;
    double split_ratio = 0.8;
    uint64_t seed = 0;
    double fine_tune_lr_scale = 0.1;
    std::vector<size_t> hidden_dims = {64, 32};

    /// Defaults for fine-tuning (50 epochs).
    static TrainConfig tuning_defaults();

    void validate() const;
};

/// Seeded shuffle followed by a prefix split of size ceil(ratio·n).
std::pair<std::vector<TrainingRow>, std::vector<TrainingRow>> split_dataset(const std::vector<TrainingRow> &rows,
                                                                            double ratio, uint64_t seed);

struct TrainResult {
    MlpModel model;
    double train_mae = 0.0;
    double test_mae = 0.0;
};

/// Splits, fits feature normalization on the training part only, and trains
/// a fresh network with mini-batch gradient descent on MAE.
TrainResult train_baseline(const std::vector<TrainingRow> &rows, const TrainConfig &cfg,
                           const std::string &backend_name = "");

/// Transfer learning: continues training a copy of `base` on `rows` (all of
/// them) with learning rate scaled by cfg.fine_tune_lr_scale. The feature
/// normalization of `base` is kept. `base` itself is untouched.
MlpModel fine_tune(const MlpModel &base, const std::vector<TrainingRow> &rows, const TrainConfig &cfg,
                   const std::optional<std::string> &circuit_id = std::nullopt);

/// Model output for one feature vector, in (0, 1).
double predict(const MlpModel &m, const FeatureVector &f);

/// Mean absolute error. LengthMismatch / EmptyList on bad input.
double mae_loss(const std::vector<double> &pred, const std::vector<double> &target);

/// MAE of `m` on `rows`.
double evaluate_mae(const MlpModel &m, const std::vector<TrainingRow> &rows);

/// Per-parameter gradient with the same shape as MlpModel::layers.
struct MlpGradient {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

/// Mean absolute error of the network on normalized inputs `x` against `y`,
/// and (when `grad` is non-null) its gradient. sign(0) is taken as 0.
double mae_and_gradient(const MlpModel &m, const std::vector<NetInput> &x, const std::vector<double> &y,
                        MlpGradient *grad);

/// JSON model file, version "qnt-model/1".
std::string model_to_json(const MlpModel &m);
MlpModel parse_model(std::string_view json_text);

}  // namespace qnt
