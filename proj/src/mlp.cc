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

#include "qnt/mlp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "json.hpp"
#include "qnt/errors.h"
#include "qnt/rng.h"

namespace qnt {

using json = nlohmann::json;

namespace {

double logistic(double z) {
    if (z >= 0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

double sign0(double v) {
    return v > 0 ? 1.0 : v < 0 ? -1.0 : 0.0;
}

std::array<double, 3> raw_features(const FeatureVector &f, bool odr_log1p) {
    return {f.pos, odr_log1p ? std::log1p(f.odr) : f.odr, f.pof};
}

std::array<FeatureRange, 3> fit_feature_norm(const std::vector<TrainingRow> &rows, bool odr_log1p) {
    std::array<FeatureRange, 3> ranges;
    for (size_t k = 0; k < 3; k++) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const TrainingRow &r : rows) {
            double v = raw_features(r.features(), odr_log1p)[k];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ranges[k] = hi - lo > 1e-12 ? FeatureRange{lo, hi} : FeatureRange{0.0, 1.0};
    }
    return ranges;
}

/// Activations of every layer for one sample; acts[0] is the input.
struct Trace {
    std::vector<std::vector<double>> acts;
    std::vector<std::vector<double>> pre;
};

void forward_trace(const MlpModel &m, const NetInput &x, Trace &t) {
    t.acts.resize(m.layers.size() + 1);
    t.pre.resize(m.layers.size());
    t.acts[0].assign(x.begin(), x.end());
    for (size_t l = 0; l < m.layers.size(); l++) {
        const DenseLayer &L = m.layers[l];
        const std::vector<double> &in = t.acts[l];
        std::vector<double> &z = t.pre[l];
        std::vector<double> &a = t.acts[l + 1];
        z.assign(L.out, 0.0);
        a.assign(L.out, 0.0);
        bool last = l + 1 == m.layers.size();
        for (size_t o = 0; o < L.out; o++) {
            double s = L.biases[o];
            const double *row = &L.weights[o * L.in];
            for (size_t i = 0; i < L.in; i++) {
                s += row[i] * in[i];
            }
            z[o] = s;
            a[o] = last ? logistic(s) : std::max(0.0, s);
        }
    }
}

MlpGradient zero_gradient(const MlpModel &m) {
    MlpGradient g;
    for (const DenseLayer &L : m.layers) {
        g.weights.emplace_back(L.weights.size(), 0.0);
        g.biases.emplace_back(L.biases.size(), 0.0);
    }
    return g;
}

double learning_rate_at(const TrainConfig &cfg, size_t step, double scale) {
    if (cfg.lr_schedule == LrSchedule::CONSTANT) {
        return cfg.learning_rate * scale;
    }
    double half = static_cast<double>(cfg.cycle_period) / 2.0;
    double pos = std::fmod(static_cast<double>(step), static_cast<double>(cfg.cycle_period)) / half;
    double frac = pos <= 1.0 ? pos : 2.0 - pos;
    return (cfg.cycle_min_lr + (cfg.cycle_max_lr - cfg.cycle_min_lr) * frac) * scale;
}

/// Mini-batch gradient descent on `rows` starting from `m`.
void run_training(MlpModel &m, const std::vector<TrainingRow> &rows, const TrainConfig &cfg, double lr_scale,
                  uint64_t seed) {
    if (rows.empty() || cfg.epochs == 0) {
        return;
    }
    std::vector<NetInput> x;
    std::vector<double> y;
    x.reserve(rows.size());
    for (const TrainingRow &r : rows) {
        x.push_back(m.normalize(r.features()));
        y.push_back(r.target);
    }
    std::vector<size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng = make_stream(seed, 0x5452414E);  // shuffles only
    size_t step = 0;
    std::vector<NetInput> bx;
    std::vector<double> by;
    MlpGradient g;
    for (int epoch = 0; epoch < cfg.epochs; epoch++) {
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
            size_t end = std::min(order.size(), start + cfg.batch_size);
            bx.clear();
            by.clear();
            for (size_t k = start; k < end; k++) {
                bx.push_back(x[order[k]]);
                by.push_back(y[order[k]]);
            }
            double loss = mae_and_gradient(m, bx, by, &g);
            if (!std::isfinite(loss)) {
                throw DivergenceDetected("training loss became non-finite at epoch " + std::to_string(epoch));
            }
            double lr = learning_rate_at(cfg, step++, lr_scale);
            for (size_t l = 0; l < m.layers.size(); l++) {
                DenseLayer &L = m.layers[l];
                for (size_t i = 0; i < L.weights.size(); i++) {
                    L.weights[i] -= lr * g.weights[l][i];
                }
                for (size_t i = 0; i < L.biases.size(); i++) {
                    L.biases[i] -= lr * g.biases[l][i];
                }
            }
        }
    }
    for (const DenseLayer &L : m.layers) {
        for (double w : L.weights) {
            if (!std::isfinite(w)) {
                throw DivergenceDetected("training produced non-finite weights");
            }
        }
    }
}

}  // namespace

MlpModel MlpModel::create(const std::vector<size_t> &layer_dims, uint64_t seed) {
    if (layer_dims.size() < 2 || layer_dims.front() != 3 || layer_dims.back() != 1) {
        throw ValidationError("layer_dims must start with 3 and end with 1");
    }
    MlpModel m;
    m.layer_dims = layer_dims;
    std::mt19937_64 rng = make_stream(seed, 0x494E4954);
    for (size_t l = 0; l + 1 < layer_dims.size(); l++) {
        DenseLayer L;
        L.in = layer_dims[l];
        L.out = layer_dims[l + 1];
        if (L.in == 0 || L.out == 0) {
            throw ValidationError("layer widths must be positive");
        }
        bool last = l + 2 == layer_dims.size();
        double limit = last ? std::sqrt(6.0 / static_cast<double>(L.in + L.out))
                            : std::sqrt(6.0 / static_cast<double>(L.in));
        L.weights.resize(L.in * L.out);
        for (double &w : L.weights) {
            w = (2.0 * uniform01(rng) - 1.0) * limit;
        }
        L.biases.assign(L.out, last ? 0.0 : 0.01);
        m.layers.push_back(std::move(L));
    }
    return m;
}

NetInput MlpModel::normalize(const FeatureVector &f) const {
    auto raw = raw_features(f, odr_log1p);
    NetInput x;
    for (size_t k = 0; k < 3; k++) {
        x[k] = (raw[k] - feature_norm[k].min) / (feature_norm[k].max - feature_norm[k].min);
    }
    return x;
}

double MlpModel::forward(const NetInput &x) const {
    Trace t;
    forward_trace(*this, x, t);
    return t.acts.back()[0];
}

void MlpModel::validate() const {
    if (layer_dims.size() < 2 || layer_dims.front() != 3 || layer_dims.back() != 1 ||
        layers.size() + 1 != layer_dims.size()) {
        throw ValidationError("model: layer_dims must be [3, ..., 1] and match the layer list");
    }
    for (size_t l = 0; l < layers.size(); l++) {
        const DenseLayer &L = layers[l];
        if (L.in != layer_dims[l] || L.out != layer_dims[l + 1] || L.weights.size() != L.in * L.out ||
            L.biases.size() != L.out) {
            throw ValidationError("model: layer " + std::to_string(l) + " has inconsistent shape");
        }
        for (double v : L.weights) {
            if (!std::isfinite(v)) {
                throw ValidationError("model: non-finite weight in layer " + std::to_string(l));
            }
        }
        for (double v : L.biases) {
            if (!std::isfinite(v)) {
                throw ValidationError("model: non-finite bias in layer " + std::to_string(l));
            }
        }
    }
    for (const FeatureRange &r : feature_norm) {
        if (!(r.min < r.max)) {
            throw ValidationError("model: feature_norm requires min < max");
        }
    }
}

TrainConfig TrainConfig::tuning_defaults() {
    TrainConfig cfg;
    cfg.epochs = 50;
    return cfg;
}

void TrainConfig::validate() const {
    if (epochs < 0) {
        throw ValidationError("epochs must be non-negative");
    }
    if (batch_size < 1) {
        throw ValidationError("batch_size must be >= 1");
    }
    if (!(learning_rate > 0.0)) {
        throw ValidationError("learning_rate must be positive");
    }
    if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
        throw ValidationError("split_ratio must lie in (0, 1)");
    }
    if (!(fine_tune_lr_scale > 0.0 && fine_tune_lr_scale <= 1.0)) {
        throw ValidationError("fine_tune_lr_scale must lie in (0, 1]");
    }
    if (lr_schedule == LrSchedule::TRIANGULAR_CYCLE &&
        (cycle_period < 2 || !(cycle_min_lr > 0.0) || !(cycle_max_lr >= cycle_min_lr))) {
        throw ValidationError("triangular cycle needs period >= 2 and 0 < min_lr <= max_lr");
    }
}

std::pair<std::vector<TrainingRow>, std::vector<TrainingRow>> split_dataset(const std::vector<TrainingRow> &rows,
                                                                            double ratio, uint64_t seed) {
    if (rows.empty()) {
        throw EmptyDataset("split_dataset: no rows");
    }
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ValidationError("split_dataset: ratio must lie in (0, 1)");
    }
    std::vector<size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng = make_stream(seed, 0x53504C54);
    std::shuffle(order.begin(), order.end(), rng);
    size_t n_train = static_cast<size_t>(std::ceil(ratio * static_cast<double>(rows.size()) - 1e-9));
    n_train = std::min(n_train, rows.size());
    std::pair<std::vector<TrainingRow>, std::vector<TrainingRow>> out;
    for (size_t k = 0; k < order.size(); k++) {
        (k < n_train ? out.first : out.second).push_back(rows[order[k]]);
    }
    return out;
}

TrainResult train_baseline(const std::vector<TrainingRow> &rows, const TrainConfig &cfg,
                           const std::string &backend_name) {
    cfg.validate();
    if (rows.size() < 20) {
        throw EmptyDataset("train_baseline needs at least 20 rows, got " + std::to_string(rows.size()));
    }
    auto [train, test] = split_dataset(rows, cfg.split_ratio, cfg.seed);

    std::vector<size_t> dims{3};
    dims.insert(dims.end(), cfg.hidden_dims.begin(), cfg.hidden_dims.end());
    dims.push_back(1);
    TrainResult result;
    MlpModel &m = result.model;
    m = MlpModel::create(dims, cfg.seed);
    m.feature_norm = fit_feature_norm(train, m.odr_log1p);
    // Output bias starts at logit(mean target).
    double mean = 0;
    for (const TrainingRow &r : train) {
        mean += r.target;
    }
    mean = std::clamp(mean / static_cast<double>(train.size()), 1e-3, 1.0 - 1e-3);
    m.layers.back().biases[0] = std::log(mean / (1.0 - mean));

    run_training(m, train, cfg, 1.0, cfg.seed);
    m.provenance = Provenance{ModelKind::BASELINE, backend_name, std::nullopt, cfg.seed, cfg.epochs};
    result.train_mae = evaluate_mae(m, train);
    result.test_mae = test.empty() ? result.train_mae : evaluate_mae(m, test);
    return result;
}

MlpModel fine_tune(const MlpModel &base, const std::vector<TrainingRow> &rows, const TrainConfig &cfg,
                   const std::optional<std::string> &circuit_id) {
    cfg.validate();
    base.validate();
    if (rows.empty() && cfg.epochs > 0) {
        throw EmptyDataset("fine_tune: no rows");
    }
    MlpModel m = base;
    run_training(m, rows, cfg, cfg.fine_tune_lr_scale, cfg.seed);
    m.provenance.kind = ModelKind::TUNED;
    m.provenance.circuit_id = circuit_id;
    m.provenance.seed = cfg.seed;
    m.provenance.epochs = cfg.epochs;
    return m;
}

double predict(const MlpModel &m, const FeatureVector &f) {
    return m.forward(m.normalize(f));
}

double mae_loss(const std::vector<double> &pred, const std::vector<double> &target) {
    if (pred.size() != target.size()) {
        throw LengthMismatch("mae_loss: " + std::to_string(pred.size()) + " predictions vs " +
                             std::to_string(target.size()) + " targets");
    }
    if (pred.empty()) {
        throw EmptyList("mae_loss: empty input");
    }
    double s = 0;
    for (size_t i = 0; i < pred.size(); i++) {
        s += std::abs(pred[i] - target[i]);
    }
    return s / static_cast<double>(pred.size());
}

double evaluate_mae(const MlpModel &m, const std::vector<TrainingRow> &rows) {
    std::vector<double> pred, target;
    for (const TrainingRow &r : rows) {
        pred.push_back(predict(m, r.features()));
        target.push_back(r.target);
    }
    return mae_loss(pred, target);
}

double mae_and_gradient(const MlpModel &m, const std::vector<NetInput> &x, const std::vector<double> &y,
                        MlpGradient *grad) {
    if (x.size() != y.size()) {
        throw LengthMismatch("mae_and_gradient: inputs and targets differ in length");
    }
    if (x.empty()) {
        throw EmptyList("mae_and_gradient: empty batch");
    }
    if (grad) {
        if (grad->weights.size() != m.layers.size()) {
            *grad = zero_gradient(m);
        } else {
            for (auto &v : grad->weights) {
                std::fill(v.begin(), v.end(), 0.0);
            }
            for (auto &v : grad->biases) {
                std::fill(v.begin(), v.end(), 0.0);
            }
        }
    }
    const double inv_n = 1.0 / static_cast<double>(x.size());
    double loss = 0;
    Trace t;
    std::vector<double> delta, next_delta;
    for (size_t s = 0; s < x.size(); s++) {
        forward_trace(m, x[s], t);
        double out = t.acts.back()[0];
        double diff = out - y[s];
        loss += std::abs(diff);
        if (!grad) {
            continue;
        }
        // dL/dz at the logistic output.
        delta.assign(1, sign0(diff) * inv_n * out * (1.0 - out));
        for (size_t l = m.layers.size(); l-- > 0;) {
            const DenseLayer &L = m.layers[l];
            const std::vector<double> &in = t.acts[l];
            auto &gw = grad->weights[l];
            auto &gb = grad->biases[l];
            for (size_t o = 0; o < L.out; o++) {
                if (delta[o] == 0.0) {
                    continue;
                }
                gb[o] += delta[o];
                double *row = &gw[o * L.in];
                for (size_t i = 0; i < L.in; i++) {
                    row[i] += delta[o] * in[i];
                }
            }
            if (l == 0) {
                break;
            }
            next_delta.assign(L.in, 0.0);
            for (size_t o = 0; o < L.out; o++) {
                if (delta[o] == 0.0) {
                    continue;
                }
                const double *row = &L.weights[o * L.in];
                for (size_t i = 0; i < L.in; i++) {
                    next_delta[i] += row[i] * delta[o];
                }
            }
            const std::vector<double> &z_prev = t.pre[l - 1];
            for (size_t i = 0; i < L.in; i++) {
                if (z_prev[i] <= 0.0) {
                    next_delta[i] = 0.0;
                }
            }
            delta.swap(next_delta);
        }
    }
    return loss * inv_n;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr const char *kModelVersion = "qnt-model/1";

json range_json(const FeatureRange &r) {
    return {{"min", r.min}, {"max", r.max}};
}

FeatureRange range_from(const json &j) {
    return FeatureRange{j.at("min").get<double>(), j.at("max").get<double>()};
}

}  // namespace

std::string model_to_json(const MlpModel &m) {
    json j;
    j["version"] = kModelVersion;
    j["layer_dims"] = m.layer_dims;
    j["activations"] = {{"hidden", "relu"}, {"output", "logistic"}};
    j["layers"] = json::array();
    for (const DenseLayer &L : m.layers) {
        j["layers"].push_back({{"rows", L.out}, {"cols", L.in}, {"weights", L.weights}, {"biases", L.biases}});
    }
    j["feature_norm"] = {{"pos", range_json(m.feature_norm[0])},
                         {"odr", range_json(m.feature_norm[1])},
                         {"pof", range_json(m.feature_norm[2])},
                         {"odr_log1p", m.odr_log1p}};
    json p;
    p["kind"] = m.provenance.kind == ModelKind::BASELINE ? "BASELINE" : "TUNED";
    p["backend_name"] = m.provenance.backend_name;
    p["circuit_id"] = m.provenance.circuit_id ? json(*m.provenance.circuit_id) : json(nullptr);
    p["seed"] = m.provenance.seed;
    p["epochs"] = m.provenance.epochs;
    j["provenance"] = p;
    return j.dump(1) + "\n";
}

MlpModel parse_model(std::string_view json_text) {
    MlpModel m;
    try {
        json j = json::parse(json_text);
        if (j.at("version").get<std::string>() != kModelVersion) {
            throw ValidationError("model: unsupported version '" + j.at("version").get<std::string>() + "'");
        }
        const json &act = j.at("activations");
        if (act.at("hidden") != "relu" || act.at("output") != "logistic") {
            throw ValidationError("model: only relu hidden / logistic output activations are supported");
        }
        m.layer_dims = j.at("layer_dims").get<std::vector<size_t>>();
        for (const json &L : j.at("layers")) {
            DenseLayer d;
            d.out = L.at("rows").get<size_t>();
            d.in = L.at("cols").get<size_t>();
            d.weights = L.at("weights").get<std::vector<double>>();
            d.biases = L.at("biases").get<std::vector<double>>();
            m.layers.push_back(std::move(d));
        }
        const json &fn = j.at("feature_norm");
        m.feature_norm = {range_from(fn.at("pos")), range_from(fn.at("odr")), range_from(fn.at("pof"))};
        m.odr_log1p = fn.at("odr_log1p").get<bool>();
        const json &p = j.at("provenance");
        std::string kind = p.at("kind").get<std::string>();
        if (kind != "BASELINE" && kind != "TUNED") {
            throw ValidationError("model: provenance.kind must be BASELINE or TUNED");
        }
        m.provenance.kind = kind == "BASELINE" ? ModelKind::BASELINE : ModelKind::TUNED;
        m.provenance.backend_name = p.at("backend_name").get<std::string>();
        if (!p.at("circuit_id").is_null()) {
            m.provenance.circuit_id = p.at("circuit_id").get<std::string>();
        }
        m.provenance.seed = p.at("seed").get<uint64_t>();
        m.provenance.epochs = p.at("epochs").get<int>();
    } catch (const json::exception &e) {
        throw SyntaxError(std::string("model file: ") + e.what());
    }
    m.validate();
    return m;
}

}  // namespace qnt
