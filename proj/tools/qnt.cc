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

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnt/benchgen.h"
#include "qnt/datagen.h"
#include "qnt/errors.h"
#include "qnt/filter.h"
#include "qnt/metrics.h"
#include "qnt/mlp.h"
#include "qnt/oracle.h"
#include "qnt/pipeline.h"
#include "qnt/qasm.h"
#include "qnt/rng.h"
#include "qnt/training_data.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char *kToolVersion = "0.1.0";

class IoError : public qnt::Error {
   public:
    explicit IoError(const std::string &message) : qnt::Error("IoError", message) {}
};

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; i++) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Records consumed files and writes the `<out>.manifest.json` sidecars.
class RunContext {
   public:
    RunContext(std::string command, int argc, char **argv) : command_(std::move(command)), started_(utc_now()) {
        for (int i = 0; i < argc; i++) {
            argv_.emplace_back(argv[i]);
        }
    }

    std::string read(const std::string &path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw IoError("cannot read '" + path + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        digests_[path] = sha256_hex(text);
        return text;
    }

    void set_seed(uint64_t seed) {
        seed_ = seed;
    }

    void write(const std::string &path, const std::string &content) {
        fs::path p(path);
        if (p.has_parent_path()) {
            fs::create_directories(p.parent_path());
        }
        write_raw(path, content);
        json m = {{"tool_version", kToolVersion},
                  {"command", command_},
                  {"argv", argv_},
                  {"seed", seed_ ? json(*seed_) : json(nullptr)},
                  {"inputs", digests_},
                  {"output_sha256", sha256_hex(content)},
                  {"started_at", started_},
                  {"finished_at", utc_now()}};
        write_raw(path + ".manifest.json", m.dump(2) + "\n");
    }

   private:
    static void write_raw(const std::string &path, const std::string &content) {
        std::ofstream out(path, std::ios::binary);
        if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size()))) {
            throw IoError("cannot write '" + path + "'");
        }
    }

    std::string command_;
    std::vector<std::string> argv_;
    std::string started_;
    std::optional<uint64_t> seed_;
    std::map<std::string, std::string> digests_;
};

qnt::Circuit load_circuit(RunContext &ctx, const std::string &path, const std::string &id_override = "") {
    qnt::Circuit c = qnt::parse_qasm(ctx.read(path));
    if (!id_override.empty()) {
        c.name = id_override;
    } else if (c.name.empty()) {
        c.name = fs::path(path).stem().string();
    }
    c.validate();
    return c;
}

qnt::LrSchedule parse_schedule(const std::string &s) {
    if (s == "constant") {
        return qnt::LrSchedule::CONSTANT;
    }
    if (s == "triangular") {
        return qnt::LrSchedule::TRIANGULAR_CYCLE;
    }
    throw qnt::ValidationError("schedule must be 'constant' or 'triangular', got '" + s + "'");
}

qnt::FaultVariant parse_variant(const std::string &s) {
    if (s == "BIT_FLIP" || s == "bit-flip" || s == "X") {
        return qnt::FaultVariant::BIT_FLIP;
    }
    if (s == "PHASE_FLIP" || s == "phase-flip" || s == "Z") {
        return qnt::FaultVariant::PHASE_FLIP;
    }
    throw qnt::ValidationError("variant must be BIT_FLIP or PHASE_FLIP, got '" + s + "'");
}

std::map<qnt::BitString, qnt::FilteredOutput> by_input(const std::vector<qnt::FilteredOutput> &outputs) {
    std::map<qnt::BitString, qnt::FilteredOutput> m;
    for (const qnt::FilteredOutput &f : outputs) {
        if (!m.emplace(f.input, f).second) {
            throw qnt::ValidationError("duplicate filtered output for input '" + f.input.str() + "'");
        }
    }
    return m;
}

struct TrainFlags {
    int epochs = -1;
    size_t batch = 32;
    double lr = 0.05;
    std::string schedule = "constant";
    double cycle_min = 0.005;
    double cycle_max = 0.05;
    size_t cycle_period = 200;
    double split = 0.8;
    double lr_scale = 0.1;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--epochs", epochs, "Training epochs (default 200 baseline, 50 tuning)");
        cmd->add_option("--batch-size", batch, "Mini-batch size")->capture_default_str();
        cmd->add_option("--lr", lr, "Learning rate")->capture_default_str();
        cmd->add_option("--schedule", schedule, "constant | triangular")->capture_default_str();
        cmd->add_option("--cycle-min-lr", cycle_min, "Triangular schedule lower rate")->capture_default_str();
        cmd->add_option("--cycle-max-lr", cycle_max, "Triangular schedule upper rate")->capture_default_str();
        cmd->add_option("--cycle-period", cycle_period, "Triangular schedule period in steps")->capture_default_str();
        cmd->add_option("--split", split, "Train fraction of the corpus")->capture_default_str();
        cmd->add_option("--lr-scale", lr_scale, "Learning-rate multiplier while tuning")->capture_default_str();
    }

    qnt::TrainConfig config(bool tuning, uint64_t seed) const {
        qnt::TrainConfig cfg = tuning ? qnt::TrainConfig::tuning_defaults() : qnt::TrainConfig{};
        if (epochs >= 0) {
            cfg.epochs = epochs;
        }
        cfg.batch_size = batch;
        cfg.learning_rate = lr;
        cfg.lr_schedule = parse_schedule(schedule);
        cfg.cycle_min_lr = cycle_min;
        cfg.cycle_max_lr = cycle_max;
        cfg.cycle_period = cycle_period;
        cfg.split_ratio = split;
        cfg.fine_tune_lr_scale = lr_scale;
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }
};

std::string hellinger_csv(const std::string &backend, const qnt::NoiseReduction &nr, bool per_input) {
    std::ostringstream os;
    char buf[256];
    if (per_input) {
        os << "input,HLin,HLif\n";
        for (const qnt::HellingerRow &r : nr.rows) {
            std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f\n", r.input.str().c_str(), r.noisy, r.filtered);
            os << buf;
        }
        os << "\n";
    }
    os << "Backend,HLin,HLif,Improved%\n";
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.2f\n", backend.c_str(), nr.avg_noisy, nr.avg_filtered,
                  nr.improved);
    os << buf;
    return os.str();
}

std::string f1_csv(const qnt::ConfusionCounts &c) {
    qnt::PrecisionRecallF1 r = qnt::precision_recall_f1(c);
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "metric,value\nF1-score,%.4f\nPrecision,%.4f\nRecall,%.4f\nTrue Positives,%llu\n"
                  "False Positives,%llu\nFalse Negatives,%llu\nTrue Negatives,%llu\nDegenerate,%s\n",
                  r.f1, r.precision, r.recall, static_cast<unsigned long long>(c.tp),
                  static_cast<unsigned long long>(c.fp), static_cast<unsigned long long>(c.fn),
                  static_cast<unsigned long long>(c.tn), r.degenerate ? "true" : "false");
    return buf;
}

void print_error(const std::string &kind, const std::string &message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{
        "qnt: noise-aware testing of quantum programs.\n\n"
        "File formats:\n"
        "  circuit     OpenQASM 2.0 subset; '// circuit: NAME' names the circuit\n"
        "  config      {\"entries\":[{\"id\",\"format\":INTEGER|BINARY|EXPRESSION,\"start\",\"end\",\n"
        "               \"percentage\",\"regex\"?}]}\n"
        "  inputs      {\"circuit_id\", \"inputs\":[\"001\",...]}\n"
        "  noise       {\"name\",\"one_qubit_depolarizing\",\"two_qubit_depolarizing\",\n"
        "               \"per_gate_overrides\"?,\"readout\":{\"p1_given_0\",\"p0_given_1\"},\n"
        "               \"per_qubit_readout_overrides\"?}\n"
        "  spec        {\"circuit_id\", \"per_input\":{\"000\":{\"000\":0.5,...}}}\n"
        "  results     {\"circuit_id\",\"backend\",\"shots\",\"seed\",\"records\":[{\"input\",\"rep\",\"counts\"}]}\n"
        "  rows        CSV circuit_id,input,state,pos,odr,pof,target\n"
        "  model       {\"version\":\"qnt-model/1\",\"layers\",\"feature_norm\",\"provenance\"}\n"
        "  filtered    [{\"input\",\"probabilities\",\"dropped\",\"fallback\"}]\n"
        "  verdicts    [{\"input\",\"uof_fail\",\"wodf_fail\",\"p_value\",\"offending\"}]\n\n"
        "Every output file gets a <out>.manifest.json sidecar. QNT_THREADS caps worker threads.\n"
        "Exit codes: 0 success, 2 validation error, 3 runtime error."};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    uint64_t seed = 0;
    std::string out, config_path, circuit_path, id, inputs_path, noise_path, spec_path, results_path, model_path,
        data_path, filtered_path, backend, out_dir;
    std::vector<std::string> circuit_paths;
    uint64_t shots = qnt::kDefaultShots;
    uint32_t reps = 1;
    uint32_t tune_reps = 100;
    bool random_mode = false;
    TrainFlags train;
    std::optional<double> threshold;
    qnt::OracleConfig oracle;

    auto add_seed = [&](CLI::App *cmd) { cmd->add_option("--seed", seed, "Random seed")->required(); };
    auto add_out = [&](CLI::App *cmd) { cmd->add_option("-o,--out", out, "Output file")->required(); };

    CLI::App *gen_inputs = app.add_subcommand("gen-inputs", "Generate test inputs for one circuit from a config");
    gen_inputs->add_option("--config", config_path, "Input-generation config")->required()->check(CLI::ExistingFile);
    gen_inputs->add_option("--circuit", circuit_path, "Circuit file")->required()->check(CLI::ExistingFile);
    gen_inputs->add_option("--id", id, "Config entry id (default: circuit name)");
    gen_inputs->add_flag("--random", random_mode, "Seeded random subset instead of the ascending prefix");
    add_seed(gen_inputs);
    add_out(gen_inputs);

    CLI::App *spec_cmd = app.add_subcommand("spec", "Build the program specification (ideal outputs)");
    spec_cmd->add_option("--circuit", circuit_path, "Circuit file")->required()->check(CLI::ExistingFile);
    spec_cmd->add_option("--inputs", inputs_path, "Inputs file")->required()->check(CLI::ExistingFile);
    spec_cmd->add_option("--id", id, "Circuit id (default: circuit name)");
    add_out(spec_cmd);

    CLI::App *run_cmd = app.add_subcommand("run", "Execute a circuit on its inputs under a noise model");
    run_cmd->add_option("--circuit", circuit_path, "Circuit file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--inputs", inputs_path, "Inputs file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--noise", noise_path, "Noise model")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--shots", shots, "Shots per execution")->capture_default_str();
    run_cmd->add_option("--reps", reps, "Executions per input")->capture_default_str();
    run_cmd->add_option("--id", id, "Circuit id (default: circuit name)");
    add_seed(run_cmd);
    add_out(run_cmd);

    CLI::App *gen_data = app.add_subcommand("gen-data", "Build the baseline training corpus");
    gen_data->add_option("--config", config_path, "Input-generation config")->required()->check(CLI::ExistingFile);
    gen_data->add_option("--circuits", circuit_paths, "Baseline circuit files")->required()->check(CLI::ExistingFile);
    gen_data->add_option("--noise", noise_path, "Noise model")->required()->check(CLI::ExistingFile);
    gen_data->add_option("--shots", shots, "Shots per execution")->capture_default_str();
    gen_data->add_option("--reps", reps, "Executions per input")->capture_default_str();
    add_seed(gen_data);
    add_out(gen_data);

    CLI::App *train_cmd = app.add_subcommand("train-baseline", "Train the baseline model on a corpus");
    train_cmd->add_option("--data", data_path, "Training rows CSV")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--backend", backend, "Backend name stored in the model");
    train.add_to(train_cmd);
    add_seed(train_cmd);
    add_out(train_cmd);

    size_t max_tune_inputs = 4;
    CLI::App *tune_cmd = app.add_subcommand("tune", "Fine-tune a baseline model on the circuit under test");
    tune_cmd->add_option("--model", model_path, "Baseline model")->required()->check(CLI::ExistingFile);
    tune_cmd->add_option("--circuit", circuit_path, "Circuit under test")->check(CLI::ExistingFile);
    tune_cmd->add_option("--inputs", inputs_path, "Passing test inputs")->check(CLI::ExistingFile);
    tune_cmd->add_option("--noise", noise_path, "Noise model")->check(CLI::ExistingFile);
    tune_cmd->add_option("--results", results_path, "Existing execution results (instead of running)")
        ->check(CLI::ExistingFile);
    tune_cmd->add_option("--spec", spec_path, "Program specification for --results")->check(CLI::ExistingFile);
    tune_cmd->add_option("--shots", shots, "Shots per execution")->capture_default_str();
    tune_cmd->add_option("--reps", tune_reps, "Executions per input")->capture_default_str();
    tune_cmd->add_option("--max-inputs", max_tune_inputs, "Maximum number of tuning inputs")->capture_default_str();
    train.add_to(tune_cmd);
    add_seed(tune_cmd);
    add_out(tune_cmd);

    bool no_model = false;
    CLI::App *filter_cmd = app.add_subcommand("filter", "Filter noisy results with a model");
    filter_cmd->add_option("--model", model_path, "Tuned model")->check(CLI::ExistingFile);
    filter_cmd->add_flag("--none", no_model, "Pass results through unfiltered");
    filter_cmd->add_option("--results", results_path, "Execution results")->required()->check(CLI::ExistingFile);
    filter_cmd->add_option("--threshold", threshold, "Drop threshold (default 1/(2*shots))");
    add_out(filter_cmd);

    CLI::App *assess_cmd = app.add_subcommand("assess", "Apply the UOF and WODF oracles");
    assess_cmd->add_option("--spec", spec_path, "Program specification")->required()->check(CLI::ExistingFile);
    assess_cmd->add_option("--filtered", filtered_path, "Filtered outputs")->required()->check(CLI::ExistingFile);
    assess_cmd->add_option("--shots", shots, "Shots behind each output")->capture_default_str();
    assess_cmd->add_option("--alpha", oracle.alpha, "WODF significance level")->capture_default_str();
    assess_cmd->add_option("--uof-min-prob", oracle.uof_min_prob, "UOF probability floor")->capture_default_str();
    add_out(assess_cmd);

    CLI::App *metrics_cmd = app.add_subcommand("metrics", "Reports: Hellinger/Improved%, F1, Score%");
    metrics_cmd->require_subcommand(1);
    bool per_input = false;
    CLI::App *m_hell = metrics_cmd->add_subcommand("hellinger", "Table of HLin, HLif and Improved%");
    m_hell->add_option("--spec", spec_path, "Program specification")->required()->check(CLI::ExistingFile);
    m_hell->add_option("--results", results_path, "Noisy execution results")->required()->check(CLI::ExistingFile);
    m_hell->add_option("--filtered", filtered_path, "Filtered outputs")->required()->check(CLI::ExistingFile);
    m_hell->add_option("--backend", backend, "Backend label (default: results backend)");
    m_hell->add_flag("--per-input", per_input, "Also list every input");
    add_out(m_hell);
    std::vector<std::string> truth_paths, verdict_paths;
    CLI::App *m_f1 = metrics_cmd->add_subcommand("f1", "Precision, recall and F1 of assessed verdicts");
    m_f1->add_option("--truth", truth_paths, "Ground-truth verdict files")->required()->check(CLI::ExistingFile);
    m_f1->add_option("--verdicts", verdict_paths, "Assessed verdict files, same order")
        ->required()
        ->check(CLI::ExistingFile);
    add_out(m_f1);
    CLI::App *m_score = metrics_cmd->add_subcommand("score", "Score%: mean failing-input percentage");
    m_score->add_option("--verdicts", verdict_paths, "One verdict file per backend")
        ->required()
        ->check(CLI::ExistingFile);
    add_out(m_score);

    qnt::GeneratorConfig gen;
    double min_diversity = -1;
    std::vector<std::string> probes, pool;
    CLI::App *gen_circ = app.add_subcommand("gen-circuits", "Generate a random benchmark suite");
    gen_circ->add_option("--count", gen.count, "Number of circuits")->capture_default_str();
    gen_circ->add_option("--qubits", gen.num_qubits, "Qubits per circuit")->capture_default_str();
    gen_circ->add_option("--depth", gen.depth, "Layers per circuit")->capture_default_str();
    gen_circ->add_option("--min-diversity", min_diversity, "Greedy diversity bound in [0, 1]");
    gen_circ->add_option("--probe", probes, "Probe inputs for diversity (default all-zero)");
    gen_circ->add_option("--gates", pool, "Gate pool (default all but mcx)");
    gen_circ->add_option("--out-dir", out_dir, "Output directory")->required();
    add_seed(gen_circ);

    std::string trigger, variant = "BIT_FLIP";
    uint32_t target = 0;
    size_t versions = 0;
    CLI::App *inject = app.add_subcommand("inject-fault", "Seed an input-triggered fault into a circuit");
    inject->add_option("--circuit", circuit_path, "Circuit file")->required()->check(CLI::ExistingFile);
    inject->add_option("--trigger", trigger, "Trigger input bit string");
    inject->add_option("--target", target, "Target qubit")->capture_default_str();
    inject->add_option("--variant", variant, "BIT_FLIP or PHASE_FLIP")->capture_default_str();
    inject->add_option("--versions", versions, "Generate this many seeded faulty versions instead");
    inject->add_option("--seed", seed, "Seed for --versions");
    inject->add_option("-o,--out", out, "Output file (single fault)");
    inject->add_option("--out-dir", out_dir, "Output directory (--versions)");

    CLI::App *pipeline = app.add_subcommand("pipeline", "Run the full GHZ walkthrough end to end");
    pipeline->add_option("--noise", noise_path, "Noise model")->required()->check(CLI::ExistingFile);
    pipeline->add_option("--shots", shots, "Shots per execution")->capture_default_str();
    pipeline->add_option("--reps", tune_reps, "Tuning repetitions per input")->capture_default_str();
    pipeline->add_option("--out-dir", out_dir, "Output directory")->required();
    add_seed(pipeline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        print_error("UsageError", e.what());
        return 2;
    }

    CLI::App *sub = app.get_subcommands().front();
    std::string command = sub->get_name();
    if (sub == metrics_cmd) {
        command += " " + metrics_cmd->get_subcommands().front()->get_name();
    }
    RunContext ctx(command, argc, argv);

    try {
        if (sub == gen_inputs) {
            ctx.set_seed(seed);
            qnt::GenConfig cfg = qnt::parse_config(ctx.read(config_path));
            qnt::Circuit c = load_circuit(ctx, circuit_path, id);
            const qnt::GenEntry &entry = cfg.entry_for(c.name);
            auto inputs = qnt::generate_inputs(entry, c.num_input_qubits(), seed,
                                               random_mode ? qnt::SelectionMode::RANDOM : qnt::SelectionMode::PREFIX);
            ctx.write(out, qnt::inputs_to_json(c.name, inputs));
        } else if (sub == spec_cmd) {
            qnt::Circuit c = load_circuit(ctx, circuit_path, id);
            auto inputs = qnt::parse_inputs(ctx.read(inputs_path));
            ctx.write(out, qnt::program_spec_to_json(qnt::build_program_spec(c, inputs)));
        } else if (sub == run_cmd) {
            ctx.set_seed(seed);
            qnt::Circuit c = load_circuit(ctx, circuit_path, id);
            auto inputs = qnt::parse_inputs(ctx.read(inputs_path));
            qnt::NoiseModel nm = qnt::parse_noise_model(ctx.read(noise_path));
            ctx.write(out, qnt::execution_results_to_json(qnt::execute_inputs(c, inputs, nm, shots, seed, reps)));
        } else if (sub == gen_data) {
            ctx.set_seed(seed);
            qnt::GenConfig cfg = qnt::parse_config(ctx.read(config_path));
            qnt::NoiseModel nm = qnt::parse_noise_model(ctx.read(noise_path));
            std::vector<qnt::Circuit> circuits;
            for (const std::string &p : circuit_paths) {
                circuits.push_back(load_circuit(ctx, p));
            }
            auto rows = qnt::generate_training_rows(circuits, cfg, nm, shots, seed, reps);
            ctx.write(out, qnt::training_rows_to_csv(rows));
        } else if (sub == train_cmd) {
            ctx.set_seed(seed);
            auto rows = qnt::parse_training_csv(ctx.read(data_path));
            qnt::TrainResult r = qnt::train_baseline(rows, train.config(false, seed), backend);
            ctx.write(out, qnt::model_to_json(r.model));
            std::cout << json{{"train_mae", r.train_mae}, {"test_mae", r.test_mae}, {"rows", rows.size()}}.dump()
                      << "\n";
        } else if (sub == tune_cmd) {
            ctx.set_seed(seed);
            qnt::MlpModel base = qnt::parse_model(ctx.read(model_path));
            std::vector<qnt::TrainingRow> rows;
            std::optional<std::string> circuit_id;
            if (!results_path.empty()) {
                if (spec_path.empty()) {
                    throw qnt::ValidationError("tune --results needs --spec");
                }
                qnt::ExecutionResults r = qnt::parse_execution_results(ctx.read(results_path));
                qnt::ProgramSpec spec = qnt::parse_program_spec(ctx.read(spec_path));
                std::set<qnt::BitString> distinct;
                for (const qnt::ExecutionRecord &rec : r.records) {
                    distinct.insert(rec.input);
                }
                if (distinct.size() > max_tune_inputs) {
                    throw qnt::ValidationError("tuning results cover " + std::to_string(distinct.size()) +
                                               " inputs, the limit is " + std::to_string(max_tune_inputs));
                }
                rows = qnt::rows_from_results(r, spec);
                circuit_id = r.circuit_id;
            } else {
                if (circuit_path.empty() || inputs_path.empty() || noise_path.empty()) {
                    throw qnt::ValidationError("tune needs --circuit, --inputs and --noise (or --results and --spec)");
                }
                qnt::Circuit c = load_circuit(ctx, circuit_path);
                auto inputs = qnt::parse_inputs(ctx.read(inputs_path));
                qnt::NoiseModel nm = qnt::parse_noise_model(ctx.read(noise_path));
                rows = qnt::tuning_rows(c, inputs, nm, qnt::TuneOptions{max_tune_inputs, tune_reps, shots}, seed);
                circuit_id = c.name;
            }
            qnt::MlpModel tuned = qnt::fine_tune(base, rows, train.config(true, seed), circuit_id);
            ctx.write(out, qnt::model_to_json(tuned));
            std::cout << json{{"rows", rows.size()},
                              {"base_mae", qnt::evaluate_mae(base, rows)},
                              {"tuned_mae", qnt::evaluate_mae(tuned, rows)}}
                             .dump()
                      << "\n";
        } else if (sub == filter_cmd) {
            if (no_model && !model_path.empty()) {
                throw qnt::ValidationError("filter: --model and --none are exclusive");
            }
            if (!no_model && model_path.empty()) {
                throw qnt::ValidationError("filter needs --model or --none");
            }
            qnt::ExecutionResults r = qnt::parse_execution_results(ctx.read(results_path));
            std::optional<qnt::MlpModel> m;
            if (!no_model) {
                m = qnt::parse_model(ctx.read(model_path));
            }
            double tau = threshold.value_or(qnt::default_filter_threshold(r.shots));
            auto filtered = qnt::filter_results(m ? &*m : nullptr, r, tau);
            std::vector<qnt::FilteredOutput> list;
            for (auto &[_, f] : filtered) {
                list.push_back(f);
            }
            ctx.write(out, qnt::filtered_outputs_to_json(list));
        } else if (sub == assess_cmd) {
            qnt::ProgramSpec spec = qnt::parse_program_spec(ctx.read(spec_path));
            auto filtered = by_input(qnt::parse_filtered_outputs(ctx.read(filtered_path)));
            auto verdicts = qnt::assess(spec, filtered, shots, oracle);
            ctx.write(out, qnt::verdicts_to_json(verdicts));
            size_t failed = 0;
            for (const qnt::Verdict &v : verdicts) {
                failed += v.failed() ? 1 : 0;
            }
            std::cout << json{{"inputs", verdicts.size()}, {"failed", failed}}.dump() << "\n";
        } else if (sub == metrics_cmd) {
            CLI::App *which = metrics_cmd->get_subcommands().front();
            if (which == m_hell) {
                qnt::ProgramSpec spec = qnt::parse_program_spec(ctx.read(spec_path));
                qnt::ExecutionResults r = qnt::parse_execution_results(ctx.read(results_path));
                auto filtered = by_input(qnt::parse_filtered_outputs(ctx.read(filtered_path)));
                qnt::NoiseReduction nr = qnt::noise_reduction(spec, r, filtered);
                ctx.write(out, hellinger_csv(backend.empty() ? r.backend : backend, nr, per_input));
            } else if (which == m_f1) {
                if (truth_paths.size() != verdict_paths.size()) {
                    throw qnt::LengthMismatch("metrics f1: --truth and --verdicts need the same number of files");
                }
                qnt::ConfusionCounts cc;
                for (size_t i = 0; i < truth_paths.size(); i++) {
                    auto truth = qnt::parse_verdicts(ctx.read(truth_paths[i]));
                    auto assessed = qnt::parse_verdicts(ctx.read(verdict_paths[i]));
                    std::map<qnt::BitString, bool> t;
                    for (const qnt::Verdict &v : truth) {
                        t[v.input] = v.failed();
                    }
                    for (const qnt::Verdict &v : assessed) {
                        auto it = t.find(v.input);
                        if (it == t.end()) {
                            throw qnt::MissingSpecInput("metrics f1: no ground truth for input '" + v.input.str() +
                                                        "' in " + truth_paths[i]);
                        }
                        switch (qnt::classify_outcome(it->second, v.failed())) {
                            case qnt::Outcome::TP:
                                cc.tp++;
                                break;
                            case qnt::Outcome::FP:
                                cc.fp++;
                                break;
                            case qnt::Outcome::FN:
                                cc.fn++;
                                break;
                            case qnt::Outcome::TN:
                                cc.tn++;
                                break;
                        }
                    }
                }
                ctx.write(out, f1_csv(cc));
            } else {
                std::vector<std::vector<qnt::Verdict>> all;
                for (const std::string &p : verdict_paths) {
                    all.push_back(qnt::parse_verdicts(ctx.read(p)));
                }
                char buf[64];
                std::snprintf(buf, sizeof buf, "Score%%\n%.2f\n", qnt::score_percent(all));
                ctx.write(out, buf);
            }
        } else if (sub == gen_circ) {
            ctx.set_seed(seed);
            gen.seed = seed;
            if (min_diversity >= 0) {
                gen.min_diversity = min_diversity;
            }
            for (const std::string &p : probes) {
                gen.probe_inputs.emplace_back(p);
            }
            if (!pool.empty()) {
                gen.gate_pool.clear();
                for (const std::string &g : pool) {
                    auto t = qnt::gate_type_from_name(g);
                    if (!t) {
                        throw qnt::UnsupportedGate("gate pool: unknown gate '" + g + "'");
                    }
                    gen.gate_pool.push_back(*t);
                }
            }
            qnt::Suite suite = qnt::gen_suite(gen);
            json manifest = {{"seed", seed},
                             {"count", gen.count},
                             {"num_qubits", gen.num_qubits},
                             {"depth", gen.depth},
                             {"min_diversity", gen.min_diversity ? json(*gen.min_diversity) : json(nullptr)},
                             {"attempts", suite.attempts},
                             {"diversity_unreachable", suite.diversity_unreachable}};
            json pool_names = json::array();
            for (qnt::GateType g : gen.gate_pool) {
                pool_names.push_back(std::string(qnt::gate_name(g)));
            }
            manifest["gate_pool"] = pool_names;
            json entries = json::array();
            for (size_t i = 0; i < suite.circuits.size(); i++) {
                char name[32];
                std::snprintf(name, sizeof name, "%03zu.qasm", i);
                ctx.write((fs::path(out_dir) / name).string(), qnt::serialize_qasm(suite.circuits[i]));
                json e = {{"file", name}, {"name", suite.circuits[i].name}, {"candidate", suite.candidate_indices[i]}};
                if (!suite.diversity.empty()) {
                    e["diversity"] = suite.diversity[i];
                }
                entries.push_back(e);
            }
            manifest["circuits"] = entries;
            ctx.write((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
            if (suite.diversity_unreachable) {
                print_error("DiversityUnreachable", "attempt cap reached after " + std::to_string(suite.attempts) +
                                                        " candidates; wrote " +
                                                        std::to_string(suite.circuits.size()) + " circuits");
            }
        } else if (sub == inject) {
            qnt::Circuit c = load_circuit(ctx, circuit_path);
            if (versions > 0) {
                if (inject->count("--seed") == 0 || out_dir.empty()) {
                    throw qnt::ValidationError("inject-fault --versions needs --seed and --out-dir");
                }
                ctx.set_seed(seed);
                json faults = json::array();
                auto list = qnt::faulty_versions(c, versions, seed);
                for (size_t i = 0; i < list.size(); i++) {
                    auto &[fc, f] = list[i];
                    fc.name = c.name + "_f" + std::to_string(i + 1);
                    std::string file = fc.name + ".qasm";
                    ctx.write((fs::path(out_dir) / file).string(), qnt::serialize_qasm(fc));
                    json fj = json::parse(qnt::fault_spec_to_json(f));
                    fj["file"] = file;
                    faults.push_back(fj);
                }
                ctx.write((fs::path(out_dir) / "faults.json").string(),
                          json{{"circuit", c.name}, {"seed", seed}, {"faults", faults}}.dump(2) + "\n");
            } else {
                if (trigger.empty() || out.empty()) {
                    throw qnt::ValidationError("inject-fault needs --trigger and --out (or --versions)");
                }
                qnt::FaultSpec f{qnt::BitString(trigger), target, parse_variant(variant)};
                qnt::Circuit fc = qnt::inject_fault(c, f);
                ctx.write(out, qnt::serialize_qasm(fc));
            }
        } else if (sub == pipeline) {
            ctx.set_seed(seed);
            qnt::NoiseModel nm = qnt::parse_noise_model(ctx.read(noise_path));
            fs::path dir(out_dir);
            qnt::BaselineSuite b = qnt::default_baselines();
            ctx.write((dir / "config.json").string(), qnt::config_to_json(b.config));
            for (const qnt::Circuit &c : b.circuits) {
                ctx.write((dir / (c.name + ".qasm")).string(), qnt::serialize_qasm(c));
            }
            auto rows = qnt::generate_training_rows(b.circuits, b.config, nm, shots, seed);
            ctx.write((dir / "baseline_rows.csv").string(), qnt::training_rows_to_csv(rows));
            qnt::TrainResult base = qnt::train_baseline(rows, qnt::TrainConfig{.seed = seed}, nm.name);
            ctx.write((dir / "baseline_model.json").string(), qnt::model_to_json(base.model));

            qnt::Circuit cut = qnt::circuits::ghz(3);
            auto inputs = qnt::all_inputs(cut.num_input_qubits());
            auto tune_inputs = qnt::pick_tuning_inputs(inputs, 4);
            qnt::TuneOptions topts{4, tune_reps, shots};
            auto trows = qnt::tuning_rows(cut, tune_inputs, nm, topts, qnt::derive_seed(seed, {1}));
            qnt::TrainConfig tcfg = qnt::TrainConfig::tuning_defaults();
            tcfg.seed = seed;
            qnt::MlpModel tuned = qnt::fine_tune(base.model, trows, tcfg, cut.name);
            ctx.write((dir / "tuned_model.json").string(), qnt::model_to_json(tuned));

            qnt::ProgramSpec spec = qnt::build_program_spec(cut, inputs);
            ctx.write((dir / "spec.json").string(), qnt::program_spec_to_json(spec));
            qnt::ExecutionResults noisy = qnt::execute_inputs(cut, inputs, nm, shots, qnt::derive_seed(seed, {2}));
            ctx.write((dir / "results.json").string(), qnt::execution_results_to_json(noisy));
            auto filtered = qnt::filter_results(&tuned, noisy, qnt::default_filter_threshold(shots));
            std::vector<qnt::FilteredOutput> list;
            for (auto &[_, f] : filtered) {
                list.push_back(f);
            }
            ctx.write((dir / "filtered.json").string(), qnt::filtered_outputs_to_json(list));
            auto verdicts = qnt::assess(spec, filtered, shots, qnt::OracleConfig{});
            ctx.write((dir / "verdicts.json").string(), qnt::verdicts_to_json(verdicts));
            qnt::NoiseReduction nr = qnt::noise_reduction(spec, noisy, filtered);
            ctx.write((dir / "hellinger.csv").string(), hellinger_csv(nm.name, nr, true));
            std::cout << json{{"baseline_test_mae", base.test_mae},
                              {"HLin", nr.avg_noisy},
                              {"HLif", nr.avg_filtered},
                              {"improved_percent", nr.improved}}
                             .dump()
                      << "\n";
        }
    } catch (const qnt::Error &e) {
        print_error(e.kind(), e.what());
        return e.is_validation() ? 2 : 3;
    } catch (const std::exception &e) {
        print_error("RuntimeError", e.what());
        return 3;
    }
    return 0;
}
