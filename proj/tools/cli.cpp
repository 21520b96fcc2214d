// Copyright 2026 The qkdna Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cli.hpp"

#include "qkdna/baselines.hpp"
#include "qkdna/dataset.hpp"
#include "qkdna/edm.hpp"
#include "qkdna/errors.hpp"
#include "qkdna/model.hpp"
#include "qkdna/parallel.hpp"
#include "qkdna/training.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

namespace qkdna::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ResourceError("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_atomic(const fs::path &path, const std::string &content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw ResourceError("cannot write " + tmp.string());
        }
        f << content;
        f.close();
        if (!f) {
            throw ResourceError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw ResourceError("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

class Stopwatch {
  public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ordered_json file_entry(const fs::path &path) {
    ordered_json e;
    e["path"] = path.string();
    e["fnv1a64"] = file_checksum(path);
    return e;
}

void write_manifest(const fs::path &artifact, const ordered_json &manifest) {
    write_atomic(manifest_path(artifact), manifest.dump(2) + "\n");
}

std::string percent(double mean, std::optional<double> ci) {
    char buf[64];
    if (ci) {
        std::snprintf(buf, sizeof buf, "%.1f±%.1f%%", 100.0 * mean, 100.0 * *ci);
    } else {
        std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * mean);
    }
    return buf;
}

constexpr const char *kSingleRunNote = "confidence interval omitted: it needs at least two runs";

// gen-data

struct GenDataArgs {
    GenerationOptions gen;
    std::optional<std::size_t> budget;
    std::string out;
};

void gen_data(const GenDataArgs &a, std::ostream &out) {
    Stopwatch total;
    GenerationOptions opts = a.gen;
    opts.node_budget = a.budget;
    const auto triplets = generate_triplets(opts);
    const double gen_seconds = total.seconds();
    save_triplets(a.out, triplets);

    ordered_json m;
    m["command"] = "gen-data";
    m["config"] = {{"seed", opts.seed},
                   {"count", opts.count},
                   {"length", opts.length},
                   {"out", a.out},
                   {"jobs", opts.jobs},
                   {"budget", a.budget ? ordered_json(*a.budget) : ordered_json(nullptr)}};
    m["seeds"] = {{"dataset", opts.seed}};
    m["datasets"] = ordered_json::array();
    m["artifacts"] = ordered_json::array({file_entry(a.out)});
    m["timings"] = {{"generate_seconds", gen_seconds}, {"total_seconds", total.seconds()}};
    write_manifest(a.out, m);
    out << "wrote " << triplets.size() << " triplets to " << a.out << "\n";
}

// train-quantum / train-classical

struct TrainArgs {
    std::string train;
    std::string test;
    std::size_t layers = 24;
    double lr = 0.01;
    std::size_t epochs = 100;
    std::size_t batch = 1;
    std::size_t runs = 10;
    std::uint64_t seed = 0;
    std::string out_curves;
    std::string out_checkpoints;
    std::size_t jobs = 1;
    std::string kernel = "rbf";
};

using ModelFactory = std::function<std::unique_ptr<SimilarityModel>(std::size_t length)>;

std::size_t common_length(const std::vector<LabeledTriplet> &train,
                          const std::vector<LabeledTriplet> &test) {
    if (train.empty() || test.empty()) {
        throw ValidationError("training and test sets must be non-empty");
    }
    const std::size_t n = train.front().a.size();
    auto check = [n](const std::vector<LabeledTriplet> &set, const char *role) {
        for (const auto &t : set) {
            if (t.a.size() != n) {
                throw ValidationError(std::string(role) + " set mixes sequence lengths");
            }
        }
    };
    check(train, "training");
    check(test, "test");
    return n;
}

void train_models(const std::string &command, const TrainArgs &a, const ModelFactory &factory,
                  bool quantum, std::ostream &out) {
    Stopwatch total;
    const auto train = load_triplets(a.train);
    const auto test = load_triplets(a.test);
    const std::size_t n = common_length(train, test);
    const auto pairs = training_pairs(train);
    const double load_seconds = total.seconds();

    TrainingConfig cfg;
    cfg.learning_rate = a.lr;
    cfg.epochs = a.epochs;
    cfg.num_layers = a.layers;
    cfg.batch_size = a.batch;
    cfg.runs = a.runs;
    cfg.seed = a.seed;
    cfg.jobs = a.jobs;
    cfg.validate();

    const auto probe = factory(n);
    const std::string model_name = probe->name();
    out << model_name << ": " << probe->parameter_count() << " parameters, " << pairs.size()
        << " training pairs, " << test.size() << " test triplets\n";

    std::vector<LearningCurve> curves;
    std::vector<Checkpoint> checkpoints;
    ordered_json run_seconds = ordered_json::array();
    for (std::size_t run = 0; run < a.runs; ++run) {
        Stopwatch sw;
        auto model = factory(n);
        curves.push_back(train_run(*model, cfg, pairs, test, run));
        run_seconds.push_back(sw.seconds());

        Checkpoint c;
        c.model = model_name;
        c.num_qubits = n;
        c.layers = quantum ? a.layers : 0;
        c.kernel = quantum ? "" : a.kernel;
        c.theta.assign(model->parameters().begin(), model->parameters().end());
        c.seed = a.seed;
        c.run = run;
        c.epoch = a.epochs;
        checkpoints.push_back(std::move(c));
        out << "run " << run << ": best order accuracy " << percent(curves.back().best(), {})
            << "\n";
    }

    std::ostringstream csv;
    write_curves(csv, curves);
    write_atomic(a.out_curves, csv.str());
    ordered_json artifacts = ordered_json::array({file_entry(a.out_curves)});
    if (!a.out_checkpoints.empty()) {
        std::string lines;
        for (const auto &c : checkpoints) {
            lines += checkpoint_to_json(c);
            lines += '\n';
        }
        write_atomic(a.out_checkpoints, lines);
        artifacts.push_back(file_entry(a.out_checkpoints));
    }

    ordered_json summary;
    std::vector<double> bests;
    for (const auto &c : curves) {
        bests.push_back(c.best());
    }
    summary["run_best"] = bests;
    if (curves.size() >= 2) {
        const RunSummary s = aggregate_runs(curves);
        summary["mean"] = s.mean;
        summary["ci95_halfwidth"] = s.ci95_halfwidth;
        out << model_name << ": mean best order accuracy " << percent(s.mean, s.ci95_halfwidth)
            << " over " << curves.size() << " runs\n";
    } else {
        summary["mean"] = bests.front();
        summary["ci95_halfwidth"] = nullptr;
        summary["note"] = kSingleRunNote;
        out << model_name << ": best order accuracy " << percent(bests.front(), {}) << " ("
            << kSingleRunNote << ")\n";
    }

    ordered_json config = {{"train", a.train}, {"test", a.test}};
    if (quantum) {
        config["layers"] = a.layers;
    } else {
        config["kernel"] = a.kernel;
    }
    config.update(ordered_json{{"lr", a.lr},
                               {"epochs", a.epochs},
                               {"batch", a.batch},
                               {"runs", a.runs},
                               {"seed", a.seed},
                               {"out_curves", a.out_curves},
                               {"out_checkpoints", a.out_checkpoints},
                               {"jobs", a.jobs}});

    ordered_json m;
    m["command"] = command;
    m["model"] = model_name;
    m["parameter_count"] = probe->parameter_count();
    m["sequence_length"] = n;
    m["config"] = config;
    ordered_json streams = ordered_json::array();
    for (std::size_t run = 0; run < a.runs; ++run) {
        streams.push_back({{"run", run}, {"stream", {a.seed, run}}});
    }
    m["seeds"] = {{"seed", a.seed}, {"runs", streams}};
    ordered_json train_entry = file_entry(a.train);
    train_entry["role"] = "train";
    train_entry["triplets"] = train.size();
    ordered_json test_entry = file_entry(a.test);
    test_entry["role"] = "test";
    test_entry["triplets"] = test.size();
    m["datasets"] = ordered_json::array({train_entry, test_entry});
    m["artifacts"] = artifacts;
    m["summary"] = summary;
    m["timings"] = {{"load_seconds", load_seconds},
                    {"run_seconds", run_seconds},
                    {"total_seconds", total.seconds()}};
    write_manifest(a.out_curves, m);
}

// report

struct ReportArgs {
    std::vector<std::string> curves;
    std::string out_plot;
};

void report(const ReportArgs &a, std::ostream &out) {
    Stopwatch total;
    std::ostringstream table;
    std::ostringstream plot;
    plot << "model,epoch,mean_best_so_far,ci95_halfwidth\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %8s %5s  %s\n", "model", "params", "runs",
                  "best order accuracy");
    table << line;

    ordered_json inputs = ordered_json::array();
    for (const auto &file : a.curves) {
        const std::string text = read_file(file);
        std::istringstream in(text);
        const auto curves = read_curves(in);
        if (curves.empty()) {
            throw ValidationError(file + ": no learning curves");
        }
        inputs.push_back(file_entry(file));

        std::string label = fs::path(file).stem().string();
        std::string params = "-";
        const fs::path mpath = manifest_path(file);
        if (fs::exists(mpath)) {
            const auto m = ordered_json::parse(read_file(mpath), nullptr, false);
            if (m.is_object() && m.contains("model")) {
                label = m["model"].get<std::string>();
                params = std::to_string(m.value("parameter_count", std::size_t{0}));
            }
        }

        std::vector<double> mean_curve;
        std::vector<std::optional<double>> ci_curve;
        double mean = 0.0;
        std::optional<double> ci;
        if (curves.size() >= 2) {
            const RunSummary s = aggregate_runs(curves);
            mean = s.mean;
            ci = s.ci95_halfwidth;
            mean_curve = s.mean_best_so_far;
            ci_curve.assign(s.ci95_best_so_far.begin(), s.ci95_best_so_far.end());
        } else {
            mean = curves.front().best();
            for (const auto &r : curves.front().records) {
                mean_curve.push_back(r.best_so_far);
            }
            ci_curve.assign(mean_curve.size(), std::nullopt);
        }
        std::snprintf(line, sizeof line, "%-16s %8s %5zu  %s\n", label.c_str(), params.c_str(),
                      curves.size(), percent(mean, ci).c_str());
        table << line;
        for (std::size_t e = 0; e < mean_curve.size(); ++e) {
            plot << label << ',' << curves.front().records[e].epoch << ','
                 << format_double(mean_curve[e]) << ','
                 << (ci_curve[e] ? format_double(*ci_curve[e]) : std::string()) << '\n';
        }
    }

    out << table.str();
    if (a.out_plot.empty()) {
        out << "\n" << plot.str();
        return;
    }
    write_atomic(a.out_plot, plot.str());
    ordered_json m;
    m["command"] = "report";
    m["config"] = {{"curves", a.curves}, {"out_plot", a.out_plot}};
    m["seeds"] = ordered_json::object();
    m["datasets"] = ordered_json::array();
    m["inputs"] = inputs;
    m["artifacts"] = ordered_json::array({file_entry(a.out_plot)});
    m["timings"] = {{"total_seconds", total.seconds()}};
    write_manifest(a.out_plot, m);
    out << "plot data written to " << a.out_plot << "\n";
}

void add_training_flags(CLI::App &cmd, TrainArgs &a) {
    cmd.add_option("--train", a.train, "Training triplet file")->required();
    cmd.add_option("--test", a.test, "Test triplet file")->required();
    cmd.add_option("--lr", a.lr, "Learning rate")->capture_default_str();
    cmd.add_option("--epochs", a.epochs, "Training epochs")->capture_default_str();
    cmd.add_option("--batch", a.batch, "Mini-batch size")->capture_default_str();
    cmd.add_option("--runs", a.runs, "Independent runs")->capture_default_str();
    cmd.add_option("--seed", a.seed, "Base seed for initialisation and shuffling")
        ->capture_default_str();
    cmd.add_option("--out-curves", a.out_curves, "Learning-curve CSV output")->required();
    cmd.add_option("--out-checkpoints", a.out_checkpoints, "Checkpoint JSON-lines output");
    cmd.add_option("--jobs", a.jobs, "Worker threads (default from QKDNA_JOBS)")
        ->capture_default_str();
}

} // namespace

std::string file_checksum(const fs::path &path) { return hex64(fnv1a64(read_file(path))); }

fs::path manifest_path(const fs::path &artifact) {
    fs::path p = artifact;
    p += ".manifest.json";
    return p;
}

int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Permutation-invariant quantum kernels for DNA sequence similarity", "qkdna"};
    app.require_subcommand(1);

    GenDataArgs gen;
    gen.gen.jobs = default_jobs();
    auto *gen_cmd = app.add_subcommand("gen-data", "Generate labelled triplets");
    gen_cmd->add_option("--seed", gen.gen.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--count", gen.gen.count, "Number of triplets")->capture_default_str();
    gen_cmd->add_option("--length", gen.gen.length, "Sequence length")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output triplet file")->required();
    gen_cmd->add_option("--jobs", gen.gen.jobs, "Worker threads (default from QKDNA_JOBS)")
        ->capture_default_str();
    gen_cmd->add_option("--budget", gen.budget, "Node budget per EDM search");

    TrainArgs tq;
    tq.jobs = default_jobs();
    auto *tq_cmd = app.add_subcommand("train-quantum", "Train the quantum kernel");
    add_training_flags(*tq_cmd, tq);
    tq_cmd->add_option("--layers", tq.layers, "Data re-uploading layers")->capture_default_str();

    TrainArgs tc;
    tc.jobs = default_jobs();
    auto *tc_cmd = app.add_subcommand("train-classical", "Train a classical deep-kernel baseline");
    add_training_flags(*tc_cmd, tc);
    tc_cmd->add_option("--kernel", tc.kernel, "Kernel head")
        ->check(CLI::IsMember({"rbf", "cosine", "poly2"}))
        ->capture_default_str();

    std::string edm_a;
    std::string edm_b;
    std::optional<std::size_t> edm_budget;
    auto *edm_cmd = app.add_subcommand("edm", "Exact edit distance with moves");
    edm_cmd->add_option("--a", edm_a, "First sequence")->required();
    edm_cmd->add_option("--b", edm_b, "Second sequence")->required();
    edm_cmd->add_option("--budget", edm_budget, "Node budget for the search");

    ReportArgs rep;
    auto *rep_cmd = app.add_subcommand("report", "Summarise learning curves");
    rep_cmd->add_option("--curves", rep.curves, "Learning-curve CSV files")->required();
    rep_cmd->add_option("--out-plot", rep.out_plot, "Write best-so-far plot data here");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        if (*gen_cmd) {
            gen_data(gen, out);
        } else if (*tq_cmd) {
            train_models(
                "train-quantum", tq,
                [&](std::size_t n) { return std::make_unique<QuantumKernelModel>(n, tq.layers); },
                true, out);
        } else if (*tc_cmd) {
            const KernelHead head = parse_head(tc.kernel);
            train_models(
                "train-classical", tc,
                [&](std::size_t n) { return std::make_unique<ClassicalKernelModel>(head, n); },
                false, out);
        } else if (*edm_cmd) {
            const NucleotideSequence a(edm_a);
            const NucleotideSequence b(edm_b);
            out << edm_exact(a, b, edm_budget) << "\n";
        } else if (*rep_cmd) {
            report(rep, out);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qkdna::cli
