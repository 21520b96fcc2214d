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
/**
 * @file
 * Mini-batch SGD on the squared error between k(x, y) and the normalised
 * EDM similarity, evaluated by order accuracy on held-out triplets.
 */
#pragma once

#include "qkdna/dataset.hpp"
#include "qkdna/model.hpp"
#include "qkdna/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qkdna {

struct TrainingConfig {
    double learning_rate = 0.01;
    std::size_t epochs = 100;
    std::size_t num_layers = 24;
    /// 1 gives plain per-sample SGD.
    std::size_t batch_size = 1;
    std::size_t runs = 10;
    std::uint64_t seed = 0;
    /// Threads used for gradients inside a batch and for test sweeps.
    std::size_t jobs = 1;

    /// Throws ConfigError for a negative or non-finite learning rate, or a
    /// zero batch size, layer count, or run count.
    void validate() const;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double train_mse = 0.0;
    double test_order_accuracy = 0.0;
    double best_so_far = 0.0;
};

/// Epoch 0 is the evaluation of the freshly initialised model.
struct LearningCurve {
    std::size_t run = 0;
    std::vector<EpochRecord> records;

    [[nodiscard]] double best() const;
};

struct RunSummary {
    std::vector<double> run_best;
    double mean = 0.0;
    double ci95_halfwidth = 0.0;
    /// Mean and 95% half-width of best_so_far across runs, per epoch.
    std::vector<double> mean_best_so_far;
    std::vector<double> ci95_best_so_far;
};

[[nodiscard]] inline double mse_loss(double pred, double target) {
    const double e = pred - target;
    return e * e;
}

/// Mean squared error of `model` over `pairs`.
[[nodiscard]] double mean_squared_error(const SimilarityModel &model,
                                        std::span<const LabeledPair> pairs, std::size_t jobs = 1);

/// One pass over `pairs` in a fresh random order. Each mini-batch applies
/// theta <- theta - lr * mean_i 2 (k_i - s_i) dk_i/dtheta. Returns the mean
/// pre-update loss over the epoch. Throws NumericalError on a non-finite
/// gradient or parameter.
double train_epoch(SimilarityModel &model, std::span<const LabeledPair> pairs,
                   const TrainingConfig &config, Rng &rng);

/// Fraction of triplets whose predicted ordering of (k(a,b), k(a,c)) matches
/// the ordering of (s_ab, s_ac). Predicted ties count as wrong. Throws
/// ValidationError on a ground-truth tie.
[[nodiscard]] double order_accuracy(std::span<const TripletScores> scores,
                                    std::span<const LabeledTriplet> triplets);
[[nodiscard]] double order_accuracy(const SimilarityModel &model,
                                    std::span<const LabeledTriplet> triplets, std::size_t jobs = 1);

/// Initialises `model` from stream (config.seed, run), then trains for
/// config.epochs, evaluating the test set after every epoch.
[[nodiscard]] LearningCurve train_run(SimilarityModel &model, const TrainingConfig &config,
                                      std::span<const LabeledPair> train_pairs,
                                      std::span<const LabeledTriplet> test_set, std::size_t run);

/// Two-sided 95% Student-t half-width of the mean. Zero for fewer than two
/// values is not defined; throws ConfigError.
[[nodiscard]] double ci95_halfwidth(std::span<const double> values);

/// Throws ConfigError for fewer than two curves or curves of unequal length.
[[nodiscard]] RunSummary aggregate_runs(std::span<const LearningCurve> curves);

/// CSV with header `run,epoch,train_mse,test_order_accuracy,best_so_far`.
void write_curves(std::ostream &out, std::span<const LearningCurve> curves);
/// Parses the CSV written by write_curves. Throws ParseError on bad rows.
[[nodiscard]] std::vector<LearningCurve> read_curves(std::istream &in);

/// Model state written after a run.
struct Checkpoint {
    std::string model;
    std::size_t num_qubits = 0;
    std::size_t layers = 0;          ///< quantum only
    std::string kernel;              ///< classical head name, empty for quantum
    std::vector<double> theta;
    std::uint64_t seed = 0;
    std::size_t run = 0;
    std::size_t epoch = 0;

    friend bool operator==(const Checkpoint &, const Checkpoint &) = default;
};

[[nodiscard]] std::string checkpoint_to_json(const Checkpoint &c);
/// Throws ParseError on malformed input.
[[nodiscard]] Checkpoint checkpoint_from_json(const std::string &text);

/// Shortest decimal text that parses back to exactly `v`.
[[nodiscard]] std::string format_double(double v);

} // namespace qkdna
