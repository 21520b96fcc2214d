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
#include "qkdna/training.hpp"

#include "qkdna/errors.hpp"
#include "qkdna/parallel.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qkdna {

namespace {

constexpr const char *kCurveHeader = "run,epoch,train_mse,test_order_accuracy,best_so_far";

void require_finite(std::span<const double> values, const char *what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw NumericalError(std::string("non-finite ") + what + " at index " +
                                 std::to_string(i));
        }
    }
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

double parse_double(const std::string &field, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(line, "invalid number \"" + field + "\"");
    }
    return v;
}

std::size_t parse_index(const std::string &field, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(line, "invalid integer \"" + field + "\"");
    }
    return v;
}

} // namespace

void TrainingConfig::validate() const {
    if (!std::isfinite(learning_rate) || learning_rate < 0.0) {
        throw ConfigError("learning rate must be finite and non-negative");
    }
    if (batch_size == 0) {
        throw ConfigError("batch size must be >= 1");
    }
    if (num_layers == 0) {
        throw ConfigError("number of layers must be >= 1");
    }
    if (runs == 0) {
        throw ConfigError("number of runs must be >= 1");
    }
}

double LearningCurve::best() const {
    if (records.empty()) {
        throw ConfigError("learning curve has no records");
    }
    return records.back().best_so_far;
}

double mean_squared_error(const SimilarityModel &model, std::span<const LabeledPair> pairs,
                          std::size_t jobs) {
    if (pairs.empty()) {
        throw ConfigError("mean squared error over an empty set");
    }
    std::vector<double> losses(pairs.size());
    parallel_for(pairs.size(), jobs, [&](std::size_t i) {
        losses[i] = mse_loss(model.predict(pairs[i].x, pairs[i].y), pairs[i].target);
    });
    return std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(pairs.size());
}

double train_epoch(SimilarityModel &model, std::span<const LabeledPair> pairs,
                   const TrainingConfig &config, Rng &rng) {
    if (pairs.empty()) {
        throw ConfigError("cannot train on an empty set of pairs");
    }
    config.validate();

    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(order), rng);

    const std::size_t p = model.parameter_count();
    std::vector<double> item_grads(config.batch_size * p);
    std::vector<double> item_values(config.batch_size);
    std::vector<double> grad(p);
    double loss_sum = 0.0;

    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
        const std::size_t m = std::min(config.batch_size, order.size() - start);
        parallel_for(m, config.jobs, [&](std::size_t k) {
            const LabeledPair &pair = pairs[order[start + k]];
            item_values[k] = model.value_and_gradient(
                pair.x, pair.y, std::span<double>(item_grads).subspan(k * p, p));
        });

        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            const double residual = item_values[k] - pairs[order[start + k]].target;
            loss_sum += residual * residual;
            const double *g = item_grads.data() + k * p;
            for (std::size_t j = 0; j < p; ++j) {
                grad[j] += 2.0 * residual * g[j];
            }
        }
        const double inv_m = 1.0 / static_cast<double>(m);
        for (double &g : grad) {
            g *= inv_m;
        }
        require_finite(grad, "gradient");

        auto theta = model.parameters();
        for (std::size_t j = 0; j < p; ++j) {
            theta[j] -= config.learning_rate * grad[j];
        }
        require_finite(theta, "parameter");
    }
    return loss_sum / static_cast<double>(pairs.size());
}

double order_accuracy(std::span<const TripletScores> scores,
                      std::span<const LabeledTriplet> triplets) {
    if (scores.size() != triplets.size()) {
        throw DimensionError("score count does not match triplet count");
    }
    if (triplets.empty()) {
        throw ConfigError("order accuracy over an empty set");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < triplets.size(); ++i) {
        const int truth = sign(triplets[i].s_ab - triplets[i].s_ac);
        if (truth == 0) {
            throw ValidationError("triplet " + std::to_string(i) +
                                  " has tied ground-truth similarities");
        }
        if (sign(scores[i].first - scores[i].second) == truth) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(triplets.size());
}

double order_accuracy(const SimilarityModel &model, std::span<const LabeledTriplet> triplets,
                      std::size_t jobs) {
    std::vector<TripletScores> scores(triplets.size());
    parallel_for(triplets.size(), jobs,
                 [&](std::size_t i) { scores[i] = model.score_triplet(triplets[i]); });
    return order_accuracy(scores, triplets);
}

LearningCurve train_run(SimilarityModel &model, const TrainingConfig &config,
                        std::span<const LabeledPair> train_pairs,
                        std::span<const LabeledTriplet> test_set, std::size_t run) {
    config.validate();
    Rng rng = make_stream(config.seed, run);
    model.initialize(rng);

    LearningCurve curve;
    curve.run = run;
    curve.records.reserve(config.epochs + 1);

    EpochRecord rec;
    rec.epoch = 0;
    rec.train_mse = mean_squared_error(model, train_pairs, config.jobs);
    rec.test_order_accuracy = order_accuracy(model, test_set, config.jobs);
    rec.best_so_far = rec.test_order_accuracy;
    curve.records.push_back(rec);

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        rec.epoch = epoch;
        rec.train_mse = train_epoch(model, train_pairs, config, rng);
        rec.test_order_accuracy = order_accuracy(model, test_set, config.jobs);
        rec.best_so_far = std::max(rec.best_so_far, rec.test_order_accuracy);
        curve.records.push_back(rec);
    }
    return curve;
}

double ci95_halfwidth(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw ConfigError("a confidence interval needs at least two runs");
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (const double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const boost::math::students_t dist(static_cast<double>(n - 1));
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    return t * sd / std::sqrt(static_cast<double>(n));
}

RunSummary aggregate_runs(std::span<const LearningCurve> curves) {
    if (curves.size() < 2) {
        throw ConfigError("run statistics need at least two runs, got " +
                          std::to_string(curves.size()));
    }
    const std::size_t epochs = curves.front().records.size();
    for (const auto &c : curves) {
        if (c.records.size() != epochs || epochs == 0) {
            throw ConfigError("learning curves must be non-empty and of equal length");
        }
    }

    RunSummary s;
    for (const auto &c : curves) {
        s.run_best.push_back(c.best());
    }
    s.mean = std::accumulate(s.run_best.begin(), s.run_best.end(), 0.0) /
             static_cast<double>(s.run_best.size());
    s.ci95_halfwidth = ci95_halfwidth(s.run_best);

    std::vector<double> column(curves.size());
    for (std::size_t e = 0; e < epochs; ++e) {
        for (std::size_t r = 0; r < curves.size(); ++r) {
            column[r] = curves[r].records[e].best_so_far;
        }
        s.mean_best_so_far.push_back(std::accumulate(column.begin(), column.end(), 0.0) /
                                     static_cast<double>(column.size()));
        s.ci95_best_so_far.push_back(ci95_halfwidth(column));
    }
    return s;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_curves(std::ostream &out, std::span<const LearningCurve> curves) {
    out << kCurveHeader << '\n';
    for (const auto &c : curves) {
        for (const auto &r : c.records) {
            out << c.run << ',' << r.epoch << ',' << format_double(r.train_mse) << ','
                << format_double(r.test_order_accuracy) << ',' << format_double(r.best_so_far)
                << '\n';
        }
    }
}

std::vector<LearningCurve> read_curves(std::istream &in) {
    std::string text;
    std::size_t line = 1;
    if (!std::getline(in, text) || text != kCurveHeader) {
        throw ParseError(line, std::string("expected header \"") + kCurveHeader + "\"");
    }
    std::vector<LearningCurve> curves;
    std::map<std::size_t, std::size_t> index_of_run;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(text);
        for (std::string f; std::getline(ss, f, ',');) {
            fields.push_back(f);
        }
        if (fields.size() != 5) {
            throw ParseError(line, "expected 5 fields, got " + std::to_string(fields.size()));
        }
        const std::size_t run = parse_index(fields[0], line);
        EpochRecord r{parse_index(fields[1], line), parse_double(fields[2], line),
                      parse_double(fields[3], line), parse_double(fields[4], line)};
        auto [it, inserted] = index_of_run.try_emplace(run, curves.size());
        if (inserted) {
            curves.push_back(LearningCurve{run, {}});
        }
        curves[it->second].records.push_back(r);
    }
    return curves;
}

std::string checkpoint_to_json(const Checkpoint &c) {
    nlohmann::ordered_json j;
    j["model"] = c.model;
    j["num_qubits"] = c.num_qubits;
    j["layers"] = c.layers;
    if (!c.kernel.empty()) {
        j["kernel"] = c.kernel;
    }
    j["theta"] = c.theta;
    j["seed"] = c.seed;
    j["run"] = c.run;
    j["epoch"] = c.epoch;
    return j.dump();
}

Checkpoint checkpoint_from_json(const std::string &text) {
    try {
        const auto j = nlohmann::json::parse(text);
        Checkpoint c;
        c.model = j.at("model").get<std::string>();
        c.num_qubits = j.at("num_qubits").get<std::size_t>();
        c.layers = j.at("layers").get<std::size_t>();
        c.kernel = j.value("kernel", std::string{});
        c.theta = j.at("theta").get<std::vector<double>>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.run = j.at("run").get<std::size_t>();
        c.epoch = j.at("epoch").get<std::size_t>();
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(1, std::string("invalid checkpoint: ") + e.what());
    }
}

} // namespace qkdna
