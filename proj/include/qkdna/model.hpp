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
#pragma once

#include "qkdna/circuits.hpp"
#include "qkdna/dataset.hpp"
#include "qkdna/rng.hpp"
#include "qkdna/sequence.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qkdna {

/// Kernel scores for the two pairs of a triplet: (K(a, b), K(a, c)).
using TripletScores = std::pair<double, double>;

/// A trainable similarity function k(x, y) with a flat parameter vector.
class SimilarityModel {
  public:
    virtual ~SimilarityModel() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual std::size_t parameter_count() const = 0;
    [[nodiscard]] virtual std::span<double> parameters() = 0;
    [[nodiscard]] virtual std::span<const double> parameters() const = 0;

    /// Re-draws every trainable parameter from `rng`.
    virtual void initialize(Rng &rng) = 0;

    [[nodiscard]] virtual double predict(const NucleotideSequence &x,
                                         const NucleotideSequence &y) const = 0;

    /// Returns k(x, y) and writes dk/dparams into `grad` (size parameter_count()).
    virtual double value_and_gradient(const NucleotideSequence &x, const NucleotideSequence &y,
                                      std::span<double> grad) const = 0;

    [[nodiscard]] virtual TripletScores score_triplet(const LabeledTriplet &t) const {
        return {predict(t.a, t.b), predict(t.a, t.c)};
    }
};

/// The permutation-invariant variational quantum kernel.
class QuantumKernelModel final : public SimilarityModel {
  public:
    QuantumKernelModel(std::size_t num_qubits, std::size_t num_layers);
    QuantumKernelModel(std::size_t num_qubits, KernelParams params);

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] std::size_t parameter_count() const override { return params_.size(); }
    [[nodiscard]] std::span<double> parameters() override { return params_.values(); }
    [[nodiscard]] std::span<const double> parameters() const override { return params_.values(); }

    /// Uniform on (-pi, pi] for every angle.
    void initialize(Rng &rng) override;

    [[nodiscard]] double predict(const NucleotideSequence &x,
                                 const NucleotideSequence &y) const override;
    double value_and_gradient(const NucleotideSequence &x, const NucleotideSequence &y,
                              std::span<double> grad) const override;
    /// Shares the feature state of `a` between both pairs.
    [[nodiscard]] TripletScores score_triplet(const LabeledTriplet &t) const override;

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const KernelParams &params() const noexcept { return params_; }

  private:
    void check_width(const NucleotideSequence &s) const;

    std::size_t num_qubits_;
    KernelParams params_;
};

} // namespace qkdna
