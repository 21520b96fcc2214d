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
 * Classical deep-kernel comparators. A sequence is embedded base by base
 * (4-dim vectors), flattened, and passed through Linear(4N, 16) -> ReLU ->
 * Linear(16, 16). A kernel head compares the two 16-dim features:
 *
 *   cosine  u.v / (|u| |v|)             no parameters
 *   rbf     exp(-gamma |u - v|^2)       gamma = exp(log_gamma)
 *   poly2   (alpha u.v + beta)^2        alpha, beta
 *
 * For N = 8 the feature map has 16 + 528 + 272 = 816 parameters.
 */
#pragma once

#include "qkdna/model.hpp"
#include "qkdna/sequence.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qkdna {

enum class KernelHead { Cosine, Rbf, Poly2 };

[[nodiscard]] std::string_view head_name(KernelHead head) noexcept;
/// Accepts "cosine", "rbf" or "poly2"; throws ConfigError otherwise.
[[nodiscard]] KernelHead parse_head(std::string_view name);
[[nodiscard]] std::size_t head_parameter_count(KernelHead head) noexcept;

inline constexpr std::size_t kEmbeddingDim = 4;
inline constexpr std::size_t kHiddenDim = 16;
inline constexpr std::size_t kFeatureDim = 16;

using FeatureVector = std::array<double, kFeatureDim>;

/// Evaluates the kernel head on two feature vectors.
[[nodiscard]] double classical_kernel(const FeatureVector &u, const FeatureVector &v,
                                      KernelHead head, std::span<const double> head_params);

class ClassicalKernelModel final : public SimilarityModel {
  public:
    /// Zero-initialised model for sequences of `length` bases.
    explicit ClassicalKernelModel(KernelHead head, std::size_t length = 8);

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] std::size_t parameter_count() const override { return theta_.size(); }
    [[nodiscard]] std::span<double> parameters() override { return theta_; }
    [[nodiscard]] std::span<const double> parameters() const override { return theta_; }

    /// Embedding and affine weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)),
    /// biases zero, head at its defaults.
    void initialize(Rng &rng) override;

    [[nodiscard]] double predict(const NucleotideSequence &x,
                                 const NucleotideSequence &y) const override;
    double value_and_gradient(const NucleotideSequence &x, const NucleotideSequence &y,
                              std::span<double> grad) const override;

    [[nodiscard]] FeatureVector features(const NucleotideSequence &seq) const;

    [[nodiscard]] KernelHead head() const noexcept { return head_; }
    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] std::size_t feature_map_parameter_count() const noexcept;

    // Offsets into parameters().
    [[nodiscard]] std::size_t embedding_offset() const noexcept { return 0; }
    [[nodiscard]] std::size_t w1_offset() const noexcept { return 16; }
    [[nodiscard]] std::size_t b1_offset() const noexcept { return w1_offset() + kHiddenDim * input_dim(); }
    [[nodiscard]] std::size_t w2_offset() const noexcept { return b1_offset() + kHiddenDim; }
    [[nodiscard]] std::size_t b2_offset() const noexcept { return w2_offset() + kFeatureDim * kHiddenDim; }
    [[nodiscard]] std::size_t head_offset() const noexcept { return b2_offset() + kFeatureDim; }

  private:
    struct Activations {
        std::vector<double> input;  // flattened embedding
        std::array<double, kHiddenDim> pre{};
        std::array<double, kHiddenDim> hidden{};
        FeatureVector out{};
    };

    [[nodiscard]] std::size_t input_dim() const noexcept { return kEmbeddingDim * length_; }
    void check_length(const NucleotideSequence &seq) const;
    void forward(const NucleotideSequence &seq, Activations &act) const;
    void backward(const NucleotideSequence &seq, const Activations &act,
                  const FeatureVector &d_out, std::span<double> grad) const;

    KernelHead head_;
    std::size_t length_;
    std::vector<double> theta_;
};

/// Gradient of (k(x, y) - target)^2 with respect to every parameter.
/// Throws NumericalError if any value is non-finite.
[[nodiscard]] std::vector<double> classical_backward(const ClassicalKernelModel &model,
                                                     const NucleotideSequence &x,
                                                     const NucleotideSequence &y, double target);

} // namespace qkdna
