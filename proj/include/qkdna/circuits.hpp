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
 * Circuit builders for the DNA kernel.
 *
 * Encoding layer V(x): qubit i carries base x[i] as one of the four
 * tetrahedral (SIC-POVM) single-qubit states, prepared by Ry then P.
 *
 * Parameterized layer U(t): R_NX(t_rnx), then Rz(t_rz) on every qubit,
 * then Ry(t_ry) on every qubit. All three gates commute with every qubit
 * SWAP, so U(t) is permutation invariant.
 *
 * Feature state: |psi_t(x)> = V(x) U(t_L) ... V(x) U(t_1) |0>.
 */
#pragma once

#include "qkdna/sequence.hpp"
#include "qkdna/statevector.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qkdna {

struct LayerAngles {
    double rnx = 0.0;
    double rz = 0.0;
    double ry = 0.0;
};

/// Trainable angles of an L-layer kernel, stored layer-major as
/// (rnx, rz, ry) triples.
class KernelParams {
  public:
    static constexpr std::size_t kAnglesPerLayer = 3;

    /// All angles zero. Throws ConfigError when `num_layers` is 0.
    explicit KernelParams(std::size_t num_layers);
    /// Throws ConfigError unless `angles` is a non-empty multiple of 3.
    explicit KernelParams(std::vector<double> angles);

    [[nodiscard]] std::size_t num_layers() const noexcept { return angles_.size() / kAnglesPerLayer; }
    [[nodiscard]] std::size_t size() const noexcept { return angles_.size(); }

    [[nodiscard]] LayerAngles layer(std::size_t l) const;

    [[nodiscard]] std::span<const double> values() const noexcept { return angles_; }
    [[nodiscard]] std::span<double> values() noexcept { return angles_; }

  private:
    std::vector<double> angles_;
};

struct BaseAngles {
    double ry = 0.0;
    double phase = 0.0;
};

/// Ry and P angles that prepare the encoding state of `base` from |0>.
[[nodiscard]] BaseAngles base_angles(Base base) noexcept;

/// The fused single-qubit unitary P(phase) * Ry(ry) for `base`.
[[nodiscard]] const Matrix2 &encoding_matrix(Base base) noexcept;

/// Applies V(seq): qubit i receives the encoding of seq[i].
/// Throws DimensionError if seq.size() != state.num_qubits().
void encode_in_place(Statevector &state, const NucleotideSequence &seq);
[[nodiscard]] Statevector apply_encoding_layer(Statevector state, const NucleotideSequence &seq);

void param_layer_in_place(Statevector &state, const LayerAngles &angles);
[[nodiscard]] Statevector apply_param_layer(Statevector state, const LayerAngles &angles);

/// encoding_matrix(base) * Ry(ry_angle): the last two steps of a
/// re-uploading block on one qubit.
[[nodiscard]] Matrix2 layer_tail_matrix(Base base, double ry_angle);

/// |psi_params(seq)> on seq.size() qubits.
[[nodiscard]] Statevector feature_state(const NucleotideSequence &seq, const KernelParams &params);

} // namespace qkdna
