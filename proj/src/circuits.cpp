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
#include "qkdna/circuits.hpp"

#include "qkdna/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace qkdna {

namespace {

// 2 arccos(1/sqrt 3): polar angle of the three non-|0> tetrahedron vertices.
const double kTetraPolar = 2.0 * std::acos(1.0 / std::sqrt(3.0));

Matrix2 fused(const BaseAngles &a) {
    const double c = std::cos(a.ry / 2);
    const double s = std::sin(a.ry / 2);
    const Complex p = std::polar(1.0, a.phase);
    return {Complex{c}, Complex{-s}, p * s, p * c};
}

const std::array<Matrix2, 4> &encoding_table() {
    static const std::array<Matrix2, 4> table{
        fused(base_angles(Base::A)), fused(base_angles(Base::T)),
        fused(base_angles(Base::G)), fused(base_angles(Base::C))};
    return table;
}

} // namespace

KernelParams::KernelParams(std::size_t num_layers) {
    if (num_layers == 0) {
        throw ConfigError("a kernel needs at least one layer");
    }
    angles_.assign(num_layers * kAnglesPerLayer, 0.0);
}

KernelParams::KernelParams(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty() || angles_.size() % kAnglesPerLayer != 0) {
        throw ConfigError("kernel angle count must be a positive multiple of 3, got " +
                          std::to_string(angles_.size()));
    }
}

LayerAngles KernelParams::layer(std::size_t l) const {
    const std::size_t k = l * kAnglesPerLayer;
    return {angles_.at(k), angles_.at(k + 1), angles_.at(k + 2)};
}

BaseAngles base_angles(Base base) noexcept {
    switch (base) {
    case Base::A:
        return {0.0, 0.0};
    case Base::T:
        return {kTetraPolar, 0.0};
    case Base::G:
        return {kTetraPolar, 2.0 * std::numbers::pi / 3.0};
    case Base::C:
        return {kTetraPolar, 4.0 * std::numbers::pi / 3.0};
    }
    return {};
}

const Matrix2 &encoding_matrix(Base base) noexcept {
    return encoding_table()[static_cast<std::size_t>(base)];
}

void encode_in_place(Statevector &state, const NucleotideSequence &seq) {
    if (seq.size() != state.num_qubits()) {
        throw DimensionError("sequence of length " + std::to_string(seq.size()) +
                             " cannot be encoded on " + std::to_string(state.num_qubits()) +
                             " qubits");
    }
    for (std::size_t q = 0; q < seq.size(); ++q) {
        if (seq[q] != Base::A) {
            state.unitary(q, encoding_matrix(seq[q]));
        }
    }
}

Statevector apply_encoding_layer(Statevector state, const NucleotideSequence &seq) {
    encode_in_place(state, seq);
    return state;
}

void param_layer_in_place(Statevector &state, const LayerAngles &angles) {
    state.rnx(angles.rnx);
    state.rz_all(angles.rz);
    state.ry_all(angles.ry);
}

Statevector apply_param_layer(Statevector state, const LayerAngles &angles) {
    param_layer_in_place(state, angles);
    return state;
}

Matrix2 layer_tail_matrix(Base base, double ry_angle) {
    const Matrix2 &e = encoding_matrix(base);
    const double c = std::cos(ry_angle / 2);
    const double s = std::sin(ry_angle / 2);
    // E * Ry, Ry = [[c, -s], [s, c]]
    return {e[0] * c + e[1] * s, -e[0] * s + e[1] * c, e[2] * c + e[3] * s,
            -e[2] * s + e[3] * c};
}

Statevector feature_state(const NucleotideSequence &seq, const KernelParams &params) {
    Statevector state(seq.size());
    for (std::size_t l = 0; l < params.num_layers(); ++l) {
        const LayerAngles a = params.layer(l);
        state.rnx(a.rnx);
        state.rz_all(a.rz);
        // Ry on qubit q and the encoding of seq[q] fuse into one matrix.
        std::array<Matrix2, 4> tail;
        for (const Base b : kAllBases) {
            tail[static_cast<std::size_t>(b)] = layer_tail_matrix(b, a.ry);
        }
        for (std::size_t q = 0; q < seq.size(); ++q) {
            state.unitary(q, tail[static_cast<std::size_t>(seq[q])]);
        }
    }
    return state;
}

} // namespace qkdna
