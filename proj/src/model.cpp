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
#include "qkdna/model.hpp"

#include "qkdna/errors.hpp"
#include "qkdna/kernel.hpp"

#include <algorithm>
#include <string>

namespace qkdna {

QuantumKernelModel::QuantumKernelModel(std::size_t num_qubits, std::size_t num_layers)
    : QuantumKernelModel(num_qubits, KernelParams(num_layers)) {}

QuantumKernelModel::QuantumKernelModel(std::size_t num_qubits, KernelParams params)
    : num_qubits_(num_qubits), params_(std::move(params)) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("number of qubits must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(num_qubits));
    }
}

std::string QuantumKernelModel::name() const {
    return "QKernel-" + std::to_string(params_.num_layers());
}

void QuantumKernelModel::initialize(Rng &rng) {
    for (double &theta : params_.values()) {
        theta = uniform_angle(rng);
    }
}

void QuantumKernelModel::check_width(const NucleotideSequence &s) const {
    if (s.size() != num_qubits_) {
        throw DimensionError("model expects sequences of length " + std::to_string(num_qubits_) +
                             ", got " + std::to_string(s.size()));
    }
}

double QuantumKernelModel::predict(const NucleotideSequence &x, const NucleotideSequence &y) const {
    check_width(x);
    check_width(y);
    return kernel_eval(x, y, params_);
}

double QuantumKernelModel::value_and_gradient(const NucleotideSequence &x,
                                              const NucleotideSequence &y,
                                              std::span<double> grad) const {
    check_width(x);
    check_width(y);
    KernelEvaluation ev = kernel_value_and_gradient(x, y, params_);
    std::copy(ev.gradient.begin(), ev.gradient.end(), grad.begin());
    return ev.value;
}

TripletScores QuantumKernelModel::score_triplet(const LabeledTriplet &t) const {
    check_width(t.a);
    check_width(t.b);
    check_width(t.c);
    const Statevector pa = feature_state(t.a, params_);
    return {kernel_from_states(pa, feature_state(t.b, params_)),
            kernel_from_states(pa, feature_state(t.c, params_))};
}

} // namespace qkdna
