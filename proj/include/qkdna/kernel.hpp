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
#include "qkdna/sequence.hpp"
#include "qkdna/statevector.hpp"

#include <vector>

namespace qkdna {

/// K(x, y) = |<psi(y)|psi(x)>|^2 from two precomputed feature states.
[[nodiscard]] double kernel_from_states(const Statevector &x, const Statevector &y);

/// Variational quantum kernel value in [0, 1]. Throws DimensionError when
/// the sequences have different lengths.
[[nodiscard]] double kernel_eval(const NucleotideSequence &x, const NucleotideSequence &y,
                                 const KernelParams &params);

struct KernelEvaluation {
    double value = 0.0;
    std::vector<double> gradient; ///< dK/dtheta, same layout as KernelParams
};

/// Exact value and gradient via one adjoint sweep per feature circuit.
[[nodiscard]] KernelEvaluation kernel_value_and_gradient(const NucleotideSequence &x,
                                                         const NucleotideSequence &y,
                                                         const KernelParams &params);

[[nodiscard]] std::vector<double> kernel_gradient(const NucleotideSequence &x,
                                                  const NucleotideSequence &y,
                                                  const KernelParams &params);

} // namespace qkdna
