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
 * Dense pure-state simulator restricted to the gates used by the kernel
 * circuits: Ry, Rz, P, arbitrary single-qubit unitaries, SWAP and the
 * all-qubit parity rotation R_NX(t) = exp(-i t/2 X^{(x)n}).
 *
 * Qubit 0 is the most significant bit of the amplitude index.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qkdna {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix [m00, m01, m10, m11].
using Matrix2 = std::array<Complex, 4>;

inline constexpr std::size_t kMaxQubits = 12;

class Statevector {
  public:
    /// |0...0> on `num_qubits` qubits. Throws ConfigError outside [1, 12].
    explicit Statevector(std::size_t num_qubits);

    /// Takes ownership of `amplitudes`; the length must be a power of two
    /// matching 1..12 qubits. The vector is not renormalised.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;

    // In-place gate application. Each throws DimensionError for a bad qubit.
    void ry(std::size_t qubit, double angle);
    void rz(std::size_t qubit, double angle);
    void phase(std::size_t qubit, double angle);
    void unitary(std::size_t qubit, const Matrix2 &m);
    void swap(std::size_t a, std::size_t b);
    void rnx(double angle);

    /// Rz(angle) on every qubit, applied as one diagonal pass.
    void rz_all(double angle);
    /// Ry(angle) on every qubit.
    void ry_all(double angle);

    /// Bit mask selecting `qubit` within an amplitude index.
    [[nodiscard]] std::size_t bit_of(std::size_t qubit) const;

  private:
    Statevector(std::size_t num_qubits, std::vector<Complex> amps)
        : num_qubits_(num_qubits), amps_(std::move(amps)) {}

    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

[[nodiscard]] Statevector zero_state(std::size_t num_qubits);

[[nodiscard]] Statevector apply_ry(Statevector state, std::size_t qubit, double angle);
[[nodiscard]] Statevector apply_rz(Statevector state, std::size_t qubit, double angle);
[[nodiscard]] Statevector apply_phase(Statevector state, std::size_t qubit, double angle);
[[nodiscard]] Statevector apply_rnx(Statevector state, double angle);
[[nodiscard]] Statevector apply_swap(Statevector state, std::size_t a, std::size_t b);

/// <a|b> = sum_i conj(a_i) b_i. Throws DimensionError on mismatched widths.
[[nodiscard]] Complex inner_product(const Statevector &a, const Statevector &b);

} // namespace qkdna
