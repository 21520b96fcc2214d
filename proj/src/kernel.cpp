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
#include "qkdna/kernel.hpp"

#include "qkdna/errors.hpp"

#include <array>
#include <bit>
#include <span>
#include <string>

namespace qkdna {

namespace {

constexpr Complex kMinusHalfI{0.0, -0.5};

void check_pair(const NucleotideSequence &x, const NucleotideSequence &y) {
    if (x.size() != y.size()) {
        throw DimensionError("kernel inputs must have equal length, got " +
                             std::to_string(x.size()) + " and " + std::to_string(y.size()));
    }
}

Matrix2 adjoint(const Matrix2 &m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

// Undoes (E * Ry) on qubit `mask` for both vectors, returning the
// <bra|Y_q|ket> term. Y_q commutes with Ry_q and with every gate on other
// qubits, so evaluating it after the inverse is equivalent to evaluating it
// right after the Ry layer.
Complex undo_tail_qubit(std::span<Complex> ket, std::span<Complex> bra, std::size_t mask,
                        const Matrix2 &inv) {
    Complex acc{};
    const std::size_t dim = ket.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i0 = base; i0 < base + mask; ++i0) {
            const std::size_t i1 = i0 + mask;
            const Complex k0 = inv[0] * ket[i0] + inv[1] * ket[i1];
            const Complex k1 = inv[2] * ket[i0] + inv[3] * ket[i1];
            const Complex b0 = inv[0] * bra[i0] + inv[1] * bra[i1];
            const Complex b1 = inv[2] * bra[i0] + inv[3] * bra[i1];
            ket[i0] = k0;
            ket[i1] = k1;
            bra[i0] = b0;
            bra[i1] = b1;
            // conj(b0) (-i k1) + conj(b1) (i k0) without the factor i
            acc += std::conj(b1) * k0 - std::conj(b0) * k1;
        }
    }
    return Complex{0.0, 1.0} * acc;
}

struct HeadTerms {
    Complex z_sum;
    Complex parity;
};

// Undoes Rz on every qubit and then R_NX (unless `undo_rnx` is false),
// returning <bra|sum_q Z_q|ket> and <bra|X..X|ket>. Each generator commutes
// with its own rotation.
HeadTerms undo_head(std::span<Complex> ket, std::span<Complex> bra, std::size_t num_qubits,
                    const LayerAngles &a, bool undo_rnx) {
    const auto n = static_cast<int>(num_qubits);
    std::array<Complex, kMaxQubits + 1> inv_phase{};
    for (int w = 0; w <= n; ++w) {
        inv_phase[static_cast<std::size_t>(w)] = std::polar(1.0, a.rz / 2 * (n - 2 * w));
    }
    const double c = std::cos(a.rnx / 2);
    const Complex pis{0.0, std::sin(a.rnx / 2)};

    HeadTerms t{};
    const std::size_t all = ket.size() - 1;
    for (std::size_t i = 0; i < ket.size() / 2; ++i) {
        const std::size_t j = i ^ all;
        const int wi = std::popcount(i);
        const int wj = n - wi;
        Complex ki = ket[i] * inv_phase[static_cast<std::size_t>(wi)];
        Complex kj = ket[j] * inv_phase[static_cast<std::size_t>(wj)];
        Complex bi = bra[i] * inv_phase[static_cast<std::size_t>(wi)];
        Complex bj = bra[j] * inv_phase[static_cast<std::size_t>(wj)];
        t.z_sum += std::conj(bi) * ki * static_cast<double>(n - 2 * wi) +
                   std::conj(bj) * kj * static_cast<double>(n - 2 * wj);
        t.parity += std::conj(bi) * kj + std::conj(bj) * ki;
        if (undo_rnx) {
            const Complex ki2 = c * ki + pis * kj;
            const Complex kj2 = c * kj + pis * ki;
            const Complex bi2 = c * bi + pis * bj;
            const Complex bj2 = c * bj + pis * bi;
            ki = ki2;
            kj = kj2;
            bi = bi2;
            bj = bj2;
        }
        ket[i] = ki;
        ket[j] = kj;
        bra[i] = bi;
        bra[j] = bj;
    }
    return t;
}

// Writes d<bra|psi(seq)>/dtheta_k into `out`, with `bra` held fixed.
// `ket` must be psi(seq); both arguments are consumed. Each parameterised
// gate exp(-i t G / 2) contributes -i/2 <bra_k|G|ket_k> at its position.
void adjoint_sweep(const NucleotideSequence &seq, const KernelParams &params, Statevector ket,
                   Statevector bra, std::span<Complex> out) {
    const std::size_t n = seq.size();
    auto k_amps = ket.amplitudes();
    auto b_amps = bra.amplitudes();
    for (std::size_t l = params.num_layers(); l-- > 0;) {
        const LayerAngles a = params.layer(l);
        const std::size_t k = l * KernelParams::kAnglesPerLayer;

        std::array<Matrix2, 4> inv_tail;
        for (const Base b : kAllBases) {
            inv_tail[static_cast<std::size_t>(b)] = adjoint(layer_tail_matrix(b, a.ry));
        }
        Complex y_sum{};
        for (std::size_t q = 0; q < n; ++q) {
            y_sum += undo_tail_qubit(k_amps, b_amps, ket.bit_of(q),
                                     inv_tail[static_cast<std::size_t>(seq[q])]);
        }
        const HeadTerms head = undo_head(k_amps, b_amps, n, a, l > 0);

        out[k] = kMinusHalfI * head.parity;
        out[k + 1] = kMinusHalfI * head.z_sum;
        out[k + 2] = kMinusHalfI * y_sum;
    }
}

} // namespace

double kernel_from_states(const Statevector &x, const Statevector &y) {
    return std::norm(inner_product(y, x));
}

double kernel_eval(const NucleotideSequence &x, const NucleotideSequence &y,
                   const KernelParams &params) {
    check_pair(x, y);
    return kernel_from_states(feature_state(x, params), feature_state(y, params));
}

KernelEvaluation kernel_value_and_gradient(const NucleotideSequence &x,
                                           const NucleotideSequence &y,
                                           const KernelParams &params) {
    check_pair(x, y);
    const Statevector psi_x = feature_state(x, params);
    const Statevector psi_y = feature_state(y, params);
    const Complex overlap = inner_product(psi_y, psi_x);

    const std::size_t m = params.size();
    std::vector<Complex> d_x(m);
    std::vector<Complex> d_y(m);
    adjoint_sweep(x, params, psi_x, psi_y, d_x);
    adjoint_sweep(y, params, psi_y, psi_x, d_y);

    KernelEvaluation result;
    result.value = std::norm(overlap);
    result.gradient.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        // d<psi_y|psi_x> = <psi_y|d psi_x> + conj(<psi_x|d psi_y>)
        const Complex d_overlap = d_x[k] + std::conj(d_y[k]);
        result.gradient[k] = 2.0 * (std::conj(overlap) * d_overlap).real();
    }
    return result;
}

std::vector<double> kernel_gradient(const NucleotideSequence &x, const NucleotideSequence &y,
                                    const KernelParams &params) {
    return kernel_value_and_gradient(x, y, params).gradient;
}

} // namespace qkdna
