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
#include "qkdna/statevector.hpp"

#include "qkdna/errors.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <utility>

namespace qkdna {

namespace {

void check_width(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("number of qubits must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(num_qubits));
    }
}

} // namespace

Statevector::Statevector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_width(num_qubits);
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    if (n < 2 || !std::has_single_bit(n)) {
        throw DimensionError("amplitude count must be a power of two >= 2, got " +
                             std::to_string(n));
    }
    const auto width = static_cast<std::size_t>(std::countr_zero(n));
    check_width(width);
    return Statevector(width, std::move(amplitudes));
}

double Statevector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

std::size_t Statevector::bit_of(std::size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw DimensionError("qubit index " + std::to_string(qubit) + " out of range for " +
                             std::to_string(num_qubits_) + " qubits");
    }
    return std::size_t{1} << (num_qubits_ - 1 - qubit);
}

void Statevector::ry(std::size_t qubit, double angle) {
    const std::size_t mask = bit_of(qubit);
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i0 = base; i0 < base + mask; ++i0) {
            const Complex a0 = amps_[i0];
            const Complex a1 = amps_[i0 + mask];
            amps_[i0] = c * a0 - s * a1;
            amps_[i0 + mask] = s * a0 + c * a1;
        }
    }
}

void Statevector::rz(std::size_t qubit, double angle) {
    const std::size_t mask = bit_of(qubit);
    const Complex lo = std::polar(1.0, -angle / 2);
    const Complex hi = std::polar(1.0, angle / 2);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] *= (i & mask) ? hi : lo;
    }
}

void Statevector::phase(std::size_t qubit, double angle) {
    const std::size_t mask = bit_of(qubit);
    const Complex p = std::polar(1.0, angle);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) {
            amps_[i] *= p;
        }
    }
}

void Statevector::unitary(std::size_t qubit, const Matrix2 &m) {
    const std::size_t mask = bit_of(qubit);
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i0 = base; i0 < base + mask; ++i0) {
            const Complex a0 = amps_[i0];
            const Complex a1 = amps_[i0 + mask];
            amps_[i0] = m[0] * a0 + m[1] * a1;
            amps_[i0 + mask] = m[2] * a0 + m[3] * a1;
        }
    }
}

void Statevector::swap(std::size_t a, std::size_t b) {
    const std::size_t ma = bit_of(a);
    const std::size_t mb = bit_of(b);
    if (ma == mb) {
        return;
    }
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        // visit each (…1…0…) index once and exchange it with (…0…1…)
        if ((i & ma) && !(i & mb)) {
            std::swap(amps_[i], amps_[(i & ~ma) | mb]);
        }
    }
}

void Statevector::rnx(double angle) {
    const double c = std::cos(angle / 2);
    const Complex mis{0.0, -std::sin(angle / 2)};
    const std::size_t all = amps_.size() - 1;
    // i < (i ^ all) exactly when the top bit of i is clear
    for (std::size_t i = 0; i < amps_.size() / 2; ++i) {
        const std::size_t j = i ^ all;
        const Complex a = amps_[i];
        const Complex b = amps_[j];
        amps_[i] = c * a + mis * b;
        amps_[j] = c * b + mis * a;
    }
}

void Statevector::rz_all(double angle) {
    // Rz^{(x)n} |k> = exp(-i angle/2 (n - 2 popcount(k))) |k>
    std::array<Complex, kMaxQubits + 1> phases{};
    const auto n = static_cast<int>(num_qubits_);
    for (int w = 0; w <= n; ++w) {
        phases[static_cast<std::size_t>(w)] = std::polar(1.0, -angle / 2 * (n - 2 * w));
    }
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] *= phases[static_cast<std::size_t>(std::popcount(i))];
    }
}

void Statevector::ry_all(double angle) {
    for (std::size_t q = 0; q < num_qubits_; ++q) {
        ry(q, angle);
    }
}

Statevector zero_state(std::size_t num_qubits) { return Statevector(num_qubits); }

Statevector apply_ry(Statevector state, std::size_t qubit, double angle) {
    state.ry(qubit, angle);
    return state;
}

Statevector apply_rz(Statevector state, std::size_t qubit, double angle) {
    state.rz(qubit, angle);
    return state;
}

Statevector apply_phase(Statevector state, std::size_t qubit, double angle) {
    state.phase(qubit, angle);
    return state;
}

Statevector apply_rnx(Statevector state, double angle) {
    state.rnx(angle);
    return state;
}

Statevector apply_swap(Statevector state, std::size_t a, std::size_t b) {
    state.swap(a, b);
    return state;
}

Complex inner_product(const Statevector &a, const Statevector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("inner product of states with " + std::to_string(a.num_qubits()) +
                             " and " + std::to_string(b.num_qubits()) + " qubits");
    }
    Complex acc{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

} // namespace qkdna
