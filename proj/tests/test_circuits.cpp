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
#include "oracles.hpp"

#include "qkdna/circuits.hpp"
#include "qkdna/dataset.hpp"
#include "qkdna/errors.hpp"
#include "qkdna/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qkdna;

namespace {

constexpr double kTol = 1e-12;
const Complex kI{0.0, 1.0};
const double kPolar = 2 * std::acos(1 / std::sqrt(3.0));

oracle::Amps amps(const Statevector &s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

double max_diff(const oracle::Amps &a, const oracle::Amps &b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

Statevector random_state(Rng &rng, std::size_t n) {
    std::vector<Complex> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &z : a) {
        z = {uniform_real(rng, -1, 1), uniform_real(rng, -1, 1)};
        norm += std::norm(z);
    }
    for (auto &z : a) {
        z /= std::sqrt(norm);
    }
    return Statevector::from_amplitudes(std::move(a));
}

Statevector swapped_state(const Statevector &s, std::size_t i, std::size_t j) {
    return Statevector::from_amplitudes(oracle::swap_qubits(amps(s), s.num_qubits(), i, j));
}

// Table of single-qubit encodings written out by hand.
oracle::Amps table_state(Base b) {
    const double a = 1 / std::sqrt(3.0);
    const double c = std::sqrt(2.0 / 3.0);
    switch (b) {
    case Base::A:
        return {1, 0};
    case Base::T:
        return {a, c};
    case Base::G:
        return {a, c * std::exp(kI * 2.0 * std::numbers::pi / 3.0)};
    case Base::C:
        return {a, c * std::exp(kI * 4.0 * std::numbers::pi / 3.0)};
    }
    return {};
}

} // namespace

TEST_CASE("base_angles") {
    CHECK(base_angles(Base::A).ry == 0.0);
    CHECK(base_angles(Base::A).phase == 0.0);
    CHECK(base_angles(Base::T).ry == doctest::Approx(kPolar).epsilon(1e-15));
    CHECK(base_angles(Base::T).phase == 0.0);
    CHECK(base_angles(Base::G).phase == doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-15));
    CHECK(base_angles(Base::C).ry == doctest::Approx(kPolar).epsilon(1e-15));
    CHECK(base_angles(Base::C).phase == doctest::Approx(4 * std::numbers::pi / 3).epsilon(1e-15));
    CHECK_THROWS_AS((void)base_from_char('X'), ValidationError);
    CHECK_THROWS_AS((void)NucleotideSequence("ATXG"), ValidationError);
}

TEST_CASE("Ry then P from |0> yields the tabulated states") {
    for (const Base b : kAllBases) {
        const BaseAngles a = base_angles(b);
        const Statevector s = apply_phase(apply_ry(zero_state(1), 0, a.ry), 0, a.phase);
        CHECK(max_diff(amps(s), table_state(b)) < kTol);
    }
}

TEST_CASE("apply_encoding_layer") {
    CHECK(max_diff(amps(apply_encoding_layer(zero_state(1), NucleotideSequence("A"))), {1, 0}) < kTol);
    CHECK(max_diff(amps(apply_encoding_layer(zero_state(1), NucleotideSequence("G"))),
                   table_state(Base::G)) < kTol);
    CHECK(max_diff(amps(apply_encoding_layer(zero_state(2), NucleotideSequence("AT"))),
                   oracle::kron({table_state(Base::A), table_state(Base::T)})) < kTol);
    CHECK(max_diff(amps(apply_encoding_layer(zero_state(4), NucleotideSequence("ATGC"))),
                   oracle::kron({table_state(Base::A), table_state(Base::T), table_state(Base::G),
                                 table_state(Base::C)})) < kTol);
    CHECK_THROWS_AS((void)apply_encoding_layer(zero_state(2), NucleotideSequence("ATG")),
                    DimensionError);
}

TEST_CASE("apply_param_layer") {
    Rng rng(1);
    const Statevector s = random_state(rng, 3);
    CHECK(max_diff(amps(apply_param_layer(s, {0, 0, 0})), amps(s)) < kTol);
    const double theta = 0.77;
    CHECK(max_diff(amps(apply_param_layer(zero_state(2), {theta, 0, 0})),
                   {std::cos(theta / 2), 0, 0, -kI * std::sin(theta / 2)}) < kTol);
}

TEST_CASE("apply_param_layer commutes with every SWAP") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + uniform_index(rng, 6);
        const Statevector s = random_state(rng, n);
        const LayerAngles a{uniform_angle(rng), uniform_angle(rng), uniform_angle(rng)};
        const Statevector direct = apply_param_layer(s, a);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Statevector conj =
                    swapped_state(apply_param_layer(swapped_state(s, i, j), a), i, j);
                CHECK(max_diff(amps(conj), amps(direct)) < kTol);
            }
        }
    }
}

TEST_CASE("encoding is covariant under position swaps") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + uniform_index(rng, 6);
        const NucleotideSequence seq = random_sequence(rng, n);
        const Statevector s = random_state(rng, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Statevector lhs = apply_encoding_layer(s, seq.swapped(i, j));
                const Statevector rhs =
                    swapped_state(apply_encoding_layer(swapped_state(s, i, j), seq), i, j);
                CHECK(max_diff(amps(lhs), amps(rhs)) < kTol);
            }
        }
    }
}

TEST_CASE("SIC overlaps are all one third") {
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            const Statevector sa = apply_encoding_layer(zero_state(1), NucleotideSequence(std::vector{kAllBases[a]}));
            const Statevector sb = apply_encoding_layer(zero_state(1), NucleotideSequence(std::vector{kAllBases[b]}));
            CHECK(std::abs(std::norm(inner_product(sa, sb)) - 1.0 / 3.0) < kTol);
        }
    }
}

TEST_CASE("feature_state") {
    KernelParams zero(1);
    CHECK(max_diff(amps(feature_state(NucleotideSequence("AT"), zero)),
                   oracle::kron({table_state(Base::A), table_state(Base::T)})) < kTol);
    CHECK(max_diff(amps(feature_state(NucleotideSequence("A"), zero)), {1, 0}) < kTol);
    CHECK_THROWS_AS((void)feature_state(NucleotideSequence(""), zero), ConfigError);
}

TEST_CASE("feature_state is normalised") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 8);
        KernelParams p(1 + uniform_index(rng, 6));
        for (double &t : p.values()) {
            t = uniform_angle(rng);
        }
        const Statevector s = feature_state(random_sequence(rng, n), p);
        CHECK(std::abs(s.norm_squared() - 1.0) < kTol);
    }
}

TEST_CASE("feature_state matches layer-by-layer composition") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 6);
        KernelParams p(1 + uniform_index(rng, 5));
        for (double &t : p.values()) {
            t = uniform_angle(rng);
        }
        const NucleotideSequence seq = random_sequence(rng, n);
        Statevector ref = zero_state(n);
        for (std::size_t l = 0; l < p.num_layers(); ++l) {
            ref = apply_encoding_layer(apply_param_layer(std::move(ref), p.layer(l)), seq);
        }
        CHECK(max_diff(amps(feature_state(seq, p)), amps(ref)) < kTol);
    }
}

TEST_CASE("parameter counts") {
    CHECK(KernelParams(24).size() == 72);
    CHECK(KernelParams(12).size() == 36);
    CHECK(KernelParams(6).size() == 18);
    CHECK_THROWS_AS(KernelParams(0), ConfigError);
    CHECK_THROWS_AS(KernelParams(std::vector<double>{1.0, 2.0}), ConfigError);
}
