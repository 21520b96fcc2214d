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
#include "qkdna/errors.hpp"
#include "qkdna/rng.hpp"
#include "qkdna/statevector.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qkdna;

namespace {

constexpr double kTol = 1e-12;
const Complex kI{0.0, 1.0};

bool close(Complex a, Complex b, double tol = kTol) { return std::abs(a - b) < tol; }

void check_amps(const Statevector &s, const std::vector<Complex> &expected, double tol = kTol) {
    REQUIRE(s.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK_MESSAGE(close(s[i], expected[i], tol), "index " << i << ": " << s[i] << " vs "
                                                              << expected[i]);
    }
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

} // namespace

TEST_CASE("zero_state") {
    check_amps(zero_state(1), {1, 0});
    check_amps(zero_state(2), {1, 0, 0, 0});
    const Statevector s = zero_state(8);
    CHECK(s.size() == 256);
    CHECK(s[0] == Complex{1.0});
    for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s[i] == Complex{0.0});
    }
    CHECK_THROWS_AS((void)zero_state(0), ConfigError);
    CHECK_THROWS_AS((void)zero_state(13), ConfigError);
    CHECK_NOTHROW((void)zero_state(12));
}

TEST_CASE("from_amplitudes rejects non power-of-two lengths") {
    CHECK_THROWS_AS((void)Statevector::from_amplitudes({1, 0, 0}), DimensionError);
    CHECK_THROWS_AS((void)Statevector::from_amplitudes({1}), DimensionError);
}

TEST_CASE("apply_ry") {
    check_amps(apply_ry(zero_state(1), 0, 0.0), {1, 0});
    check_amps(apply_ry(zero_state(1), 0, std::numbers::pi), {0, 1});
    // Thymine amplitudes
    check_amps(apply_ry(zero_state(1), 0, 2 * std::acos(1 / std::sqrt(3.0))),
               {1 / std::sqrt(3.0), std::sqrt(2.0 / 3.0)});
    CHECK_THROWS_AS((void)apply_ry(zero_state(2), 2, 0.1), DimensionError);
}

TEST_CASE("qubit 0 is the most significant bit") {
    check_amps(apply_ry(zero_state(2), 0, std::numbers::pi), {0, 0, 1, 0});
    check_amps(apply_ry(zero_state(2), 1, std::numbers::pi), {0, 1, 0, 0});
}

TEST_CASE("apply_rz") {
    Rng rng(7);
    const Statevector s = random_state(rng, 3);
    check_amps(apply_rz(s, 1, 0.0), {s.amplitudes().begin(), s.amplitudes().end()});

    const double r = 1 / std::sqrt(2.0);
    const Statevector plus = Statevector::from_amplitudes({r, r});
    check_amps(apply_rz(plus, 0, std::numbers::pi),
               {std::exp(-kI * std::numbers::pi / 2.0) * r, std::exp(kI * std::numbers::pi / 2.0) * r});

    const double theta = 0.83;
    const Statevector z = apply_rz(zero_state(1), 0, theta);
    check_amps(z, {std::exp(-kI * theta / 2.0), 0});
    CHECK(std::norm(z[0]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)apply_rz(zero_state(1), 1, 0.1), DimensionError);
}

TEST_CASE("apply_phase reproduces the G and C encodings") {
    const Statevector t = Statevector::from_amplitudes({1 / std::sqrt(3.0), std::sqrt(2.0 / 3.0)});
    check_amps(apply_phase(t, 0, 2 * std::numbers::pi / 3),
               {1 / std::sqrt(3.0), std::sqrt(2.0 / 3.0) * std::exp(kI * 2.0 * std::numbers::pi / 3.0)});
    check_amps(apply_phase(t, 0, 4 * std::numbers::pi / 3),
               {1 / std::sqrt(3.0), std::sqrt(2.0 / 3.0) * std::exp(kI * 4.0 * std::numbers::pi / 3.0)});
    check_amps(apply_phase(t, 0, 0.0), {t[0], t[1]});
    CHECK_THROWS_AS((void)apply_phase(t, 3, 0.1), DimensionError);
}

TEST_CASE("apply_rnx") {
    check_amps(apply_rnx(zero_state(1), std::numbers::pi), {0, -kI});
    Rng rng(11);
    const Statevector s = random_state(rng, 4);
    check_amps(apply_rnx(s, 0.0), {s.amplitudes().begin(), s.amplitudes().end()});
    const double theta = 1.234;
    check_amps(apply_rnx(zero_state(2), theta),
               {std::cos(theta / 2), 0, 0, -kI * std::sin(theta / 2)});
}

TEST_CASE("apply_rnx couples each index with its bit complement") {
    Rng rng(5);
    const Statevector s = random_state(rng, 5);
    const double theta = -2.1;
    const Statevector out = apply_rnx(s, theta);
    const std::size_t mask = s.size() - 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Complex expected = std::cos(theta / 2) * s[i] - kI * std::sin(theta / 2) * s[i ^ mask];
        CHECK(close(out[i], expected));
    }
}

TEST_CASE("inner_product") {
    Rng rng(3);
    const Statevector s = random_state(rng, 3);
    CHECK(close(inner_product(s, s), 1.0));
    CHECK(close(inner_product(zero_state(1), Statevector::from_amplitudes({0, 1})), 0.0));
    CHECK(close(inner_product(zero_state(1),
                              Statevector::from_amplitudes({1 / std::sqrt(3.0), std::sqrt(2.0 / 3.0)})),
                1 / std::sqrt(3.0)));
    CHECK_THROWS_AS((void)inner_product(zero_state(1), zero_state(2)), DimensionError);
}

TEST_CASE("every gate preserves the norm") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 6);
        const std::size_t q = uniform_index(rng, n);
        const double angle = uniform_angle(rng) * 2;
        const Statevector s = random_state(rng, n);
        CHECK(std::abs(apply_ry(s, q, angle).norm_squared() - 1.0) < kTol);
        CHECK(std::abs(apply_rz(s, q, angle).norm_squared() - 1.0) < kTol);
        CHECK(std::abs(apply_phase(s, q, angle).norm_squared() - 1.0) < kTol);
        CHECK(std::abs(apply_rnx(s, angle).norm_squared() - 1.0) < kTol);
    }
}

TEST_CASE("rnx(-theta) undoes rnx(theta)") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 8);
        const double theta = uniform_angle(rng);
        const Statevector s = random_state(rng, n);
        const Statevector back = apply_rnx(apply_rnx(s, theta), -theta);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(close(back[i], s[i]));
        }
    }
}

TEST_CASE("single-qubit rnx is Rx") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const double theta = uniform_angle(rng);
        const Statevector s = random_state(rng, 1);
        const double c = std::cos(theta / 2);
        const double sn = std::sin(theta / 2);
        const Statevector out = apply_rnx(s, theta);
        CHECK(close(out[0], c * s[0] - kI * sn * s[1]));
        CHECK(close(out[1], -kI * sn * s[0] + c * s[1]));
    }
}

TEST_CASE("inner products of unit states are bounded by one") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 6);
        const Statevector a = random_state(rng, n);
        const Statevector b = random_state(rng, n);
        CHECK(std::abs(inner_product(a, b)) <= 1.0 + kTol);
    }
}

TEST_CASE("swap exchanges qubit roles") {
    // |10> -> |01>
    const Statevector s = apply_ry(zero_state(2), 0, std::numbers::pi);
    check_amps(apply_swap(s, 0, 1), {0, 1, 0, 0});
    check_amps(apply_swap(s, 1, 1), {0, 0, 1, 0});
}
