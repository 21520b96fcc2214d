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

#include "qkdna/dataset.hpp"
#include "qkdna/errors.hpp"
#include "qkdna/kernel.hpp"
#include "qkdna/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace qkdna;

namespace {

KernelParams random_params(Rng &rng, std::size_t layers) {
    KernelParams p(layers);
    for (double &t : p.values()) {
        t = uniform_angle(rng);
    }
    return p;
}

std::vector<double> fd_gradient(const NucleotideSequence &x, const NucleotideSequence &y,
                                const KernelParams &p) {
    const std::vector<double> theta(p.values().begin(), p.values().end());
    return oracle::central_difference(
        [&](const std::vector<double> &t) { return kernel_eval(x, y, KernelParams(t)); }, theta,
        1e-5);
}

} // namespace

TEST_CASE("kernel of a sequence with itself is one") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 8);
        const auto x = random_sequence(rng, n);
        CHECK(std::abs(kernel_eval(x, x, random_params(rng, 1 + uniform_index(rng, 8))) - 1.0) < 1e-10);
    }
}

TEST_CASE("untrained kernel is a product of SIC overlaps") {
    const KernelParams zero(1);
    CHECK(kernel_eval(NucleotideSequence("AT"), NucleotideSequence("AA"), zero) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(kernel_eval(NucleotideSequence("ATGC"), NucleotideSequence("TAGC"), zero) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("kernel rejects mismatched lengths") {
    CHECK_THROWS_AS((void)kernel_eval(NucleotideSequence("AT"), NucleotideSequence("A"), KernelParams(1)),
                    DimensionError);
    CHECK_THROWS_AS(
        (void)kernel_gradient(NucleotideSequence("AT"), NucleotideSequence("ATG"), KernelParams(1)),
        DimensionError);
}

TEST_CASE("kernel is symmetric and bounded") {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 8);
        const auto x = random_sequence(rng, n);
        const auto y = random_sequence(rng, n);
        const auto p = random_params(rng, 1 + uniform_index(rng, 6));
        const double kxy = kernel_eval(x, y, p);
        CHECK(std::abs(kxy - kernel_eval(y, x, p)) < 1e-12);
        CHECK(kxy >= 0.0);
        CHECK(kxy <= 1.0 + 1e-12);
    }
}

TEST_CASE("kernel is invariant under simultaneous position swaps") {
    Rng rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + uniform_index(rng, 5);
        const auto x = random_sequence(rng, n);
        const auto y = random_sequence(rng, n);
        const auto p = random_params(rng, 1 + uniform_index(rng, 4));
        const double k = kernel_eval(x, y, p);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                CHECK(std::abs(kernel_eval(x.swapped(i, j), y.swapped(i, j), p) - k) < 1e-10);
            }
        }
    }
}

TEST_CASE("gradient vanishes when both inputs agree") {
    Rng rng(13);
    const auto x = random_sequence(rng, 5);
    for (const double g : kernel_gradient(x, x, random_params(rng, 4))) {
        CHECK(std::abs(g) < 1e-12);
    }
}

TEST_CASE("gradient matches finite differences") {
    SUBCASE("single qubit A vs T at the origin") {
        const NucleotideSequence a("A");
        const NucleotideSequence t("T");
        const KernelParams p(1);
        const auto g = kernel_gradient(a, t, p);
        const auto fd = fd_gradient(a, t, p);
        CHECK(oracle::max_relative_error(g, fd, 1e-3) < 1e-5);
    }
    SUBCASE("random instances") {
        Rng rng(2718);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 1 + uniform_index(rng, 4);
            const auto x = random_sequence(rng, n);
            const auto y = random_sequence(rng, n);
            const auto p = random_params(rng, 1 + uniform_index(rng, 6));
            const KernelEvaluation ev = kernel_value_and_gradient(x, y, p);
            CHECK(ev.value == doctest::Approx(kernel_eval(x, y, p)).epsilon(1e-12));
            CHECK(oracle::max_relative_error(ev.gradient, fd_gradient(x, y, p), 1e-3) < 1e-5);
        }
    }
}
