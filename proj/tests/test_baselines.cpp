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

#include "qkdna/baselines.hpp"
#include "qkdna/dataset.hpp"
#include "qkdna/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace qkdna;

namespace {

constexpr std::array<KernelHead, 3> kHeads{KernelHead::Cosine, KernelHead::Rbf, KernelHead::Poly2};

} // namespace

TEST_CASE("parameter counts") {
    CHECK(ClassicalKernelModel(KernelHead::Cosine).parameter_count() == 816);
    CHECK(ClassicalKernelModel(KernelHead::Rbf).parameter_count() == 817);
    CHECK(ClassicalKernelModel(KernelHead::Poly2).parameter_count() == 818);
    const ClassicalKernelModel m(KernelHead::Cosine);
    CHECK(m.w1_offset() - m.embedding_offset() == 16);
    CHECK(m.w2_offset() - m.w1_offset() == 528);
    CHECK(m.head_offset() - m.w2_offset() == 272);
    CHECK(m.name() == "Ckernel-cosine");
}

TEST_CASE("parse_head") {
    CHECK(parse_head("rbf") == KernelHead::Rbf);
    CHECK(parse_head("poly2") == KernelHead::Poly2);
    CHECK(parse_head("cosine") == KernelHead::Cosine);
    CHECK_THROWS_AS((void)parse_head("linear"), ConfigError);
}

TEST_CASE("feature map") {
    ClassicalKernelModel m(KernelHead::Rbf);
    for (std::size_t o = 0; o < kFeatureDim; ++o) {
        m.parameters()[m.b2_offset() + o] = 0.25 * static_cast<double>(o) - 1.0;
    }
    const FeatureVector f = m.features(NucleotideSequence("ATGCATGC"));
    CHECK(f.size() == 16);
    for (std::size_t o = 0; o < kFeatureDim; ++o) {
        CHECK(f[o] == 0.25 * static_cast<double>(o) - 1.0);
    }
    CHECK_THROWS_AS((void)m.features(NucleotideSequence("ATG")), DimensionError);
}

TEST_CASE("kernel heads") {
    FeatureVector u{};
    FeatureVector v{};
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
        u[i] = std::sin(static_cast<double>(i) + 0.3);
        v[i] = std::cos(2.0 * static_cast<double>(i));
    }
    CHECK(classical_kernel(u, u, KernelHead::Cosine, {}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(classical_kernel(u, FeatureVector{}, KernelHead::Cosine, {}) == 0.0);
    const std::vector<double> log_gamma{0.4};
    CHECK(classical_kernel(u, u, KernelHead::Rbf, log_gamma) == 1.0);
    const double d2 = [&] {
        double acc = 0.0;
        for (std::size_t i = 0; i < kFeatureDim; ++i) {
            acc += (u[i] - v[i]) * (u[i] - v[i]);
        }
        return acc;
    }();
    CHECK(classical_kernel(u, v, KernelHead::Rbf, log_gamma) ==
          doctest::Approx(std::exp(-std::exp(0.4) * d2)).epsilon(1e-14));
    const std::vector<double> poly{0.0, 0.6};
    CHECK(classical_kernel(u, v, KernelHead::Poly2, poly) == doctest::Approx(0.36).epsilon(1e-15));
    CHECK_THROWS_AS((void)classical_kernel(u, v, KernelHead::Poly2, log_gamma), DimensionError);
}

TEST_CASE("classical_backward matches finite differences") {
    Rng rng(404);
    for (const KernelHead head : kHeads) {
        int checked = 0;
        while (checked < 50) {
            ClassicalKernelModel m(head);
            m.initialize(rng);
            // move the head away from its defaults
            for (std::size_t k = m.head_offset(); k < m.parameter_count(); ++k) {
                m.parameters()[k] += uniform_real(rng, -0.3, 0.3);
            }
            for (std::size_t b = m.b1_offset(); b < m.w2_offset(); ++b) {
                m.parameters()[b] = uniform_real(rng, -0.1, 0.1);
            }
            const auto x = random_sequence(rng, 8);
            const auto y = random_sequence(rng, 8);
            if (oracle::near_kink(m, x) || oracle::near_kink(m, y)) {
                continue; // nudge away from ReLU kinks by redrawing
            }
            const double target = uniform01(rng);
            const auto g = classical_backward(m, x, y, target);
            const std::vector<double> theta(m.parameters().begin(), m.parameters().end());
            const auto fd = oracle::central_difference(
                [&](const std::vector<double> &t) {
                    ClassicalKernelModel probe(head);
                    std::copy(t.begin(), t.end(), probe.parameters().begin());
                    const double e = probe.predict(x, y) - target;
                    return e * e;
                },
                theta, 1e-6);
            CHECK(oracle::max_relative_error(g, fd, 1e-3) < 1e-4);
            ++checked;
        }
    }
}

TEST_CASE("cosine head is stationary on identical inputs") {
    Rng rng(5);
    ClassicalKernelModel m(KernelHead::Cosine);
    m.initialize(rng);
    const auto x = random_sequence(rng, 8);
    std::vector<double> grad(m.parameter_count());
    CHECK(m.value_and_gradient(x, x, grad) == doctest::Approx(1.0).epsilon(1e-14));
    for (const double g : grad) {
        CHECK(std::abs(g) < 1e-12);
    }
}

TEST_CASE("rbf bandwidth gradient is negative for distinct features") {
    Rng rng(6);
    ClassicalKernelModel m(KernelHead::Rbf);
    m.initialize(rng);
    std::vector<double> grad(m.parameter_count());
    (void)m.value_and_gradient(NucleotideSequence("AAAAAAAA"), NucleotideSequence("GGGGCCCC"), grad);
    CHECK(grad[m.head_offset()] < 0.0);
}

TEST_CASE("overflow is reported") {
    Rng rng(7);
    ClassicalKernelModel m(KernelHead::Poly2);
    m.initialize(rng);
    m.parameters()[m.head_offset() + 1] = 1e200;
    CHECK_THROWS_AS((void)classical_backward(m, NucleotideSequence("AAAAAAAA"),
                                             NucleotideSequence("GGGGCCCC"), 0.5),
                    NumericalError);
}
