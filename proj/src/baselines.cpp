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
#include "qkdna/baselines.hpp"

#include "qkdna/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qkdna {

namespace {

constexpr double kInitLogGamma = 0.0;
constexpr double kInitAlpha = 1.0;
constexpr double kInitBeta = 0.7;

double dot(const FeatureVector &u, const FeatureVector &v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
        acc += u[i] * v[i];
    }
    return acc;
}

double squared_distance(const FeatureVector &u, const FeatureVector &v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
        const double d = u[i] - v[i];
        acc += d * d;
    }
    return acc;
}

struct HeadGradient {
    double value = 0.0;
    FeatureVector d_u{};
    FeatureVector d_v{};
    std::array<double, 2> d_head{};
};

HeadGradient head_gradient(const FeatureVector &u, const FeatureVector &v, KernelHead head,
                           std::span<const double> hp) {
    HeadGradient g;
    switch (head) {
    case KernelHead::Cosine: {
        const double nu = std::sqrt(dot(u, u));
        const double nv = std::sqrt(dot(v, v));
        if (nu == 0.0 || nv == 0.0) {
            return g;
        }
        const double k = dot(u, v) / (nu * nv);
        g.value = k;
        for (std::size_t i = 0; i < kFeatureDim; ++i) {
            g.d_u[i] = v[i] / (nu * nv) - k * u[i] / (nu * nu);
            g.d_v[i] = u[i] / (nu * nv) - k * v[i] / (nv * nv);
        }
        return g;
    }
    case KernelHead::Rbf: {
        const double gamma = std::exp(hp[0]);
        const double d2 = squared_distance(u, v);
        const double k = std::exp(-gamma * d2);
        g.value = k;
        for (std::size_t i = 0; i < kFeatureDim; ++i) {
            g.d_u[i] = -2.0 * gamma * k * (u[i] - v[i]);
            g.d_v[i] = -g.d_u[i];
        }
        g.d_head[0] = -gamma * d2 * k;
        return g;
    }
    case KernelHead::Poly2: {
        const double alpha = hp[0];
        const double uv = dot(u, v);
        const double s = alpha * uv + hp[1];
        g.value = s * s;
        for (std::size_t i = 0; i < kFeatureDim; ++i) {
            g.d_u[i] = 2.0 * s * alpha * v[i];
            g.d_v[i] = 2.0 * s * alpha * u[i];
        }
        g.d_head[0] = 2.0 * s * uv;
        g.d_head[1] = 2.0 * s;
        return g;
    }
    }
    return g;
}

} // namespace

std::string_view head_name(KernelHead head) noexcept {
    switch (head) {
    case KernelHead::Cosine:
        return "cosine";
    case KernelHead::Rbf:
        return "rbf";
    case KernelHead::Poly2:
        return "poly2";
    }
    return "unknown";
}

KernelHead parse_head(std::string_view name) {
    if (name == "cosine") {
        return KernelHead::Cosine;
    }
    if (name == "rbf") {
        return KernelHead::Rbf;
    }
    if (name == "poly2") {
        return KernelHead::Poly2;
    }
    throw ConfigError("unknown kernel head \"" + std::string(name) +
                      "\" (expected cosine, rbf or poly2)");
}

std::size_t head_parameter_count(KernelHead head) noexcept {
    switch (head) {
    case KernelHead::Cosine:
        return 0;
    case KernelHead::Rbf:
        return 1;
    case KernelHead::Poly2:
        return 2;
    }
    return 0;
}

double classical_kernel(const FeatureVector &u, const FeatureVector &v, KernelHead head,
                        std::span<const double> head_params) {
    if (head_params.size() != head_parameter_count(head)) {
        throw DimensionError("kernel head " + std::string(head_name(head)) + " takes " +
                             std::to_string(head_parameter_count(head)) + " parameters");
    }
    return head_gradient(u, v, head, head_params).value;
}

ClassicalKernelModel::ClassicalKernelModel(KernelHead head, std::size_t length)
    : head_(head), length_(length) {
    if (length == 0) {
        throw ConfigError("classical model needs a positive sequence length");
    }
    theta_.assign(head_offset() + head_parameter_count(head), 0.0);
}

std::string ClassicalKernelModel::name() const {
    return "Ckernel-" + std::string(head_name(head_));
}

std::size_t ClassicalKernelModel::feature_map_parameter_count() const noexcept {
    return head_offset();
}

void ClassicalKernelModel::initialize(Rng &rng) {
    std::fill(theta_.begin(), theta_.end(), 0.0);
    // the embedding is a linear map from a one-hot base
    const double a0 = 1.0 / std::sqrt(static_cast<double>(kAllBases.size()));
    for (std::size_t i = embedding_offset(); i < w1_offset(); ++i) {
        theta_[i] = uniform_real(rng, -a0, a0);
    }
    const double a1 = 1.0 / std::sqrt(static_cast<double>(input_dim()));
    for (std::size_t i = w1_offset(); i < b1_offset(); ++i) {
        theta_[i] = uniform_real(rng, -a1, a1);
    }
    const double a2 = 1.0 / std::sqrt(static_cast<double>(kHiddenDim));
    for (std::size_t i = w2_offset(); i < b2_offset(); ++i) {
        theta_[i] = uniform_real(rng, -a2, a2);
    }
    switch (head_) {
    case KernelHead::Cosine:
        break;
    case KernelHead::Rbf:
        theta_[head_offset()] = kInitLogGamma;
        break;
    case KernelHead::Poly2:
        theta_[head_offset()] = kInitAlpha;
        theta_[head_offset() + 1] = kInitBeta;
        break;
    }
}

void ClassicalKernelModel::check_length(const NucleotideSequence &seq) const {
    if (seq.size() != length_) {
        throw DimensionError("classical model expects sequences of length " +
                             std::to_string(length_) + ", got " + std::to_string(seq.size()));
    }
}

void ClassicalKernelModel::forward(const NucleotideSequence &seq, Activations &act) const {
    check_length(seq);
    const std::size_t in = input_dim();
    act.input.resize(in);
    for (std::size_t p = 0; p < length_; ++p) {
        const std::size_t row = embedding_offset() + kEmbeddingDim * static_cast<std::size_t>(seq[p]);
        for (std::size_t d = 0; d < kEmbeddingDim; ++d) {
            act.input[kEmbeddingDim * p + d] = theta_[row + d];
        }
    }
    const double *w1 = theta_.data() + w1_offset();
    const double *b1 = theta_.data() + b1_offset();
    for (std::size_t h = 0; h < kHiddenDim; ++h) {
        double z = b1[h];
        for (std::size_t i = 0; i < in; ++i) {
            z += w1[h * in + i] * act.input[i];
        }
        act.pre[h] = z;
        act.hidden[h] = z > 0.0 ? z : 0.0;
    }
    const double *w2 = theta_.data() + w2_offset();
    const double *b2 = theta_.data() + b2_offset();
    for (std::size_t o = 0; o < kFeatureDim; ++o) {
        double z = b2[o];
        for (std::size_t h = 0; h < kHiddenDim; ++h) {
            z += w2[o * kHiddenDim + h] * act.hidden[h];
        }
        act.out[o] = z;
    }
}

void ClassicalKernelModel::backward(const NucleotideSequence &seq, const Activations &act,
                                    const FeatureVector &d_out, std::span<double> grad) const {
    const std::size_t in = input_dim();
    const double *w1 = theta_.data() + w1_offset();
    const double *w2 = theta_.data() + w2_offset();
    double *g_w1 = grad.data() + w1_offset();
    double *g_b1 = grad.data() + b1_offset();
    double *g_w2 = grad.data() + w2_offset();
    double *g_b2 = grad.data() + b2_offset();

    std::array<double, kHiddenDim> d_pre{};
    for (std::size_t o = 0; o < kFeatureDim; ++o) {
        g_b2[o] += d_out[o];
        for (std::size_t h = 0; h < kHiddenDim; ++h) {
            g_w2[o * kHiddenDim + h] += d_out[o] * act.hidden[h];
            d_pre[h] += w2[o * kHiddenDim + h] * d_out[o];
        }
    }
    for (std::size_t h = 0; h < kHiddenDim; ++h) {
        if (act.pre[h] <= 0.0) {
            d_pre[h] = 0.0;
        }
    }
    std::vector<double> d_input(in, 0.0);
    for (std::size_t h = 0; h < kHiddenDim; ++h) {
        g_b1[h] += d_pre[h];
        for (std::size_t i = 0; i < in; ++i) {
            g_w1[h * in + i] += d_pre[h] * act.input[i];
            d_input[i] += w1[h * in + i] * d_pre[h];
        }
    }
    for (std::size_t p = 0; p < length_; ++p) {
        const std::size_t row = embedding_offset() + kEmbeddingDim * static_cast<std::size_t>(seq[p]);
        for (std::size_t d = 0; d < kEmbeddingDim; ++d) {
            grad[row + d] += d_input[kEmbeddingDim * p + d];
        }
    }
}

FeatureVector ClassicalKernelModel::features(const NucleotideSequence &seq) const {
    Activations act;
    forward(seq, act);
    return act.out;
}

double ClassicalKernelModel::predict(const NucleotideSequence &x, const NucleotideSequence &y) const {
    const std::span<const double> hp(theta_.data() + head_offset(), head_parameter_count(head_));
    return classical_kernel(features(x), features(y), head_, hp);
}

double ClassicalKernelModel::value_and_gradient(const NucleotideSequence &x,
                                                const NucleotideSequence &y,
                                                std::span<double> grad) const {
    if (grad.size() != theta_.size()) {
        throw DimensionError("gradient buffer has the wrong size");
    }
    Activations ax;
    Activations ay;
    forward(x, ax);
    forward(y, ay);
    const std::span<const double> hp(theta_.data() + head_offset(), head_parameter_count(head_));
    const HeadGradient hg = head_gradient(ax.out, ay.out, head_, hp);

    std::fill(grad.begin(), grad.end(), 0.0);
    backward(x, ax, hg.d_u, grad);
    backward(y, ay, hg.d_v, grad);
    for (std::size_t k = 0; k < head_parameter_count(head_); ++k) {
        grad[head_offset() + k] = hg.d_head[k];
    }
    return hg.value;
}

std::vector<double> classical_backward(const ClassicalKernelModel &model,
                                       const NucleotideSequence &x, const NucleotideSequence &y,
                                       double target) {
    std::vector<double> grad(model.parameter_count());
    const double k = model.value_and_gradient(x, y, grad);
    if (!std::isfinite(k)) {
        throw NumericalError("classical kernel value is not finite");
    }
    const double scale = 2.0 * (k - target);
    for (double &g : grad) {
        g *= scale;
        if (!std::isfinite(g)) {
            throw NumericalError("classical gradient is not finite");
        }
    }
    return grad;
}

} // namespace qkdna
