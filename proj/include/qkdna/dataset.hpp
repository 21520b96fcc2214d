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
 * Labelled triplets of random DNA sequences and their on-disk format.
 *
 * File format: one JSON object per line,
 *   {"a":"ATGC...","b":"...","c":"...","d_ab":3,"d_ac":4,"s_ab":0.625,"s_ac":0.5}
 * with s = (N - d) / N. Ties d_ab == d_ac are never stored.
 */
#pragma once

#include "qkdna/edm.hpp"
#include "qkdna/rng.hpp"
#include "qkdna/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qkdna {

struct LabeledTriplet {
    NucleotideSequence a;
    NucleotideSequence b;
    NucleotideSequence c;
    std::size_t d_ab = 0;
    std::size_t d_ac = 0;
    double s_ab = 0.0;
    double s_ac = 0.0;

    friend bool operator==(const LabeledTriplet &, const LabeledTriplet &) = default;
};

/// One supervised example (x, y) -> target similarity.
struct LabeledPair {
    NucleotideSequence x;
    NucleotideSequence y;
    double target = 0.0;
};

[[nodiscard]] NucleotideSequence random_sequence(Rng &rng, std::size_t length);

/// Builds a triplet from three sequences, computing labels with `cache`.
[[nodiscard]] LabeledTriplet label_triplet(NucleotideSequence a, NucleotideSequence b,
                                           NucleotideSequence c, EdmCache &cache);

struct GenerationOptions {
    std::uint64_t seed = 0;
    std::size_t count = 3200;
    std::size_t length = 8;
    std::size_t jobs = 1;
    std::optional<std::size_t> node_budget{};
};

/// Draws `count` tie-free triplets. Slot i uses its own random stream and
/// redraws until d_ab != d_ac, so the result does not depend on `jobs`.
[[nodiscard]] std::vector<LabeledTriplet> generate_triplets(const GenerationOptions &opts);

/// Throws ValidationError if the labels or lengths of `t` are inconsistent.
void validate_triplet(const LabeledTriplet &t);

void write_triplets(std::ostream &out, const std::vector<LabeledTriplet> &triplets);
[[nodiscard]] std::vector<LabeledTriplet> read_triplets(std::istream &in);

void save_triplets(const std::filesystem::path &path, const std::vector<LabeledTriplet> &triplets);

/// Throws ParseError (with line number) on malformed lines and
/// ValidationError on label inconsistencies.
[[nodiscard]] std::vector<LabeledTriplet> load_triplets(const std::filesystem::path &path);

/// Recomputes EDM for every `stride`-th triplet (at least one) and throws
/// ValidationError on the first disagreement. Returns the number checked.
std::size_t spot_check_distances(const std::vector<LabeledTriplet> &triplets, std::size_t stride);

/// The pairs (a, b) and (a, c) of every triplet, in order.
[[nodiscard]] std::vector<LabeledPair> training_pairs(const std::vector<LabeledTriplet> &triplets);

} // namespace qkdna
