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
 * Ground-truth distances between nucleotide sequences.
 *
 * The edit distance with moves (EDM) counts unit-cost operations of four
 * kinds: substitute one symbol, insert one symbol, delete one symbol, or
 * move one contiguous block to another position in the same string
 * (equivalently, exchange two adjacent blocks). Blocks are never reversed.
 */
#pragma once

#include "qkdna/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <utility>

namespace qkdna {

/// Longest input accepted by edm_exact.
inline constexpr std::size_t kMaxEdmLength = 10;

[[nodiscard]] std::size_t levenshtein(const NucleotideSequence &x, const NucleotideSequence &y);

/// Every string one operation away from `s`, excluding `s` itself.
[[nodiscard]] std::set<NucleotideSequence> edm_neighbors(const NucleotideSequence &s);

/// Exact EDM by bidirectional breadth-first search.
///
/// The search stops at the Levenshtein distance (an upper bound) and prunes
/// any intermediate string whose symbol-count lower bound to the far endpoint
/// cannot beat that bound. `node_budget` caps the number of stored search
/// nodes; exceeding it throws ResourceError. Inputs longer than
/// kMaxEdmLength throw ConfigError.
[[nodiscard]] std::size_t edm_exact(const NucleotideSequence &x, const NucleotideSequence &y,
                                    std::optional<std::size_t> node_budget = std::nullopt);

/// Admissible lower bound on EDM from symbol counts alone.
[[nodiscard]] std::size_t composition_lower_bound(const NucleotideSequence &x,
                                                  const NucleotideSequence &y);

/// (N - EDM(x, y)) / N for equal-length sequences of length N >= 1.
/// Throws DimensionError for unequal or empty inputs.
[[nodiscard]] double similarity(const NucleotideSequence &x, const NucleotideSequence &y);

/// Normalised similarity for a known distance.
[[nodiscard]] double similarity_from_distance(std::size_t length, std::size_t distance);

/// Thread-safe memo of EDM values keyed by the unordered pair.
class EdmCache {
  public:
    explicit EdmCache(std::optional<std::size_t> node_budget = std::nullopt)
        : budget_(node_budget) {}

    [[nodiscard]] std::size_t distance(const NucleotideSequence &x, const NucleotideSequence &y);
    [[nodiscard]] std::size_t size() const;

  private:
    using Key = std::pair<NucleotideSequence, NucleotideSequence>;

    std::optional<std::size_t> budget_;
    mutable std::mutex mutex_;
    std::map<Key, std::size_t> memo_;
};

} // namespace qkdna
