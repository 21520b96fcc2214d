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
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qkdna {

enum class Base : std::uint8_t { A = 0, T = 1, G = 2, C = 3 };

inline constexpr std::array<Base, 4> kAllBases{Base::A, Base::T, Base::G, Base::C};

[[nodiscard]] char to_char(Base b) noexcept;

/// Throws ValidationError for anything outside {A, T, G, C}.
[[nodiscard]] Base base_from_char(char c);

/// A string over {A, T, G, C}. The empty sequence is representable because
/// edit operations pass through it; quantum circuits reject it by width.
class NucleotideSequence {
  public:
    NucleotideSequence() = default;
    explicit NucleotideSequence(std::vector<Base> bases) : bases_(std::move(bases)) {}

    /// Parses an upper-case string such as "ATGC".
    explicit NucleotideSequence(std::string_view text);

    [[nodiscard]] std::size_t size() const noexcept { return bases_.size(); }
    [[nodiscard]] bool empty() const noexcept { return bases_.empty(); }
    [[nodiscard]] Base operator[](std::size_t i) const { return bases_[i]; }
    [[nodiscard]] const std::vector<Base> &bases() const noexcept { return bases_; }

    [[nodiscard]] std::string str() const;

    /// Copy with positions i and j exchanged (the permutation Pi_ij).
    [[nodiscard]] NucleotideSequence swapped(std::size_t i, std::size_t j) const;

    friend bool operator==(const NucleotideSequence &, const NucleotideSequence &) = default;
    friend auto operator<=>(const NucleotideSequence &, const NucleotideSequence &) = default;

  private:
    std::vector<Base> bases_;
};

} // namespace qkdna
