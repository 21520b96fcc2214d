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
#include "qkdna/sequence.hpp"

#include "qkdna/errors.hpp"

#include <utility>

namespace qkdna {

char to_char(Base b) noexcept {
    switch (b) {
    case Base::A:
        return 'A';
    case Base::T:
        return 'T';
    case Base::G:
        return 'G';
    case Base::C:
        return 'C';
    }
    return '?';
}

Base base_from_char(char c) {
    switch (c) {
    case 'A':
        return Base::A;
    case 'T':
        return Base::T;
    case 'G':
        return Base::G;
    case 'C':
        return Base::C;
    default:
        throw ValidationError(std::string("invalid nucleotide symbol '") + c + "'");
    }
}

NucleotideSequence::NucleotideSequence(std::string_view text) {
    bases_.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        try {
            bases_.push_back(base_from_char(text[i]));
        } catch (const ValidationError &e) {
            throw ValidationError(std::string(e.what()) + " at position " + std::to_string(i) +
                                  " of \"" + std::string(text) + "\"");
        }
    }
}

std::string NucleotideSequence::str() const {
    std::string out;
    out.reserve(bases_.size());
    for (const Base b : bases_) {
        out.push_back(to_char(b));
    }
    return out;
}

NucleotideSequence NucleotideSequence::swapped(std::size_t i, std::size_t j) const {
    NucleotideSequence out = *this;
    std::swap(out.bases_.at(i), out.bases_.at(j));
    return out;
}

} // namespace qkdna
