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
#include "qkdna/edm.hpp"

#include "qkdna/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace qkdna {

namespace {

// Enough room for a length-10 input grown by 10 insertions.
constexpr std::size_t kMaxWorkLength = 2 * kMaxEdmLength;
constexpr int kLengthShift = 48;

using Counts = std::array<int, 4>;

struct Work {
    std::array<std::uint8_t, kMaxWorkLength + 1> sym{};
    std::size_t len = 0;
};

std::uint64_t pack(const std::uint8_t *sym, std::size_t len) {
    std::uint64_t key = static_cast<std::uint64_t>(len) << kLengthShift;
    for (std::size_t i = 0; i < len; ++i) {
        key |= static_cast<std::uint64_t>(sym[i]) << (2 * i);
    }
    return key;
}

Work unpack(std::uint64_t key) {
    Work w;
    w.len = static_cast<std::size_t>(key >> kLengthShift);
    for (std::size_t i = 0; i < w.len; ++i) {
        w.sym[i] = static_cast<std::uint8_t>((key >> (2 * i)) & 3U);
    }
    return w;
}

Work to_work(const NucleotideSequence &s) {
    Work w;
    w.len = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        w.sym[i] = static_cast<std::uint8_t>(s[i]);
    }
    return w;
}

Counts counts_of(const Work &w) {
    Counts c{};
    for (std::size_t i = 0; i < w.len; ++i) {
        ++c[w.sym[i]];
    }
    return c;
}

// Substitutions and indels each move (L1 + |length gap|) / 2 by at most one;
// moves leave symbol counts unchanged.
int count_bound(const Counts &c, std::size_t len, const Counts &target, std::size_t target_len) {
    int l1 = 0;
    for (std::size_t b = 0; b < 4; ++b) {
        l1 += std::abs(c[b] - target[b]);
    }
    const int gap = std::abs(static_cast<int>(len) - static_cast<int>(target_len));
    return (l1 + gap) / 2;
}

/// Calls f(key, counts, len) for every one-operation neighbor of w.
/// Duplicates and w itself may be emitted. Moves are skipped when
/// `with_moves` is false.
template <typename F>
void for_each_neighbor(const Work &w, const Counts &counts, bool with_moves, F &&f) {
    const std::size_t n = w.len;
    const std::uint64_t key = pack(w.sym.data(), n);

    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t a = w.sym[i];
        for (std::uint8_t b = 0; b < 4; ++b) {
            if (b == a) {
                continue;
            }
            Counts c = counts;
            --c[a];
            ++c[b];
            f(key ^ (static_cast<std::uint64_t>(a ^ b) << (2 * i)), c, n);
        }
    }

    std::array<std::uint8_t, kMaxWorkLength + 1> buf{};
    if (n > 0) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t o = 0;
            for (std::size_t t = 0; t < n; ++t) {
                if (t != i) {
                    buf[o++] = w.sym[t];
                }
            }
            Counts c = counts;
            --c[w.sym[i]];
            f(pack(buf.data(), n - 1), c, n - 1);
        }
    }

    if (n < kMaxWorkLength) {
        for (std::size_t i = 0; i <= n; ++i) {
            std::copy(w.sym.begin(), w.sym.begin() + static_cast<std::ptrdiff_t>(i), buf.begin());
            std::copy(w.sym.begin() + static_cast<std::ptrdiff_t>(i),
                      w.sym.begin() + static_cast<std::ptrdiff_t>(n),
                      buf.begin() + static_cast<std::ptrdiff_t>(i + 1));
            for (std::uint8_t b = 0; b < 4; ++b) {
                buf[i] = b;
                Counts c = counts;
                ++c[b];
                f(pack(buf.data(), n + 1), c, n + 1);
            }
        }
    }

    if (!with_moves) {
        return;
    }
    // Moving block [i, j) past block [j, k) covers every block move.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k <= n; ++k) {
                std::size_t o = 0;
                for (std::size_t t = 0; t < i; ++t) {
                    buf[o++] = w.sym[t];
                }
                for (std::size_t t = j; t < k; ++t) {
                    buf[o++] = w.sym[t];
                }
                for (std::size_t t = i; t < j; ++t) {
                    buf[o++] = w.sym[t];
                }
                for (std::size_t t = k; t < n; ++t) {
                    buf[o++] = w.sym[t];
                }
                f(pack(buf.data(), n), counts, n);
            }
        }
    }
}

/// Open-addressing set of packed strings.
class KeySet {
  public:
    KeySet() : slots_(1024, kEmpty) {}

    bool contains(std::uint64_t key) const {
        for (std::size_t i = slot(key);; i = (i + 1) & (slots_.size() - 1)) {
            if (slots_[i] == key) {
                return true;
            }
            if (slots_[i] == kEmpty) {
                return false;
            }
        }
    }

    /// True if `key` was newly added.
    bool insert(std::uint64_t key) {
        if (2 * (size_ + 1) > slots_.size()) {
            grow();
        }
        for (std::size_t i = slot(key);; i = (i + 1) & (slots_.size() - 1)) {
            if (slots_[i] == key) {
                return false;
            }
            if (slots_[i] == kEmpty) {
                slots_[i] = key;
                ++size_;
                return true;
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return size_; }

  private:
    static constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();

    std::size_t slot(std::uint64_t key) const {
        // splitmix64 finaliser
        key ^= key >> 30;
        key *= 0xbf58476d1ce4e5b9ULL;
        key ^= key >> 27;
        key *= 0x94d049bb133111ebULL;
        key ^= key >> 31;
        return static_cast<std::size_t>(key) & (slots_.size() - 1);
    }

    void grow() {
        std::vector<std::uint64_t> old(slots_.size() * 2, kEmpty);
        old.swap(slots_);
        size_ = 0;
        for (const std::uint64_t k : old) {
            if (k != kEmpty) {
                insert(k);
            }
        }
    }

    std::vector<std::uint64_t> slots_;
    std::size_t size_ = 0;
};

struct SearchSide {
    KeySet visited;
    std::vector<std::uint64_t> frontier;
    std::size_t depth = 0;
    Counts goal_counts{};
    std::size_t goal_len = 0;
};

void check_edm_length(const NucleotideSequence &s) {
    if (s.size() > kMaxEdmLength) {
        throw ConfigError("exact EDM supports sequences up to length " +
                          std::to_string(kMaxEdmLength) + ", got " + std::to_string(s.size()));
    }
}

} // namespace

std::size_t levenshtein(const NucleotideSequence &x, const NucleotideSequence &y) {
    std::vector<std::size_t> row(y.size() + 1);
    for (std::size_t j = 0; j <= y.size(); ++j) {
        row[j] = j;
    }
    for (std::size_t i = 1; i <= x.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= y.size(); ++j) {
            const std::size_t up = row[j];
            const std::size_t cost = x[i - 1] == y[j - 1] ? 0 : 1;
            row[j] = std::min({up + 1, row[j - 1] + 1, diag + cost});
            diag = up;
        }
    }
    return row[y.size()];
}

std::set<NucleotideSequence> edm_neighbors(const NucleotideSequence &s) {
    const Work w = to_work(s);
    const std::uint64_t self = pack(w.sym.data(), w.len);
    std::set<NucleotideSequence> out;
    for_each_neighbor(w, counts_of(w), true, [&](std::uint64_t key, const Counts &, std::size_t) {
        if (key == self) {
            return;
        }
        const Work v = unpack(key);
        std::vector<Base> bases(v.len);
        for (std::size_t i = 0; i < v.len; ++i) {
            bases[i] = static_cast<Base>(v.sym[i]);
        }
        out.emplace(std::move(bases));
    });
    return out;
}

std::size_t composition_lower_bound(const NucleotideSequence &x, const NucleotideSequence &y) {
    const Work wx = to_work(x);
    const Work wy = to_work(y);
    return static_cast<std::size_t>(count_bound(counts_of(wx), wx.len, counts_of(wy), wy.len));
}

std::size_t edm_exact(const NucleotideSequence &x, const NucleotideSequence &y,
                      std::optional<std::size_t> node_budget) {
    check_edm_length(x);
    check_edm_length(y);
    if (x == y) {
        return 0;
    }
    const std::size_t upper = levenshtein(x, y);
    if (upper <= 1 || composition_lower_bound(x, y) == upper) {
        return upper;
    }

    const Work wx = to_work(x);
    const Work wy = to_work(y);
    SearchSide fwd;
    SearchSide bwd;
    fwd.goal_counts = counts_of(wy);
    fwd.goal_len = wy.len;
    bwd.goal_counts = counts_of(wx);
    bwd.goal_len = wx.len;
    fwd.frontier.push_back(pack(wx.sym.data(), wx.len));
    bwd.frontier.push_back(pack(wy.sym.data(), wy.len));
    fwd.visited.insert(fwd.frontier.front());
    bwd.visited.insert(bwd.frontier.front());

    const auto limit = static_cast<int>(upper);
    std::size_t stored = 2;
    // Invariant: no path of length <= total exists.
    for (std::size_t total = 0; total + 1 < upper; ++total) {
        SearchSide &grow = fwd.frontier.size() <= bwd.frontier.size() ? fwd : bwd;
        const SearchSide &other = &grow == &fwd ? bwd : fwd;
        const bool last = total + 2 == upper;
        const int next_depth = static_cast<int>(grow.depth) + 1;

        std::vector<std::uint64_t> next;
        bool met = false;
        for (const std::uint64_t node : grow.frontier) {
            const Work w = unpack(node);
            const Counts c = counts_of(w);
            const bool moves_useful =
                next_depth + count_bound(c, w.len, grow.goal_counts, grow.goal_len) < limit;
            for_each_neighbor(w, c, moves_useful,
                              [&](std::uint64_t key, const Counts &kc, std::size_t klen) {
                                  if (met || next_depth + count_bound(kc, klen, grow.goal_counts,
                                                                      grow.goal_len) >= limit) {
                                      return;
                                  }
                                  if (other.visited.contains(key)) {
                                      met = true;
                                      return;
                                  }
                                  if (!last && grow.visited.insert(key)) {
                                      next.push_back(key);
                                      if (node_budget && ++stored > *node_budget) {
                                          throw ResourceError(
                                              "exact EDM search exceeded node budget of " +
                                              std::to_string(*node_budget));
                                      }
                                  }
                              });
            if (met) {
                return total + 1;
            }
        }
        if (next.empty()) {
            break;
        }
        grow.frontier = std::move(next);
        grow.depth += 1;
    }
    return upper;
}

double similarity_from_distance(std::size_t length, std::size_t distance) {
    if (length == 0) {
        throw DimensionError("similarity needs sequences of length >= 1");
    }
    return static_cast<double>(static_cast<long long>(length) - static_cast<long long>(distance)) /
           static_cast<double>(length);
}

double similarity(const NucleotideSequence &x, const NucleotideSequence &y) {
    if (x.size() != y.size()) {
        throw DimensionError("similarity needs equal lengths, got " + std::to_string(x.size()) +
                             " and " + std::to_string(y.size()));
    }
    return similarity_from_distance(x.size(), edm_exact(x, y));
}

std::size_t EdmCache::distance(const NucleotideSequence &x, const NucleotideSequence &y) {
    Key key = x < y ? Key{x, y} : Key{y, x};
    {
        std::lock_guard lock(mutex_);
        if (const auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
    }
    const std::size_t d = edm_exact(key.first, key.second, budget_);
    std::lock_guard lock(mutex_);
    return memo_.try_emplace(std::move(key), d).first->second;
}

std::size_t EdmCache::size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

} // namespace qkdna
