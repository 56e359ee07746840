/* Copyright 2026 The Weave Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#ifndef WEAVE_BRAID_HPP
#define WEAVE_BRAID_HPP

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace weave {

/// One crossing of neighbouring strands. `index` s swaps positions s and s+1
/// (positions counted from the bottom, starting at 1); `sign` +1 is the
/// clockwise exchange, -1 its inverse.
struct Generator {
    int index = 1;
    int sign = 1;

    Generator inverse() const { return {index, -sign}; }
    /// Signed-integer notation: +s for the clockwise crossing, -s for the inverse.
    int as_signed() const { return sign * index; }
    static Generator from_signed(int value);

    friend bool operator==(const Generator &, const Generator &) = default;
    /// Ordered by signed value, so -2 < -1 < 1 < 2.
    friend std::strong_ordering operator<=>(const Generator &a, const Generator &b) {
        return a.as_signed() <=> b.as_signed();
    }
};

/// A braid on `strands` strands as a word in the generators, read in temporal
/// order (the first generator happens first). The empty word is the identity.
class BraidWord {
public:
    /// Throws std::invalid_argument when strands < 2 or any index is out of range.
    explicit BraidWord(int strands, std::vector<Generator> gens = {});

    static BraidWord from_signed(int strands, std::span<const int> values);
    static BraidWord identity(int strands) { return BraidWord(strands); }

    int strands() const { return strands_; }
    std::size_t length() const { return gens_.size(); }
    bool empty() const { return gens_.empty(); }
    std::span<const Generator> gens() const { return gens_; }
    const Generator &operator[](std::size_t i) const { return gens_[i]; }

    std::vector<int> to_signed() const;
    /// Exponent sum (number of positive crossings minus negative ones).
    int exponent_sum() const;
    /// Human-readable form such as "t1 t2^-1"; "e" for the empty word.
    std::string to_string() const;

    friend bool operator==(const BraidWord &, const BraidWord &) = default;

private:
    int strands_;
    std::vector<Generator> gens_;
};

/// Image of a braid in the symmetric group: `image[k-1]` is the final position
/// of the strand that started at position k.
struct Permutation {
    std::vector<int> image;

    static Permutation identity(int n);
    bool is_identity() const;
    bool is_bijection() const;
    int operator()(int position) const { return image.at(position - 1); }
    /// This permutation followed by `next`.
    Permutation then(const Permutation &next) const;

    friend bool operator==(const Permutation &, const Permutation &) = default;
};

/// Position of one strand before each generator and after the last one.
struct WarpTrace {
    int start = 1;
    std::vector<int> positions;

    int final_position() const { return positions.back(); }
};

BraidWord compose(const BraidWord &a, const BraidWord &b);
BraidWord inverse(const BraidWord &w);

/// Cancels adjacent pairs g g^-1 until none remain. No braid relations.
BraidWord free_reduce(const BraidWord &w);

Permutation permutation_of(const BraidWord &w);
bool is_purebraid(const BraidWord &w);

WarpTrace warp_trace(const BraidWord &w, int start);

/// True when every crossing involves the strand that starts at `warp_start`.
bool is_weave(const BraidWord &w, int warp_start);
bool is_pureweave(const BraidWord &w, int warp_start);

/// Deletes the strand that starts at `initial_position`. Crossings involving
/// it vanish; the others are relabelled onto n-1 strands.
BraidWord erase_strand(const BraidWord &w, int initial_position);

/// Moves a word onto a wider braid: index s becomes s + offset.
BraidWord embed(const BraidWord &w, int strands, int offset);

}  // namespace weave

#endif  // WEAVE_BRAID_HPP
