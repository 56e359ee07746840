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

#include "weave/braid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace weave {

Generator Generator::from_signed(int value) {
    if (value == 0) {
        throw std::invalid_argument("generator index 0 is not valid");
    }
    return value > 0 ? Generator{value, 1} : Generator{-value, -1};
}

BraidWord::BraidWord(int strands, std::vector<Generator> gens) : strands_(strands), gens_(std::move(gens)) {
    if (strands_ < 2) {
        throw std::invalid_argument("a braid needs at least 2 strands, got " + std::to_string(strands_));
    }
    for (const auto &g : gens_) {
        if (g.index < 1 || g.index > strands_ - 1) {
            throw std::invalid_argument("generator index " + std::to_string(g.index) + " out of range for " +
                                        std::to_string(strands_) + " strands");
        }
        if (g.sign != 1 && g.sign != -1) {
            throw std::invalid_argument("generator sign must be +1 or -1");
        }
    }
}

BraidWord BraidWord::from_signed(int strands, std::span<const int> values) {
    std::vector<Generator> gens;
    gens.reserve(values.size());
    for (int v : values) {
        gens.push_back(Generator::from_signed(v));
    }
    return BraidWord(strands, std::move(gens));
}

std::vector<int> BraidWord::to_signed() const {
    std::vector<int> out;
    out.reserve(gens_.size());
    for (const auto &g : gens_) {
        out.push_back(g.as_signed());
    }
    return out;
}

int BraidWord::exponent_sum() const {
    return std::accumulate(gens_.begin(), gens_.end(), 0, [](int acc, const Generator &g) { return acc + g.sign; });
}

std::string BraidWord::to_string() const {
    if (gens_.empty()) {
        return "e";
    }
    std::string out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i) out += ' ';
        out += 't' + std::to_string(gens_[i].index);
        if (gens_[i].sign < 0) out += "^-1";
    }
    return out;
}

Permutation Permutation::identity(int n) {
    Permutation p;
    p.image.resize(n);
    std::iota(p.image.begin(), p.image.end(), 1);
    return p;
}

bool Permutation::is_identity() const {
    for (std::size_t k = 0; k < image.size(); ++k) {
        if (image[k] != static_cast<int>(k) + 1) return false;
    }
    return true;
}

bool Permutation::is_bijection() const {
    std::vector<bool> seen(image.size(), false);
    for (int v : image) {
        if (v < 1 || v > static_cast<int>(image.size()) || seen[v - 1]) return false;
        seen[v - 1] = true;
    }
    return true;
}

Permutation Permutation::then(const Permutation &next) const {
    if (next.image.size() != image.size()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    Permutation out;
    out.image.reserve(image.size());
    for (int v : image) {
        out.image.push_back(next.image[v - 1]);
    }
    return out;
}

BraidWord compose(const BraidWord &a, const BraidWord &b) {
    if (a.strands() != b.strands()) {
        throw std::invalid_argument("cannot compose braids on " + std::to_string(a.strands()) + " and " +
                                    std::to_string(b.strands()) + " strands");
    }
    std::vector<Generator> gens(a.gens().begin(), a.gens().end());
    gens.insert(gens.end(), b.gens().begin(), b.gens().end());
    return BraidWord(a.strands(), std::move(gens));
}

BraidWord inverse(const BraidWord &w) {
    std::vector<Generator> gens;
    gens.reserve(w.length());
    for (auto it = w.gens().rbegin(); it != w.gens().rend(); ++it) {
        gens.push_back(it->inverse());
    }
    return BraidWord(w.strands(), std::move(gens));
}

BraidWord free_reduce(const BraidWord &w) {
    // Single left-to-right pass with a stack reaches the fixed point.
    std::vector<Generator> stack;
    stack.reserve(w.length());
    for (const auto &g : w.gens()) {
        if (!stack.empty() && stack.back() == g.inverse()) {
            stack.pop_back();
        } else {
            stack.push_back(g);
        }
    }
    return BraidWord(w.strands(), std::move(stack));
}

Permutation permutation_of(const BraidWord &w) {
    const int n = w.strands();
    // strand_at[pos-1] = starting position of the strand now at pos.
    std::vector<int> strand_at(n);
    std::iota(strand_at.begin(), strand_at.end(), 1);
    for (const auto &g : w.gens()) {
        std::swap(strand_at[g.index - 1], strand_at[g.index]);
    }
    Permutation p;
    p.image.assign(n, 0);
    for (int pos = 1; pos <= n; ++pos) {
        p.image[strand_at[pos - 1] - 1] = pos;
    }
    return p;
}

bool is_purebraid(const BraidWord &w) { return permutation_of(w).is_identity(); }

namespace {

void check_position(const BraidWord &w, int position) {
    if (position < 1 || position > w.strands()) {
        throw std::invalid_argument("position " + std::to_string(position) + " out of range for " +
                                    std::to_string(w.strands()) + " strands");
    }
}

int step(int pos, const Generator &g) {
    if (g.index == pos) return pos + 1;
    if (g.index + 1 == pos) return pos - 1;
    return pos;
}

}  // namespace

WarpTrace warp_trace(const BraidWord &w, int start) {
    check_position(w, start);
    WarpTrace t;
    t.start = start;
    t.positions.reserve(w.length() + 1);
    t.positions.push_back(start);
    int pos = start;
    for (const auto &g : w.gens()) {
        pos = step(pos, g);
        t.positions.push_back(pos);
    }
    return t;
}

bool is_weave(const BraidWord &w, int warp_start) {
    check_position(w, warp_start);
    int pos = warp_start;
    for (const auto &g : w.gens()) {
        if (g.index != pos && g.index != pos - 1) return false;
        pos = step(pos, g);
    }
    return true;
}

bool is_pureweave(const BraidWord &w, int warp_start) {
    return is_weave(w, warp_start) && is_purebraid(w) && warp_trace(w, warp_start).final_position() == warp_start;
}

BraidWord erase_strand(const BraidWord &w, int initial_position) {
    check_position(w, initial_position);
    if (w.strands() < 3) {
        throw std::invalid_argument("erasing a strand needs at least 3 strands");
    }
    std::vector<Generator> kept;
    int pos = initial_position;
    for (const auto &g : w.gens()) {
        if (g.index == pos || g.index + 1 == pos) {
            pos = step(pos, g);
            continue;
        }
        kept.push_back(pos < g.index ? Generator{g.index - 1, g.sign} : g);
    }
    return BraidWord(w.strands() - 1, std::move(kept));
}

BraidWord embed(const BraidWord &w, int strands, int offset) {
    std::vector<Generator> gens;
    gens.reserve(w.length());
    for (const auto &g : w.gens()) {
        gens.push_back({g.index + offset, g.sign});
    }
    return BraidWord(strands, std::move(gens));
}

}  // namespace weave
