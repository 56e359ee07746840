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

#ifndef WEAVE_TESTS_SUPPORT_HPP
#define WEAVE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "weave/braid.hpp"

namespace weave::testing {

inline BraidWord W(int n, std::initializer_list<int> v) {
    std::vector<int> s(v);
    return BraidWord::from_signed(n, s);
}

inline int pick(std::mt19937_64 &rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Generator random_generator(std::mt19937_64 &rng, int n) {
    return {pick(rng, 1, n - 1), (rng() & 1U) ? 1 : -1};
}

inline BraidWord random_word(std::mt19937_64 &rng, int n, int p) {
    std::vector<Generator> g;
    for (int k = 0; k < p; ++k) g.push_back(random_generator(rng, n));
    return BraidWord(n, std::move(g));
}

/// Product of conjugated squares c s^{+-2} c^-1, at most `max_len` long.
inline BraidWord random_purebraid(std::mt19937_64 &rng, int n, int max_len) {
    std::vector<Generator> out;
    for (int tries = 0; tries < 20; ++tries) {
        const BraidWord c = random_word(rng, n, pick(rng, 0, 4));
        const Generator g = random_generator(rng, n);
        const std::size_t piece = 2 * c.length() + 2;
        if (out.size() + piece > static_cast<std::size_t>(max_len)) continue;
        out.insert(out.end(), c.gens().begin(), c.gens().end());
        out.push_back(g);
        out.push_back(g);
        const BraidWord ci = inverse(c);
        out.insert(out.end(), ci.gens().begin(), ci.gens().end());
    }
    return BraidWord(n, std::move(out));
}

/// Random warp walk from `start` followed by the direct path back home.
inline BraidWord random_pureweave(std::mt19937_64 &rng, int n, int start, int max_len) {
    std::vector<Generator> out;
    int pos = start;
    const int steps = pick(rng, 0, max_len / 2);
    auto sign = [&] { return (rng() & 1U) ? 1 : -1; };
    for (int k = 0; k < steps; ++k) {
        const bool up = pos == 1 ? true : pos == n ? false : (rng() & 1U) != 0;
        out.push_back({up ? pos : pos - 1, sign()});
        pos += up ? 1 : -1;
    }
    while (pos != start) {
        const bool up = pos < start;
        out.push_back({up ? pos : pos - 1, sign()});
        pos += up ? 1 : -1;
    }
    return BraidWord(n, std::move(out));
}

}  // namespace weave::testing

#endif  // WEAVE_TESTS_SUPPORT_HPP
