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

#include <doctest.h>

#include <stdexcept>

#include "support.hpp"
#include "weave/braid.hpp"

using namespace weave;
using weave::testing::W;

namespace {

const BraidWord kFig1 = W(4, {1, -2, -3, 2, 1});

}  // namespace

TEST_CASE("words validate their generators") {
    CHECK_THROWS_AS(BraidWord(1), std::invalid_argument);
    CHECK_THROWS_AS(W(3, {3}), std::invalid_argument);
    CHECK_THROWS_AS(W(3, {0}), std::invalid_argument);
    CHECK_THROWS_AS(BraidWord(3, {Generator{1, 2}}), std::invalid_argument);
    CHECK(W(3, {1, -2}).to_signed() == std::vector<int>{1, -2});
    CHECK(W(3, {1, -2}).exponent_sum() == 0);
    CHECK(BraidWord::identity(4).empty());
}

TEST_CASE("compose concatenates in temporal order") {
    CHECK(compose(W(4, {1}), W(4, {-2, -3, 2, 1})) == kFig1);
    const auto w = W(4, {2, -1, 3});
    CHECK(compose(BraidWord(4), w) == w);
    CHECK(compose(w, BraidWord(4)) == w);
    CHECK(free_reduce(compose(w, inverse(w))).empty());
    CHECK_THROWS_AS(compose(W(3, {1}), W(4, {1})), std::invalid_argument);
}

TEST_CASE("inverse reverses and flips") {
    CHECK(inverse(W(3, {1, -2})) == W(3, {2, -1}));
    CHECK(inverse(BraidWord(3)).empty());
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const auto w = weave::testing::random_word(rng, 6, weave::testing::pick(rng, 0, 30));
        CHECK(inverse(inverse(w)) == w);
    }
}

TEST_CASE("free reduction cancels only inverse pairs") {
    CHECK(free_reduce(W(4, {3, 2, -2, -3})).empty());
    CHECK(free_reduce(W(3, {1, 2, 1})) == W(3, {1, 2, 1}));
    CHECK(free_reduce(W(3, {1, 1, -1, 2})) == W(3, {1, 2}));
    CHECK(free_reduce(W(3, {1, -2, 2, -1, 2})) == W(3, {2}));
}

TEST_CASE("permutation of the crossing sequence") {
    CHECK(permutation_of(W(2, {1})).image == std::vector<int>{2, 1});
    // By hand: after 1 -2 -3 2 1 the strand from 1 sits at 4 and the one from 4 at 1.
    const auto p = permutation_of(kFig1);
    CHECK(p.image == std::vector<int>{4, 2, 3, 1});
    CHECK(p.is_bijection());
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const int n = weave::testing::pick(rng, 2, 8);
        const auto a = weave::testing::random_word(rng, n, weave::testing::pick(rng, 0, 40));
        const auto b = weave::testing::random_word(rng, n, weave::testing::pick(rng, 0, 40));
        CHECK(permutation_of(compose(a, b)) == permutation_of(a).then(permutation_of(b)));
        CHECK(permutation_of(compose(a, inverse(a))).is_identity());
        CHECK(free_reduce(compose(a, inverse(a))).empty());
        const auto c = weave::testing::random_word(rng, n, 5);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        const int start = weave::testing::pick(rng, 1, n);
        CHECK(warp_trace(a, start).final_position() == permutation_of(a)(start));
    }
}

TEST_CASE("purebraid predicate") {
    CHECK(is_purebraid(W(3, {1, 1})));
    CHECK_FALSE(is_purebraid(W(3, {1})));
    CHECK(is_purebraid(BraidWord(5)));
}

TEST_CASE("warp trace") {
    CHECK(warp_trace(W(3, {1}), 1).positions == std::vector<int>{1, 2});
    CHECK(warp_trace(BraidWord(4), 3).positions == std::vector<int>{3});
    CHECK(warp_trace(W(3, {1, 2}), 1).final_position() == 3);
    CHECK(warp_trace(W(3, {2, 1}), 1).positions == std::vector<int>{1, 1, 2});
    CHECK_THROWS_AS(warp_trace(W(3, {1}), 4), std::invalid_argument);
    CHECK_THROWS_AS(warp_trace(W(3, {1}), 0), std::invalid_argument);
}

TEST_CASE("weave predicates") {
    for (int k = 1; k <= 4; ++k) CHECK_FALSE(is_weave(kFig1, k));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto w = weave::testing::random_word(rng, 2, 10);
        CHECK(is_weave(w, 1));
        CHECK(is_weave(w, 2));
    }
    CHECK(is_weave(W(3, {1, 2}), 1));
    CHECK_FALSE(is_weave(W(3, {2, 1}), 1));
    CHECK(is_pureweave(BraidWord(3), 1));
    CHECK(is_pureweave(W(3, {1, 1}), 1));
    CHECK_FALSE(is_pureweave(W(3, {1, 2}), 1));
    CHECK_FALSE(is_pureweave(W(3, {1, 2, 2, 1}), 3));
}

TEST_CASE("erase strand") {
    CHECK(erase_strand(W(3, {1}), 3) == W(2, {1}));
    // The erased strand sits below the crossing, so the index drops by one.
    CHECK(erase_strand(W(3, {2}), 1) == W(2, {1}));
    CHECK(erase_strand(W(3, {1, 2, -2, 1}), 1).empty());
    CHECK_THROWS_AS(erase_strand(W(2, {1}), 1), std::invalid_argument);
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        const int n = weave::testing::pick(rng, 3, 8);
        const int start = weave::testing::pick(rng, 1, n);
        const auto w = weave::testing::random_pureweave(rng, n, start, 40);
        CHECK(is_pureweave(w, start));
        CHECK(erase_strand(w, start).empty());
        // A crossing the traced strand is not part of survives the erasure.
        const auto m = weave::testing::random_word(rng, n, 12);
        if (!is_weave(m, start)) CHECK_FALSE(erase_strand(m, start).empty());
    }
}

TEST_CASE("conjugated pureweaves erase to a free-reducible word") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        const int start = weave::testing::pick(rng, 1, 5);
        const auto b = weave::testing::random_purebraid(rng, 5, 30);
        const auto w = weave::testing::random_pureweave(rng, 5, start, 30);
        REQUIRE(is_purebraid(b));
        REQUIRE(b.length() <= 30);
        REQUIRE(w.length() <= 30);
        const auto bwb = compose(compose(b, w), inverse(b));
        CHECK(is_purebraid(bwb));
        CHECK(free_reduce(erase_strand(bwb, start)).empty());
    }
}

TEST_CASE("embed shifts indices") {
    CHECK(embed(W(3, {1, -2}), 5, 2) == W(5, {3, -4}));
    CHECK_THROWS_AS(embed(W(3, {1, -2}), 4, 2), std::invalid_argument);
}
