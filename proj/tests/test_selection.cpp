/*
 * Copyright 2026 pmdskit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include "oracles.hpp"
#include "pmds/rng.hpp"
#include "pmds/selection.hpp"

using namespace pmds;

namespace {

std::vector<ColumnSelection> drain(BlockSelectionStream stream) {
    std::vector<ColumnSelection> out;
    while (auto sel = stream.next()) out.push_back(std::move(*sel));
    return out;
}

}  // namespace

TEST_SUITE("selection") {
    TEST_CASE("capped enumeration, frozen example") {
        const auto got = drain(BlockSelectionStream({2, 2}, {1, 1}, 2));
        const std::vector<ColumnSelection> expected = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
        CHECK(got == expected);
    }

    TEST_CASE("unconstrained caps give all combinations") {
        const auto got = drain(BlockSelectionStream({3, 3}, {3, 3}, 3));
        const auto expected = oracles::all_k_subsets(6, 3);
        CHECK(got.size() == binomial(6, 3));
        CHECK(std::vector<std::vector<std::size_t>>(got.begin(), got.end()) == expected);
    }

    TEST_CASE("edge sizes") {
        CHECK(drain(BlockSelectionStream({2, 2}, {1, 1}, 0)) == std::vector<ColumnSelection>{{}});
        CHECK(drain(BlockSelectionStream({2, 2}, {1, 1}, 3)).empty());  // capacity is 2
        CHECK(drain(BlockSelectionStream({2}, {0}, 1)).empty());
    }

    TEST_CASE("matches brute-force filter on random shapes") {
        Rng rng(2024);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t m = 1 + rng.below(4);
            std::vector<std::size_t> widths, caps;
            std::size_t n = 0;
            for (std::size_t b = 0; b < m; ++b) {
                const std::size_t w = 1 + rng.below(4);
                widths.push_back(w);
                caps.push_back(rng.below(w + 2));
                n += w;
            }
            if (n > 12) continue;
            const std::size_t k = rng.below(n + 1);
            const auto got = drain(BlockSelectionStream(widths, caps, k));
            const auto expected = oracles::capped_subsets(widths, caps, k);
            CHECK(std::vector<std::vector<std::size_t>>(got.begin(), got.end()) == expected);
            CHECK(count_block_selections(widths, caps, k) == expected.size());
        }
    }

    TEST_CASE("lexicographic order and strict growth") {
        const auto sels = drain(BlockSelectionStream({4, 3, 2}, {2, 2, 1}, 4));
        for (std::size_t i = 0; i < sels.size(); ++i) {
            for (std::size_t j = 1; j < sels[i].size(); ++j) CHECK(sels[i][j] > sels[i][j - 1]);
            if (i) CHECK(sels[i - 1] < sels[i]);
        }
    }

    TEST_CASE("binomial helper") {
        CHECK(binomial(5, 2) == 10);
        CHECK(binomial(5, 0) == 1);
        CHECK(binomial(5, -1) == 0);
        CHECK(binomial(5, 6) == 0);
        CHECK(binomial(62, 31) == 465428353255261088ull);
    }
}
