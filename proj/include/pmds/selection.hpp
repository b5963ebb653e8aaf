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

#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pmds/rational.hpp"

namespace pmds {

/// Strictly increasing column indices.
using ColumnSelection = std::vector<std::size_t>;

/// Lazily yields every k-subset of {0..n-1} taking at most caps[i] columns
/// from block i, in lexicographic order, each exactly once. The streamed set
/// is never materialized; an infeasible k yields an empty stream.
class BlockSelectionStream {
  public:
    BlockSelectionStream(std::vector<std::size_t> block_sizes, std::vector<std::size_t> caps, std::size_t k)
        : sizes_(std::move(block_sizes)), caps_(std::move(caps)), k_(k) {
        if (sizes_.size() != caps_.size())
            throw std::invalid_argument("BlockSelectionStream: sizes/caps length mismatch");
        n_ = 0;
        for (std::size_t b = 0; b < sizes_.size(); ++b) {
            block_start_.push_back(n_);
            n_ += sizes_[b];
            for (std::size_t i = 0; i < sizes_[b]; ++i) block_of_.push_back(b);
        }
        used_.assign(sizes_.size(), 0);
        cur_.reserve(k_);
    }

    std::optional<ColumnSelection> next() {
        if (done_) return std::nullopt;
        if (first_) {
            first_ = false;
            if (extend(0, 0)) return cur_;
            done_ = true;
            return std::nullopt;
        }
        if (k_ == 0) {  // the single empty selection was already yielded
            done_ = true;
            return std::nullopt;
        }
        // backtrack: advance the deepest slot that still has room
        while (!cur_.empty()) {
            const std::size_t col = cur_.back();
            cur_.pop_back();
            --used_[block_of_[col]];
            if (extend(cur_.size(), col + 1)) return cur_;
        }
        done_ = true;
        return std::nullopt;
    }

    const std::vector<std::size_t>& block_sizes() const { return sizes_; }
    std::size_t total_columns() const { return n_; }

  private:
    // Greedily fill slots [slot, k) with the smallest feasible columns
    // starting at start_col. The capacity pre-check makes greedy complete:
    // it either fills all slots or proves no completion exists.
    bool extend(std::size_t slot, std::size_t start_col) {
        std::size_t col = start_col;
        for (std::size_t t = slot; t < k_; ++t) {
            bool placed = false;
            for (; col < n_; ++col) {
                const std::size_t b = block_of_[col];
                if (used_[b] >= caps_[b]) continue;
                ++used_[b];
                if (capacity_from(col + 1) >= k_ - t - 1) {
                    cur_.push_back(col);
                    ++col;
                    placed = true;
                    break;
                }
                --used_[b];
            }
            if (!placed) {
                // undo what this call placed
                while (cur_.size() > slot) {
                    --used_[block_of_[cur_.back()]];
                    cur_.pop_back();
                }
                return false;
            }
        }
        return true;
    }

    // Max number of further picks among columns >= col given current usage.
    std::size_t capacity_from(std::size_t col) const {
        std::size_t cap = 0;
        for (std::size_t b = 0; b < sizes_.size(); ++b) {
            const std::size_t end = block_start_[b] + sizes_[b];
            if (end <= col) continue;
            const std::size_t avail = end - std::max(col, block_start_[b]);
            const std::size_t room = caps_[b] > used_[b] ? caps_[b] - used_[b] : 0;
            cap += std::min(avail, room);
        }
        return cap;
    }

    std::vector<std::size_t> sizes_, caps_, block_start_, block_of_, used_;
    ColumnSelection cur_;
    std::size_t n_ = 0, k_ = 0;
    bool first_ = true, done_ = false;
};

/// Plain k-combinations of {0..n-1} (single unconstrained block).
inline BlockSelectionStream combinations(std::size_t n, std::size_t k) {
    return BlockSelectionStream({n}, {n}, k);
}

/// |{ I : |I| = k, at most caps[i] picks in block i }| by binomial
/// convolution; exact counterpart of streaming the whole enumeration.
inline std::uint64_t count_block_selections(const std::vector<std::size_t>& block_sizes,
                                            const std::vector<std::size_t>& caps, std::size_t k) {
    if (block_sizes.size() != caps.size())
        throw std::invalid_argument("count_block_selections: sizes/caps length mismatch");
    std::vector<unsigned __int128> dp(k + 1, 0);
    dp[0] = 1;
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        std::vector<unsigned __int128> nx(k + 1, 0);
        const std::size_t top = std::min(caps[b], block_sizes[b]);
        for (std::size_t have = 0; have <= k; ++have) {
            if (dp[have] == 0) continue;
            for (std::size_t take = 0; take <= top && have + take <= k; ++take)
                nx[have + take] += dp[have] * binomial(block_sizes[b], static_cast<std::int64_t>(take));
        }
        dp = std::move(nx);
    }
    if (dp[k] > UINT64_MAX) throw std::overflow_error("count_block_selections: count exceeds 64 bits");
    return static_cast<std::uint64_t>(dp[k]);
}

}  // namespace pmds
