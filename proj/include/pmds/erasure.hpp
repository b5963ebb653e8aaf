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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pmds/matrix.hpp"
#include "pmds/pmds.hpp"
#include "pmds/rng.hpp"

namespace pmds {

/// Sorted distinct coordinate indices marked erased.
struct ErasurePattern {
    std::vector<std::size_t> erased;

    static ErasurePattern from_indices(std::vector<std::size_t> idx, std::size_t n) {
        std::sort(idx.begin(), idx.end());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= n) throw std::invalid_argument("ErasurePattern: index out of range");
            if (i && idx[i] == idx[i - 1]) throw std::invalid_argument("ErasurePattern: duplicate index");
        }
        return ErasurePattern{std::move(idx)};
    }

    bool contains(std::size_t i) const { return std::binary_search(erased.begin(), erased.end(), i); }
    std::size_t size() const { return erased.size(); }

    std::vector<std::size_t> per_block_counts(const std::vector<std::size_t>& widths) const {
        std::vector<std::size_t> counts(widths.size(), 0);
        std::size_t b = 0, end = widths.empty() ? 0 : widths[0];
        for (const std::size_t i : erased) {
            while (i >= end) end += widths[++b];
            ++counts[b];
        }
        return counts;
    }

    friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
};

/// Streams every pattern expressible as union of per-block sets of at most
/// r_i indices plus at most s extra indices anywhere; equivalently every set
/// whose per-block overflow above r_i sums to at most s. Deduplicated by
/// construction, lexicographic over the sorted index sequences.
class CapabilityPatternStream {
  public:
    CapabilityPatternStream(std::vector<std::size_t> widths, std::vector<std::size_t> r, std::size_t s)
        : widths_(std::move(widths)), r_(std::move(r)), budget_(s) {
        if (widths_.size() != r_.size())
            throw std::invalid_argument("CapabilityPatternStream: widths/r length mismatch");
        n_ = 0;
        for (std::size_t b = 0; b < widths_.size(); ++b) {
            n_ += widths_[b];
            for (std::size_t i = 0; i < widths_[b]; ++i) block_of_.push_back(b);
        }
        counts_.assign(widths_.size(), 0);
    }

    std::optional<ErasurePattern> next() {
        if (done_) return std::nullopt;
        if (first_) {
            first_ = false;
            return ErasurePattern{};  // empty pattern always qualifies
        }
        std::size_t start = cur_.empty() ? 0 : cur_.back() + 1;
        while (true) {
            bool pushed = false;
            for (std::size_t col = start; col < n_; ++col) {
                if (!fits(col)) continue;
                push(col);
                pushed = true;
                break;
            }
            if (pushed) return ErasurePattern{cur_};
            if (cur_.empty()) {
                done_ = true;
                return std::nullopt;
            }
            start = cur_.back() + 1;
            pop();
        }
    }

  private:
    bool fits(std::size_t col) const {
        const std::size_t b = block_of_[col];
        if (counts_[b] >= widths_[b]) return false;
        const std::size_t extra = counts_[b] >= r_[b] ? 1 : 0;
        return overflow_ + extra <= budget_;
    }

    void push(std::size_t col) {
        const std::size_t b = block_of_[col];
        if (counts_[b] >= r_[b]) ++overflow_;
        ++counts_[b];
        cur_.push_back(col);
    }

    void pop() {
        const std::size_t col = cur_.back();
        cur_.pop_back();
        const std::size_t b = block_of_[col];
        --counts_[b];
        if (counts_[b] >= r_[b]) --overflow_;
    }

    std::vector<std::size_t> widths_, r_, block_of_, counts_;
    std::vector<std::size_t> cur_;
    std::size_t n_ = 0, budget_ = 0, overflow_ = 0;
    bool first_ = true, done_ = false;
};

inline CapabilityPatternStream capability_patterns(const PmdsParams& params) {
    return CapabilityPatternStream(params.block_widths(), params.r, params.s);
}

/// Exact pattern count without enumeration (binomial convolution over the
/// per-block overflow budget).
inline std::uint64_t capability_pattern_count(const std::vector<std::size_t>& widths,
                                          const std::vector<std::size_t>& r, std::size_t s) {
    std::vector<unsigned __int128> dp(s + 1, 0);
    dp[0] = 1;
    for (std::size_t b = 0; b < widths.size(); ++b) {
        std::vector<unsigned __int128> nx(s + 1, 0);
        for (std::size_t ov = 0; ov <= s; ++ov) {
            if (dp[ov] == 0) continue;
            for (std::size_t e = 0; e <= widths[b]; ++e) {
                const std::size_t extra = e > r[b] ? e - r[b] : 0;
                if (ov + extra > s) break;
                nx[ov + extra] += dp[ov] * binomial(widths[b], static_cast<std::int64_t>(e));
            }
        }
        dp = std::move(nx);
    }
    unsigned __int128 total = 0;
    for (const auto v : dp) total += v;
    if (total > UINT64_MAX) throw std::overflow_error("capability_pattern_count: count exceeds 64 bits");
    return static_cast<std::uint64_t>(total);
}

inline std::uint64_t capability_pattern_count(const PmdsParams& params) {
    return capability_pattern_count(params.block_widths(), params.r, params.s);
}

/// Pattern count clamped at `limit`: nullopt means "more than limit",
/// including families too large for 64 bits.
inline std::optional<std::uint64_t> capability_pattern_count_clamped(const PmdsParams& params,
                                                                 std::uint64_t limit) {
    try {
        const std::uint64_t count = capability_pattern_count(params);
        if (count > limit) return std::nullopt;
        return count;
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

/// A pattern is correctable iff the surviving generator columns have rank k.
inline bool is_correctable(const CodeArtifact& code, const ErasurePattern& pattern) {
    const std::size_t n = code.generator.cols();
    ColumnSelection survivors;
    survivors.reserve(n - pattern.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!pattern.contains(i)) survivors.push_back(i);
    if (survivors.size() < code.generator.rows()) return false;
    return rank(submatrix_cols(code.generator, survivors)) == code.generator.rows();
}

inline std::vector<Element> encode(const CodeArtifact& code, const std::vector<Element>& message) {
    const FMatrix& g = code.generator;
    if (message.size() != g.rows()) throw std::invalid_argument("encode: message length must be k");
    const FieldSpec& f = code.spec;
    std::vector<Element> c(g.cols(), f.zero());
    for (std::size_t j = 0; j < g.cols(); ++j)
        for (std::size_t w = 0; w < g.rows(); ++w) c[j] = f.add(c[j], f.mul(message[w], g.at(w, j)));
    return c;
}

/// Codeword with erased slots; symbols at erased positions are ignored.
struct ReceivedWord {
    std::vector<Element> symbols;
    ErasurePattern erased;
};

enum class RecoveryOutcome { recovered_locally, recovered_globally, unrecoverable };

struct BlockRoute {
    std::size_t block = 0;
    std::size_t erased_count = 0;
    std::size_t contacted = 0;  // in-block coordinates read for local repair
    bool repaired_locally = false;
};

struct RecoveryReport {
    ErasurePattern pattern;
    RecoveryOutcome outcome = RecoveryOutcome::unrecoverable;
    std::optional<std::vector<Element>> codeword;
    std::vector<BlockRoute> routes;
};

/// Two-stage erasure decoder. Stage 1 repairs each block with at least ell
/// survivors through its own row-space code, reading exactly ell in-block
/// coordinates. Stage 2 solves for the message from all known coordinates.
/// Assumes the received word agrees with some codeword on the non-erased
/// positions; detected inconsistencies throw.
inline RecoveryReport decode(const CodeArtifact& code, const ReceivedWord& received) {
    const FMatrix& g = code.generator;
    const FieldSpec& f = code.spec;
    const std::size_t n = g.cols(), k = g.rows();
    if (received.symbols.size() != n) throw std::invalid_argument("decode: word length must be n");
    const auto widths = code.params.block_widths();
    const auto offsets = code.params.block_offsets();

    std::vector<std::optional<Element>> known(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!received.erased.contains(i)) known[i] = received.symbols[i];

    RecoveryReport report;
    report.pattern = received.erased;

    // stage 1: local repair, block by block
    for (std::size_t b = 0; b < widths.size(); ++b) {
        BlockRoute route{b, 0, 0, false};
        std::vector<std::size_t> missing, present;
        for (std::size_t c = 0; c < widths[b]; ++c) {
            const std::size_t global = offsets[b] + c;
            (known[global] ? present : missing).push_back(c);
        }
        route.erased_count = missing.size();
        if (!missing.empty() && present.size() >= code.params.ell) {
            FMatrix block = submatrix_cols(g, detail::index_range(offsets[b], widths[b]));
            auto [reduced, pivots] = rref(block);
            if (pivots.size() == code.params.ell) {
                FMatrix basis = submatrix(reduced, detail::index_range(0, code.params.ell),
                                          detail::index_range(0, widths[b]));
                // greedy: first ell survivors whose basis columns are independent
                ColumnSelection use;
                for (const std::size_t c : present) {
                    if (use.size() == code.params.ell) break;
                    ColumnSelection trial = use;
                    trial.push_back(c);
                    if (rank(submatrix_cols(basis, trial)) == trial.size()) use = std::move(trial);
                }
                if (use.size() == code.params.ell) {
                    FMatrix sys = transpose(submatrix_cols(basis, use));
                    std::vector<Element> rhs;
                    for (const std::size_t c : use) rhs.push_back(*known[offsets[b] + c]);
                    auto v = solve(sys, rhs);
                    if (!v) throw std::runtime_error("decode: block data inconsistent with the code");
                    for (const std::size_t c : missing) {
                        Element val = f.zero();
                        for (std::size_t t = 0; t < code.params.ell; ++t)
                            val = f.add(val, f.mul((*v)[t], basis.at(t, c)));
                        known[offsets[b] + c] = std::move(val);
                    }
                    route.contacted = use.size();
                    route.repaired_locally = true;
                }
            }
        }
        report.routes.push_back(route);
    }

    const bool all_known = std::all_of(known.begin(), known.end(), [](const auto& v) { return v.has_value(); });
    if (all_known) {
        std::vector<Element> word(n);
        for (std::size_t i = 0; i < n; ++i) word[i] = *known[i];
        report.outcome = RecoveryOutcome::recovered_locally;
        report.codeword = std::move(word);
        return report;
    }

    // stage 2: global solve from every known coordinate
    ColumnSelection known_cols;
    std::vector<Element> rhs;
    for (std::size_t i = 0; i < n; ++i)
        if (known[i]) {
            known_cols.push_back(i);
            rhs.push_back(*known[i]);
        }
    if (known_cols.size() < k || rank(submatrix_cols(g, known_cols)) != k) {
        report.outcome = RecoveryOutcome::unrecoverable;
        return report;
    }
    auto x = solve(transpose(submatrix_cols(g, known_cols)), rhs);
    if (!x) throw std::runtime_error("decode: received word inconsistent with the code");
    std::vector<Element> message = *x;
    report.codeword = encode(code, message);
    report.outcome = RecoveryOutcome::recovered_globally;
    return report;
}

struct CapabilityVerdict {
    bool all_correctable = false;
    std::optional<ErasurePattern> counterexample;
    std::uint64_t patterns_checked = 0;
};

/// Runs is_correctable over the whole pattern family of the code's shape.
inline CapabilityVerdict capability_sweep(const CodeArtifact& code) {
    auto stream = capability_patterns(code.params);
    CapabilityVerdict verdict;
    while (auto pattern = stream.next()) {
        ++verdict.patterns_checked;
        if (!is_correctable(code, *pattern)) {
            verdict.counterexample = std::move(*pattern);
            return verdict;
        }
    }
    verdict.all_correctable = true;
    return verdict;
}

/// Seeded sample from the pattern family: per-block erasure counts drawn
/// uniformly in [0, r_i], then an extra set of up to s coordinates.
inline ErasurePattern sample_capability_pattern(const PmdsParams& params, Rng& rng) {
    const auto widths = params.block_widths();
    const auto offsets = params.block_offsets();
    std::vector<std::size_t> chosen;
    for (std::size_t b = 0; b < params.m; ++b) {
        std::vector<std::size_t> pool;
        for (std::size_t c = 0; c < widths[b]; ++c) pool.push_back(offsets[b] + c);
        const std::size_t take = rng.below(params.r[b] + 1);
        for (std::size_t t = 0; t < take; ++t) {
            const std::size_t pick = rng.below(pool.size());
            chosen.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        }
    }
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < params.n(); ++i)
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) rest.push_back(i);
    const std::size_t extra = rng.below(params.s + 1);
    for (std::size_t t = 0; t < extra && !rest.empty(); ++t) {
        const std::size_t pick = rng.below(rest.size());
        chosen.push_back(rest[pick]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return ErasurePattern::from_indices(std::move(chosen), params.n());
}

}  // namespace pmds
