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

// Brute-force reference implementations used as test oracles. These stay
// deliberately independent of the library's code paths: they use their own
// polynomial arithmetic and plain recursive enumeration.

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "pmds/field.hpp"
#include "pmds/matrix.hpp"

namespace oracles {

// --- polynomial irreducibility via factor-product search ---

inline std::vector<std::uint32_t> poly_mul_raw(const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b, std::uint64_t p) {
    std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    return out;
}

inline std::vector<std::vector<std::uint32_t>> all_monic(std::size_t deg, std::uint64_t p) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint64_t v = 0; v < count; ++v) {
        std::vector<std::uint32_t> f(deg + 1, 0);
        f[deg] = 1;
        std::uint64_t x = v;
        for (std::size_t i = 0; i < deg; ++i) {
            f[i] = static_cast<std::uint32_t>(x % p);
            x /= p;
        }
        out.push_back(std::move(f));
    }
    return out;
}

// irreducible iff no product of two lower-degree monic polynomials equals f
inline bool irreducible_by_products(const std::vector<std::uint32_t>& f, std::uint64_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    for (std::size_t da = 1; da <= deg / 2; ++da)
        for (const auto& a : all_monic(da, p))
            for (const auto& b : all_monic(deg - da, p))
                if (poly_mul_raw(a, b, p) == f) return false;
    return true;
}

// --- determinant by Leibniz permutation expansion (small sizes) ---

inline pmds::Element leibniz_det(const pmds::FMatrix& m) {
    const pmds::FieldSpec& f = m.spec();
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    pmds::Element acc = f.zero();
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        pmds::Element term = f.one();
        for (std::size_t i = 0; i < n; ++i) term = f.mul(term, m.at(i, perm[i]));
        acc = inversions % 2 ? f.sub(acc, term) : f.add(acc, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

// --- plain subset enumeration ---

inline void subsets_rec(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                        std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t c = start; c + (k - cur.size()) <= n; ++c) {
        cur.push_back(c);
        subsets_rec(n, k, c + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> all_k_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets_rec(n, k, 0, cur, out);
    return out;
}

inline std::size_t block_of_column(const std::vector<std::size_t>& widths, std::size_t col) {
    std::size_t b = 0, end = widths[0];
    while (col >= end) end += widths[++b];
    return b;
}

// filter of all C(n,k) subsets by per-block caps
inline std::vector<std::vector<std::size_t>> capped_subsets(const std::vector<std::size_t>& widths,
                                                            const std::vector<std::size_t>& caps,
                                                            std::size_t k) {
    std::size_t n = 0;
    for (const std::size_t w : widths) n += w;
    std::vector<std::vector<std::size_t>> out;
    for (const auto& sub : all_k_subsets(n, k)) {
        std::vector<std::size_t> counts(widths.size(), 0);
        for (const std::size_t c : sub) ++counts[block_of_column(widths, c)];
        bool ok = true;
        for (std::size_t b = 0; b < widths.size(); ++b)
            if (counts[b] > caps[b]) ok = false;
        if (ok) out.push_back(sub);
    }
    return out;
}

// all subsets of the given universe, any size (universe small)
inline std::vector<std::vector<std::size_t>> all_subsets(const std::vector<std::size_t>& universe) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t n = universe.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<std::size_t> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) sub.push_back(universe[i]);
        out.push_back(std::move(sub));
    }
    return out;
}

// direct (A_1..A_m, S) enumeration of the erasure-pattern family, deduped
inline std::set<std::vector<std::size_t>> capability_family(const std::vector<std::size_t>& widths,
                                                        const std::vector<std::size_t>& r, std::size_t s) {
    const std::size_t m = widths.size();
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> block_cols(m);
    for (std::size_t b = 0; b < m; ++b) {
        for (std::size_t c = 0; c < widths[b]; ++c) block_cols[b].push_back(n + c);
        n += widths[b];
    }
    std::vector<std::size_t> everything(n);
    for (std::size_t i = 0; i < n; ++i) everything[i] = i;

    // per-block choices of at most r_b indices
    std::vector<std::vector<std::vector<std::size_t>>> choices(m);
    for (std::size_t b = 0; b < m; ++b)
        for (const auto& sub : all_subsets(block_cols[b]))
            if (sub.size() <= r[b]) choices[b].push_back(sub);

    std::set<std::vector<std::size_t>> family;
    std::vector<std::size_t> odo(m, 0);
    while (true) {
        std::vector<std::size_t> base;
        for (std::size_t b = 0; b < m; ++b)
            base.insert(base.end(), choices[b][odo[b]].begin(), choices[b][odo[b]].end());
        for (const auto& extra : all_subsets(everything)) {
            if (extra.size() > s) continue;
            std::set<std::size_t> u(base.begin(), base.end());
            u.insert(extra.begin(), extra.end());
            family.insert(std::vector<std::size_t>(u.begin(), u.end()));
        }
        std::size_t pos = 0;
        while (pos < m && ++odo[pos] == choices[pos].size()) odo[pos++] = 0;
        if (pos == m) break;
    }
    return family;
}

}  // namespace oracles
