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
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pmds/field.hpp"
#include "pmds/matrix.hpp"
#include "pmds/selection.hpp"

namespace pmds {

/// [n,k] code over GF(q) whose every k x k generator minor is nonsingular.
struct MdsCode {
    FieldSpec spec;
    std::size_t n = 0, k = 0;
    FMatrix generator;
    std::vector<Element> points;  // evaluation points actually used
    bool extended = false;        // extra (0,..,0,1) column appended
};

/// Rank-metric code over a GF(q^N)/GF(q) tower meeting the rank Singleton
/// bound; certified via mrd_criterion.
struct MrdCode {
    FieldSpec spec;  // tower
    std::size_t n = 0, k = 0;
    FMatrix generator;
    std::vector<Element> point_vector;  // GF(q)-independent g_1..g_n
};

/// True iff all C(n,k) maximal minors of the k x n generator are nonzero.
inline bool is_mds(const FMatrix& g) {
    if (g.rows() > g.cols()) throw std::invalid_argument("is_mds: k exceeds n");
    auto stream = combinations(g.cols(), g.rows());
    while (auto sel = stream.next())
        if (g.spec().is_zero(det(submatrix_cols(g, *sel)))) return false;
    return true;
}

/// Vandermonde generator with rows (point^i), i = 0..k-1, over distinct
/// evaluation points. Default points are 0..n-1 in field enumeration order;
/// when n = q+1 (and no points are given) the matrix is extended with the
/// (0,...,0,1) column.
inline MdsCode vandermonde_mds(const FieldSpec& spec, std::size_t n, std::size_t k,
                               std::optional<std::vector<Element>> points = std::nullopt) {
    if (k < 1 || k > n) throw std::invalid_argument("vandermonde_mds: need 1 <= k <= n");
    const std::uint64_t q = spec.order();
    bool extended = false;
    std::vector<Element> pts;
    if (points) {
        pts = *points;
        if (pts.size() != n) throw std::invalid_argument("vandermonde_mds: need exactly n points");
        if (n > q) throw std::invalid_argument("vandermonde_mds: n too large for q");
    } else {
        if (n > q + 1) throw std::invalid_argument("vandermonde_mds: n too large for q");
        extended = (n == q + 1);
        const std::size_t plain = extended ? n - 1 : n;
        for (std::size_t j = 0; j < plain; ++j) pts.push_back(spec.from_int(j));
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) throw std::invalid_argument("vandermonde_mds: duplicate points");

    FMatrix g(spec, k, n);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        Element val = spec.one();
        for (std::size_t i = 0; i < k; ++i) {
            g.set(i, j, val);
            val = spec.mul(val, pts[j]);
        }
    }
    if (extended) g.set(k - 1, n - 1, spec.one());
    return MdsCode{spec, n, k, std::move(g), std::move(pts), extended};
}

/// Lift a base-field matrix into the tower entry-by-entry.
inline FMatrix embed_matrix(const FMatrix& base_mat, const FieldSpec& tower) {
    if (!base_mat.spec().same_field(tower.base_spec()))
        throw std::invalid_argument("embed_matrix: matrix field does not match tower base");
    FMatrix out(tower, base_mat.rows(), base_mat.cols());
    for (std::size_t r = 0; r < base_mat.rows(); ++r)
        for (std::size_t c = 0; c < base_mat.cols(); ++c) out.set(r, c, tower.embed(base_mat.at(r, c)));
    return out;
}

/// Moore-matrix generator: entry (i,j) = g_j^(q^i). Requires n <= N and
/// g_1..g_n linearly independent over GF(q), checked by expanding each g_j
/// into GF(q) coordinates and testing rank = n.
inline MrdCode gabidulin(const FieldSpec& tower, std::size_t n, std::size_t k, std::vector<Element> g) {
    if (!tower.has_tower()) throw std::invalid_argument("gabidulin: field has no declared base");
    const std::size_t height = tower.tower_height();
    if (n > height) throw std::invalid_argument("gabidulin: n exceeds the extension degree N");
    if (k < 1 || k > n) throw std::invalid_argument("gabidulin: need 1 <= k <= n");
    if (g.size() != n) throw std::invalid_argument("gabidulin: need exactly n points");

    FMatrix coords(tower.base_spec(), height, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto col = tower.expand_to_base(g[j]);
        for (std::size_t r = 0; r < height; ++r) coords.set(r, j, col[r]);
    }
    if (rank(coords) != n)
        throw std::invalid_argument("gabidulin: points are linearly dependent over the base field");

    FMatrix gen(tower, k, n);
    for (std::size_t j = 0; j < n; ++j) {
        Element v = g[j];
        for (std::size_t i = 0; i < k; ++i) {
            gen.set(i, j, v);
            v = tower.frobenius(v, 1);
        }
    }
    return MrdCode{tower, n, k, std::move(gen), std::move(g)};
}

/// Gaussian binomial [n choose k]_q, clamped: returns nullopt when the count
/// exceeds `limit` (limits above 2^62 are treated as 2^62).
inline std::optional<std::uint64_t> gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t q,
                                                      std::uint64_t limit = UINT64_MAX) {
    if (k > n) return 0;
    if (limit > (1ull << 62)) limit = 1ull << 62;
    // [n,k]_q = [n-1,k-1]_q + q^k * [n-1,k]_q, row by row
    std::vector<unsigned __int128> row(k + 1, 0);
    row[0] = 1;
    const unsigned __int128 cap = static_cast<unsigned __int128>(limit);
    for (std::size_t nn = 1; nn <= n; ++nn) {
        for (std::size_t kk = std::min(nn, k); kk >= 1; --kk) {
            unsigned __int128 qk = 1;
            bool over = false;
            for (std::size_t i = 0; i < kk; ++i) {
                qk *= q;
                if (qk > cap + 1) {
                    over = true;
                    break;
                }
            }
            unsigned __int128 v = over && row[kk] != 0 ? cap + 1 : row[kk] * qk + row[kk - 1];
            if (v > cap) v = cap + 1;
            row[kk] = v;
        }
    }
    if (row[k] > cap) return std::nullopt;
    return static_cast<std::uint64_t>(row[k]);
}

/// Streams one canonical RREF representative per k-dimensional row space of
/// GF(q)^n; Gaussian-binomial many in total.
class RrefSpaceStream {
  public:
    RrefSpaceStream(FieldSpec base, std::size_t n, std::size_t k)
        : base_(std::move(base)), n_(n), k_(k), pivot_stream_(combinations(n, k)) {}

    std::optional<FMatrix> next() {
        while (true) {
            if (!pivots_) {
                auto p = pivot_stream_.next();
                if (!p) return std::nullopt;
                pivots_ = *p;
                free_slots_.clear();
                for (std::size_t i = 0; i < k_; ++i)
                    for (std::size_t c = (*pivots_)[i] + 1; c < n_; ++c)
                        if (!is_pivot(c)) free_slots_.push_back({i, c});
                digits_.assign(free_slots_.size(), 0);
                exhausted_ = false;
            }
            if (exhausted_) {
                pivots_.reset();
                continue;
            }
            FMatrix e(base_, k_, n_);
            for (std::size_t i = 0; i < k_; ++i) e.set(i, (*pivots_)[i], base_.one());
            for (std::size_t s = 0; s < free_slots_.size(); ++s)
                e.set(free_slots_[s].first, free_slots_[s].second, base_.from_int(digits_[s]));
            advance();
            return e;
        }
    }

  private:
    bool is_pivot(std::size_t c) const {
        for (const std::size_t p : *pivots_)
            if (p == c) return true;
        return false;
    }

    void advance() {
        for (std::size_t s = 0; s < digits_.size(); ++s) {
            if (++digits_[s] < base_.order()) return;
            digits_[s] = 0;
        }
        exhausted_ = true;  // all digit vectors done for this pivot set
    }

    FieldSpec base_;
    std::size_t n_, k_;
    BlockSelectionStream pivot_stream_;
    std::optional<ColumnSelection> pivots_;
    std::vector<std::pair<std::size_t, std::size_t>> free_slots_;
    std::vector<std::uint64_t> digits_;
    bool exhausted_ = false;
};

enum class MrdCertification { certified_mrd, certified_not_mrd, not_certified };

/// Generator-matrix MRD test: rank(G E^T) = k for every full-rank
/// E in GF(q)^(k x n), enumerated over canonical RREF representatives only
/// (row operations on E do not change rank(G E^T)). Instances with more
/// than `budget` representatives are reported as not certified rather than
/// guessed at.
inline MrdCertification mrd_criterion(const FMatrix& g, std::uint64_t budget = 2'000'000) {
    const FieldSpec& tower = g.spec();
    if (!tower.has_tower()) throw std::invalid_argument("mrd_criterion: field has no declared base");
    const std::size_t k = g.rows(), n = g.cols();
    if (k > n) throw std::invalid_argument("mrd_criterion: k exceeds n");
    if (n > tower.tower_height()) throw std::invalid_argument("mrd_criterion: n exceeds the extension degree N");
    if (!gaussian_binomial(n, k, tower.base_order(), budget)) return MrdCertification::not_certified;

    RrefSpaceStream stream(tower.base_spec(), n, k);
    while (auto e = stream.next()) {
        const FMatrix lifted = embed_matrix(*e, tower);
        if (rank(mat_mul(g, transpose(lifted))) != k) return MrdCertification::certified_not_mrd;
    }
    return MrdCertification::certified_mrd;
}

}  // namespace pmds
