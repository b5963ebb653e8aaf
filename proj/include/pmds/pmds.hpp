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

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmds/codes.hpp"
#include "pmds/field.hpp"
#include "pmds/matrix.hpp"
#include "pmds/parallel.hpp"
#include "pmds/rational.hpp"
#include "pmds/rng.hpp"
#include "pmds/selection.hpp"

namespace pmds {

/// Code shape: m blocks of width ell + r_i, dimension k = m*ell - s.
/// Use make() for validated instances; aggregate construction is left open
/// for internal/test shapes (partial codes, degenerate cases).
struct PmdsParams {
    std::size_t m = 0;
    std::size_t ell = 0;
    std::size_t s = 0;
    std::vector<std::size_t> r;

    std::size_t k() const { return m * ell - s; }
    std::size_t total_r() const {
        std::size_t sum = 0;
        for (const std::size_t ri : r) sum += ri;
        return sum;
    }
    std::size_t n() const { return m * ell + total_r(); }

    std::vector<std::size_t> block_widths() const {
        std::vector<std::size_t> w;
        w.reserve(m);
        for (const std::size_t ri : r) w.push_back(ell + ri);
        return w;
    }

    std::vector<std::size_t> block_offsets() const {
        std::vector<std::size_t> off;
        off.reserve(m);
        std::size_t pos = 0;
        for (const std::size_t ri : r) {
            off.push_back(pos);
            pos += ell + ri;
        }
        return off;
    }

    static PmdsParams make(std::size_t m, std::size_t ell, std::size_t s, std::vector<std::size_t> r) {
        if (m < 2) throw std::invalid_argument("PmdsParams: need m >= 2");
        if (ell < 1) throw std::invalid_argument("PmdsParams: need ell >= 1");
        if (s < 1) throw std::invalid_argument("PmdsParams: need s >= 1");
        if (r.size() != m) throw std::invalid_argument("PmdsParams: need one r_i per block");
        for (const std::size_t ri : r)
            if (ri < 1) throw std::invalid_argument("PmdsParams: need r_i >= 1");
        if (m * ell <= s || m * ell - s < ell)
            throw std::invalid_argument("PmdsParams: need k = m*ell - s >= ell");
        return PmdsParams{m, ell, s, std::move(r)};
    }

    friend bool operator==(const PmdsParams&, const PmdsParams&) = default;
};

/// Free coordinates of a generator in standard form: alpha fills the
/// superregular candidate block A (row-major, k rows by s columns), beta
/// holds the per-column combination coefficients, flattened block by block,
/// column by column, ell entries each.
struct StandardFormFill {
    std::vector<Element> alpha;  // size s*k
    std::vector<Element> beta;   // size ell*total_r

    friend bool operator==(const StandardFormFill&, const StandardFormFill&) = default;
};

struct Provenance {
    std::string method;
    std::uint64_t seed = 0;
    std::uint64_t attempts = 1;
    std::optional<std::vector<Element>> alpha;
    std::optional<std::vector<Element>> beta;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CodeArtifact {
    PmdsParams params;
    FieldSpec spec;
    FMatrix generator;
    Provenance provenance;
};

/// G = (C_1|D_1|...|C_m|D_m): the concatenated C-blocks form [I_k | A(alpha)]
/// split into m slices of ell columns, and each D-column of block i is the
/// beta-weighted combination of that block's C-columns. Deterministic in
/// (params, spec, fill).
inline CodeArtifact assemble_standard_form(const PmdsParams& params, const FieldSpec& spec,
                                           const StandardFormFill& fill) {
    const std::size_t k = params.k();
    const std::size_t ml = params.m * params.ell;
    const std::size_t big_r = params.total_r();
    if (fill.alpha.size() != params.s * k)
        throw std::invalid_argument("assemble_standard_form: alpha length must be s*k");
    if (fill.beta.size() != params.ell * big_r)
        throw std::invalid_argument("assemble_standard_form: beta length must be ell*R");

    // C columns, in concatenated order: identity then A.
    std::vector<std::vector<Element>> c_cols(ml, std::vector<Element>(k, spec.zero()));
    for (std::size_t ci = 0; ci < ml; ++ci) {
        if (ci < k) {
            c_cols[ci][ci] = spec.one();
        } else {
            const std::size_t z = ci - k;
            for (std::size_t w = 0; w < k; ++w) c_cols[ci][w] = fill.alpha[w * params.s + z];
        }
    }

    FMatrix g(spec, k, params.n());
    std::size_t out_col = 0;
    std::size_t beta_cols_before = 0;
    for (std::size_t i = 0; i < params.m; ++i) {
        const std::size_t c_base = i * params.ell;
        for (std::size_t t = 0; t < params.ell; ++t, ++out_col)
            for (std::size_t w = 0; w < k; ++w) g.set(w, out_col, c_cols[c_base + t][w]);
        for (std::size_t j = 0; j < params.r[i]; ++j, ++out_col) {
            for (std::size_t w = 0; w < k; ++w) {
                Element acc = spec.zero();
                for (std::size_t t = 0; t < params.ell; ++t) {
                    const Element& coeff = fill.beta[(beta_cols_before + j) * params.ell + t];
                    acc = spec.add(acc, spec.mul(coeff, c_cols[c_base + t][w]));
                }
                g.set(w, out_col, std::move(acc));
            }
        }
        beta_cols_before += params.r[i];
    }

    Provenance prov{"standard-form", 0, 1, fill.alpha, fill.beta};
    return CodeArtifact{params, spec, std::move(g), std::move(prov)};
}

/// Machine-readable verifier outcome. On failure, first_failure lists the
/// global column indices exhibiting it (the zero minor, or a deficient /
/// dependent column set in a block). selections_checked counts determinant
/// or rank tests up to and including the failing one.
struct PmdsVerdict {
    bool pmds = false;
    std::optional<ColumnSelection> first_failure;
    std::uint64_t selections_checked = 0;
};

/// Determinant-criterion verifier: every k x k submatrix taking at most ell
/// columns per block must be nonsingular. Runs on raw block widths so
/// partial codes can be checked too.
inline PmdsVerdict verify_pmds_tkl(const FMatrix& g, const std::vector<std::size_t>& widths, std::size_t ell,
                                   unsigned threads = 1) {
    std::size_t total = 0;
    for (const std::size_t w : widths) total += w;
    if (total != g.cols()) throw std::invalid_argument("verify_pmds_tkl: block widths do not sum to n");
    const std::size_t k = g.rows();
    std::vector<std::size_t> caps(widths.size());
    for (std::size_t i = 0; i < widths.size(); ++i) caps[i] = std::min(ell, widths[i]);
    BlockSelectionStream stream(widths, caps, k);

    threads = resolve_threads(threads);
    if (threads <= 1) {
        std::uint64_t checked = 0;
        while (auto sel = stream.next()) {
            ++checked;
            if (g.spec().is_zero(det(submatrix_cols(g, *sel)))) return {false, std::move(*sel), checked};
        }
        return {true, std::nullopt, checked};
    }

    // Batched parallel scan. The reported failure is the lexicographically
    // first one regardless of thread count.
    constexpr std::size_t kBatch = 4096;
    std::uint64_t before = 0;
    while (true) {
        std::vector<ColumnSelection> batch;
        batch.reserve(kBatch);
        while (batch.size() < kBatch) {
            auto sel = stream.next();
            if (!sel) break;
            batch.push_back(std::move(*sel));
        }
        if (batch.empty()) return {true, std::nullopt, before};
        std::atomic<std::size_t> first_bad{batch.size()};
        for_index_chunks(batch.size(), threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                if (first_bad.load(std::memory_order_relaxed) < lo) return;
                if (g.spec().is_zero(det(submatrix_cols(g, batch[i])))) {
                    std::size_t cur = first_bad.load(std::memory_order_relaxed);
                    while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
                    }
                    return;
                }
            }
        });
        const std::size_t bad = first_bad.load();
        if (bad < batch.size()) return {false, batch[bad], before + bad + 1};
        before += batch.size();
    }
}

inline PmdsVerdict verify_pmds_tkl(const CodeArtifact& code, unsigned threads = 1) {
    return verify_pmds_tkl(code.generator, code.params.block_widths(), code.params.ell, threads);
}

namespace detail {
inline ColumnSelection index_range(std::size_t start, std::size_t count) {
    ColumnSelection v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = start + i;
    return v;
}
}  // namespace detail

/// Definitional verifier, the independent route: (a) each block's row space
/// must be an [ell+r_i, ell] MDS code, and (b) every puncturing of exactly
/// r_i columns per block must leave a [m*ell, k] MDS code.
inline PmdsVerdict verify_pmds_definition(const FMatrix& g, const std::vector<std::size_t>& widths,
                                          std::size_t ell) {
    std::size_t total = 0;
    for (const std::size_t w : widths) total += w;
    if (total != g.cols()) throw std::invalid_argument("verify_pmds_definition: block widths do not sum to n");
    const std::size_t k = g.rows();
    const FieldSpec& f = g.spec();
    std::uint64_t checked = 0;

    std::vector<std::size_t> offsets(widths.size());
    {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < widths.size(); ++i) {
            offsets[i] = pos;
            pos += widths[i];
        }
    }

    // (a) block row spaces
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (widths[i] < ell) return {false, detail::index_range(offsets[i], widths[i]), ++checked};
        ColumnSelection block_cols = detail::index_range(offsets[i], widths[i]);
        FMatrix b = submatrix_cols(g, block_cols);
        auto [reduced, pivots] = rref(b);
        ++checked;
        if (pivots.size() != ell) return {false, std::move(block_cols), checked};
        ColumnSelection basis_rows(ell);
        for (std::size_t t = 0; t < ell; ++t) basis_rows[t] = t;
        ColumnSelection all_cols = detail::index_range(0, widths[i]);
        FMatrix basis = submatrix(reduced, basis_rows, all_cols);
        auto sub_stream = combinations(widths[i], ell);
        while (auto sel = sub_stream.next()) {
            ++checked;
            if (f.is_zero(det(submatrix_cols(basis, *sel)))) {
                ColumnSelection global;
                for (const std::size_t c : *sel) global.push_back(offsets[i] + c);
                return {false, std::move(global), checked};
            }
        }
    }

    // (b) all puncturings of exactly width_i - ell columns per block
    std::vector<std::vector<ColumnSelection>> removals(widths.size());
    for (std::size_t i = 0; i < widths.size(); ++i) {
        auto rem_stream = combinations(widths[i], widths[i] - ell);
        while (auto sel = rem_stream.next()) removals[i].push_back(std::move(*sel));
    }
    const std::size_t ml = widths.size() * ell;
    if (k > ml) return {false, std::nullopt, checked};
    std::vector<std::size_t> odo(widths.size(), 0);
    while (true) {
        ColumnSelection kept;
        kept.reserve(ml);
        for (std::size_t i = 0; i < widths.size(); ++i) {
            const ColumnSelection& removed = removals[i][odo[i]];
            std::size_t ri = 0;
            for (std::size_t c = 0; c < widths[i]; ++c) {
                if (ri < removed.size() && removed[ri] == c) {
                    ++ri;
                    continue;
                }
                kept.push_back(offsets[i] + c);
            }
        }
        FMatrix punctured = submatrix_cols(g, kept);
        auto minor_stream = combinations(ml, k);
        while (auto sel = minor_stream.next()) {
            ++checked;
            if (f.is_zero(det(submatrix_cols(punctured, *sel)))) {
                ColumnSelection global;
                for (const std::size_t c : *sel) global.push_back(kept[c]);
                return {false, std::move(global), checked};
            }
        }
        std::size_t pos = 0;
        while (pos < odo.size() && ++odo[pos] == removals[pos].size()) odo[pos++] = 0;
        if (pos == odo.size()) break;
    }
    return {true, std::nullopt, checked};
}

inline PmdsVerdict verify_pmds_definition(const CodeArtifact& code) {
    return verify_pmds_definition(code.generator, code.params.block_widths(), code.params.ell);
}

/// Product construction: a k x m*ell rank-metric generator (Moore matrix on
/// the power basis of the tower generator) times the block diagonal of
/// per-block Vandermonde MDS generators, lifted into the tower. Always
/// verifier-clean. Requires N >= m*ell and q >= max(ell + r_i - 1).
inline CodeArtifact construct_mrd(const PmdsParams& params, const FieldSpec& tower) {
    if (!tower.has_tower()) throw std::invalid_argument("construct_mrd: field has no declared base");
    const std::size_t ml = params.m * params.ell;
    const std::size_t k = params.k();
    if (tower.tower_height() < ml)
        throw std::invalid_argument("construct_mrd: need extension degree N >= m*ell");
    const std::uint64_t q = tower.base_order();
    for (const std::size_t ri : params.r)
        if (q + 1 < params.ell + ri)
            throw std::invalid_argument("construct_mrd: need q >= ell + r_i - 1 for the MDS blocks");

    std::vector<Element> g_points;
    Element v = tower.one();
    for (std::size_t j = 0; j < ml; ++j) {
        g_points.push_back(v);
        v = tower.mul(v, tower.generator());
    }
    const MrdCode mrd = gabidulin(tower, ml, k, std::move(g_points));

    FMatrix blockdiag(tower.base_spec(), ml, params.n());
    std::size_t col0 = 0;
    for (std::size_t i = 0; i < params.m; ++i) {
        const MdsCode mds = vandermonde_mds(tower.base_spec(), params.ell + params.r[i], params.ell);
        for (std::size_t rr = 0; rr < params.ell; ++rr)
            for (std::size_t cc = 0; cc < mds.n; ++cc)
                blockdiag.set(i * params.ell + rr, col0 + cc, mds.generator.at(rr, cc));
        col0 += mds.n;
    }
    FMatrix gen = mat_mul(mrd.generator, embed_matrix(blockdiag, tower));
    return CodeArtifact{params, tower, std::move(gen), Provenance{"mrd", 0, 1, std::nullopt, std::nullopt}};
}

/// Field-size recipe: smallest n0 with p^n0 >= max(ell + r_i - 1), floored
/// at 1 when the threshold is degenerate, and extension degree L = n0*m*ell
/// guaranteeing construct_mrd works over GF(p^L) with q = p^n0, N = m*ell.
struct FieldSizeRecipe {
    std::uint32_t n0 = 1;
    std::uint32_t ext_degree = 0;  // L
    bool floored = false;          // formula gave n0 = 0; reported as 1
};

inline FieldSizeRecipe field_size_recipe(const PmdsParams& params, std::uint32_t p) {
    if (!detail::is_prime_u32(p)) throw std::invalid_argument("field_size_recipe: p is not prime");
    std::uint64_t threshold = 0;
    for (const std::size_t ri : params.r)
        threshold = std::max<std::uint64_t>(threshold, params.ell + ri - 1);
    std::uint32_t n0 = 0;
    std::uint64_t power = 1;
    while (power < threshold) {
        power *= p;
        ++n0;
    }
    FieldSizeRecipe rec;
    rec.floored = (n0 == 0);
    rec.n0 = rec.floored ? 1 : n0;
    rec.ext_degree = static_cast<std::uint32_t>(rec.n0 * params.m * params.ell);
    return rec;
}

/// Lower bound on the probability that a uniformly random fill yields a
/// verifier-clean code: max(0, 1 - 2(n-k)*C(n-1,k-1)/q), exact.
inline Rational probability_bound(const PmdsParams& params, std::uint64_t q) {
    const std::size_t n = params.n(), k = params.k();
    const unsigned __int128 weight =
        static_cast<unsigned __int128>(2) * (n - k) * binomial(n - 1, static_cast<std::int64_t>(k) - 1);
    if (weight >= q) return Rational(0, 1);
    return Rational(q - static_cast<std::uint64_t>(weight), q);
}

/// Checks sum_{j=0..r} (r-j)*C(m,j)*C(n,r-j) == n*C(m+n-1, r-1) in exact
/// integer arithmetic, with C(., -1) = 0.
inline bool vandermonde_identity_check(std::uint64_t m, std::uint64_t n, std::uint64_t r) {
    unsigned __int128 lhs = 0;
    for (std::uint64_t j = 0; j <= r; ++j)
        lhs += static_cast<unsigned __int128>(r - j) * binomial(m, static_cast<std::int64_t>(j)) *
               binomial(n, static_cast<std::int64_t>(r - j));
    const unsigned __int128 rhs =
        (m + n == 0) ? 0
                     : static_cast<unsigned __int128>(n) *
                           binomial(m + n - 1, static_cast<std::int64_t>(r) - 1);
    return lhs == rhs;
}

/// Count of (k-1)-subsets over the shrunk last block with per-block caps
/// (ell everywhere, ell-1 on the last block): the per-column degree budget
/// of the step-by-step construction. Also reports the unconstrained
/// C(n-1, k-1) and whether any cap actually binds (which forces strictness).
struct MstarReport {
    std::uint64_t mstar = 0;
    std::uint64_t unconstrained = 0;  // C(n-1, k-1)
    bool strict = false;
};

inline MstarReport count_mstar(const PmdsParams& params) {
    const std::size_t k1 = params.k() - 1;
    std::vector<std::size_t> sizes = params.block_widths();
    sizes.back() -= 1;
    std::vector<std::size_t> caps(params.m, params.ell);
    caps.back() = params.ell - 1;

    std::uint64_t count = 0;
    BlockSelectionStream stream(sizes, caps, k1);
    while (stream.next()) ++count;

    MstarReport rep;
    rep.mstar = count;
    rep.unconstrained = binomial(params.n() - 1, static_cast<std::int64_t>(k1));
    for (std::size_t i = 0; i < params.m; ++i)
        if (caps[i] < std::min(sizes[i], k1)) rep.strict = true;
    return rep;
}

/// Symbolic degree classification of a standard-form generator: 0 on the
/// identity part, 1 on the A-columns and early D-blocks, 2 on the last
/// ceil(s/ell) D-blocks; plus the summed bound 2(n-k)*C(n-1,k-1).
struct DegreeBudget {
    std::vector<std::vector<int>> entry_degree;  // k x n
    std::uint64_t total_bound = 0;
    std::size_t mixed_blocks = 0;  // t = ceil(s/ell)
};

inline DegreeBudget degree_budget(const PmdsParams& params) {
    const std::size_t k = params.k(), n = params.n();
    const std::size_t t = (params.s + params.ell - 1) / params.ell;
    DegreeBudget out;
    out.mixed_blocks = t;
    out.total_bound = 2 * static_cast<std::uint64_t>(n - k) * binomial(n - 1, static_cast<std::int64_t>(k) - 1);
    out.entry_degree.assign(k, std::vector<int>(n, 0));
    std::size_t col = 0;
    for (std::size_t i = 0; i < params.m; ++i) {
        for (std::size_t tt = 0; tt < params.ell; ++tt, ++col) {
            const std::size_t c_index = i * params.ell + tt;
            const int deg = c_index < k ? 0 : 1;
            for (std::size_t w = 0; w < k; ++w) out.entry_degree[w][col] = deg;
        }
        const int d_deg = (i + t < params.m) ? 1 : 2;
        for (std::size_t j = 0; j < params.r[i]; ++j, ++col)
            for (std::size_t w = 0; w < k; ++w) out.entry_degree[w][col] = d_deg;
    }
    return out;
}

/// Construction outcome; failure is a value, not an exception.
struct ConstructionFailure {
    std::uint64_t attempts = 0;
    Rational bound;  // random-fill success bound for the attempted field
    std::optional<std::pair<std::size_t, std::size_t>> stuck_column;  // (block, column) for stepwise
};

struct ConstructionResult {
    std::optional<CodeArtifact> artifact;
    ConstructionFailure failure;
    bool ok() const { return artifact.has_value(); }
};

inline StandardFormFill draw_fill(const PmdsParams& params, const FieldSpec& spec, Rng& rng) {
    StandardFormFill fill;
    const std::size_t na = params.s * params.k();
    const std::size_t nb = params.ell * params.total_r();
    fill.alpha.reserve(na);
    fill.beta.reserve(nb);
    for (std::size_t i = 0; i < na; ++i) fill.alpha.push_back(spec.from_int(rng.below(spec.order())));
    for (std::size_t i = 0; i < nb; ++i) fill.beta.push_back(spec.from_int(rng.below(spec.order())));
    return fill;
}

/// Uniform standard-form fills, assembled and verified, until one passes or
/// max_attempts runs out. Attempt a is seeded with derive_seed(seed, a), so
/// a fixed seed reproduces the artifact bit for bit.
inline ConstructionResult construct_random(const PmdsParams& params, const FieldSpec& spec, std::uint64_t seed,
                                           std::uint64_t max_attempts, unsigned threads = 1) {
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        const StandardFormFill fill = draw_fill(params, spec, rng);
        CodeArtifact art = assemble_standard_form(params, spec, fill);
        art.provenance.method = "random";
        art.provenance.seed = seed;
        art.provenance.attempts = attempt + 1;
        if (verify_pmds_tkl(art, threads).pmds) return {std::move(art), {}};
    }
    return {std::nullopt, {max_attempts, probability_bound(params, spec.order()), std::nullopt}};
}

struct StepwiseOptions {
    std::uint64_t random_candidates = 256;
    std::uint64_t exhaustive_limit = 1'000'000;  // scan GF(q)^ell only when q^ell fits
};

/// Greedy column-by-column construction: start from an [m*ell, k]
/// Vandermonde MDS code, then append each D-column with coefficients chosen
/// so that every new capped minor is nonzero (seeded random candidates
/// first, exhaustive scan as fallback). Each accepted column keeps the
/// partial code verifier-clean for its partial widths; no backtracking.
/// Complete whenever q exceeds the per-column budget from count_mstar.
inline ConstructionResult construct_stepwise(const PmdsParams& params, const FieldSpec& spec,
                                             std::uint64_t seed, const StepwiseOptions& opts = {}) {
    const std::uint64_t q = spec.order();
    const std::size_t ml = params.m * params.ell;
    const std::size_t k = params.k();
    if (q + 1 < ml) throw std::invalid_argument("construct_stepwise: need q >= m*ell - 1 for the MDS start");

    const MdsCode start = vandermonde_mds(spec, ml, k);
    // per-block column lists; the first ell of each are the C-columns
    std::vector<std::vector<std::vector<Element>>> blocks(params.m);
    for (std::size_t i = 0; i < params.m; ++i)
        for (std::size_t t = 0; t < params.ell; ++t) {
            std::vector<Element> col(k, spec.zero());
            for (std::size_t w = 0; w < k; ++w) col[w] = start.generator.at(w, i * params.ell + t);
            blocks[i].push_back(std::move(col));
        }

    std::vector<Element> beta_flat;
    std::uint64_t total_attempts = 0;
    std::size_t col_counter = 0;

    // q^ell, clamped against the exhaustive cutoff
    unsigned __int128 qell = 1;
    for (std::size_t t = 0; t < params.ell; ++t) {
        qell *= q;
        if (qell > opts.exhaustive_limit) break;
    }
    const bool exhaustive_ok = qell <= opts.exhaustive_limit;

    for (std::size_t i = 0; i < params.m; ++i) {
        for (std::size_t j = 0; j < params.r[i]; ++j, ++col_counter) {
            // current layout and the (k-1)-selections the new column joins
            std::vector<std::size_t> widths(params.m), caps(params.m);
            std::size_t width_total = 0;
            for (std::size_t b = 0; b < params.m; ++b) {
                widths[b] = blocks[b].size();
                caps[b] = std::min(params.ell, widths[b]);
                width_total += widths[b];
            }
            caps[i] = params.ell - 1;

            std::vector<const std::vector<Element>*> columns;
            columns.reserve(width_total);
            for (std::size_t b = 0; b < params.m; ++b)
                for (const auto& col : blocks[b]) columns.push_back(&col);

            // coefficient of beta_t in each new minor: the minor with the
            // fresh column replaced by C_i^(t)
            std::vector<std::vector<Element>> minor_coeffs;
            BlockSelectionStream sel_stream(widths, caps, k - 1);
            while (auto sel = sel_stream.next()) {
                FMatrix square(spec, k, k);
                for (std::size_t c = 0; c < sel->size(); ++c)
                    for (std::size_t w = 0; w < k; ++w) square.set(w, c, (*columns[(*sel)[c]])[w]);
                std::vector<Element> coeffs(params.ell, spec.zero());
                for (std::size_t t = 0; t < params.ell; ++t) {
                    for (std::size_t w = 0; w < k; ++w) square.set(w, k - 1, blocks[i][t][w]);
                    coeffs[t] = det(square);
                }
                minor_coeffs.push_back(std::move(coeffs));
            }

            const auto accepts = [&](const std::vector<Element>& beta) {
                for (const auto& coeffs : minor_coeffs) {
                    Element acc = spec.zero();
                    for (std::size_t t = 0; t < params.ell; ++t)
                        acc = spec.add(acc, spec.mul(beta[t], coeffs[t]));
                    if (spec.is_zero(acc)) return false;
                }
                return true;
            };

            std::optional<std::vector<Element>> chosen;
            Rng rng(derive_seed(seed, col_counter));
            for (std::uint64_t c = 0; c < opts.random_candidates && !chosen; ++c) {
                std::vector<Element> beta(params.ell);
                for (std::size_t t = 0; t < params.ell; ++t) beta[t] = spec.from_int(rng.below(q));
                ++total_attempts;
                if (accepts(beta)) chosen = std::move(beta);
            }
            if (!chosen && exhaustive_ok) {
                for (std::uint64_t v = 0; v < static_cast<std::uint64_t>(qell) && !chosen; ++v) {
                    std::vector<Element> beta(params.ell);
                    std::uint64_t x = v;
                    for (std::size_t t = 0; t < params.ell; ++t) {
                        beta[t] = spec.from_int(x % q);
                        x /= q;
                    }
                    ++total_attempts;
                    if (accepts(beta)) chosen = std::move(beta);
                }
            }
            if (!chosen)
                return {std::nullopt,
                        {total_attempts, probability_bound(params, q), std::make_pair(i, j)}};

            std::vector<Element> fresh(k, spec.zero());
            for (std::size_t t = 0; t < params.ell; ++t)
                for (std::size_t w = 0; w < k; ++w)
                    fresh[w] = spec.add(fresh[w], spec.mul((*chosen)[t], blocks[i][t][w]));
            blocks[i].push_back(std::move(fresh));
            for (std::size_t t = 0; t < params.ell; ++t) beta_flat.push_back((*chosen)[t]);
        }
    }

    FMatrix g(spec, k, params.n());
    std::size_t out_col = 0;
    for (std::size_t i = 0; i < params.m; ++i)
        for (const auto& col : blocks[i]) {
            for (std::size_t w = 0; w < k; ++w) g.set(w, out_col, col[w]);
            ++out_col;
        }
    Provenance prov{"stepwise", seed, total_attempts, std::nullopt, std::move(beta_flat)};
    return {CodeArtifact{params, spec, std::move(g), std::move(prov)}, {}};
}

}  // namespace pmds
