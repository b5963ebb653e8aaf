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
#include "pmds/pmds.hpp"
#include "pmds/rng.hpp"

using namespace pmds;

namespace {

CodeArtifact artifact_from_row(const FieldSpec& f, const PmdsParams& params,
                               const std::vector<std::uint64_t>& row) {
    FMatrix g(f, 1, row.size());
    for (std::size_t c = 0; c < row.size(); ++c) g.set(0, c, f.from_int(row[c]));
    return CodeArtifact{params, f, std::move(g), Provenance{"test", 0, 1, std::nullopt, std::nullopt}};
}

StandardFormFill fill_from_ints(const FieldSpec& f, const PmdsParams& params,
                                std::vector<std::uint64_t> alpha, std::vector<std::uint64_t> beta) {
    StandardFormFill fill;
    for (const auto v : alpha) fill.alpha.push_back(f.from_int(v));
    for (const auto v : beta) fill.beta.push_back(f.from_int(v));
    REQUIRE(fill.alpha.size() == params.s * params.k());
    REQUIRE(fill.beta.size() == params.ell * params.total_r());
    return fill;
}

// every fill over a small field, as base-q digit vectors
struct FillScanner {
    const FieldSpec& f;
    const PmdsParams& params;
    std::uint64_t index = 0;
    std::uint64_t total;

    FillScanner(const FieldSpec& f_, const PmdsParams& p_) : f(f_), params(p_) {
        total = 1;
        const std::size_t dims = p_.s * p_.k() + p_.ell * p_.total_r();
        for (std::size_t i = 0; i < dims; ++i) total *= f.order();
    }

    std::optional<StandardFormFill> next() {
        if (index == total) return std::nullopt;
        StandardFormFill fill;
        std::uint64_t x = index++;
        for (std::size_t i = 0; i < params.s * params.k(); ++i) {
            fill.alpha.push_back(f.from_int(x % f.order()));
            x /= f.order();
        }
        for (std::size_t i = 0; i < params.ell * params.total_r(); ++i) {
            fill.beta.push_back(f.from_int(x % f.order()));
            x /= f.order();
        }
        return fill;
    }
};

}  // namespace

TEST_SUITE("pmds") {
    TEST_CASE("params validation and derived sizes") {
        const PmdsParams p = PmdsParams::make(2, 2, 1, {1, 2});
        CHECK(p.k() == 3);
        CHECK(p.n() == 7);
        CHECK(p.total_r() == 3);
        CHECK(p.block_widths() == std::vector<std::size_t>{3, 4});
        CHECK(p.block_offsets() == std::vector<std::size_t>{0, 3});
        CHECK_THROWS_AS(PmdsParams::make(1, 1, 1, {1}), std::invalid_argument);
        CHECK_THROWS_AS(PmdsParams::make(2, 1, 1, {1, 0}), std::invalid_argument);
        CHECK_THROWS_AS(PmdsParams::make(2, 2, 3, {1, 1}), std::invalid_argument);  // k < ell
        CHECK_THROWS_AS(PmdsParams::make(2, 1, 1, {1}), std::invalid_argument);
    }

    TEST_CASE("assemble, 1x4 frozen shape") {
        const auto f5 = make_field(5, 1);
        const PmdsParams params = PmdsParams::make(2, 1, 1, {1, 1});
        // alpha = (a), beta = (b1, b2): G = [1, b1 | a, a*b2]
        const auto fill = fill_from_ints(f5, params, {3}, {2, 4});
        const CodeArtifact art = assemble_standard_form(params, f5, fill);
        CHECK(f5.to_int(art.generator.at(0, 0)) == 1);
        CHECK(f5.to_int(art.generator.at(0, 1)) == 2);
        CHECK(f5.to_int(art.generator.at(0, 2)) == 3);
        CHECK(f5.to_int(art.generator.at(0, 3)) == 3 * 4 % 5);
    }

    TEST_CASE("assemble: zero beta is never verifier-clean") {
        const auto f7 = make_field(7, 1);
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        Rng rng(5);
        StandardFormFill fill;
        for (std::size_t i = 0; i < params.s * params.k(); ++i)
            fill.alpha.push_back(f7.from_int(1 + rng.below(6)));
        fill.beta.assign(params.ell * params.total_r(), f7.zero());
        const CodeArtifact art = assemble_standard_form(params, f7, fill);
        const auto verdict = verify_pmds_tkl(art);
        CHECK_FALSE(verdict.pmds);
    }

    TEST_CASE("assemble: C-part re-concatenates to [I | A]") {
        const auto f7 = make_field(7, 1);
        const PmdsParams params = PmdsParams::make(3, 2, 2, {1, 2, 1});
        Rng rng(8);
        const StandardFormFill fill = [&] {
            Rng r2(8);
            return draw_fill(params, f7, r2);
        }();
        const CodeArtifact art = assemble_standard_form(params, f7, fill);
        const std::size_t k = params.k();
        const auto offsets = params.block_offsets();
        std::size_t cidx = 0;
        for (std::size_t i = 0; i < params.m; ++i)
            for (std::size_t t = 0; t < params.ell; ++t, ++cidx)
                for (std::size_t w = 0; w < k; ++w) {
                    const Element got = art.generator.at(w, offsets[i] + t);
                    if (cidx < k)
                        CHECK(got == (w == cidx ? f7.one() : f7.zero()));
                    else
                        CHECK(got == fill.alpha[w * params.s + (cidx - k)]);
                }
        CHECK(cidx == params.m * params.ell);
    }

    TEST_CASE("verifier examples on 1x4 generators") {
        const auto f2 = make_field(2, 1);
        const PmdsParams params = PmdsParams::make(2, 1, 1, {1, 1});
        const auto good = artifact_from_row(f2, params, {1, 1, 1, 1});
        CHECK(verify_pmds_tkl(good).pmds);
        CHECK(verify_pmds_definition(good).pmds);

        const auto bad = artifact_from_row(f2, params, {1, 0, 1, 1});
        const auto verdict = verify_pmds_tkl(bad);
        CHECK_FALSE(verdict.pmds);
        REQUIRE(verdict.first_failure.has_value());
        CHECK(*verdict.first_failure == ColumnSelection{1});
        CHECK(verdict.selections_checked == 2);
        CHECK_FALSE(verify_pmds_definition(bad).pmds);
    }

    TEST_CASE("single-block MDS code counts as trivially clean") {
        // m = 1 shape, test-only: verifiers run on raw widths
        const auto f5 = make_field(5, 1);
        const MdsCode mds = vandermonde_mds(f5, 4, 2);
        CHECK(verify_pmds_tkl(mds.generator, {4}, 2).pmds);
        CHECK(verify_pmds_definition(mds.generator, {4}, 2).pmds);
    }

    TEST_CASE("verifier agreement, exhaustive tiny fills") {
        const PmdsParams params = PmdsParams::make(2, 1, 1, {1, 1});
        for (std::uint32_t p : {2u, 3u}) {
            const auto f = make_field(p, 1);
            FillScanner scan(f, params);
            std::size_t agree_true = 0, agree_false = 0;
            while (auto fill = scan.next()) {
                const CodeArtifact art = assemble_standard_form(params, f, *fill);
                const bool a = verify_pmds_tkl(art).pmds;
                const bool b = verify_pmds_definition(art).pmds;
                CHECK(a == b);
                (a ? agree_true : agree_false) += 1;
            }
            CHECK(agree_true > 0);
            CHECK(agree_false > 0);
        }
    }

    TEST_CASE("verifiers agree with multithreaded enumeration") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        const auto f = make_field(2, 4);
        Rng rng(3);
        for (int i = 0; i < 20; ++i) {
            const StandardFormFill fill = draw_fill(params, f, rng);
            const CodeArtifact art = assemble_standard_form(params, f, fill);
            const auto v1 = verify_pmds_tkl(art, 1);
            const auto v4 = verify_pmds_tkl(art, 4);
            CHECK(v1.pmds == v4.pmds);
            CHECK(v1.first_failure == v4.first_failure);
            if (!v1.pmds) CHECK(v1.selections_checked == v4.selections_checked);
        }
    }

    TEST_CASE("construct_mrd, smallest instance") {
        const PmdsParams params = PmdsParams::make(2, 1, 1, {1, 1});
        const auto tower = make_tower_field(2, 1, 2);
        const CodeArtifact art = construct_mrd(params, tower);
        REQUIRE(art.generator.cols() == 4);
        for (std::size_t c = 0; c < 4; ++c) CHECK_FALSE(tower.is_zero(art.generator.at(0, c)));
        CHECK(verify_pmds_tkl(art).pmds);
        CHECK(verify_pmds_definition(art).pmds);
    }

    TEST_CASE("construct_mrd, [6,3] instance over a proper tower") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        const auto tower = make_tower_field(2, 2, 4);  // GF(4^4)
        const CodeArtifact art = construct_mrd(params, tower);
        CHECK(verify_pmds_tkl(art).pmds);
        CHECK(verify_pmds_definition(art).pmds);
        CHECK(rank(art.generator) == params.k());
    }

    TEST_CASE("construct_mrd factorizes over every capped selection") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        const auto tower = make_tower_field(2, 2, 4);
        const CodeArtifact art = construct_mrd(params, tower);
        const std::size_t k = params.k(), ml = params.m * params.ell;

        // rebuild the two factors exactly as the construction does
        std::vector<Element> g_points;
        Element v = tower.one();
        for (std::size_t j = 0; j < ml; ++j) {
            g_points.push_back(v);
            v = tower.mul(v, tower.generator());
        }
        const MrdCode mrd = gabidulin(tower, ml, k, g_points);
        FMatrix blockdiag(tower.base_spec(), ml, params.n());
        std::size_t col0 = 0;
        for (std::size_t i = 0; i < params.m; ++i) {
            const MdsCode mds = vandermonde_mds(tower.base_spec(), params.ell + params.r[i], params.ell);
            for (std::size_t rr = 0; rr < params.ell; ++rr)
                for (std::size_t cc = 0; cc < mds.n; ++cc)
                    blockdiag.set(i * params.ell + rr, col0 + cc, mds.generator.at(rr, cc));
            col0 += mds.n;
        }
        const FMatrix lifted = embed_matrix(blockdiag, tower);

        Rng rng(102);
        BlockSelectionStream stream(params.block_widths(), {params.ell, params.ell}, k);
        std::vector<ColumnSelection> all;
        while (auto sel = stream.next()) all.push_back(std::move(*sel));
        for (int i = 0; i < 20; ++i) {
            const ColumnSelection& sel = all[rng.below(all.size())];
            const FMatrix inner = submatrix_cols(lifted, sel);  // m-tilde
            CHECK(rank(inner) == k);
            CHECK(submatrix_cols(art.generator, sel) == mat_mul(mrd.generator, inner));
        }
    }

    TEST_CASE("construct_mrd preconditions") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        CHECK_THROWS_AS(construct_mrd(params, make_tower_field(2, 1, 3)), std::invalid_argument);  // N < m*ell
        const PmdsParams wide = PmdsParams::make(2, 2, 1, {2, 2});
        CHECK_THROWS_AS(construct_mrd(wide, make_tower_field(2, 1, 4)), std::invalid_argument);  // q too small
        CHECK_THROWS_AS(construct_mrd(params, make_field(2, 4)), std::invalid_argument);  // no tower
    }

    TEST_CASE("field size recipe") {
        const auto r1 = field_size_recipe(PmdsParams::make(2, 2, 1, {2, 2}), 2);
        CHECK(r1.n0 == 2);
        CHECK(r1.ext_degree == 8);
        CHECK_FALSE(r1.floored);

        const auto r2 = field_size_recipe(PmdsParams::make(2, 1, 1, {1, 1}), 2);
        CHECK(r2.n0 == 1);
        CHECK(r2.floored);
        CHECK(r2.ext_degree == 2);

        const auto r3 = field_size_recipe(PmdsParams::make(3, 3, 1, {2, 3, 2}), 5);
        CHECK(r3.n0 == 1);
        CHECK(r3.ext_degree == 9);
        CHECK_FALSE(r3.floored);

        CHECK_THROWS_AS(field_size_recipe(PmdsParams::make(2, 1, 1, {1, 1}), 4), std::invalid_argument);

        // the recipe actually feeds a working construction
        const PmdsParams params = PmdsParams::make(2, 1, 1, {2, 1});
        const auto rec = field_size_recipe(params, 2);
        const auto tower = make_tower_field(2, rec.n0, params.m * params.ell);
        CHECK(tower.degree() == rec.ext_degree);
        CHECK(verify_pmds_tkl(construct_mrd(params, tower)).pmds);
    }

    TEST_CASE("probability bound values") {
        CHECK(probability_bound(PmdsParams::make(2, 2, 1, {1, 1}), 1u << 10) == Rational(241, 256));
        CHECK(probability_bound(PmdsParams::make(2, 2, 1, {1, 1}), 16) == Rational(0, 1));  // clamped
        CHECK(probability_bound(PmdsParams::make(2, 1, 1, {1, 1}), 8) == Rational(1, 4));
    }

    TEST_CASE("binomial-sum identity") {
        CHECK(vandermonde_identity_check(2, 2, 2));  // 2+4 = 2*C(3,1)
        CHECK(vandermonde_identity_check(3, 4, 0));  // empty sum vs C(.,-1) = 0
        for (std::uint64_t m = 0; m <= 12; ++m)
            for (std::uint64_t n = 0; n <= 12; ++n)
                for (std::uint64_t r = 0; r <= 12; ++r) CHECK(vandermonde_identity_check(m, n, r));
    }

    TEST_CASE("column budget count") {
        const auto rep1 = count_mstar(PmdsParams::make(2, 1, 1, {1, 1}));
        CHECK(rep1.mstar == 1);
        CHECK(rep1.unconstrained == 1);
        CHECK_FALSE(rep1.strict);

        const auto rep2 = count_mstar(PmdsParams::make(2, 2, 1, {1, 1}));
        CHECK(rep2.mstar == 9);
        CHECK(rep2.unconstrained == 10);
        CHECK(rep2.strict);
        // brute force over C(5,2) subsets with caps (2,1) on widths (3,2)
        CHECK(oracles::capped_subsets({3, 2}, {2, 1}, 2).size() == 9);

        // caps never bind: k' = 1 fits inside every cap
        const auto rep3 = count_mstar(PmdsParams::make(2, 2, 2, {1, 1}));
        CHECK(rep3.mstar == rep3.unconstrained);
        CHECK_FALSE(rep3.strict);
    }

    TEST_CASE("strictness flag matches the counted comparison") {
        for (std::size_t m = 2; m <= 3; ++m)
            for (std::size_t ell = 1; ell <= 2; ++ell)
                for (std::size_t s = 1; s <= 2; ++s)
                    for (std::size_t rv = 1; rv <= 2; ++rv) {
                        if (m * ell <= s || m * ell - s < ell) continue;
                        const PmdsParams params =
                            PmdsParams::make(m, ell, s, std::vector<std::size_t>(m, rv));
                        const auto rep = count_mstar(params);
                        CHECK(rep.mstar <= rep.unconstrained);
                        CHECK((rep.mstar < rep.unconstrained) == rep.strict);
                    }
    }

    TEST_CASE("degree classification") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});  // s <= ell: one mixed block
        const auto budget = degree_budget(params);
        CHECK(budget.mixed_blocks == 1);
        CHECK(budget.total_bound == 60);
        // layout: C1 C1 D1 | C2 C2 D2 with k = 3: columns 0,1,3 identity
        CHECK(budget.entry_degree[0] == std::vector<int>{0, 0, 1, 0, 1, 2});

        // the bound equals the exact sum it abbreviates
        const std::size_t n = params.n(), k = params.k();
        std::uint64_t total = 0;
        for (std::size_t j0 = 0; j0 <= k; ++j0)
            total += 2 * (k - j0) * binomial(k, static_cast<std::int64_t>(j0)) *
                     binomial(n - k, static_cast<std::int64_t>(k - j0));
        CHECK(total == budget.total_bound);
    }

    TEST_CASE("construct_random reproducibility and provenance") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        const auto f = make_field(2, 10);
        const auto r1 = construct_random(params, f, 7, 16);
        const auto r2 = construct_random(params, f, 7, 16);
        REQUIRE(r1.ok());
        REQUIRE(r2.ok());
        CHECK(r1.artifact->generator == r2.artifact->generator);
        CHECK(r1.artifact->provenance == r2.artifact->provenance);
        CHECK(r1.artifact->provenance.method == "random");
        CHECK(verify_pmds_tkl(*r1.artifact).pmds);
    }

    TEST_CASE("construct_random failure is a value") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        const auto f2 = make_field(2, 1);
        // beta draws over GF(2) cannot make every capped minor nonzero here:
        // attempts exhaust and the report carries the (clamped) bound
        const auto res = construct_random(params, f2, 3, 5);
        if (!res.ok()) {
            CHECK(res.failure.attempts == 5);
            CHECK(res.failure.bound == Rational(0, 1));
        }
    }

    TEST_CASE("construct_stepwise on the staple instance") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        const auto f16 = make_field(2, 4);  // q = 16 > M* = 9
        const auto res = construct_stepwise(params, f16, 21);
        REQUIRE(res.ok());
        CHECK(verify_pmds_tkl(*res.artifact).pmds);
        CHECK(verify_pmds_definition(*res.artifact).pmds);
        CHECK(res.artifact->provenance.method == "stepwise");
        REQUIRE(res.artifact->provenance.beta.has_value());
        CHECK(res.artifact->provenance.beta->size() == params.ell * params.total_r());

        const auto res2 = construct_stepwise(params, f16, 21);
        REQUIRE(res2.ok());
        CHECK(res.artifact->generator == res2.artifact->generator);
    }

    TEST_CASE("construct_stepwise succeeds in pure exhaustive mode") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {1, 1});
        const auto f16 = make_field(2, 4);
        StepwiseOptions opts;
        opts.random_candidates = 0;
        const auto res = construct_stepwise(params, f16, 0, opts);
        REQUIRE(res.ok());
        CHECK(verify_pmds_tkl(*res.artifact).pmds);
    }

    TEST_CASE("construct_stepwise keeps every prefix verifier-clean") {
        const PmdsParams params = PmdsParams::make(2, 2, 1, {2, 1});
        const auto f = make_field(17, 1);
        const auto res = construct_stepwise(params, f, 4);
        REQUIRE(res.ok());
        const auto offsets = params.block_offsets();
        // prefix states in addition order: (d_1, d_2) grows block by block
        std::vector<std::vector<std::size_t>> states;
        std::vector<std::size_t> d(params.m, 0);
        for (std::size_t i = 0; i < params.m; ++i)
            for (std::size_t j = 0; j < params.r[i]; ++j) {
                ++d[i];
                states.push_back(d);
            }
        for (const auto& state : states) {
            ColumnSelection cols;
            std::vector<std::size_t> widths;
            for (std::size_t i = 0; i < params.m; ++i) {
                widths.push_back(params.ell + state[i]);
                for (std::size_t c = 0; c < params.ell + state[i]; ++c) cols.push_back(offsets[i] + c);
            }
            const FMatrix prefix = submatrix_cols(res.artifact->generator, cols);
            CHECK(verify_pmds_tkl(prefix, widths, params.ell).pmds);
        }
    }

    TEST_CASE("construct_stepwise degenerate request returns the MDS start") {
        const PmdsParams raw{2, 2, 1, {0, 0}};  // test-only shape, no D-columns
        const auto f7 = make_field(7, 1);
        const auto res = construct_stepwise(raw, f7, 0);
        REQUIRE(res.ok());
        const MdsCode start = vandermonde_mds(f7, 4, raw.k());
        CHECK(res.artifact->generator == start.generator);
    }

    TEST_CASE("construct_stepwise precondition on q") {
        const PmdsParams params = PmdsParams::make(3, 2, 1, {1, 1, 1});  // needs q >= 5
        CHECK_THROWS_AS(construct_stepwise(params, make_field(2, 2), 0), std::invalid_argument);
    }

    TEST_CASE("stepwise failure reports the stuck column") {
        // q = 3 sits well below this instance's column budget, so the search
        // can exhaust GF(q)^ell; when it does, failure must carry a report
        const PmdsParams params = PmdsParams::make(2, 2, 2, {2, 2});
        const auto f3 = make_field(3, 1);
        StepwiseOptions opts;
        opts.random_candidates = 8;
        const auto res = construct_stepwise(params, f3, 1, opts);
        if (!res.ok()) {
            CHECK(res.failure.stuck_column.has_value());
            CHECK(res.failure.attempts > 0);
        } else {
            CHECK(verify_pmds_tkl(*res.artifact).pmds);
        }
    }
}
