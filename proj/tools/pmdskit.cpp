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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmds/erasure.hpp"
#include "pmds/io.hpp"
#include "pmds/parallel.hpp"
#include "pmds/pmds.hpp"
#include "pmds/version.hpp"

namespace {

using nlohmann::json;
using namespace pmds;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConstructionFailure = 3;

struct RunOutput {
    int exit_code = kExitOk;
    std::vector<std::pair<std::string, std::string>> files;  // path, digest
};

void write_output_file(RunOutput& out, const std::string& path, const json& doc) {
    const std::string text = io::dump(doc);
    io::write_text_file(path, text);
    out.files.emplace_back(path, io::digest_fnv1a64(text));
}

PmdsParams params_from_options(const json& opts) {
    std::vector<std::size_t> r;
    for (const auto& v : opts.at("r")) r.push_back(v.get<std::size_t>());
    return PmdsParams::make(opts.at("m").get<std::size_t>(), opts.at("ell").get<std::size_t>(),
                            opts.at("s").get<std::size_t>(), std::move(r));
}

// factor a prime power; rejects everything else
std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    std::uint64_t base = q;
    for (std::uint64_t d = 2; d * d <= base; ++d) {
        if (base % d == 0) {
            base = d;
            break;
        }
    }
    std::uint32_t e = 0;
    std::uint64_t v = q;
    while (v % base == 0) {
        v /= base;
        ++e;
    }
    if (v != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(base), e};
}

json verdict_summary(const PmdsVerdict& tkl, const std::optional<PmdsVerdict>& def, const std::string& mode) {
    json j;
    j["mode"] = mode;
    if (mode != "definition") j["tkl"] = io::verdict_to_json(tkl);
    if (def) j["definition"] = io::verdict_to_json(*def);
    return j;
}

RunOutput run_construct(const json& opts) {
    RunOutput out;
    const std::string method = opts.at("method").get<std::string>();
    const PmdsParams params = params_from_options(opts);
    const std::uint32_t p = opts.at("p").get<std::uint32_t>();
    const std::uint32_t qdeg = opts.at("q_deg").get<std::uint32_t>();
    const std::uint64_t seed = opts.at("seed").get<std::uint64_t>();
    const std::string out_path = opts.at("out").get<std::string>();
    const unsigned threads = opts.value("threads", 1u);

    ConstructionResult result;
    if (method == "mrd") {
        const std::uint32_t height = opts.value("N", static_cast<std::uint32_t>(params.m * params.ell));
        result.artifact = construct_mrd(params, make_tower_field(p, qdeg, height));
    } else if (method == "random") {
        const std::uint64_t max_attempts = opts.value("max_attempts", std::uint64_t{64});
        result = construct_random(params, make_field(p, qdeg), seed, max_attempts, threads);
    } else if (method == "stepwise") {
        result = construct_stepwise(params, make_field(p, qdeg), seed);
    } else {
        throw std::invalid_argument("unknown construction method: " + method);
    }

    if (!result.ok()) {
        json report;
        report["constructed"] = false;
        report["attempts"] = result.failure.attempts;
        report["fill_success_bound"] = result.failure.bound.str();
        if (result.failure.stuck_column)
            report["stuck_column"] = {{"block", result.failure.stuck_column->first},
                                      {"column", result.failure.stuck_column->second}};
        std::cout << io::dump(report);
        out.exit_code = kExitConstructionFailure;
        return out;
    }
    write_output_file(out, out_path, io::artifact_to_json(*result.artifact));
    if (opts.value("json", false)) {
        json report;
        report["constructed"] = true;
        report["method"] = method;
        report["attempts"] = result.artifact->provenance.attempts;
        report["out"] = out_path;
        std::cout << io::dump(report);
    } else {
        std::cout << "constructed [" << result.artifact->params.n() << "," << result.artifact->params.k()
                  << "] code (method " << method << ", attempts " << result.artifact->provenance.attempts
                  << ") -> " << out_path << "\n";
    }
    return out;
}

RunOutput run_verify(const json& opts) {
    RunOutput out;
    const std::string mode = opts.value("mode", std::string("both"));
    const unsigned threads = opts.value("threads", 1u);
    const CodeArtifact code = io::artifact_from_json(io::parse(io::read_text_file(opts.at("in").get<std::string>())));

    PmdsVerdict tkl;
    std::optional<PmdsVerdict> def;
    bool pass = true;
    if (mode == "tkl" || mode == "both") {
        tkl = verify_pmds_tkl(code, threads);
        pass = pass && tkl.pmds;
    }
    if (mode == "definition" || mode == "both") {
        def = verify_pmds_definition(code);
        pass = pass && def->pmds;
    }
    if (mode != "tkl" && mode != "definition" && mode != "both")
        throw std::invalid_argument("unknown verify mode: " + mode);

    const json report = verdict_summary(tkl, def, mode);
    if (opts.contains("out")) write_output_file(out, opts.at("out").get<std::string>(), report);
    if (opts.value("json", false)) {
        std::cout << io::dump(report);
    } else {
        std::cout << (pass ? "PMDS: yes" : "PMDS: no") << "\n";
        const PmdsVerdict& shown = (mode == "definition" || (def && !def->pmds && tkl.pmds)) ? *def : tkl;
        if (!pass && shown.first_failure) {
            std::cout << "first failing selection:";
            for (const std::size_t c : *shown.first_failure) std::cout << " " << c;
            std::cout << "\n";
        }
        std::cout << "selections checked: " << shown.selections_checked << "\n";
    }
    out.exit_code = pass ? kExitOk : kExitNegative;
    return out;
}

RunOutput run_simulate(const json& opts) {
    RunOutput out;
    const CodeArtifact code = io::artifact_from_json(io::parse(io::read_text_file(opts.at("in").get<std::string>())));
    const std::uint64_t seed = opts.at("seed").get<std::uint64_t>();
    const std::uint64_t trials = opts.value("trials", std::uint64_t{1000});
    const std::uint64_t exhaustive_cutoff = 1'000'000;

    const std::optional<std::uint64_t> family_size =
        capability_pattern_count_clamped(code.params, exhaustive_cutoff);
    const bool exhaustive = family_size.has_value();

    std::uint64_t tested = 0, local = 0, global = 0, failures = 0;
    json failure_samples = json::array();
    const FieldSpec& f = code.spec;

    auto run_one = [&](const ErasurePattern& pattern, std::uint64_t trial_index) {
        Rng rng(derive_seed(seed, trial_index));
        std::vector<Element> message(code.params.k());
        for (auto& m : message) m = f.from_int(rng.below(f.order()));
        const std::vector<Element> word = encode(code, message);
        const RecoveryReport rep = decode(code, ReceivedWord{word, pattern});
        ++tested;
        bool ok = rep.outcome != RecoveryOutcome::unrecoverable && rep.codeword && *rep.codeword == word;
        if (rep.outcome == RecoveryOutcome::recovered_locally) ++local;
        if (rep.outcome == RecoveryOutcome::recovered_globally) ++global;
        if (!ok) {
            ++failures;
            if (failure_samples.size() < 10) failure_samples.push_back(pattern.erased);
        }
    };

    if (exhaustive) {
        auto stream = capability_patterns(code.params);
        std::uint64_t idx = 0;
        while (auto pattern = stream.next()) run_one(*pattern, idx++);
    } else {
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng pat_rng(derive_seed(seed ^ 0x51D0A7ull, t));
            run_one(sample_capability_pattern(code.params, pat_rng), t);
        }
    }

    json report;
    report["mode"] = exhaustive ? "exhaustive" : "sampled";
    report["pattern_family_size"] = family_size ? json(*family_size) : json(nullptr);
    report["patterns_tested"] = tested;
    report["recovered_locally"] = local;
    report["recovered_globally"] = global;
    report["failures"] = failures;
    report["failure_samples"] = failure_samples;
    if (opts.contains("out")) write_output_file(out, opts.at("out").get<std::string>(), report);
    if (opts.value("json", false)) {
        std::cout << io::dump(report);
    } else {
        std::cout << "patterns tested: " << tested;
        if (exhaustive)
            std::cout << " (exhaustive family of " << *family_size << ")\n";
        else
            std::cout << " (sampled; family exceeds " << exhaustive_cutoff << ")\n";
        std::cout << "recovered locally: " << local << ", globally: " << global << ", failures: " << failures
                  << "\n";
    }
    out.exit_code = failures == 0 ? kExitOk : kExitNegative;
    return out;
}

RunOutput run_bounds(const json& opts) {
    RunOutput out;
    const PmdsParams params = params_from_options(opts);
    const std::size_t n = params.n(), k = params.k();
    const MstarReport mstar = count_mstar(params);
    const DegreeBudget budget = degree_budget(params);
    const std::uint64_t mr_threshold = binomial(n - 1, static_cast<std::int64_t>(k) - 1);

    json rows = json::array();
    for (const auto& qv : opts.at("q")) {
        const std::uint64_t q = qv.get<std::uint64_t>();
        const auto [p, e] = factor_prime_power(q);
        const FieldSizeRecipe recipe = field_size_recipe(params, p);
        json row;
        row["q"] = q;
        row["probability_bound"] = probability_bound(params, q).str();
        row["probability_bound_approx"] = probability_bound(params, q).approx();
        row["random_threshold"] = budget.total_bound;      // need q > this
        row["stepwise_threshold"] = mstar.mstar;           // need q > this
        row["mr_threshold"] = mr_threshold;                // need q > this
        row["recipe_n0"] = recipe.n0;
        row["recipe_L"] = recipe.ext_degree;
        row["recipe_floored"] = recipe.floored;
        rows.push_back(row);
    }
    json report;
    report["n"] = n;
    report["k"] = k;
    report["degree_budget_total"] = budget.total_bound;
    report["mstar"] = mstar.mstar;
    report["binom_n1_k1"] = mstar.unconstrained;
    report["mstar_strict"] = mstar.strict;
    report["rows"] = rows;
    if (opts.contains("out")) write_output_file(out, opts.at("out").get<std::string>(), report);
    if (opts.value("json", false)) {
        std::cout << io::dump(report);
    } else {
        std::cout << "[n,k] = [" << n << "," << k << "], degree budget " << budget.total_bound
                  << ", column budget M* " << mstar.mstar << (mstar.strict ? " (<" : " (=") << " C(n-1,k-1) = "
                  << mstar.unconstrained << ")\n";
        for (const auto& row : report["rows"])
            std::cout << "q=" << row["q"].get<std::uint64_t>() << "  P(pmds) >= "
                      << row["probability_bound"].get<std::string>() << "  recipe (n0,L)=("
                      << row["recipe_n0"].get<std::uint32_t>() << "," << row["recipe_L"].get<std::uint32_t>()
                      << ")\n";
    }
    return out;
}

RunOutput run_estimate(const json& opts) {
    RunOutput out;
    const PmdsParams params = params_from_options(opts);
    const std::uint32_t p = opts.at("p").get<std::uint32_t>();
    const std::uint32_t qdeg = opts.at("q_deg").get<std::uint32_t>();
    const std::uint64_t seed = opts.at("seed").get<std::uint64_t>();
    const std::uint64_t trials = opts.value("trials", std::uint64_t{1000});
    const unsigned threads = opts.value("threads", 1u);
    if (trials < 1) throw std::invalid_argument("estimate: need trials >= 1");
    const FieldSpec spec = make_field(p, qdeg);

    std::vector<char> success(trials, 0);
    for_index_chunks(trials, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
            Rng rng(derive_seed(seed, t));
            const StandardFormFill fill = draw_fill(params, spec, rng);
            const CodeArtifact art = assemble_standard_form(params, spec, fill);
            success[t] = verify_pmds_tkl(art).pmds ? 1 : 0;
        }
    });
    std::uint64_t hits = 0;
    for (const char s : success) hits += s;

    const double rate = static_cast<double>(hits) / static_cast<double>(trials);
    const double sigma = std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
    const Rational bound = probability_bound(params, spec.order());

    json report;
    report["q"] = spec.order();
    report["trials"] = trials;
    report["successes"] = hits;
    report["rate"] = rate;
    report["ci99"] = {std::max(0.0, rate - 2.576 * sigma), std::min(1.0, rate + 2.576 * sigma)};
    report["bound"] = bound.str();
    report["bound_approx"] = bound.approx();
    if (opts.contains("out")) write_output_file(out, opts.at("out").get<std::string>(), report);
    if (opts.value("json", false)) {
        std::cout << io::dump(report);
    } else {
        std::cout << "empirical rate " << hits << "/" << trials << " = " << rate << " (bound "
                  << bound.str() << " = " << bound.approx() << ")\n";
    }
    return out;
}

RunOutput run_mds_gen(const json& opts) {
    RunOutput out;
    const FieldSpec spec = make_field(opts.at("p").get<std::uint32_t>(), opts.at("q_deg").get<std::uint32_t>());
    std::optional<std::vector<Element>> points;
    if (opts.contains("points")) {
        std::vector<Element> pts;
        for (const auto& v : opts.at("points")) pts.push_back(spec.from_int(v.get<std::uint64_t>()));
        points = std::move(pts);
    }
    const MdsCode code =
        vandermonde_mds(spec, opts.at("n").get<std::size_t>(), opts.at("k").get<std::size_t>(), points);
    write_output_file(out, opts.at("out").get<std::string>(), io::mds_to_json(code));
    std::cout << "wrote [" << code.n << "," << code.k << "] mds generator -> "
              << opts.at("out").get<std::string>() << "\n";
    return out;
}

RunOutput run_mrd_gen(const json& opts) {
    RunOutput out;
    const std::uint32_t p = opts.at("p").get<std::uint32_t>();
    const std::uint32_t qdeg = opts.at("q_deg").get<std::uint32_t>();
    const std::uint32_t height = opts.at("N").get<std::uint32_t>();
    const std::size_t n = opts.at("n").get<std::size_t>();
    const std::size_t k = opts.at("k").get<std::size_t>();
    const FieldSpec tower = make_tower_field(p, qdeg, height);
    std::vector<Element> g;
    if (opts.contains("g")) {
        for (const auto& v : opts.at("g")) g.push_back(tower.from_int(v.get<std::uint64_t>()));
    } else {
        Element v = tower.one();
        for (std::size_t j = 0; j < n; ++j) {
            g.push_back(v);
            v = tower.mul(v, tower.generator());
        }
    }
    const MrdCode code = gabidulin(tower, n, k, std::move(g));
    write_output_file(out, opts.at("out").get<std::string>(), io::mrd_to_json(code));
    std::cout << "wrote [" << code.n << "," << code.k << "] mrd generator -> "
              << opts.at("out").get<std::string>() << "\n";
    return out;
}

RunOutput run_mds_check(const json& opts) {
    RunOutput out;
    const MdsCode code = io::mds_from_json(io::parse(io::read_text_file(opts.at("in").get<std::string>())));
    const bool ok = is_mds(code.generator);
    json report;
    report["mds"] = ok;
    if (opts.contains("out")) write_output_file(out, opts.at("out").get<std::string>(), report);
    std::cout << (ok ? "MDS: yes" : "MDS: no") << "\n";
    out.exit_code = ok ? kExitOk : kExitNegative;
    return out;
}

RunOutput run_mrd_check(const json& opts) {
    RunOutput out;
    const MrdCode code = io::mrd_from_json(io::parse(io::read_text_file(opts.at("in").get<std::string>())));
    const MrdCertification cert = mrd_criterion(code.generator);
    json report;
    report["certification"] = cert == MrdCertification::certified_mrd       ? "mrd"
                              : cert == MrdCertification::certified_not_mrd ? "not_mrd"
                                                                            : "not_certified";
    if (opts.contains("out")) write_output_file(out, opts.at("out").get<std::string>(), report);
    std::cout << "MRD certification: " << report["certification"].get<std::string>() << "\n";
    out.exit_code = cert == MrdCertification::certified_mrd ? kExitOk : kExitNegative;
    return out;
}

RunOutput dispatch(const std::string& command, const json& opts) {
    if (command == "construct") return run_construct(opts);
    if (command == "verify") return run_verify(opts);
    if (command == "simulate") return run_simulate(opts);
    if (command == "bounds") return run_bounds(opts);
    if (command == "estimate") return run_estimate(opts);
    if (command == "mds-gen") return run_mds_gen(opts);
    if (command == "mrd-gen") return run_mrd_gen(opts);
    if (command == "mds-check") return run_mds_check(opts);
    if (command == "mrd-check") return run_mrd_check(opts);
    throw std::invalid_argument("unknown command: " + command);
}

int execute(const std::string& command, json opts, const std::optional<std::string>& manifest_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunOutput out = dispatch(command, opts);
    const auto t1 = std::chrono::steady_clock::now();

    if (manifest_path) {
        io::RunManifest manifest;
        manifest.command = command;
        manifest.options = std::move(opts);
        manifest.seed = manifest.options.value("seed", std::uint64_t{0});
        manifest.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        manifest.outputs = out.files;
        io::write_text_file(*manifest_path, io::dump(io::manifest_to_json(manifest)));
    }
    return out.exit_code;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
    if (given) return *given;
    std::random_device rd;  // recorded in the manifest, so the run stays reproducible
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(pmds::kToolName) + " " + pmds::kToolVersion +
                 " - partial MDS code constructions, verification, and experiments"};
    app.require_subcommand(1);

    // shared option state
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    bool json_out = false;
    std::string out_path, in_path, mode = "both", method;
    std::uint32_t p = 2, q_deg = 1, height = 0;
    std::size_t m = 0, ell = 0, s = 0, n = 0, k = 0;
    std::vector<std::size_t> r;
    std::vector<std::uint64_t> q_list, points, g_points;
    std::uint64_t trials = 1000, max_attempts = 64;

    const auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--seed", seed, "master seed (auto-generated and recorded if omitted)");
        cmd->add_option("--threads", threads, "worker cap for parallel enumeration")->default_val(1);
        cmd->add_flag("--json", json_out, "machine-readable standard output");
        if (with_out) cmd->add_option("--out", out_path, "output file path");
    };
    const auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--m", m, "number of blocks")->required();
        cmd->add_option("--ell", ell, "locality")->required();
        cmd->add_option("--s", s, "global parities (k = m*ell - s)")->required();
        cmd->add_option("--r", r, "per-block parities r_1,...,r_m")->required()->delimiter(',');
    };

    auto* c_construct = app.add_subcommand("construct", "build a code by method mrd|random|stepwise");
    c_construct->add_option("--method", method, "mrd|random|stepwise")->required();
    add_params(c_construct);
    c_construct->add_option("--p", p, "field characteristic")->required();
    c_construct->add_option("--q-deg", q_deg, "degree of q over the prime field (q = p^q-deg)")->default_val(1);
    c_construct->add_option("--N", height, "extension height for mrd (default m*ell)");
    c_construct->add_option("--max-attempts", max_attempts, "random method retry budget")->default_val(64);
    add_common(c_construct, true);

    auto* c_verify = app.add_subcommand("verify", "check a code file for the PMDS property");
    c_verify->add_option("--in", in_path, "code file")->required();
    c_verify->add_option("--mode", mode, "tkl|definition|both")->default_val("both");
    add_common(c_verify, true);

    auto* c_simulate = app.add_subcommand("simulate", "erasure/recovery sweep over the pattern family");
    c_simulate->add_option("--in", in_path, "code file")->required();
    c_simulate->add_option("--trials", trials, "sample count when the family is too large")->default_val(1000);
    add_common(c_simulate, true);

    auto* c_bounds = app.add_subcommand("bounds", "probability/field-size bound table");
    add_params(c_bounds);
    c_bounds->add_option("--q", q_list, "field sizes (prime powers), comma separated")->required()->delimiter(',');
    add_common(c_bounds, true);

    auto* c_estimate = app.add_subcommand("estimate", "empirical random-fill success rate");
    add_params(c_estimate);
    c_estimate->add_option("--p", p, "field characteristic")->required();
    c_estimate->add_option("--q-deg", q_deg, "degree of q over the prime field")->default_val(1);
    c_estimate->add_option("--trials", trials, "number of independent fills")->default_val(1000);
    add_common(c_estimate, true);

    auto* c_mds_gen = app.add_subcommand("mds-gen", "write a Vandermonde MDS generator");
    c_mds_gen->add_option("--p", p)->required();
    c_mds_gen->add_option("--q-deg", q_deg)->default_val(1);
    c_mds_gen->add_option("--n", n)->required();
    c_mds_gen->add_option("--k", k)->required();
    c_mds_gen->add_option("--points", points, "evaluation points as field indices")->delimiter(',');
    add_common(c_mds_gen, true);

    auto* c_mrd_gen = app.add_subcommand("mrd-gen", "write a Moore-matrix rank-metric generator");
    c_mrd_gen->add_option("--p", p)->required();
    c_mrd_gen->add_option("--q-deg", q_deg)->default_val(1);
    c_mrd_gen->add_option("--N", height, "extension height")->required();
    c_mrd_gen->add_option("--n", n)->required();
    c_mrd_gen->add_option("--k", k)->required();
    c_mrd_gen->add_option("--g", g_points, "point vector as field indices")->delimiter(',');
    add_common(c_mrd_gen, true);

    auto* c_mds_check = app.add_subcommand("mds-check", "certify the MDS property of a code file");
    c_mds_check->add_option("--in", in_path, "code file")->required();
    add_common(c_mds_check, true);

    auto* c_mrd_check = app.add_subcommand("mrd-check", "certify the MRD property of a code file");
    c_mrd_check->add_option("--in", in_path, "code file")->required();
    add_common(c_mrd_check, true);

    auto* c_rerun = app.add_subcommand("rerun", "re-execute a command from its manifest");
    std::string manifest_in, rerun_out;
    c_rerun->add_option("manifest", manifest_in, "manifest file")->required();
    c_rerun->add_option("--out", rerun_out, "new output path (defaults to the recorded one)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_rerun->parsed()) {
            const json manifest = io::parse(io::read_text_file(manifest_in));
            const std::string command = io::field_of(manifest, "command").get<std::string>();
            json opts = io::field_of(manifest, "options");
            std::optional<std::string> manifest_path;
            if (!rerun_out.empty()) {
                opts["out"] = rerun_out;
                manifest_path = rerun_out + ".manifest.json";
            } else if (opts.contains("out")) {
                manifest_path = opts["out"].get<std::string>() + ".manifest.json";
            }
            return execute(command, opts, manifest_path);
        }

        CLI::App* sub = app.get_subcommands().front();
        const std::string command = sub->get_name();
        json opts;
        if (sub->count("--threads")) opts["threads"] = threads;
        if (json_out) opts["json"] = true;
        if (!out_path.empty()) opts["out"] = out_path;

        if (command == "construct") {
            opts["method"] = method;
            opts["m"] = m;
            opts["ell"] = ell;
            opts["s"] = s;
            opts["r"] = r;
            opts["p"] = p;
            opts["q_deg"] = q_deg;
            if (c_construct->count("--N")) opts["N"] = height;
            opts["max_attempts"] = max_attempts;
            opts["seed"] = resolve_seed(seed);
            if (out_path.empty()) throw std::invalid_argument("construct requires --out");
        } else if (command == "verify") {
            opts["in"] = in_path;
            opts["mode"] = mode;
        } else if (command == "simulate") {
            opts["in"] = in_path;
            opts["trials"] = trials;
            opts["seed"] = resolve_seed(seed);
        } else if (command == "bounds") {
            opts["m"] = m;
            opts["ell"] = ell;
            opts["s"] = s;
            opts["r"] = r;
            opts["q"] = q_list;
        } else if (command == "estimate") {
            opts["m"] = m;
            opts["ell"] = ell;
            opts["s"] = s;
            opts["r"] = r;
            opts["p"] = p;
            opts["q_deg"] = q_deg;
            opts["trials"] = trials;
            opts["seed"] = resolve_seed(seed);
        } else if (command == "mds-gen") {
            opts["p"] = p;
            opts["q_deg"] = q_deg;
            opts["n"] = n;
            opts["k"] = k;
            if (c_mds_gen->count("--points")) opts["points"] = points;
            if (out_path.empty()) throw std::invalid_argument("mds-gen requires --out");
        } else if (command == "mrd-gen") {
            opts["p"] = p;
            opts["q_deg"] = q_deg;
            opts["N"] = height;
            opts["n"] = n;
            opts["k"] = k;
            if (c_mrd_gen->count("--g")) opts["g"] = g_points;
            if (out_path.empty()) throw std::invalid_argument("mrd-gen requires --out");
        } else if (command == "mds-check" || command == "mrd-check") {
            opts["in"] = in_path;
        }

        std::optional<std::string> manifest_path;
        if (!out_path.empty()) manifest_path = out_path + ".manifest.json";
        return execute(command, opts, manifest_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
