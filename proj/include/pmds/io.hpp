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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmds/codes.hpp"
#include "pmds/erasure.hpp"
#include "pmds/field.hpp"
#include "pmds/matrix.hpp"
#include "pmds/pmds.hpp"
#include "pmds/version.hpp"

namespace pmds::io {

using nlohmann::json;

// All documents are emitted with sorted keys and a fixed indent, so equal
// values serialize to identical bytes.

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("malformed JSON document");
    return j;
}

inline std::string digest_fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline const json& field_of(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw std::runtime_error(std::string("missing field: ") + key);
    return *it;
}

// --- field / element / matrix ---

inline json element_to_json(const Element& e) {
    json a = json::array();
    for (const Coeff c : e.coeffs) a.push_back(c);
    return a;
}

inline Element element_from_json(const json& j, const FieldSpec& spec) {
    if (!j.is_array()) throw std::runtime_error("element must be an integer array");
    std::vector<Coeff> c;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
            throw std::runtime_error("element coefficient must be a nonnegative integer");
        c.push_back(v.get<Coeff>());
    }
    return spec.from_coeffs(std::move(c));
}

inline json field_to_json(const FieldSpec& spec) {
    json j;
    j["p"] = spec.characteristic();
    j["degree"] = spec.degree();
    json mod = json::array();
    for (const Coeff c : spec.modulus()) mod.push_back(c);
    j["modulus"] = mod;
    if (spec.base_degree()) j["base_degree"] = *spec.base_degree();
    return j;
}

inline FieldSpec field_from_json(const json& j) {
    const std::uint32_t p = field_of(j, "p").get<std::uint32_t>();
    const std::uint32_t degree = field_of(j, "degree").get<std::uint32_t>();
    std::vector<Coeff> modulus;
    for (const auto& v : field_of(j, "modulus")) modulus.push_back(v.get<Coeff>());
    std::optional<std::uint32_t> base;
    if (j.contains("base_degree")) base = j["base_degree"].get<std::uint32_t>();
    return FieldSpec::from_parts(p, degree, std::move(modulus), base);
}

inline json matrix_to_json(const FMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(element_to_json(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline FMatrix matrix_from_json(const json& j, const FieldSpec& spec) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("generator must be a non-empty nested array");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    if (cols == 0) throw std::runtime_error("generator rows must be non-empty");
    FMatrix m(spec, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (j[r].size() != cols) throw std::runtime_error("generator rows have inconsistent lengths");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, element_from_json(j[r][c], spec));
    }
    return m;
}

// --- params / provenance / artifacts ---

inline json params_to_json(const PmdsParams& p) {
    json j;
    j["m"] = p.m;
    j["ell"] = p.ell;
    j["s"] = p.s;
    j["r"] = p.r;
    return j;
}

inline PmdsParams params_from_json(const json& j) {
    std::vector<std::size_t> r;
    for (const auto& v : field_of(j, "r")) r.push_back(v.get<std::size_t>());
    return PmdsParams::make(field_of(j, "m").get<std::size_t>(), field_of(j, "ell").get<std::size_t>(),
                            field_of(j, "s").get<std::size_t>(), std::move(r));
}

inline json provenance_to_json(const Provenance& p) {
    json j;
    j["method"] = p.method;
    j["seed"] = p.seed;
    j["attempts"] = p.attempts;
    if (p.alpha) {
        json a = json::array();
        for (const auto& e : *p.alpha) a.push_back(element_to_json(e));
        j["alpha"] = a;
    }
    if (p.beta) {
        json b = json::array();
        for (const auto& e : *p.beta) b.push_back(element_to_json(e));
        j["beta"] = b;
    }
    return j;
}

inline Provenance provenance_from_json(const json& j, const FieldSpec& spec) {
    Provenance p;
    p.method = field_of(j, "method").get<std::string>();
    p.seed = field_of(j, "seed").get<std::uint64_t>();
    p.attempts = field_of(j, "attempts").get<std::uint64_t>();
    if (j.contains("alpha")) {
        std::vector<Element> a;
        for (const auto& v : j["alpha"]) a.push_back(element_from_json(v, spec));
        p.alpha = std::move(a);
    }
    if (j.contains("beta")) {
        std::vector<Element> b;
        for (const auto& v : j["beta"]) b.push_back(element_from_json(v, spec));
        p.beta = std::move(b);
    }
    return p;
}

inline json artifact_to_json(const CodeArtifact& art) {
    json j;
    j["format_version"] = kFileFormatVersion;
    j["kind"] = "pmds";
    j["field"] = field_to_json(art.spec);
    j["params"] = params_to_json(art.params);
    j["generator"] = matrix_to_json(art.generator);
    j["provenance"] = provenance_to_json(art.provenance);
    return j;
}

inline CodeArtifact artifact_from_json(const json& j) {
    if (field_of(j, "kind").get<std::string>() != "pmds") throw std::runtime_error("not a pmds code file");
    FieldSpec spec = field_from_json(field_of(j, "field"));
    PmdsParams params = params_from_json(field_of(j, "params"));
    FMatrix gen = matrix_from_json(field_of(j, "generator"), spec);
    if (gen.rows() != params.k() || gen.cols() != params.n())
        throw std::runtime_error("generator dimensions do not match the declared parameters");
    Provenance prov = provenance_from_json(field_of(j, "provenance"), spec);
    return CodeArtifact{std::move(params), spec, std::move(gen), std::move(prov)};
}

inline json mds_to_json(const MdsCode& code) {
    json j;
    j["format_version"] = kFileFormatVersion;
    j["kind"] = "mds";
    j["field"] = field_to_json(code.spec);
    j["n"] = code.n;
    j["k"] = code.k;
    j["generator"] = matrix_to_json(code.generator);
    json pts = json::array();
    for (const auto& p : code.points) pts.push_back(element_to_json(p));
    j["points"] = pts;
    j["extended"] = code.extended;
    return j;
}

inline MdsCode mds_from_json(const json& j) {
    if (field_of(j, "kind").get<std::string>() != "mds") throw std::runtime_error("not an mds code file");
    MdsCode code{field_from_json(field_of(j, "field")),
                 field_of(j, "n").get<std::size_t>(),
                 field_of(j, "k").get<std::size_t>(),
                 matrix_from_json(field_of(j, "generator"), field_from_json(field_of(j, "field"))),
                 {},
                 field_of(j, "extended").get<bool>()};
    for (const auto& v : field_of(j, "points")) code.points.push_back(element_from_json(v, code.spec));
    if (code.generator.rows() != code.k || code.generator.cols() != code.n)
        throw std::runtime_error("generator dimensions do not match the declared n, k");
    return code;
}

inline json mrd_to_json(const MrdCode& code) {
    json j;
    j["format_version"] = kFileFormatVersion;
    j["kind"] = "mrd";
    j["field"] = field_to_json(code.spec);
    j["n"] = code.n;
    j["k"] = code.k;
    j["generator"] = matrix_to_json(code.generator);
    json g = json::array();
    for (const auto& p : code.point_vector) g.push_back(element_to_json(p));
    j["g"] = g;
    return j;
}

inline MrdCode mrd_from_json(const json& j) {
    if (field_of(j, "kind").get<std::string>() != "mrd") throw std::runtime_error("not an mrd code file");
    FieldSpec spec = field_from_json(field_of(j, "field"));
    MrdCode code{spec,
                 field_of(j, "n").get<std::size_t>(),
                 field_of(j, "k").get<std::size_t>(),
                 matrix_from_json(field_of(j, "generator"), spec),
                 {}};
    for (const auto& v : field_of(j, "g")) code.point_vector.push_back(element_from_json(v, spec));
    if (code.generator.rows() != code.k || code.generator.cols() != code.n)
        throw std::runtime_error("generator dimensions do not match the declared n, k");
    return code;
}

inline std::string document_kind(const json& j) { return field_of(j, "kind").get<std::string>(); }

// --- reports ---

inline json verdict_to_json(const PmdsVerdict& v) {
    json j;
    j["pmds"] = v.pmds;
    j["first_failing_selection"] = v.first_failure ? json(*v.first_failure) : json(nullptr);
    j["selections_checked"] = v.selections_checked;
    return j;
}

inline json capability_to_json(const CapabilityVerdict& v) {
    json j;
    j["all_correctable"] = v.all_correctable;
    j["counterexample"] = v.counterexample ? json(v.counterexample->erased) : json(nullptr);
    j["patterns_checked"] = v.patterns_checked;
    return j;
}

// --- run manifests ---

struct RunManifest {
    std::string command;
    json options;  // resolved parameter echo, sufficient to re-run
    std::uint64_t seed = 0;
    double elapsed_ms = 0;
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
};

inline json manifest_to_json(const RunManifest& m) {
    json j;
    j["format_version"] = kFileFormatVersion;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["rng"] = kRngName;
    j["command"] = m.command;
    j["options"] = m.options;
    j["seed"] = m.seed;
    j["elapsed_ms"] = m.elapsed_ms;
    json outs = json::array();
    for (const auto& [path, digest] : m.outputs) {
        json o;
        o["path"] = path;
        o["digest_fnv1a64"] = digest;
        outs.push_back(o);
    }
    j["outputs"] = outs;
    return j;
}

}  // namespace pmds::io
