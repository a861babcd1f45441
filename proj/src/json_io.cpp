// Copyright 2026 The npovm Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "npovm/json_io.hpp"

#include <fstream>
#include <sstream>

namespace npovm::json {

namespace {

using Index = Eigen::Index;

// Converts library-level JSON type errors into ParseError.
template <typename F>
auto guarded(const char *what, F &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::ParseError, std::string(what) + ": " + e.what());
    }
}

const Json &need(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

const Json &need_array(const Json &j, const char *what) {
    if (!j.is_array()) fail(ErrorCode::ParseError, std::string(what) + " must be an array");
    return j;
}

std::size_t need_size(const Json &j, const char *key) {
    const Json &v = need(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        fail(ErrorCode::ParseError, std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

RMatrix rmatrix_from(const Json &j) {
    need_array(j, "action");
    const auto rows = static_cast<Index>(j.size());
    RMatrix m(rows, rows);
    for (Index r = 0; r < rows; ++r) {
        const Json &row = need_array(j[static_cast<std::size_t>(r)], "action row");
        if (static_cast<Index>(row.size()) != rows) fail(ErrorCode::ParseError, "action must be square");
        for (Index c = 0; c < rows; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

} // namespace

Json read_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

Json parse(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

Complex complex_from(const Json &j) {
    return guarded("complex number", [&]() -> Complex {
        if (j.is_number()) return {j.get<double>(), 0.0};
        if (j.is_array() && j.size() == 1) return {j[0].get<double>(), 0.0};
        if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
        fail(ErrorCode::ParseError, "complex number must be a number, [re] or [re, im]");
    });
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

CMatrix cmatrix_from(const Json &j) {
    return guarded("matrix", [&] {
        const std::size_t d = need_size(j, "dim");
        const Json &entries = need_array(need(j, "entries"), "entries");
        if (d == 0 || entries.size() != d) fail(ErrorCode::ParseError, "entries must have 'dim' rows");
        CMatrix m(static_cast<Index>(d), static_cast<Index>(d));
        for (std::size_t r = 0; r < d; ++r) {
            const Json &row = need_array(entries[r], "matrix row");
            if (row.size() != d) fail(ErrorCode::ParseError, "entries must have 'dim' columns");
            for (std::size_t c = 0; c < d; ++c)
                m(static_cast<Index>(r), static_cast<Index>(c)) = complex_from(row[c]);
        }
        return m;
    });
}

Json to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    Json out;
    out["dim"] = m.rows();
    out["entries"] = std::move(rows);
    return out;
}

CVector cvector_from(const Json &j) {
    return guarded("vector", [&] {
        need_array(j, "vector");
        if (j.empty()) fail(ErrorCode::ParseError, "vector is empty");
        CVector v(static_cast<Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from(j[i]);
        return v;
    });
}

Json to_json(const CVector &v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

HermitianMatrix hermitian_from(const Json &j) { return HermitianMatrix(cmatrix_from(j)); }

Json to_json(const HermitianMatrix &h) { return to_json(h.matrix()); }

DensityMatrix density_from(const Json &j) { return DensityMatrix(hermitian_from(j)); }

SuperMap map_from(const Json &j) {
    return guarded("map", [&] {
        if (j.is_object() && j.contains("action")) return SuperMap(rmatrix_from(j.at("action")));
        const std::string kind = need(j, "builtin").get<std::string>();
        if (kind == "identity") return SuperMap::identity(need_size(j, "dim"));
        if (kind == "transpose") return SuperMap::transpose(need_size(j, "dim"));
        if (kind == "partial_transpose") {
            const Json &dims = need_array(need(j, "dims"), "dims");
            if (dims.size() != 2) fail(ErrorCode::ParseError, "dims must be [dA, dB]");
            return SuperMap::partial_transpose(dims[0].get<std::size_t>(), dims[1].get<std::size_t>());
        }
        if (kind == "unitary" || kind == "unitary_conjugation") {
            return SuperMap::unitary_conjugation(cmatrix_from(need(j, "unitary")));
        }
        fail(ErrorCode::ParseError, "unknown builtin map '" + kind + "'");
    });
}

Json to_json(const SuperMap &f) {
    Json out;
    if (const auto &tag = f.tag()) {
        switch (tag->kind) {
        case BuiltinTag::Kind::Identity:
            out["builtin"] = "identity";
            out["dim"] = f.dim();
            return out;
        case BuiltinTag::Kind::Transpose:
            out["builtin"] = "transpose";
            out["dim"] = f.dim();
            return out;
        case BuiltinTag::Kind::PartialTranspose:
            out["builtin"] = "partial_transpose";
            out["dims"] = Json::array({tag->dim_a, tag->dim_b});
            return out;
        case BuiltinTag::Kind::UnitaryConjugation:
            out["builtin"] = "unitary";
            out["unitary"] = to_json(tag->unitary);
            return out;
        }
    }
    Json rows = Json::array();
    for (Index r = 0; r < f.action().rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < f.action().cols(); ++c) row.push_back(f.action()(r, c));
        rows.push_back(std::move(row));
    }
    out["action"] = std::move(rows);
    return out;
}

Measurement measurement_from(const Json &j) {
    return guarded("measurement", [&] {
        const Json &outcomes = need_array(need(j, "outcomes"), "outcomes");
        std::vector<Outcome> out;
        for (const auto &o : outcomes)
            out.push_back({need(o, "label").get<std::string>(), hermitian_from(need(o, "effect"))});
        if (out.empty()) fail(ErrorCode::ParseError, "measurement has no outcomes");
        return Measurement(std::move(out));
    });
}

Json to_json(const Measurement &m) {
    Json outcomes = Json::array();
    for (const auto &o : m.outcomes()) {
        Json e;
        e["label"] = o.label;
        e["effect"] = to_json(o.effect);
        outcomes.push_back(std::move(e));
    }
    Json out;
    out["outcomes"] = std::move(outcomes);
    return out;
}

Decomposition decomposition_from(const Json &j) {
    return guarded("decomposition", [&] {
        const Json &outcomes = need_array(need(j, "outcomes"), "outcomes");
        std::vector<OutcomeTerms> out;
        for (const auto &o : outcomes) {
            OutcomeTerms ot{need(o, "label").get<std::string>(), {}};
            for (const auto &t : need_array(need(o, "terms"), "terms"))
                ot.terms.push_back({map_from(need(t, "map")), hermitian_from(need(t, "S"))});
            out.push_back(std::move(ot));
        }
        return Decomposition(std::move(out));
    });
}

Json to_json(const Decomposition &d) {
    Json outcomes = Json::array();
    for (const auto &o : d.outcomes()) {
        Json terms = Json::array();
        for (const auto &t : o.terms) {
            Json tj;
            tj["map"] = to_json(t.map);
            tj["S"] = to_json(t.s);
            terms.push_back(std::move(tj));
        }
        Json oj;
        oj["label"] = o.label;
        oj["terms"] = std::move(terms);
        outcomes.push_back(std::move(oj));
    }
    Json out;
    out["outcomes"] = std::move(outcomes);
    return out;
}

Subspace subspace_from(const Json &j) {
    return guarded("subspace", [&] {
        const std::size_t d = need_size(j, "dim");
        if (j.contains("fixed_by")) {
            std::vector<SuperMap> maps;
            for (const auto &m : need_array(j.at("fixed_by"), "fixed_by")) maps.push_back(map_from(m));
            return common_fixed_subspace(maps, d);
        }
        const Json &gens = j.contains("spanning") ? j.at("spanning") : need(j, "basis");
        std::vector<HermitianMatrix> hs;
        for (const auto &g : need_array(gens, "spanning")) {
            hs.push_back(hermitian_from(g));
            if (hs.back().dim() != d) fail(ErrorCode::DimensionMismatch, "spanning matrix dimension differs from 'dim'");
        }
        return Subspace::span(d, hs);
    });
}

Json to_json(const Subspace &k) {
    Json basis = Json::array();
    for (const auto &b : k.basis()) basis.push_back(to_json(b));
    Json out;
    out["dim"] = k.ambient_dim();
    out["size"] = k.size();
    out["basis"] = std::move(basis);
    return out;
}

PureStateFamily family_from(const Json &j) {
    return guarded("family", [&] {
        std::vector<CVector> states;
        for (const auto &s : need_array(need(j, "states"), "states")) states.push_back(cvector_from(s));
        return PureStateFamily(std::move(states));
    });
}

CommutativeGroupRep commutative_rep_from(const Json &j) {
    return guarded("commutative rep", [&] {
        const std::size_t k = need_size(j, "order");
        const Json &chars = need_array(need(j, "characters"), "characters");
        if (k == 0 || chars.size() != k) fail(ErrorCode::ParseError, "characters must have 'order' rows");
        CMatrix table(static_cast<Index>(k), static_cast<Index>(k));
        for (std::size_t g = 0; g < k; ++g) {
            const Json &row = need_array(chars[g], "character row");
            if (row.size() != k) fail(ErrorCode::ParseError, "characters must be order x order");
            for (std::size_t l = 0; l < k; ++l)
                table(static_cast<Index>(g), static_cast<Index>(l)) = complex_from(row[l]);
        }
        std::vector<Complex> amps;
        for (const auto &a : need_array(need(j, "amplitudes"), "amplitudes")) amps.push_back(complex_from(a));
        return CommutativeGroupRep(std::move(table), std::move(amps));
    });
}

BlockGroupRep block_rep_from(const Json &j) {
    return guarded("block rep", [&] {
        std::vector<std::vector<std::size_t>> table;
        for (const auto &row : need_array(need(j, "table"), "table"))
            table.push_back(need_array(row, "table row").get<std::vector<std::size_t>>());
        std::vector<IrrepBlock> blocks;
        for (const auto &b : need_array(need(j, "blocks"), "blocks")) {
            IrrepBlock blk;
            for (const auto &m : need_array(need(b, "rep"), "rep")) blk.rep.push_back(cmatrix_from(m));
            blk.multiplicity = cmatrix_from(need(b, "multiplicity"));
            blocks.push_back(std::move(blk));
        }
        return BlockGroupRep(std::move(table), std::move(blocks));
    });
}

Json to_json(const PostSelectedPOVM &ps) {
    Json out;
    out["povm"] = to_json(ps.povm);
    out["reject_label"] = ps.reject_label;
    out["c"] = ps.c;
    out["c_multiplicity"] = ps.c_multiplicity;
    out["acceptance"] = ps.acceptance();
    return out;
}

Json to_json(const ImplementationReport &r) {
    Json out;
    out["max_ratio_error"] = r.max_ratio_error;
    out["lemma1_constancy_spread"] = r.lemma1_constancy_spread;
    out["acceptance"] = r.acceptance;
    out["samples_used"] = r.samples_used;
    out["informativeness"] = r.informativeness;
    return out;
}

} // namespace npovm::json
