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

/**
 * @file
 * JSON encoding of matrices, maps, measurements, decompositions, subspaces,
 * pure-state families and group representations.
 *
 * A complex number is a number, [re] or [re, im]. A matrix is
 * {"dim": d, "entries": [[z, ...], ...]}; a vector is [z, ...].
 * Schema problems raise ParseError; semantic problems raise the error of the
 * constructor that rejects the value.
 */

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "npovm/asd.hpp"
#include "npovm/bridge.hpp"

namespace npovm::json {

using Json = nlohmann::ordered_json;

Json read_file(const std::filesystem::path &path);
Json parse(const std::string &text);

Complex complex_from(const Json &j);
Json to_json(Complex z);

CMatrix cmatrix_from(const Json &j);
Json to_json(const CMatrix &m);
CVector cvector_from(const Json &j);
Json to_json(const CVector &v);

HermitianMatrix hermitian_from(const Json &j);
Json to_json(const HermitianMatrix &h);
DensityMatrix density_from(const Json &j);

/// {"builtin": "identity" | "transpose", "dim": d}
/// {"builtin": "partial_transpose", "dims": [dA, dB]}
/// {"builtin": "unitary", "unitary": matrix}
/// {"action": [[real, ...], ...]}
SuperMap map_from(const Json &j);
Json to_json(const SuperMap &f);

/// {"outcomes": [{"label": s, "effect": matrix}, ...]}
Measurement measurement_from(const Json &j);
Json to_json(const Measurement &m);

/// {"outcomes": [{"label": s, "terms": [{"map": map, "S": matrix}, ...]}, ...]}
Decomposition decomposition_from(const Json &j);
Json to_json(const Decomposition &d);

/// {"dim": d, "spanning": [matrix, ...]} or {"dim": d, "fixed_by": [map, ...]}.
/// Written as {"dim": d, "size": k, "basis": [matrix, ...]}; "basis" reads
/// like "spanning".
Subspace subspace_from(const Json &j);
Json to_json(const Subspace &k);

/// {"states": [vector, ...]}; vectors are used as given.
PureStateFamily family_from(const Json &j);

/// {"order": k, "characters": [[z, ...], ...], "amplitudes": [z, ...]}
CommutativeGroupRep commutative_rep_from(const Json &j);

/// {"table": [[int, ...], ...], "blocks": [{"rep": [matrix, ...], "multiplicity": matrix}, ...]}
BlockGroupRep block_rep_from(const Json &j);

Json to_json(const PostSelectedPOVM &ps);
Json to_json(const ImplementationReport &r);

} // namespace npovm::json
