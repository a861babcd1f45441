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

#include <doctest.h>

#include "instance_gen.hpp"
#include "npovm/json_io.hpp"
#include "npovm/pt_example.hpp"

using namespace npovm;
using json::Json;

namespace {

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an npovm::Error");
    return ErrorCode::InvalidInput;
}

} // namespace

TEST_CASE("complex number forms") {
    CHECK(json::complex_from(Json(2.5)) == Complex(2.5, 0.0));
    CHECK(json::complex_from(Json::array({1.5})) == Complex(1.5, 0.0));
    CHECK(json::complex_from(Json::array({1.0, -2.0})) == Complex(1.0, -2.0));
    CHECK(code_of([] { (void)json::complex_from(Json("x")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { (void)json::complex_from(Json::array({1, 2, 3})); }) == ErrorCode::ParseError);
}

TEST_CASE("matrix and measurement round trips") {
    testing::Rng rng(8);
    const HermitianMatrix h = testing::random_hermitian(rng, 3);
    const Json j = json::to_json(h);
    CHECK(j["dim"] == 3);
    CHECK(max_abs_diff(json::hermitian_from(json::parse(j.dump())), h) == 0.0);

    const Measurement m = pt::povm();
    const Measurement back = json::measurement_from(json::parse(json::to_json(m).dump()));
    CHECK(back.labels() == m.labels());
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(max_abs_diff(back[i].effect, m[i].effect) == 0.0);

    const Json bad = json::parse(R"({"dim": 2, "entries": [[1, [0, 1]], [[0, 1], 1]]})");
    CHECK(code_of([&] { (void)json::hermitian_from(bad); }) == ErrorCode::NotHermitian);
    CHECK(code_of([] { (void)json::hermitian_from(json::parse(R"({"dim": 2})")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { (void)json::parse("{not json"); }) == ErrorCode::ParseError);
}

TEST_CASE("maps and decompositions") {
    testing::Rng rng(2);
    const std::vector<SuperMap> maps{SuperMap::identity(4), SuperMap::transpose(4),
                                     SuperMap::partial_transpose(2, 2),
                                     SuperMap::unitary_conjugation(testing::random_unitary(rng, 4)),
                                     SuperMap(RMatrix::Random(16, 16))};
    for (const auto &f : maps) {
        const SuperMap g = json::map_from(json::parse(json::to_json(f).dump()));
        CHECK(action_distance(f, g) <= 1e-12);
    }
    CHECK(code_of([] { (void)json::map_from(json::parse(R"({"builtin": "rotate"})")); }) == ErrorCode::ParseError);

    const Decomposition dec = json::decomposition_from(json::parse(json::to_json(pt::decomposition()).dump()));
    CHECK(construct_povm(dec).c == doctest::Approx(2.0));
}

TEST_CASE("subspaces") {
    const Subspace fixed = json::subspace_from(json::parse(R"({"dim": 4, "fixed_by": [{"builtin": "partial_transpose", "dims": [2, 2]}]})"));
    CHECK(fixed.size() == 12);
    const Subspace again = json::subspace_from(json::parse(json::to_json(fixed).dump()));
    CHECK(again.size() == 12);
    const Subspace span = json::subspace_from(json::parse(R"({"dim": 2, "spanning": [{"dim": 2, "entries": [[1, 0], [0, 1]]}]})"));
    CHECK(span.size() == 1);
}

TEST_CASE("families and group representations") {
    const PureStateFamily fam = json::family_from(json::parse(R"({"states": [[1, 0], [[0.6], [0.8]]]})"));
    CHECK(fam.size() == 2);
    const CommutativeGroupRep rep = json::commutative_rep_from(json::parse(
        R"({"order": 2, "characters": [[1, 1], [1, -1]], "amplitudes": [1.2649110640673518, 0.6324555320336759]})"));
    CHECK(rep.shortcut_c() == doctest::Approx(0.625));

    const Json block = json::parse(R"({"table": [[0, 1], [1, 0]], "blocks": [
        {"rep": [{"dim": 1, "entries": [[1]]}, {"dim": 1, "entries": [[1]]}], "multiplicity": {"dim": 1, "entries": [[1]]}},
        {"rep": [{"dim": 1, "entries": [[1]]}, {"dim": 1, "entries": [[-1]]}], "multiplicity": {"dim": 1, "entries": [[1]]}}]})");
    const BlockGroupRep br = json::block_rep_from(block);
    CHECK(br.order() == 2);
    CHECK(br.identity_index() == 0);
}
