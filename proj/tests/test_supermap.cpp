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
#include "npovm/supermap.hpp"

#include <unsupported/Eigen/KroneckerProduct>

using namespace npovm;

TEST_CASE("builtin maps match their matrix definitions") {
    testing::Rng rng(5);
    const HermitianMatrix a = testing::random_hermitian(rng, 4);
    CHECK(max_abs_diff(apply(SuperMap::identity(4), a), a) <= 1e-14);
    CHECK(max_abs_diff(apply(SuperMap::transpose(4), a), transpose(a)) <= 1e-14);
    CHECK(max_abs_diff(apply(SuperMap::partial_transpose(2, 2), a), partial_transpose(a, 2, 2)) <= 1e-14);
    const CMatrix u = testing::random_unitary(rng, 4);
    CHECK(max_abs_diff(apply(SuperMap::unitary_conjugation(u), a), conjugate(u, a)) <= 1e-12);
    CHECK(max_abs_diff(apply(SuperMap::scaling(4, 2.5), a), a * 2.5) <= 1e-14);
}

TEST_CASE("adjoint satisfies Tr(f(X) Y) = Tr(X f^dagger(Y))") {
    testing::Rng rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        const SuperMap f(RMatrix::Random(9, 9));
        const HermitianMatrix x = testing::random_hermitian(rng, 3);
        const HermitianMatrix y = testing::random_hermitian(rng, 3);
        CHECK(hs_inner(apply(f, x), y) == doctest::Approx(hs_inner(x, apply(adjoint(f), y))).epsilon(1e-12));
    }
    const CMatrix u = testing::random_unitary(rng, 3);
    const SuperMap ad = adjoint(SuperMap::unitary_conjugation(u));
    CHECK(action_distance(ad, SuperMap::unitary_conjugation(u.adjoint())) <= 1e-12);
}

TEST_CASE("composition and trace preservation") {
    testing::Rng rng(1);
    const SuperMap t = SuperMap::transpose(3);
    CHECK(action_distance(compose(t, t), SuperMap::identity(3)) == 0.0);
    CHECK(is_trace_preserving(SuperMap::partial_transpose(2, 2)));
    CHECK_FALSE(is_trace_preserving(SuperMap::scaling(2, 0.5)));
    CHECK_THROWS_AS(SuperMap::unitary_conjugation(CMatrix::Constant(2, 2, 1.0)), Error);
    CHECK_THROWS_AS(SuperMap(RMatrix::Zero(5, 5)), Error);
}

TEST_CASE("fixed space of the two-qubit partial transpose has dimension 12") {
    const std::vector<SuperMap> maps{SuperMap::partial_transpose(2, 2)};
    const Subspace k = common_fixed_subspace(maps, 4);
    CHECK(k.size() == 12);
    CHECK(k.contains_identity());
    // Oracle: sigma_i (x) sigma_y are the only Pauli products flipped.
    CMatrix y(2, 2);
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const HermitianMatrix xy(CMatrix(Eigen::kroneckerProduct(x, y)));
    const HermitianMatrix xx(CMatrix(Eigen::kroneckerProduct(x, x)));
    CHECK(k.residual(xy) == doctest::Approx(xy.hs_norm()));
    CHECK(k.residual(xx) <= 1e-12);
}

TEST_CASE("subspace span, projection and edge cases") {
    const Subspace full = Subspace::full(3);
    CHECK(full.size() == 9);
    CHECK(Subspace::zero(3).size() == 0);
    CHECK(common_fixed_subspace({}, 2).size() == 4);

    std::vector<HermitianMatrix> gens{HermitianMatrix::identity(2), HermitianMatrix::identity(2) * 2.0};
    const Subspace k = Subspace::span(2, gens);
    CHECK(k.size() == 1);
    CMatrix z(2, 2);
    z << 1, 0, 0, -1;
    const HermitianMatrix proj = k.project(HermitianMatrix(z) + HermitianMatrix::identity(2));
    CHECK(max_abs_diff(proj, HermitianMatrix::identity(2)) <= 1e-14);

    // Fixed space of a random unitary conjugation is its commutant.
    testing::Rng rng(4);
    const std::vector<SuperMap> maps{SuperMap::unitary_conjugation(testing::random_unitary(rng, 3))};
    CHECK(common_fixed_subspace(maps, 3).size() == 3);
}
