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

#include <cmath>

#include "instance_gen.hpp"
#include "npovm/hermitian.hpp"

using namespace npovm;

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

TEST_CASE("Hermitian construction symmetrizes or rejects") {
    CMatrix m(2, 2);
    m << 1.0, Complex(0.0, 1.0), Complex(0.0, -1.0) + 1e-14, 2.0;
    const HermitianMatrix h(m);
    CHECK(h.matrix()(1, 0) == std::conj(h.matrix()(0, 1)));

    m(1, 0) = Complex(0.0, -1.0) + 1e-6;
    CHECK(code_of([&] { HermitianMatrix bad(m); }) == ErrorCode::NotHermitian);
    CHECK(code_of([&] { HermitianMatrix bad(CMatrix(2, 3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("density matrix validation") {
    CHECK(code_of([] { DensityMatrix r(HermitianMatrix::identity(2)); }) == ErrorCode::NotDensityMatrix);
    CMatrix m(2, 2);
    m << 1.5, 0.0, 0.0, -0.5;
    CHECK(code_of([&] { DensityMatrix r{HermitianMatrix(m)}; }) == ErrorCode::NotDensityMatrix);
    CHECK(DensityMatrix::maximally_mixed(3).matrix().trace() == doctest::Approx(1.0));
}

TEST_CASE("canonical basis is HS-orthonormal") {
    for (std::size_t d : {1u, 2u, 3u, 4u}) {
        const auto basis = CanonicalBasis(d).elements();
        REQUIRE(basis.size() == d * d);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                // Oracle: trace of the raw Eigen product.
                const double ip = (basis[i].matrix() * basis[j].matrix()).trace().real();
                CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
            }
    }
}

TEST_CASE("canonical ordering and coordinates") {
    const CanonicalBasis b(3);
    CHECK(b.sym_index(0, 1) == 3);
    CHECK(b.anti_index(0, 1) == 4);
    CHECK(b.sym_index(0, 2) == 5);
    CHECK(b.sym_index(1, 2) == 7);

    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = Complex(1.0, 2.0);
    m(1, 0) = Complex(1.0, -2.0);
    m(1, 1) = 3.0;
    const RVector x = to_coords(HermitianMatrix(m));
    CHECK(x(0) == doctest::Approx(0.0));
    CHECK(x(1) == doctest::Approx(3.0));
    CHECK(x(2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(x(3) == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("coordinates round-trip and preserve the HS inner product") {
    testing::Rng rng(7);
    for (std::size_t d : {2u, 3u, 5u}) {
        const HermitianMatrix a = testing::random_hermitian(rng, d);
        const HermitianMatrix b = testing::random_hermitian(rng, d);
        CHECK(max_abs_diff(from_coords(to_coords(a), d), a) <= 1e-13);
        CHECK(to_coords(a).dot(to_coords(b)) == doctest::Approx(hs_inner(a, b)).epsilon(1e-12));
    }
    CHECK(dim_from_coord_count(16) == 4);
    CHECK(code_of([] { (void)dim_from_coord_count(15); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("partial transpose against an index oracle") {
    testing::Rng rng(11);
    const std::size_t da = 2, db = 3;
    const HermitianMatrix a = testing::random_hermitian(rng, da * db);
    const HermitianMatrix pt = partial_transpose(a, da, db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    CHECK(std::abs(pt(i * db + j, k * db + l) - a(i * db + l, k * db + j)) <= 1e-15);
    CHECK(max_abs_diff(partial_transpose(pt, da, db), a) == 0.0);
}

TEST_CASE("eigenvalues against the 2x2 closed form") {
    CMatrix m(2, 2);
    m << 2.0, Complex(1.0, 1.0), Complex(1.0, -1.0), -1.0;
    const RVector ev = eigenvalues(HermitianMatrix(m));
    // (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2)
    const double mid = 0.5, rad = std::sqrt(2.25 + 2.0);
    CHECK(ev(0) == doctest::Approx(mid - rad));
    CHECK(ev(1) == doctest::Approx(mid + rad));
    CHECK_FALSE(is_psd(HermitianMatrix(m)));
    CHECK(is_psd(HermitianMatrix::identity(3)));
}

TEST_CASE("conjugation and transpose") {
    testing::Rng rng(3);
    const CMatrix u = testing::random_unitary(rng, 3);
    const HermitianMatrix a = testing::random_hermitian(rng, 3);
    const HermitianMatrix c = conjugate(u, a);
    CHECK((c.matrix() - u * a.matrix() * u.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((transpose(a).matrix() - a.matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
}
