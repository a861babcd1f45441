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
#include "npovm/measurement.hpp"
#include "npovm/pt_example.hpp"

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

TEST_CASE("measurement validation") {
    const auto id = HermitianMatrix::identity(2);
    CHECK(code_of([] { Measurement m({}); }) == ErrorCode::NotMeasurement);
    CHECK(code_of([&] { Measurement m({{"a", id * 0.5}, {"a", id * 0.5}}); }) == ErrorCode::NotMeasurement);
    CHECK(code_of([&] { Measurement m({{"a", id * 0.5}, {"b", id * 0.4}}); }) == ErrorCode::NotMeasurement);
    const Measurement m({{"a", id * 0.5}, {"b", id * 0.5}});
    CHECK(m.index_of("b") == 1);
    CHECK(code_of([&] { (void)m.index_of("zz"); }) == ErrorCode::UnknownLabel);
}

TEST_CASE("classification of the partial-transpose example") {
    const auto n = classify(pt::npovm());
    CHECK_FALSE(n.is_povm());
    REQUIRE(n.witness_index);
    CHECK(*n.witness_index == 0);
    CHECK(n.witness_min_eig == doctest::Approx(-1.0));
    CHECK(classify(pt::povm()).is_povm());
    CHECK(classify(Measurement({{"only", HermitianMatrix::identity(3)}})).is_povm());
}

TEST_CASE("quantum domain and outcome probabilities") {
    const Measurement n = pt::npovm();
    CHECK(in_quantum_domain(pt::rho0(), n));
    CHECK(in_quantum_domain(pt::rho1(), n));
    const auto mixed = outcome_probabilities(DensityMatrix::maximally_mixed(4), n);
    CHECK(mixed[0] == doctest::Approx(0.5));  // Tr N0 / 4 = 2/4
    CHECK(mixed[1] == doctest::Approx(0.5));

    const auto p0 = outcome_probabilities(pt::rho0(), n);
    CHECK(p0[0] == doctest::Approx(1.0));
    CHECK(p0[1] == doctest::Approx(0.0));
    const auto p1 = outcome_probabilities(pt::rho1(), pt::povm());
    CHECK(p1[0] == doctest::Approx(0.0));
    CHECK(p1[1] == doctest::Approx(0.5));
    CHECK(p1[2] == doctest::Approx(0.5));

    CVector singlet = CVector::Zero(4);
    singlet(1) = 1.0;
    singlet(2) = -1.0;
    const DensityMatrix s = DensityMatrix::pure(singlet);
    CHECK_FALSE(in_quantum_domain(s, n));
    CHECK(code_of([&] { (void)outcome_probabilities(s, n); }) == ErrorCode::NegativeProbability);
}

TEST_CASE("domain sampling stays in the Gamma-fixed space") {
    const std::vector<SuperMap> maps{pt::gamma()};
    const Subspace k = common_fixed_subspace(maps, 4);
    const DomainSample sample = sample_domain_states(k, 20, 42);
    REQUIRE(sample.states.size() == 20);
    for (const auto &rho : sample.states) {
        CHECK(max_abs_diff(apply(pt::gamma(), rho.matrix()), rho.matrix()) <= 1e-9);
        CHECK(rho.matrix().trace() == doctest::Approx(1.0));
    }
    const DomainSample again = sample_domain_states(k, 20, 42);
    for (std::size_t i = 0; i < 20; ++i)
        CHECK(max_abs_diff(sample.states[i].matrix(), again.states[i].matrix()) == 0.0);

    std::vector<HermitianMatrix> gens{pt::rho0().matrix()};
    CHECK(code_of([&] { (void)sample_domain_states(Subspace::span(4, gens), 3, 1); }) ==
          ErrorCode::AnchorOutsideSubspace);
}

TEST_CASE("convex sampling keeps generators first") {
    std::vector<DensityMatrix> gens{pt::rho0(), pt::rho1()};
    const auto states = sample_convex_states(gens, 10, 3);
    REQUIRE(states.size() == 10);
    CHECK(max_abs_diff(states[1].matrix(), pt::rho1().matrix()) == 0.0);
}

TEST_CASE("post-selection simulation") {
    const Measurement m = pt::povm();
    const auto r = simulate_postselected(m, pt::kRejectLabel, pt::rho0(), 100000, 42);
    const double sigma = std::sqrt(0.25 / 100000.0);
    CHECK(std::abs(r.acceptance_rate - 0.5) <= 4 * sigma);
    CHECK(r.conditional_freqs[0].second == 1.0);
    const auto r2 = simulate_postselected(m, pt::kRejectLabel, pt::rho0(), 100000, 42);
    CHECK(r2.accepted == r.accepted);

    CHECK(code_of([&] { (void)simulate_postselected(pt::npovm(), "1", pt::rho0(), 10, 1); }) ==
          ErrorCode::NotPOVM);
    CHECK(code_of([&] { (void)simulate_postselected(m, pt::kRejectLabel, pt::rho0(), 0, 1); }) ==
          ErrorCode::AllShotsRejected);
    CHECK(code_of([&] { (void)simulate_postselected(m, "nope", pt::rho0(), 10, 1); }) ==
          ErrorCode::UnknownLabel);
}
