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
#include "npovm/bridge.hpp"
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

HermitianMatrix proj(std::size_t d, std::size_t j) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0;
    return HermitianMatrix(m);
}

Subspace gamma_space() {
    const std::vector<SuperMap> maps{pt::gamma()};
    return common_fixed_subspace(maps, 4);
}

} // namespace

TEST_CASE("decomposition validation") {
    CMatrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK(code_of([&] {
              Decomposition d({{"a", {{SuperMap::identity(2), HermitianMatrix(neg)}}}});
          }) == ErrorCode::InvariantViolation);
    CHECK(code_of([&] {
              Decomposition d({{"a", {{SuperMap::identity(2), proj(2, 0)}}}});
          }) == ErrorCode::InvariantViolation);
    const Decomposition ok({{"a", {{SuperMap::identity(2), proj(2, 0)}}},
                            {"b", {{SuperMap::transpose(2), proj(2, 1)}}}});
    CHECK(ok.induced_measurement().size() == 2);
}

TEST_CASE("construct_povm on the partial-transpose example") {
    const Decomposition dec = pt::decomposition();
    const PostSelectedPOVM ps = construct_povm(dec, std::string(pt::kRejectLabel));
    CHECK(ps.c == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ps.c_multiplicity == 2);
    CHECK(max_abs_diff(ps.povm.effect("0"), pt::m0()) <= 1e-12);
    CHECK(max_abs_diff(ps.povm.effect("1"), pt::m1()) <= 1e-12);
    CHECK(max_abs_diff(ps.povm.effect("2"), pt::m2()) <= 1e-12);
    CHECK(ps.acceptance() == doctest::Approx(0.5));

    const PostSelectedPOVM dflt = construct_povm(dec);
    CHECK(dflt.reject_label == "reject");
    const Decomposition clash({{"reject", {{SuperMap::identity(2), proj(2, 0)}}},
                               {"b", {{SuperMap::identity(2), proj(2, 1)}}}});
    CHECK(construct_povm(clash).reject_label == "reject_");
    CHECK(code_of([&] { (void)construct_povm(clash, std::string("b")); }) == ErrorCode::InvalidInput);
}

TEST_CASE("implementation domain and verification on the example") {
    const Decomposition dec = pt::decomposition();
    const PostSelectedPOVM ps = construct_povm(dec, std::string(pt::kRejectLabel));
    const ImplementationDomain dom = implementation_domain(dec);
    CHECK(dom.dim() == 12);
    CHECK(dom.contains_identity);
    CHECK(dom.subspace.contains(pt::rho0().matrix()));
    CHECK(dom.subspace.contains(pt::rho1().matrix()));
    const ImplementationReport rep = verify_implementation(pt::npovm(), ps, dom, 200, 42);
    CHECK(rep.max_ratio_error <= 1e-9);
    CHECK(rep.lemma1_constancy_spread <= 1e-10);
    CHECK(rep.acceptance == doctest::Approx(0.5));
    CHECK(rep.samples_used == 200);
    CHECK(rep.informativeness);
}

TEST_CASE("acceptance bound and its hypothesis") {
    const Decomposition dec = pt::decomposition();
    const auto b = acceptance_bound_check(dec, construct_povm(dec));
    CHECK(b.trace_preserving);
    CHECK(b.satisfied);
    CHECK(b.bound == doctest::Approx(0.25));

    // Non-trace-preserving scaling: c = 3, acceptance 1/3 below 1/d = 1/2.
    const SuperMap third = SuperMap::scaling(2, 1.0 / 3.0);
    const Decomposition scaled({{"a", {{third, proj(2, 0) * 3.0}}}, {"b", {{third, proj(2, 1) * 3.0}}}});
    const PostSelectedPOVM ps = construct_povm(scaled);
    CHECK(ps.c == doctest::Approx(3.0));
    const auto sb = acceptance_bound_check(scaled, ps);
    CHECK_FALSE(sb.trace_preserving);
    CHECK(sb.acc < sb.bound);
    CHECK(sb.satisfied);

    const SuperMap twice = SuperMap::scaling(2, 2.0);
    const Decomposition doubled({{"a", {{twice, proj(2, 0) * 0.5}}}, {"b", {{twice, proj(2, 1) * 0.5}}}});
    CHECK(construct_povm(doubled).c == doctest::Approx(0.5));
    CHECK(implementation_domain(doubled).dim() == 0);
}

TEST_CASE("C1/C2 on the example") {
    const auto basis = testing::computational_basis(4);
    const C1C2Report r = check_c1_c2(pt::npovm(), basis);
    CHECK(r.c1);
    CHECK(r.c2);
    CHECK(r.eps_max == doctest::Approx(1.0 / std::sqrt(12.0)));
    CHECK(code_of([&] {
              std::vector<DensityMatrix> three(basis.begin(), basis.begin() + 3);
              (void)check_c1_c2(pt::npovm(), three);
          }) == ErrorCode::InvalidInput);
}

TEST_CASE("constructive pipeline") {
    SUBCASE("the swap example has no feasible diagonal step") {
        // N_0 has zero diagonal entries exactly where its off-diagonal part lives.
        CHECK(code_of([] { (void)appendix_e_pipeline(pt::npovm(), testing::computational_basis(4)); }) ==
              ErrorCode::NBarInfeasible);
    }
    SUBCASE("witness family with positive diagonals") {
        testing::Rng rng(21);
        const Measurement n = testing::pt_witness_npovm(rng);
        const OrthogonalPipelineResult res = appendix_e_pipeline(n, testing::computational_basis(4));
        CHECK(res.dim_bound_ok);
        CHECK(res.acc_bound_ok);
        CHECK(res.domain.contains_identity);
        const ImplementationReport rep = verify_implementation(n, res.povm, res.domain, 100, 7);
        CHECK(rep.max_ratio_error <= 1e-9);
        for (const double d : res.deltas) CHECK(d > 0.0);
    }
    SUBCASE("negative diagonal entry") {
        CMatrix m = CMatrix::Identity(2, 2) * 0.5;
        m(0, 0) = -0.1;
        m(0, 1) = m(1, 0) = 0.2;
        const HermitianMatrix n0(m);
        const Measurement n({{"0", n0}, {"1", HermitianMatrix::identity(2) - n0}});
        CHECK(code_of([&] { (void)appendix_e_pipeline(n, testing::computational_basis(2)); }) ==
              ErrorCode::Lemma2Violation);
    }
    SUBCASE("non-orthogonal states fail C1") {
        CVector plus(2);
        plus << 1.0, 1.0;
        std::vector<DensityMatrix> states{testing::computational_basis(2)[0], DensityMatrix::pure(plus)};
        const Measurement n({{"0", proj(2, 0)}, {"1", proj(2, 1)}});
        CHECK(code_of([&] { (void)appendix_e_pipeline(n, states); }) == ErrorCode::PreconditionFailed);
    }
}

TEST_CASE("constant reject condition and inversion on the example") {
    const Measurement m = pt::povm();
    const Subspace k = gamma_space();
    CHECK(c0_from_c(2.0) == doctest::Approx(2.0));
    CHECK(c0_from_c(3.0) == doctest::Approx(1.5));
    CHECK(code_of([] { (void)c0_from_c(1.0); }) == ErrorCode::DegenerateC0);

    const auto inferred = infer_c0(m, pt::kRejectLabel, k);
    REQUIRE(inferred);
    CHECK(*inferred == doctest::Approx(2.0));

    const ConditionIReport ok = check_condition_i(m, pt::kRejectLabel, k, 2.0);
    CHECK(ok.holds);
    CHECK(ok.projection_norm <= 1e-9);
    REQUIRE(ok.reject_prob_spread);
    CHECK(*ok.reject_prob_spread <= 1e-10);

    CHECK_FALSE(check_condition_i(m, pt::kRejectLabel, k, 3.0).holds);
    CHECK(code_of([&] { (void)invert_postselection(m, pt::kRejectLabel, k, 3.0); }) ==
          ErrorCode::ConditionIFailed);
    CHECK(code_of([&] { (void)invert_postselection(m, pt::kRejectLabel, k, 1.0); }) ==
          ErrorCode::DegenerateC0);

    const Measurement n = invert_postselection(m, pt::kRejectLabel, k, 2.0);
    CHECK_FALSE(classify(n).is_povm());
    const auto states = sample_domain_states(k, 100, 5).states;
    for (const auto &rho : states) {
        const auto p = raw_probabilities(rho.matrix(), n);
        const auto q = raw_probabilities(rho.matrix(), pt::npovm());
        CHECK(std::abs(p[0] - q[0]) <= 1e-9);
        CHECK(std::abs(p[1] - q[1]) <= 1e-9);
    }

    const double eps = 1e-3;
    const Measurement perturbed({{"0", pt::m0() * (1.0 - eps)},
                                 {"1", pt::m1()},
                                 {"2", pt::m2() + pt::m0() * eps}});
    CHECK(check_condition_i(perturbed, "2", k, 2.0).projection_norm >= 5e-4);
}

TEST_CASE("informativeness detects indistinguishable samples") {
    const Measurement flat({{"a", HermitianMatrix::identity(2) * 0.5}, {"b", HermitianMatrix::identity(2) * 0.5}});
    const auto basis = testing::computational_basis(2);
    CHECK_FALSE(samples_informative(flat, basis));
    const Measurement sharp({{"a", proj(2, 0)}, {"b", proj(2, 1)}});
    CHECK(samples_informative(sharp, basis));
}

TEST_CASE("ratio check rejects states that are always rejected") {
    const Measurement povm({{"a", proj(2, 0)}, {"reject", proj(2, 1)}});
    const Measurement n({{"a", HermitianMatrix::identity(2)}});
    const std::vector<DensityMatrix> states{testing::computational_basis(2)[1]};
    CHECK(code_of([&] { (void)ratio_check(n, povm, "reject", states); }) == ErrorCode::AllOutcomesRejected);
}
