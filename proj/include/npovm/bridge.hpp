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
 * Correspondence between N-POVMs and post-selected POVMs.
 *
 * Forward direction: an N-POVM presented as N_i = sum_k f_i^(k)(S_i^(k)) with
 * PSD S and linear f is reproduced, on the states fixed by every f^dagger,
 * by the POVM M_i = S_i / c, M_reject = 1 - sum_i S_i / c (c the largest
 * eigenvalue of sum S) followed by post-selection on the non-reject
 * outcomes.
 *
 * Inverse direction: a POVM whose reject probability equals 1/c0 on a
 * subspace K of states behaves, after post-selection, like the N-POVM
 * N_i = (c0 M_i + (c0 M_reject - 1) / |I|) / (c0 - 1) on K.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npovm/measurement.hpp"
#include "npovm/supermap.hpp"

namespace npovm {

struct DecompositionTerm {
    SuperMap map;
    HermitianMatrix s;
};

struct OutcomeTerms {
    std::string label;
    std::vector<DecompositionTerm> terms;
};

/// Presentation N_i = sum_k f_i^(k)(S_i^(k)). Construction checks that every
/// S is PSD (1e-10) and that the induced effects sum to the identity (1e-9).
class Decomposition {
  public:
    explicit Decomposition(std::vector<OutcomeTerms> outcomes);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<OutcomeTerms> &outcomes() const noexcept { return outcomes_; }
    /// The N-POVM (or POVM) the presentation induces.
    [[nodiscard]] Measurement induced_measurement() const;
    [[nodiscard]] std::vector<SuperMap> maps() const;

  private:
    std::size_t dim_ = 0;
    std::vector<OutcomeTerms> outcomes_;
};

struct ImplementationDomain {
    Subspace subspace;
    double tol = 1e-9;
    bool contains_identity = false;

    [[nodiscard]] std::size_t dim() const noexcept { return subspace.size(); }
};

struct PostSelectedPOVM {
    Measurement povm;
    std::string reject_label;
    double c = 1.0;
    /// Number of eigenvalues of sum S tied with the maximum (within 1e-10).
    std::size_t c_multiplicity = 1;

    [[nodiscard]] double acceptance() const noexcept { return 1.0 / c; }
};

struct ImplementationReport {
    double max_ratio_error = 0.0;
    double lemma1_constancy_spread = 0.0;
    double acceptance = 0.0;
    std::size_t samples_used = 0;
    bool informativeness = false;
};

/// Default label of the reject outcome; a trailing '_' is appended until it
/// does not clash with an existing label.
inline constexpr const char *kDefaultRejectLabel = "reject";

PostSelectedPOVM construct_povm(const Decomposition &dec,
                                std::optional<std::string> reject_label = std::nullopt);

ImplementationDomain implementation_domain(const Decomposition &dec, double tol = 1e-9);

/// Max over states and outcomes of |Tr(rho N_i) - Tr(rho M_i) / sum_j Tr(rho M_j)|,
/// with the sum over the non-reject outcomes of the POVM. Outcomes are
/// matched by label.
struct RatioCheck {
    double max_ratio_error = 0.0;
    double min_accept = 0.0;
    double max_accept = 0.0;
    double mean_accept = 0.0;
};
RatioCheck ratio_check(const Measurement &npovm, const Measurement &povm,
                       const std::string &reject_label, std::span<const DensityMatrix> states);

/// Informativeness on a sample: every pair of distinct states is told
/// apart by at least one effect.
bool samples_informative(const Measurement &npovm, std::span<const DensityMatrix> states,
                         double tol = 1e-12);

ImplementationReport verify_implementation(const Measurement &npovm, const PostSelectedPOVM &ps,
                                           const ImplementationDomain &dom,
                                           std::size_t n_samples, std::uint64_t seed,
                                           double tol = 1e-9);

struct AcceptanceBound {
    double acc = 0.0;
    double bound = 0.0;
    bool trace_preserving = false;
    bool satisfied = false;
};

/// Acc = 1/c against 1/d; only asserted when every map preserves the trace.
AcceptanceBound acceptance_bound_check(const Decomposition &dec, const PostSelectedPOVM &ps);

struct C1C2Report {
    bool c1 = false;
    bool c2 = false;
    double eps_max = 0.0;
};

/// C1: the given d pure states are pairwise orthogonal and lie in the quantum
/// domain. C2: some ball around 1/d lies in the quantum domain; eps_max is
/// the largest such radius, capped at 1/sqrt(d(d-1)).
C1C2Report check_c1_c2(const Measurement &npovm, std::span<const DensityMatrix> pure_states);

struct OrthogonalPipelineResult {
    Decomposition decomposition;
    ImplementationDomain domain;
    PostSelectedPOVM povm;
    std::size_t dim_prime_upper = 0;
    std::size_t offdiag_span_dim = 0;
    bool dim_bound_ok = false;
    bool acc_bound_ok = false;
    std::vector<double> deltas;
};

/**
 * Builds an implementation from d orthogonal pure states in the quantum
 * domain plus a ball around 1/d (conditions C1/C2).
 *
 * Works in the basis of the pure states. Each effect splits into its
 * diagonal part D_i and off-diagonal part O_i. With V_i = O_i / |O_i|, the
 * largest delta in (0, smallest nonzero diagonal entry of D_i] that keeps
 * D_i + delta V_i PSD is found by 16 bisection steps; S_i = D_i + delta V_i
 * and f_i scales the V_i direction by |O_i| / delta, fixing everything else.
 */
OrthogonalPipelineResult appendix_e_pipeline(const Measurement &npovm,
                                    std::span<const DensityMatrix> pure_states,
                                    std::optional<std::string> reject_label = std::nullopt);

struct ConditionIReport {
    double projection_norm = 0.0;
    bool holds = false;
    /// Spread of Tr(rho M_reject) over sampled domain states, when states
    /// could be sampled.
    std::optional<double> reject_prob_spread;
    std::optional<double> reject_prob_max_deviation; // from 1/c0
};

/// Projects c0 M_reject - 1 onto K and compares its norm with tol. States are
/// sampled around 1/d when K contains it; otherwise the caller may pass
/// domain states explicitly.
ConditionIReport check_condition_i(const Measurement &m, const std::string &reject_label,
                                   const Subspace &k, double c0, double tol = 1e-9,
                                   std::span<const DensityMatrix> states = {},
                                   std::uint64_t seed = 42);

/// 1 / Tr(M_reject / d) when 1/d lies in K; nullopt otherwise.
std::optional<double> infer_c0(const Measurement &m, const std::string &reject_label,
                               const Subspace &k);

/// c0 = c/(c-1) for a forward construction with c > 1.
double c0_from_c(double c);

/**
 * N_i = (c0 M_i + (c0 M_reject - 1) / |I|) / (c0 - 1) for every non-reject
 * outcome, in the POVM's order. Throws DegenerateC0 for c0 <= 1 and
 * ConditionIFailed when the projection exceeds tol or a c0 inferred from
 * 1/d in K disagrees with the supplied one by more than 1e-8.
 */
Measurement invert_postselection(const Measurement &m, const std::string &reject_label,
                                 const Subspace &k, double c0, double tol = 1e-9);

} // namespace npovm
