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
 * Measurement families (POVM and N-POVM), domain membership, outcome
 * probabilities, domain-state sampling and Monte Carlo post-selection.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npovm/hermitian.hpp"
#include "npovm/supermap.hpp"

namespace npovm {

struct Outcome {
    std::string label;
    HermitianMatrix effect;
};

/// Ordered family of Hermitian effects summing to the identity.
class Measurement {
  public:
    explicit Measurement(std::vector<Outcome> outcomes, double sum_tol = 1e-10);

    [[nodiscard]] std::size_t dim() const noexcept { return outcomes_.front().effect.dim(); }
    [[nodiscard]] std::size_t size() const noexcept { return outcomes_.size(); }
    [[nodiscard]] const std::vector<Outcome> &outcomes() const noexcept { return outcomes_; }
    [[nodiscard]] const Outcome &operator[](std::size_t i) const { return outcomes_.at(i); }

    [[nodiscard]] std::optional<std::size_t> find(const std::string &label) const;
    /// Throws UnknownLabel.
    [[nodiscard]] std::size_t index_of(const std::string &label) const;
    [[nodiscard]] const HermitianMatrix &effect(const std::string &label) const {
        return outcomes_[index_of(label)].effect;
    }
    [[nodiscard]] std::vector<std::string> labels() const;

  private:
    std::vector<Outcome> outcomes_;
};

struct MeasurementClass {
    enum class Kind { POVM, NPOVM };
    Kind kind = Kind::POVM;
    /// For N-POVMs: the first non-PSD effect and its smallest eigenvalue.
    std::optional<std::size_t> witness_index;
    double witness_min_eig = 0.0;

    [[nodiscard]] bool is_povm() const noexcept { return kind == Kind::POVM; }
};

MeasurementClass classify(const Measurement &m, double tol = kPsdTol);

/// True iff Tr(rho N_i) >= -tol for every effect.
bool in_quantum_domain(const DensityMatrix &rho, const Measurement &m, double tol = 1e-9);

/// Raw Tr(rho effect_i), no clipping or checks beyond dimensions.
std::vector<double> raw_probabilities(const HermitianMatrix &rho, const Measurement &m);

/// p_i = Tr(rho effect_i). Values in [-1e-9, 0) are clipped to zero; anything
/// lower raises NegativeProbability.
std::vector<double> outcome_probabilities(const DensityMatrix &rho, const Measurement &m);

struct DomainSample {
    std::vector<DensityMatrix> states;
    Subspace subspace;
    double jitter = 0.0; // the jitter actually used after any halvings
};

inline constexpr double kDefaultJitter = 0.05;

/**
 * Density matrices normalize(1/d + eps X) with X a random traceless element of
 * the subspace. The subspace must contain 1/d. On rejection-budget
 * exhaustion the jitter is halved, at most six times.
 */
DomainSample sample_domain_states(const Subspace &subspace, std::size_t count,
                                  std::uint64_t seed, double jitter = kDefaultJitter);

/// Random convex mixtures of the given states (the generators themselves come
/// first). Used when the domain does not contain the maximally mixed state.
std::vector<DensityMatrix> sample_convex_states(std::span<const DensityMatrix> generators,
                                                std::size_t count, std::uint64_t seed);

struct SimulationResult {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t accepted = 0;
    double acceptance_rate = 0.0;
    /// Kept outcomes in measurement order, with conditional frequencies.
    std::vector<std::pair<std::string, double>> conditional_freqs;
    std::vector<std::pair<std::string, std::uint64_t>> counts;
};

/// Samples outcomes of a POVM, discards the rejected label and reports the
/// conditional frequencies of the rest. Deterministic for a given seed.
SimulationResult simulate_postselected(const Measurement &m, const std::string &reject_label,
                                       const DensityMatrix &rho, std::uint64_t shots,
                                       std::uint64_t seed);

} // namespace npovm
