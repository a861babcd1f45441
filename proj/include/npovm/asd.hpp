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
 * Ambiguous state discrimination of linearly independent pure states.
 *
 * The measurement {c_j |v_j><v_j|} plus M_0 = 1 - sum_j c_j |v_j><v_j|, with
 * v_j biorthogonal to the family, never confuses two family members; M_0 is
 * the inconclusive outcome. Group-covariant families are built from a
 * representation split into irreducible blocks.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npovm/bridge.hpp"

namespace npovm {

/// n <= d linearly independent unit vectors in C^d.
class PureStateFamily {
  public:
    explicit PureStateFamily(std::vector<CVector> states);

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(states_.front().size());
    }
    [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
    [[nodiscard]] const std::vector<CVector> &states() const noexcept { return states_; }
    [[nodiscard]] const CVector &operator[](std::size_t j) const { return states_.at(j); }
    [[nodiscard]] std::vector<DensityMatrix> density_matrices() const;

  private:
    std::vector<CVector> states_;
};

struct DualBasis {
    std::vector<CVector> vectors;
};

/// <phi_j|psi_k> = delta_jk, phi_j inside the span of the family. For n = d
/// these are the rows of the inverse of the column matrix of the family.
DualBasis dual_basis(const PureStateFamily &family);

/// max_{j,k} |<v_j|psi_k> - delta_jk|.
double biorthogonality_error(std::span<const CVector> vectors, const PureStateFamily &family);

inline constexpr const char *kInconclusiveLabel = "reject";

/// Outcome labels "0", "1", ... followed by kInconclusiveLabel for M_0.
/// Throws OperatorInequalityViolated when M_0 has an eigenvalue below -1e-10.
Measurement asd_measurement(std::span<const CVector> vectors, std::span<const double> c);
Measurement asd_measurement(const DualBasis &dual, std::span<const double> c);

/// 1 / lambda_max(sum_j |v_j><v_j|).
double max_uniform_c(std::span<const CVector> vectors);
double max_uniform_c(const DualBasis &dual);

struct DiscriminationCheck {
    /// max_k |1 - P(outcome k | accepted, psi_k)|.
    double max_conditional_error = 0.0;
    std::vector<double> acceptance;
    double acceptance_spread = 0.0;
};

DiscriminationCheck check_discrimination(const Measurement &asd, const PureStateFamily &family);

/// Abelian group of order k: characters(g, l) is chi_l(g), rows are group
/// elements, columns irreducible representations.
class CommutativeGroupRep {
  public:
    CommutativeGroupRep(CMatrix characters, std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t order() const noexcept {
        return static_cast<std::size_t>(characters_.rows());
    }
    [[nodiscard]] const CMatrix &characters() const noexcept { return characters_; }
    [[nodiscard]] const std::vector<Complex> &amplitudes() const noexcept { return amplitudes_; }
    /// min_l |f_l|^-2.
    [[nodiscard]] double shortcut_c() const;

  private:
    CMatrix characters_;
    std::vector<Complex> amplitudes_;
};

struct IrrepBlock {
    std::vector<CMatrix> rep; // unitary d_l x d_l matrix per group element
    CMatrix multiplicity;     // F_l

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(multiplicity.rows());
    }
};

/**
 * Finite group G given by its multiplication table, with every irreducible
 * representation and a multiplicity matrix F_l per block. The Hilbert space
 * is the direct sum of C^{d_l} (x) C^{d_l}; the group acts on the first
 * factor.
 */
class BlockGroupRep {
  public:
    BlockGroupRep(std::vector<std::vector<std::size_t>> table, std::vector<IrrepBlock> blocks);
    static BlockGroupRep from_commutative(const CommutativeGroupRep &rep);

    [[nodiscard]] std::size_t order() const noexcept { return table_.size(); }
    [[nodiscard]] std::size_t identity_index() const noexcept { return identity_; }
    [[nodiscard]] const std::vector<std::vector<std::size_t>> &table() const noexcept {
        return table_;
    }
    [[nodiscard]] const std::vector<IrrepBlock> &blocks() const noexcept { return blocks_; }
    /// p_l = d_l^2 / |G|.
    [[nodiscard]] double weight(std::size_t l) const;
    [[nodiscard]] std::size_t hilbert_dim() const;
    /// f(g) on the whole space.
    [[nodiscard]] CMatrix action(std::size_t g) const;

  private:
    std::vector<std::vector<std::size_t>> table_;
    std::vector<IrrepBlock> blocks_;
    std::size_t identity_ = 0;
};

/// Discrimination of `family` by the vectors `vectors` with a uniform c.
struct AsdInstance {
    PureStateFamily family;
    std::vector<CVector> vectors;
    double c = 0.0;
    Measurement povm;
    DiscriminationCheck check;
};

struct CovariantInstance {
    std::size_t identity_index = 0;
    CVector psi;
    /// Dual generator with <phi|f(g)|psi> = delta_{g,e}; t = 1.
    CVector phi;
    std::vector<CVector> psi_orbit;
    std::vector<CVector> phi_orbit;
    /// sum_l (p_l / d_l) Tr (F_l^dagger)^-1 F_l^-1, equal to |phi|^2.
    double t_inv = 0.0;
    /// 1 / max_l lambda_max(F_l F_l^dagger): uniform c for the psi orbit used
    /// as measurement vectors.
    double c_psi = 0.0;
    /// 1 / max_l lambda_max((F_l^dagger)^-1 F_l^-1): uniform c for the phi
    /// orbit used as measurement vectors.
    double c_phi = 0.0;
    double biorthogonality_error = 0.0;
    /// Discriminates the normalized phi orbit; M_0 built from the psi orbit.
    AsdInstance psi_measured;
    /// Discriminates the psi orbit; M_0 built from the phi orbit.
    AsdInstance phi_measured;
    /// min_l |f_l|^-2 for commutative input.
    std::optional<double> shortcut_c;
};

/// Throws SingularMultiplicityBlock when some F_l has a singular value at or
/// below 1e-9, InvariantViolation when the built orbit breaks duality or
/// acceptance covariance.
CovariantInstance covariant_family(const BlockGroupRep &rep);
CovariantInstance covariant_family(const CommutativeGroupRep &rep);

struct AsdNpovm {
    Measurement povm;
    Measurement npovm;
    ImplementationDomain domain;
    double c0 = 0.0;
    ConditionIReport condition;
    /// max_{j,k} |Tr(rho_j N_k) - delta_jk|.
    double max_delta_error = 0.0;
};

/**
 * N-POVM that discriminates the family perfectly on span{|psi_j><psi_j|}.
 * Acceptance c_j |<v_j|psi_j>|^2 must be the same for every j
 * (ConditionIFailed otherwise); c0 = 1 / (1 - acceptance) and DegenerateC0
 * when nothing is rejected.
 */
AsdNpovm asd_to_npovm(const PureStateFamily &family, std::span<const CVector> vectors,
                      std::span<const double> c);

} // namespace npovm
