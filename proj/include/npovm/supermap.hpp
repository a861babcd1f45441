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
 * Real-linear maps on Her(C^d), stored as d^2 x d^2 real matrices acting on
 * canonical coordinates, and subspaces of Her(C^d).
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npovm/hermitian.hpp"

namespace npovm {

/// Name of a map generated analytically; kept so files stay readable.
struct BuiltinTag {
    enum class Kind { Identity, Transpose, PartialTranspose, UnitaryConjugation };
    Kind kind = Kind::Identity;
    std::size_t dim_a = 0; // partial transpose factors
    std::size_t dim_b = 0;
    CMatrix unitary;       // unitary conjugation

    [[nodiscard]] std::string name() const;
};

class SuperMap {
  public:
    /// Takes ownership of a d^2 x d^2 action matrix.
    explicit SuperMap(RMatrix action, std::optional<BuiltinTag> tag = std::nullopt);

    static SuperMap identity(std::size_t dim);
    static SuperMap transpose(std::size_t dim);
    static SuperMap partial_transpose(std::size_t dim_a, std::size_t dim_b);
    /// X -> U X U^dagger; U must be unitary within 1e-10.
    static SuperMap unitary_conjugation(const CMatrix &unitary);
    /// X -> s X.
    static SuperMap scaling(std::size_t dim, double s);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const RMatrix &action() const noexcept { return action_; }
    [[nodiscard]] const std::optional<BuiltinTag> &tag() const noexcept { return tag_; }

  private:
    std::size_t dim_;
    RMatrix action_;
    std::optional<BuiltinTag> tag_;
};

HermitianMatrix apply(const SuperMap &f, const HermitianMatrix &x);
/// Map with Tr(f(X) Y) = Tr(X f^dagger(Y)); the transposed action matrix.
SuperMap adjoint(const SuperMap &f);
/// (f o g)(X) = f(g(X)).
SuperMap compose(const SuperMap &f, const SuperMap &g);
bool is_trace_preserving(const SuperMap &f, double tol = 1e-10);
/// Largest entry difference of the action matrices.
double action_distance(const SuperMap &f, const SuperMap &g);

/// Linear subspace of Her(C^d) with an HS-orthonormal basis, stored as the
/// columns of a d^2 x k coordinate matrix.
class Subspace {
  public:
    Subspace(std::size_t dim, RMatrix ortho_coords);

    static Subspace full(std::size_t dim);
    static Subspace zero(std::size_t dim);
    /// Orthonormalized span of the generators (rank cutoff relative to the
    /// largest singular value).
    static Subspace span(std::size_t dim, std::span<const HermitianMatrix> generators,
                         double rel_cutoff = 1e-9);

    [[nodiscard]] std::size_t ambient_dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(q_.cols());
    }
    [[nodiscard]] const RMatrix &coords() const noexcept { return q_; }
    [[nodiscard]] std::vector<HermitianMatrix> basis() const;

    /// HS-orthogonal projection onto the subspace.
    [[nodiscard]] HermitianMatrix project(const HermitianMatrix &x) const;
    /// HS norm of x minus its projection.
    [[nodiscard]] double residual(const HermitianMatrix &x) const;
    [[nodiscard]] bool contains(const HermitianMatrix &x, double tol = 1e-9) const {
        return residual(x) <= tol;
    }
    [[nodiscard]] bool contains_identity(double tol = 1e-9) const;

  private:
    std::size_t dim_;
    RMatrix q_;
};

/// Orthonormal basis of the intersection over f of ker(f^dagger - id), via
/// the SVD null space of the stacked coordinate matrices. The cutoff is
/// relative to the largest singular value.
Subspace common_fixed_subspace(std::span<const SuperMap> maps, std::size_t dim,
                               double rel_cutoff = 1e-9);

} // namespace npovm
