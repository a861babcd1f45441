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
 * Dense Hermitian matrices, density matrices and coordinates in the
 * canonical real orthonormal basis of Her(C^d).
 */

#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "npovm/error.hpp"

namespace npovm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/**
 * A d x d complex Hermitian matrix.
 *
 * Construction symmetrizes (A + A^dagger)/2 when the asymmetry is below
 * kHermiticityTol and rejects the input otherwise.
 */
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(CMatrix entries);

    static HermitianMatrix identity(std::size_t dim);
    static HermitianMatrix zero(std::size_t dim);
    /// Rank-one projector |v><v| (v is not normalized).
    static HermitianMatrix outer(const CVector &v);
    /// Builds from a matrix that is Hermitian up to rounding of a computation
    /// (products such as U A U^dagger); always symmetrizes, never rejects.
    static HermitianMatrix from_computed(const CMatrix &entries);

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    [[nodiscard]] double trace() const { return m_.trace().real(); }
    [[nodiscard]] double hs_norm() const { return m_.norm(); }

    HermitianMatrix &operator+=(const HermitianMatrix &other);
    HermitianMatrix &operator-=(const HermitianMatrix &other);
    HermitianMatrix &operator*=(double s);

    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix &b) {
        return a += b;
    }
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix &b) {
        return a -= b;
    }
    friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
    friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

  private:
    CMatrix m_;
};

/// Positive semi-definite, unit-trace Hermitian matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianMatrix m, double psd_tol = kPsdTol);

    static DensityMatrix maximally_mixed(std::size_t dim);
    /// |v><v| / <v|v>.
    static DensityMatrix pure(const CVector &v);

    [[nodiscard]] const HermitianMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.dim(); }

  private:
    HermitianMatrix m_;
};

struct EigExtrema {
    double min;
    double max;
};

/// Tr(a b).
double hs_inner(const HermitianMatrix &a, const HermitianMatrix &b);
/// Ascending eigenvalues.
RVector eigenvalues(const HermitianMatrix &a);
EigExtrema eig_extrema(const HermitianMatrix &a);
bool is_psd(const HermitianMatrix &a, double tol = kPsdTol);
/// Largest entrywise modulus of a - b.
double max_abs_diff(const HermitianMatrix &a, const HermitianMatrix &b);

/// Transposes each dB x dB block of a matrix on C^dA (x) C^dB.
HermitianMatrix partial_transpose(const HermitianMatrix &a, std::size_t dim_a,
                                  std::size_t dim_b);
HermitianMatrix transpose(const HermitianMatrix &a);
/// U a U^dagger.
HermitianMatrix conjugate(const CMatrix &unitary, const HermitianMatrix &a);

/**
 * Canonical orthonormal basis of Her(C^d) under Tr(A B).
 *
 * Order: the d diagonal projectors E_j, then for each pair j < k
 * (lexicographic) the symmetric element (E_jk + E_kj)/sqrt(2) followed by
 * the antisymmetric element i(E_jk - E_kj)/sqrt(2).
 */
class CanonicalBasis {
  public:
    explicit CanonicalBasis(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return dim_ * dim_; }
    [[nodiscard]] HermitianMatrix element(std::size_t index) const;
    [[nodiscard]] std::vector<HermitianMatrix> elements() const;

    /// Coordinate of the diagonal projector E_j.
    [[nodiscard]] std::size_t diag_index(std::size_t j) const { return j; }
    /// Coordinate of the symmetric element for j < k.
    [[nodiscard]] std::size_t sym_index(std::size_t j, std::size_t k) const;
    /// Coordinate of the antisymmetric element for j < k.
    [[nodiscard]] std::size_t anti_index(std::size_t j, std::size_t k) const {
        return sym_index(j, k) + 1;
    }

  private:
    std::size_t dim_;
};

/// Coordinates of a in the canonical basis of its dimension.
RVector to_coords(const HermitianMatrix &a);
RVector to_coords(const HermitianMatrix &a, const CanonicalBasis &basis);
HermitianMatrix from_coords(const RVector &coords, std::size_t dim);
HermitianMatrix from_coords(const RVector &coords, const CanonicalBasis &basis);

/// Integer d with d*d == n; throws DimensionMismatch otherwise.
std::size_t dim_from_coord_count(std::size_t n);

} // namespace npovm
