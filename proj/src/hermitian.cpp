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

#include "npovm/hermitian.hpp"

#include <cmath>
#include <sstream>

namespace npovm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::NotMeasurement: return "NotMeasurement";
    case ErrorCode::NotPOVM: return "NotPOVM";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::AnchorOutsideSubspace: return "AnchorOutsideSubspace";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::AllShotsRejected: return "AllShotsRejected";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::DegenerateDecomposition: return "DegenerateDecomposition";
    case ErrorCode::AllOutcomesRejected: return "AllOutcomesRejected";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Lemma2Violation: return "Lemma2Violation";
    case ErrorCode::NBarInfeasible: return "NBarInfeasible";
    case ErrorCode::ConditionIFailed: return "ConditionIFailed";
    case ErrorCode::DegenerateC0: return "DegenerateC0";
    case ErrorCode::NearSingularFamily: return "NearSingularFamily";
    case ErrorCode::OperatorInequalityViolated: return "OperatorInequalityViolated";
    case ErrorCode::SingularMultiplicityBlock: return "SingularMultiplicityBlock";
    }
    return "Unknown";
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2 = 1.41421356237309504880;

void require_same_dim(const HermitianMatrix &a, const HermitianMatrix &b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
        fail(ErrorCode::DimensionMismatch, os.str());
    }
}

} // namespace

HermitianMatrix::HermitianMatrix(CMatrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
        fail(ErrorCode::DimensionMismatch, "Hermitian matrix must be square with dim >= 1");
    }
    const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kHermiticityTol)) {
        std::ostringstream os;
        os << "matrix is not Hermitian (asymmetry " << asym << ")";
        fail(ErrorCode::NotHermitian, os.str());
    }
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return HermitianMatrix(CMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::outer(const CVector &v) {
    return from_computed(v * v.adjoint());
}

HermitianMatrix HermitianMatrix::from_computed(const CMatrix &entries) {
    return HermitianMatrix(CMatrix(0.5 * (entries + entries.adjoint())));
}

HermitianMatrix &HermitianMatrix::operator+=(const HermitianMatrix &other) {
    require_same_dim(*this, other);
    m_ += other.m_;
    return *this;
}

HermitianMatrix &HermitianMatrix::operator-=(const HermitianMatrix &other) {
    require_same_dim(*this, other);
    m_ -= other.m_;
    return *this;
}

HermitianMatrix &HermitianMatrix::operator*=(double s) {
    m_ *= s;
    return *this;
}

DensityMatrix::DensityMatrix(HermitianMatrix m, double psd_tol) : m_(std::move(m)) {
    const double tr = m_.trace();
    if (std::abs(tr - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "density matrix must have unit trace (trace " << tr << ")";
        fail(ErrorCode::NotDensityMatrix, os.str());
    }
    const double lo = eig_extrema(m_).min;
    if (lo < -psd_tol) {
        std::ostringstream os;
        os << "density matrix must be positive semi-definite (min eigenvalue " << lo << ")";
        fail(ErrorCode::NotDensityMatrix, os.str());
    }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(HermitianMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::pure(const CVector &v) {
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) {
        fail(ErrorCode::InvalidInput, "pure state from zero vector");
    }
    return DensityMatrix(HermitianMatrix::outer(v) * (1.0 / n2));
}

double hs_inner(const HermitianMatrix &a, const HermitianMatrix &b) {
    require_same_dim(a, b);
    // Tr(AB) = sum_jk A_jk B_kj = sum_jk A_jk conj(B_jk) for Hermitian B.
    return (a.matrix().cwiseProduct(b.matrix().conjugate())).sum().real();
}

RVector eigenvalues(const HermitianMatrix &a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

EigExtrema eig_extrema(const HermitianMatrix &a) {
    const RVector ev = eigenvalues(a);
    return {ev(0), ev(ev.size() - 1)};
}

bool is_psd(const HermitianMatrix &a, double tol) {
    if (tol < 0.0) {
        fail(ErrorCode::InvalidInput, "PSD tolerance must be non-negative");
    }
    return eig_extrema(a).min >= -tol;
}

double max_abs_diff(const HermitianMatrix &a, const HermitianMatrix &b) {
    require_same_dim(a, b);
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

HermitianMatrix partial_transpose(const HermitianMatrix &a, std::size_t dim_a,
                                  std::size_t dim_b) {
    if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != a.dim()) {
        std::ostringstream os;
        os << "partial transpose: " << dim_a << " x " << dim_b << " does not factor dim "
           << a.dim();
        fail(ErrorCode::DimensionMismatch, os.str());
    }
    const auto da = static_cast<Eigen::Index>(dim_a);
    const auto db = static_cast<Eigen::Index>(dim_b);
    CMatrix out(a.matrix().rows(), a.matrix().cols());
    for (Eigen::Index ia = 0; ia < da; ++ia)
        for (Eigen::Index ja = 0; ja < da; ++ja)
            for (Eigen::Index ib = 0; ib < db; ++ib)
                for (Eigen::Index jb = 0; jb < db; ++jb)
                    out(ia * db + ib, ja * db + jb) = a.matrix()(ia * db + jb, ja * db + ib);
    return HermitianMatrix(std::move(out));
}

HermitianMatrix transpose(const HermitianMatrix &a) {
    return HermitianMatrix(CMatrix(a.matrix().transpose()));
}

HermitianMatrix conjugate(const CMatrix &unitary, const HermitianMatrix &a) {
    if (unitary.rows() != static_cast<Eigen::Index>(a.dim()) || unitary.cols() != unitary.rows()) {
        fail(ErrorCode::DimensionMismatch, "conjugation: unitary dimension mismatch");
    }
    return HermitianMatrix::from_computed(unitary * a.matrix() * unitary.adjoint());
}

CanonicalBasis::CanonicalBasis(std::size_t dim) : dim_(dim) {
    if (dim == 0) {
        fail(ErrorCode::DimensionMismatch, "canonical basis needs dim >= 1");
    }
}

std::size_t CanonicalBasis::sym_index(std::size_t j, std::size_t k) const {
    // Pairs (j, k), j < k, enumerated lexicographically.
    const std::size_t pos = j * dim_ - j * (j + 1) / 2 + (k - j - 1);
    return dim_ + 2 * pos;
}

HermitianMatrix CanonicalBasis::element(std::size_t index) const {
    if (index >= size()) {
        fail(ErrorCode::InvalidInput, "canonical basis index out of range");
    }
    RVector e = RVector::Zero(static_cast<Eigen::Index>(size()));
    e(static_cast<Eigen::Index>(index)) = 1.0;
    return from_coords(e, dim_);
}

std::vector<HermitianMatrix> CanonicalBasis::elements() const {
    std::vector<HermitianMatrix> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(element(i));
    return out;
}

RVector to_coords(const HermitianMatrix &a) {
    const std::size_t d = a.dim();
    const CanonicalBasis basis(d);
    RVector x(static_cast<Eigen::Index>(d * d));
    const CMatrix &m = a.matrix();
    for (std::size_t j = 0; j < d; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        x(jj) = m(jj, jj).real();
        for (std::size_t k = j + 1; k < d; ++k) {
            const auto kk = static_cast<Eigen::Index>(k);
            const auto s = static_cast<Eigen::Index>(basis.sym_index(j, k));
            x(s) = kSqrt2 * m(jj, kk).real();
            x(s + 1) = kSqrt2 * m(jj, kk).imag();
        }
    }
    return x;
}

RVector to_coords(const HermitianMatrix &a, const CanonicalBasis &basis) {
    if (a.dim() != basis.dim()) {
        fail(ErrorCode::DimensionMismatch, "to_coords: basis dimension mismatch");
    }
    return to_coords(a);
}

HermitianMatrix from_coords(const RVector &coords, std::size_t dim) {
    if (static_cast<std::size_t>(coords.size()) != dim * dim) {
        fail(ErrorCode::DimensionMismatch, "from_coords: expected d^2 coordinates");
    }
    const CanonicalBasis basis(dim);
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix m = CMatrix::Zero(n, n);
    for (std::size_t j = 0; j < dim; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        m(jj, jj) = coords(jj);
        for (std::size_t k = j + 1; k < dim; ++k) {
            const auto kk = static_cast<Eigen::Index>(k);
            const auto s = static_cast<Eigen::Index>(basis.sym_index(j, k));
            const Complex z(kInvSqrt2 * coords(s), kInvSqrt2 * coords(s + 1));
            m(jj, kk) = z;
            m(kk, jj) = std::conj(z);
        }
    }
    return HermitianMatrix(std::move(m));
}

HermitianMatrix from_coords(const RVector &coords, const CanonicalBasis &basis) {
    return from_coords(coords, basis.dim());
}

std::size_t dim_from_coord_count(std::size_t n) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d == 0 || d * d != n) {
        fail(ErrorCode::DimensionMismatch, "coordinate count is not a perfect square");
    }
    return d;
}

} // namespace npovm
