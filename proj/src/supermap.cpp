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

#include "npovm/supermap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace npovm {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

// Coordinate index and sign of the canonical element carrying matrix unit
// E_pq (p != q) after a permutation of basis states sends (p, q) to (r, s).
struct SignedIndex {
    std::size_t index;
    double sign;
};

SignedIndex offdiag_target(const CanonicalBasis &basis, std::size_t r, std::size_t s,
                           bool antisymmetric) {
    if (r < s) return {antisymmetric ? basis.anti_index(r, s) : basis.sym_index(r, s), 1.0};
    return {antisymmetric ? basis.anti_index(s, r) : basis.sym_index(s, r),
            antisymmetric ? -1.0 : 1.0};
}

RMatrix null_space(const RMatrix &stacked, Index n, double rel_cutoff) {
    if (stacked.rows() == 0) return RMatrix::Identity(n, n);
    Eigen::JacobiSVD<RMatrix> svd(stacked, Eigen::ComputeFullV);
    const RVector &sv = svd.singularValues();
    // Floor the reference scale at 1 so rounding noise in an (almost)
    // identity map does not count as rank.
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double threshold = rel_cutoff * std::max(smax, 1.0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

} // namespace

std::string BuiltinTag::name() const {
    switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Transpose: return "transpose";
    case Kind::PartialTranspose: {
        std::ostringstream os;
        os << "partial_transpose(" << dim_a << "," << dim_b << ")";
        return os.str();
    }
    case Kind::UnitaryConjugation: return "unitary_conjugation";
    }
    return "unknown";
}

SuperMap::SuperMap(RMatrix action, std::optional<BuiltinTag> tag)
    : dim_(0), action_(std::move(action)), tag_(std::move(tag)) {
    if (action_.rows() != action_.cols()) {
        fail(ErrorCode::DimensionMismatch, "super-map action must be square");
    }
    dim_ = dim_from_coord_count(static_cast<std::size_t>(action_.rows()));
    if (!action_.allFinite()) {
        fail(ErrorCode::InvalidInput, "super-map action has non-finite entries");
    }
}

SuperMap SuperMap::identity(std::size_t dim) {
    const Index n = ix(dim * dim);
    return SuperMap(RMatrix::Identity(n, n), BuiltinTag{BuiltinTag::Kind::Identity});
}

SuperMap SuperMap::transpose(std::size_t dim) {
    const CanonicalBasis basis(dim);
    const Index n = ix(dim * dim);
    RMatrix a = RMatrix::Identity(n, n);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = j + 1; k < dim; ++k) {
            const Index t = ix(basis.anti_index(j, k));
            a(t, t) = -1.0;
        }
    return SuperMap(std::move(a), BuiltinTag{BuiltinTag::Kind::Transpose});
}

SuperMap SuperMap::partial_transpose(std::size_t dim_a, std::size_t dim_b) {
    if (dim_a == 0 || dim_b == 0) {
        fail(ErrorCode::DimensionMismatch, "partial transpose factors must be positive");
    }
    const std::size_t d = dim_a * dim_b;
    const CanonicalBasis basis(d);
    const Index n = ix(d * d);
    RMatrix a = RMatrix::Zero(n, n);
    // Matrix unit E_pq with p = (ia, ib), q = (ja, jb) goes to E_rs with
    // r = (ia, jb), s = (ja, ib).
    auto image = [&](std::size_t p, std::size_t q) {
        const std::size_t ia = p / dim_b, ib = p % dim_b;
        const std::size_t ja = q / dim_b, jb = q % dim_b;
        return std::pair{ia * dim_b + jb, ja * dim_b + ib};
    };
    for (std::size_t p = 0; p < d; ++p) {
        a(ix(p), ix(p)) = 1.0; // diagonal units are fixed
        for (std::size_t q = p + 1; q < d; ++q) {
            const auto [r, s] = image(p, q);
            const auto sym = offdiag_target(basis, r, s, false);
            const auto anti = offdiag_target(basis, r, s, true);
            a(ix(sym.index), ix(basis.sym_index(p, q))) = sym.sign;
            a(ix(anti.index), ix(basis.anti_index(p, q))) = anti.sign;
        }
    }
    BuiltinTag tag{BuiltinTag::Kind::PartialTranspose};
    tag.dim_a = dim_a;
    tag.dim_b = dim_b;
    return SuperMap(std::move(a), std::move(tag));
}

SuperMap SuperMap::unitary_conjugation(const CMatrix &unitary) {
    if (unitary.rows() != unitary.cols() || unitary.rows() < 1) {
        fail(ErrorCode::DimensionMismatch, "unitary must be square");
    }
    const Index d = unitary.rows();
    const double dev =
        (unitary.adjoint() * unitary - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        std::ostringstream os;
        os << "matrix is not unitary (deviation " << dev << ")";
        fail(ErrorCode::InvalidInput, os.str());
    }
    const auto dim = static_cast<std::size_t>(d);
    const CanonicalBasis basis(dim);
    const Index n = d * d;
    RMatrix a(n, n);
    for (Index c = 0; c < n; ++c)
        a.col(c) = to_coords(conjugate(unitary, basis.element(static_cast<std::size_t>(c))));
    BuiltinTag tag{BuiltinTag::Kind::UnitaryConjugation};
    tag.unitary = unitary;
    return SuperMap(std::move(a), std::move(tag));
}

SuperMap SuperMap::scaling(std::size_t dim, double s) {
    const Index n = ix(dim * dim);
    return SuperMap(RMatrix(s * RMatrix::Identity(n, n)));
}

HermitianMatrix apply(const SuperMap &f, const HermitianMatrix &x) {
    if (f.dim() != x.dim()) {
        fail(ErrorCode::DimensionMismatch, "apply: map and matrix dimensions differ");
    }
    // A real action on real coordinates always yields a Hermitian matrix.
    return from_coords(RVector(f.action() * to_coords(x)), f.dim());
}

SuperMap adjoint(const SuperMap &f) {
    std::optional<BuiltinTag> tag = f.tag();
    if (tag && tag->kind == BuiltinTag::Kind::UnitaryConjugation) {
        tag->unitary = CMatrix(tag->unitary.adjoint());
    }
    return SuperMap(RMatrix(f.action().transpose()), std::move(tag));
}

SuperMap compose(const SuperMap &f, const SuperMap &g) {
    if (f.dim() != g.dim()) {
        fail(ErrorCode::DimensionMismatch, "compose: dimensions differ");
    }
    return SuperMap(RMatrix(f.action() * g.action()));
}

bool is_trace_preserving(const SuperMap &f, double tol) {
    // Tr X = sum of diagonal coordinates, so f preserves trace iff the
    // diagonal rows of the action sum to the trace functional.
    const std::size_t d = f.dim();
    const Index n = ix(d * d);
    RVector trace_functional = RVector::Zero(n);
    trace_functional.head(ix(d)).setOnes();
    const RVector image = f.action().transpose() * trace_functional;
    return (image - trace_functional).cwiseAbs().maxCoeff() <= tol;
}

double action_distance(const SuperMap &f, const SuperMap &g) {
    if (f.dim() != g.dim()) {
        fail(ErrorCode::DimensionMismatch, "action_distance: dimensions differ");
    }
    return (f.action() - g.action()).cwiseAbs().maxCoeff();
}

Subspace::Subspace(std::size_t dim, RMatrix ortho_coords) : dim_(dim), q_(std::move(ortho_coords)) {
    const Index n = ix(dim * dim);
    if (q_.rows() != n || q_.cols() > n) {
        fail(ErrorCode::DimensionMismatch, "subspace basis has wrong shape");
    }
    if (q_.cols() > 0) {
        const double dev =
            (q_.transpose() * q_ - RMatrix::Identity(q_.cols(), q_.cols())).cwiseAbs().maxCoeff();
        if (dev > 1e-10) {
            std::ostringstream os;
            os << "subspace basis is not orthonormal (Gram deviation " << dev << ")";
            fail(ErrorCode::InvalidInput, os.str());
        }
    }
}

Subspace Subspace::full(std::size_t dim) {
    const Index n = ix(dim * dim);
    return Subspace(dim, RMatrix::Identity(n, n));
}

Subspace Subspace::zero(std::size_t dim) {
    return Subspace(dim, RMatrix(ix(dim * dim), 0));
}

Subspace Subspace::span(std::size_t dim, std::span<const HermitianMatrix> generators,
                        double rel_cutoff) {
    const Index n = ix(dim * dim);
    if (generators.empty()) return zero(dim);
    RMatrix g(n, ix(generators.size()));
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].dim() != dim) {
            fail(ErrorCode::DimensionMismatch, "span: generator dimension mismatch");
        }
        g.col(ix(i)) = to_coords(generators[i]);
    }
    Eigen::JacobiSVD<RMatrix> svd(g, Eigen::ComputeThinU);
    const RVector &sv = svd.singularValues();
    Index rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > rel_cutoff * sv(0)) ++rank;
    }
    return Subspace(dim, svd.matrixU().leftCols(rank));
}

std::vector<HermitianMatrix> Subspace::basis() const {
    std::vector<HermitianMatrix> out;
    out.reserve(size());
    for (Index c = 0; c < q_.cols(); ++c) out.push_back(from_coords(RVector(q_.col(c)), dim_));
    return out;
}

HermitianMatrix Subspace::project(const HermitianMatrix &x) const {
    if (x.dim() != dim_) {
        fail(ErrorCode::DimensionMismatch, "project: dimension mismatch");
    }
    const RVector c = to_coords(x);
    return from_coords(RVector(q_ * (q_.transpose() * c)), dim_);
}

double Subspace::residual(const HermitianMatrix &x) const {
    if (x.dim() != dim_) {
        fail(ErrorCode::DimensionMismatch, "residual: dimension mismatch");
    }
    const RVector c = to_coords(x);
    return (c - q_ * (q_.transpose() * c)).norm();
}

bool Subspace::contains_identity(double tol) const {
    return contains(HermitianMatrix::identity(dim_) * (1.0 / static_cast<double>(dim_)), tol);
}

Subspace common_fixed_subspace(std::span<const SuperMap> maps, std::size_t dim,
                               double rel_cutoff) {
    const Index n = ix(dim * dim);
    RMatrix stacked(n * ix(maps.size()), n);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (maps[i].dim() != dim) {
            fail(ErrorCode::DimensionMismatch, "common_fixed_subspace: map dimension mismatch");
        }
        // Coordinates of f^dagger are the transposed action.
        stacked.middleRows(ix(i) * n, n) = maps[i].action().transpose() - RMatrix::Identity(n, n);
    }
    return Subspace(dim, null_space(stacked, n, rel_cutoff));
}

} // namespace npovm
