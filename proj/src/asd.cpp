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

#include "npovm/asd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace npovm {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t n) { return static_cast<Index>(n); }

CMatrix columns(std::span<const CVector> vs) {
    CMatrix m(vs.front().size(), ix(vs.size()));
    for (std::size_t j = 0; j < vs.size(); ++j) m.col(ix(j)) = vs[j];
    return m;
}

double min_singular_value(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues().minCoeff();
}

double lambda_max(const CMatrix &h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

bool is_unitary(const CMatrix &u, double tol) {
    return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

} // namespace

PureStateFamily::PureStateFamily(std::vector<CVector> states) : states_(std::move(states)) {
    if (states_.empty()) fail(ErrorCode::InvalidInput, "pure-state family is empty");
    const Index d = states_.front().size();
    if (d < 1) fail(ErrorCode::InvalidInput, "pure states need dimension >= 1");
    if (ix(states_.size()) > d) {
        fail(ErrorCode::NearSingularFamily, "more states than the dimension; family is dependent");
    }
    for (std::size_t j = 0; j < states_.size(); ++j) {
        if (states_[j].size() != d) fail(ErrorCode::DimensionMismatch, "pure states differ in dimension");
        const double norm = states_[j].norm();
        if (std::abs(norm - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "state " << j << " has norm " << norm << ", expected 1";
            fail(ErrorCode::InvalidInput, os.str());
        }
    }
    const double smin = min_singular_value(columns(states_));
    if (smin <= 1e-9) {
        std::ostringstream os;
        os << "family is nearly linearly dependent (min singular value " << smin << ")";
        fail(ErrorCode::NearSingularFamily, os.str());
    }
}

std::vector<DensityMatrix> PureStateFamily::density_matrices() const {
    std::vector<DensityMatrix> out;
    out.reserve(states_.size());
    for (const auto &v : states_) out.push_back(DensityMatrix::pure(v));
    return out;
}

DualBasis dual_basis(const PureStateFamily &family) {
    const CMatrix psi = columns(family.states());
    const CMatrix gram = psi.adjoint() * psi;
    const CMatrix phi = psi * gram.fullPivLu().inverse();
    DualBasis out;
    for (Index j = 0; j < phi.cols(); ++j) out.vectors.emplace_back(phi.col(j));
    const double err = biorthogonality_error(out.vectors, family);
    if (err > 1e-9) {
        std::ostringstream os;
        os << "dual basis is inaccurate (biorthogonality error " << err << ")";
        fail(ErrorCode::NearSingularFamily, os.str());
    }
    return out;
}

double biorthogonality_error(std::span<const CVector> vectors, const PureStateFamily &family) {
    if (vectors.size() != family.size()) {
        fail(ErrorCode::DimensionMismatch, "vector count differs from family size");
    }
    double err = 0.0;
    for (std::size_t j = 0; j < vectors.size(); ++j)
        for (std::size_t k = 0; k < family.size(); ++k) {
            const Complex ip = vectors[j].dot(family[k]);
            err = std::max(err, std::abs(ip - (j == k ? 1.0 : 0.0)));
        }
    return err;
}

Measurement asd_measurement(std::span<const CVector> vectors, std::span<const double> c) {
    if (vectors.empty()) fail(ErrorCode::InvalidInput, "no measurement vectors");
    if (c.size() != vectors.size()) {
        fail(ErrorCode::DimensionMismatch, "need one c_j per measurement vector");
    }
    const auto d = static_cast<std::size_t>(vectors.front().size());
    std::vector<Outcome> outcomes;
    HermitianMatrix m0 = HermitianMatrix::identity(d);
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (static_cast<std::size_t>(vectors[j].size()) != d) {
            fail(ErrorCode::DimensionMismatch, "measurement vectors differ in dimension");
        }
        if (!(c[j] > 0.0) || !std::isfinite(c[j])) {
            fail(ErrorCode::InvalidInput, "every c_j must be positive and finite");
        }
        HermitianMatrix e = HermitianMatrix::outer(vectors[j]) * c[j];
        m0 -= e;
        outcomes.push_back({std::to_string(j), std::move(e)});
    }
    const double lo = eig_extrema(m0).min;
    if (lo < -kPsdTol) {
        std::ostringstream os;
        os << "sum_j c_j |v_j><v_j| exceeds the identity (M_0 min eigenvalue " << lo << ")";
        fail(ErrorCode::OperatorInequalityViolated, os.str());
    }
    outcomes.push_back({kInconclusiveLabel, std::move(m0)});
    return Measurement(std::move(outcomes));
}

Measurement asd_measurement(const DualBasis &dual, std::span<const double> c) {
    return asd_measurement(std::span<const CVector>(dual.vectors), c);
}

double max_uniform_c(std::span<const CVector> vectors) {
    if (vectors.empty()) fail(ErrorCode::InvalidInput, "no measurement vectors");
    const CMatrix v = columns(vectors);
    return 1.0 / lambda_max(v * v.adjoint());
}

double max_uniform_c(const DualBasis &dual) { return max_uniform_c(std::span<const CVector>(dual.vectors)); }

DiscriminationCheck check_discrimination(const Measurement &asd, const PureStateFamily &family) {
    const std::size_t reject = asd.index_of(kInconclusiveLabel);
    if (asd.size() != family.size() + 1) {
        fail(ErrorCode::DimensionMismatch, "measurement and family sizes do not match");
    }
    DiscriminationCheck out;
    const auto rhos = family.density_matrices();
    for (std::size_t k = 0; k < rhos.size(); ++k) {
        const auto p = raw_probabilities(rhos[k].matrix(), asd);
        double accept = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j)
            if (j != reject) accept += p[j];
        if (!(accept > 1e-15)) fail(ErrorCode::AllOutcomesRejected, "a family state is never accepted");
        const std::size_t idx = asd.index_of(std::to_string(k));
        out.max_conditional_error = std::max(out.max_conditional_error, std::abs(1.0 - p[idx] / accept));
        out.acceptance.push_back(accept);
    }
    const auto [lo, hi] = std::minmax_element(out.acceptance.begin(), out.acceptance.end());
    out.acceptance_spread = *hi - *lo;
    return out;
}

CommutativeGroupRep::CommutativeGroupRep(CMatrix characters, std::vector<Complex> amplitudes)
    : characters_(std::move(characters)), amplitudes_(std::move(amplitudes)) {
    const Index k = characters_.rows();
    if (k < 1 || characters_.cols() != k) {
        fail(ErrorCode::InvalidInput, "character table must be k x k");
    }
    if (ix(amplitudes_.size()) != k) fail(ErrorCode::InvalidInput, "need one amplitude per irrep");
    if ((characters_.cwiseAbs().array() - 1.0).abs().maxCoeff() > 1e-10) {
        fail(ErrorCode::InvalidInput, "characters must have modulus 1");
    }
    auto find_row = [&](const Eigen::RowVectorXcd &r) -> std::optional<Index> {
        for (Index g = 0; g < k; ++g)
            if ((characters_.row(g) - r).cwiseAbs().maxCoeff() <= 1e-9) return g;
        return std::nullopt;
    };
    if (!find_row(Eigen::RowVectorXcd::Ones(k))) {
        fail(ErrorCode::InvalidInput, "character table has no identity row");
    }
    for (Index g = 0; g < k; ++g) {
        for (Index h = 0; h < g; ++h)
            if ((characters_.row(g) - characters_.row(h)).cwiseAbs().maxCoeff() <= 1e-9) {
                fail(ErrorCode::InvalidInput, "character table has repeated rows");
            }
        for (Index h = 0; h < k; ++h)
            if (!find_row(characters_.row(g).cwiseProduct(characters_.row(h)))) {
                fail(ErrorCode::InvalidInput, "character rows are not closed under multiplication");
            }
    }
    const CMatrix ortho = characters_.adjoint() * characters_ / static_cast<double>(k);
    if ((ortho - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-9) {
        fail(ErrorCode::InvalidInput, "character columns are not orthonormal");
    }
    double norm = 0.0;
    for (const auto &f : amplitudes_) norm += std::norm(f);
    norm /= static_cast<double>(k);
    if (std::abs(norm - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "amplitudes give (1/k) sum |f_l|^2 = " << norm << ", expected 1";
        fail(ErrorCode::InvalidInput, os.str());
    }
}

double CommutativeGroupRep::shortcut_c() const {
    double hi = 0.0;
    for (const auto &f : amplitudes_) hi = std::max(hi, std::norm(f));
    return 1.0 / hi;
}

BlockGroupRep::BlockGroupRep(std::vector<std::vector<std::size_t>> table,
                             std::vector<IrrepBlock> blocks)
    : table_(std::move(table)), blocks_(std::move(blocks)) {
    const std::size_t k = table_.size();
    if (k == 0) fail(ErrorCode::InvalidInput, "group table is empty");
    for (const auto &row : table_) {
        if (row.size() != k) fail(ErrorCode::InvalidInput, "group table must be square");
        std::vector<bool> seen(k, false);
        for (std::size_t v : row) {
            if (v >= k || seen[v]) fail(ErrorCode::InvalidInput, "group table rows must be permutations");
            seen[v] = true;
        }
    }
    bool found = false;
    for (std::size_t e = 0; e < k && !found; ++e) {
        found = true;
        for (std::size_t h = 0; h < k && found; ++h)
            found = table_[e][h] == h && table_[h][e] == h;
        if (found) identity_ = e;
    }
    if (!found) fail(ErrorCode::InvalidInput, "group table has no identity element");

    std::size_t total = 0;
    double norm = 0.0;
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        const auto &b = blocks_[l];
        const Index d = b.multiplicity.rows();
        if (d < 1 || b.multiplicity.cols() != d) {
            fail(ErrorCode::InvalidInput, "multiplicity matrix must be square");
        }
        if (b.rep.size() != k) fail(ErrorCode::InvalidInput, "need one rep matrix per group element");
        for (const auto &u : b.rep)
            if (u.rows() != d || u.cols() != d || !is_unitary(u, 1e-9)) {
                fail(ErrorCode::InvalidInput, "rep matrices must be unitary of the block size");
            }
        for (std::size_t g = 0; g < k; ++g)
            for (std::size_t h = 0; h < k; ++h)
                if ((b.rep[g] * b.rep[h] - b.rep[table_[g][h]]).cwiseAbs().maxCoeff() > 1e-9) {
                    std::ostringstream os;
                    os << "block " << l << " is not a homomorphism at (" << g << ", " << h << ")";
                    fail(ErrorCode::InvalidInput, os.str());
                }
        total += static_cast<std::size_t>(d * d);
        norm += weight(l) / static_cast<double>(d) *
                (b.multiplicity * b.multiplicity.adjoint()).trace().real();
    }
    if (total != k) {
        fail(ErrorCode::InvalidInput, "sum of squared block dimensions differs from the group order");
    }
    if (std::abs(norm - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "multiplicity blocks give |psi|^2 = " << norm << ", expected 1";
        fail(ErrorCode::InvalidInput, os.str());
    }
}

BlockGroupRep BlockGroupRep::from_commutative(const CommutativeGroupRep &rep) {
    const std::size_t k = rep.order();
    const CMatrix &chi = rep.characters();
    std::vector<std::vector<std::size_t>> table(k, std::vector<std::size_t>(k));
    for (std::size_t g = 0; g < k; ++g)
        for (std::size_t h = 0; h < k; ++h) {
            const Eigen::RowVectorXcd prod = chi.row(ix(g)).cwiseProduct(chi.row(ix(h)));
            for (std::size_t r = 0; r < k; ++r)
                if ((chi.row(ix(r)) - prod).cwiseAbs().maxCoeff() <= 1e-9) table[g][h] = r;
        }
    std::vector<IrrepBlock> blocks(k);
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t g = 0; g < k; ++g)
            blocks[l].rep.push_back(CMatrix::Constant(1, 1, chi(ix(g), ix(l))));
        blocks[l].multiplicity = CMatrix::Constant(1, 1, rep.amplitudes()[l]);
    }
    return BlockGroupRep(std::move(table), std::move(blocks));
}

double BlockGroupRep::weight(std::size_t l) const {
    const auto d = static_cast<double>(blocks_.at(l).dim());
    return d * d / static_cast<double>(order());
}

std::size_t BlockGroupRep::hilbert_dim() const {
    std::size_t n = 0;
    for (const auto &b : blocks_) n += b.dim() * b.dim();
    return n;
}

CMatrix BlockGroupRep::action(std::size_t g) const {
    const Index n = ix(hilbert_dim());
    CMatrix out = CMatrix::Zero(n, n);
    Index offset = 0;
    for (const auto &b : blocks_) {
        const Index d = ix(b.dim());
        const CMatrix &pi = b.rep.at(g);
        for (Index a = 0; a < d; ++a)
            for (Index a2 = 0; a2 < d; ++a2)
                for (Index m = 0; m < d; ++m) out(offset + a * d + m, offset + a2 * d + m) = pi(a, a2);
        offset += d * d;
    }
    return out;
}

namespace {

// sqrt(p_l) (1 (x) X_l) |phi_l>, |phi_l> = d_l^-1/2 sum_a |a>|a>.
CVector block_state(const BlockGroupRep &rep, const std::vector<CMatrix> &xs) {
    CVector v = CVector::Zero(ix(rep.hilbert_dim()));
    Index offset = 0;
    for (std::size_t l = 0; l < rep.blocks().size(); ++l) {
        const Index d = ix(rep.blocks()[l].dim());
        const double scale = std::sqrt(rep.weight(l) / static_cast<double>(d));
        for (Index a = 0; a < d; ++a)
            for (Index m = 0; m < d; ++m) v(offset + a * d + m) = scale * xs[l](m, a);
        offset += d * d;
    }
    return v;
}

AsdInstance make_instance(std::vector<CVector> family, std::vector<CVector> vectors) {
    for (auto &v : family) v.normalize();
    PureStateFamily fam(std::move(family));
    const double c = max_uniform_c(vectors);
    const std::vector<double> cs(vectors.size(), c);
    Measurement povm = asd_measurement(vectors, cs);
    DiscriminationCheck check = check_discrimination(povm, fam);
    return {std::move(fam), std::move(vectors), c, std::move(povm), std::move(check)};
}

} // namespace

CovariantInstance covariant_family(const BlockGroupRep &rep) {
    std::vector<CMatrix> fs, duals;
    double t_inv = 0.0, lam_psi = 0.0, lam_phi = 0.0;
    for (std::size_t l = 0; l < rep.blocks().size(); ++l) {
        const CMatrix &f = rep.blocks()[l].multiplicity;
        const double smin = min_singular_value(f);
        if (smin <= 1e-9) {
            std::ostringstream os;
            os << "multiplicity block " << l << " is singular (min singular value " << smin << ")";
            fail(ErrorCode::SingularMultiplicityBlock, os.str());
        }
        const CMatrix g = f.adjoint().inverse();
        const CMatrix gg = g * g.adjoint();
        t_inv += rep.weight(l) / static_cast<double>(rep.blocks()[l].dim()) * gg.trace().real();
        lam_psi = std::max(lam_psi, lambda_max(f * f.adjoint()));
        lam_phi = std::max(lam_phi, lambda_max(gg));
        fs.push_back(f);
        duals.push_back(g);
    }

    const CVector psi = block_state(rep, fs);
    const CVector phi = block_state(rep, duals);
    std::vector<CVector> psi_orbit, phi_orbit;
    for (std::size_t g = 0; g < rep.order(); ++g) {
        const CMatrix u = rep.action(g);
        psi_orbit.emplace_back(u * psi);
        phi_orbit.emplace_back(u * phi);
    }

    double bio = 0.0;
    for (std::size_t g = 0; g < rep.order(); ++g)
        for (std::size_t h = 0; h < rep.order(); ++h) {
            const Complex ip = phi_orbit[g].dot(psi_orbit[h]);
            bio = std::max(bio, std::abs(ip - (g == h ? 1.0 : 0.0)));
        }
    if (bio > 1e-9) {
        std::ostringstream os;
        os << "orbits are not biorthogonal (error " << bio << ")";
        fail(ErrorCode::InvariantViolation, os.str());
    }
    if (std::abs(phi.squaredNorm() - t_inv) > 1e-9) {
        fail(ErrorCode::InvariantViolation, "dual generator norm disagrees with the block formula");
    }

    AsdInstance psi_measured = make_instance(phi_orbit, psi_orbit);
    AsdInstance phi_measured = make_instance(psi_orbit, phi_orbit);
    for (const AsdInstance *inst : {&psi_measured, &phi_measured})
        if (inst->check.acceptance_spread > 1e-10) {
            std::ostringstream os;
            os << "acceptance varies over the orbit (spread " << inst->check.acceptance_spread << ")";
            fail(ErrorCode::InvariantViolation, os.str());
        }
    if (std::abs(psi_measured.c - 1.0 / lam_psi) > 1e-9 ||
        std::abs(phi_measured.c - 1.0 / lam_phi) > 1e-9) {
        fail(ErrorCode::InvariantViolation, "block formula for c disagrees with the orbit spectrum");
    }
    return CovariantInstance{.identity_index = rep.identity_index(),
                             .psi = psi,
                             .phi = phi,
                             .psi_orbit = std::move(psi_orbit),
                             .phi_orbit = std::move(phi_orbit),
                             .t_inv = t_inv,
                             .c_psi = 1.0 / lam_psi,
                             .c_phi = 1.0 / lam_phi,
                             .biorthogonality_error = bio,
                             .psi_measured = std::move(psi_measured),
                             .phi_measured = std::move(phi_measured),
                             .shortcut_c = std::nullopt};
}

CovariantInstance covariant_family(const CommutativeGroupRep &rep) {
    CovariantInstance out = covariant_family(BlockGroupRep::from_commutative(rep));
    out.shortcut_c = rep.shortcut_c();
    return out;
}

AsdNpovm asd_to_npovm(const PureStateFamily &family, std::span<const CVector> vectors,
                      std::span<const double> c) {
    const std::size_t n = family.size();
    if (vectors.size() != n || c.size() != n) {
        fail(ErrorCode::DimensionMismatch, "need one vector and one c_j per family state");
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (j != k && std::abs(vectors[j].dot(family[k])) > 1e-9) {
                fail(ErrorCode::InvalidInput, "measurement vectors are not biorthogonal to the family");
            }
    Measurement povm = asd_measurement(vectors, c);

    std::vector<double> acc(n);
    for (std::size_t j = 0; j < n; ++j) acc[j] = c[j] * std::norm(vectors[j].dot(family[j]));
    const auto [lo, hi] = std::minmax_element(acc.begin(), acc.end());
    if (*hi - *lo > 1e-10) {
        std::ostringstream os;
        os << "acceptance differs across the family (min " << *lo << ", max " << *hi
           << "); the conversion needs a uniform c";
        fail(ErrorCode::ConditionIFailed, os.str());
    }
    double mean = 0.0;
    for (double a : acc) mean += a;
    mean /= static_cast<double>(n);
    if (1.0 - mean <= 1e-12) {
        fail(ErrorCode::DegenerateC0, "every family state is accepted; post-selection is trivial");
    }
    const double c0 = 1.0 / (1.0 - mean);

    const auto rhos = family.density_matrices();
    std::vector<HermitianMatrix> gens;
    for (const auto &r : rhos) gens.push_back(r.matrix());
    Subspace k = Subspace::span(family.dim(), gens);
    ConditionIReport cond = check_condition_i(povm, kInconclusiveLabel, k, c0, 1e-9, rhos);
    Measurement npovm = invert_postselection(povm, kInconclusiveLabel, k, c0);

    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m) {
            const double p = hs_inner(rhos[j].matrix(), npovm[m].effect);
            err = std::max(err, std::abs(p - (j == m ? 1.0 : 0.0)));
        }
    if (err > 1e-9) {
        std::ostringstream os;
        os << "converted N-POVM does not discriminate the family (error " << err << ")";
        fail(ErrorCode::InvariantViolation, os.str());
    }
    const bool has_identity = k.contains_identity();
    return {std::move(povm), std::move(npovm), {std::move(k), 1e-9, has_identity}, c0,
            cond, err};
}

} // namespace npovm
