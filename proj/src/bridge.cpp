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

#include "npovm/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace npovm {

namespace {

using Index = Eigen::Index;

std::string pick_reject_label(const std::vector<OutcomeTerms> &outcomes,
                              std::optional<std::string> requested) {
    auto clashes = [&](const std::string &l) {
        return std::any_of(outcomes.begin(), outcomes.end(),
                           [&](const OutcomeTerms &o) { return o.label == l; });
    };
    if (requested) {
        if (clashes(*requested)) {
            fail(ErrorCode::InvalidInput,
                 "reject label '" + *requested + "' clashes with an outcome label");
        }
        return *requested;
    }
    std::string label = kDefaultRejectLabel;
    while (clashes(label)) label += '_';
    return label;
}

// Unit vectors carried by rank-one density matrices.
std::vector<CVector> pure_state_vectors(std::span<const DensityMatrix> states, std::size_t d) {
    if (states.size() != d) {
        std::ostringstream os;
        os << "expected " << d << " pure states, got " << states.size();
        fail(ErrorCode::InvalidInput, os.str());
    }
    std::vector<CVector> out;
    out.reserve(d);
    for (std::size_t j = 0; j < states.size(); ++j) {
        const auto &rho = states[j].matrix();
        if (rho.dim() != d) fail(ErrorCode::DimensionMismatch, "pure state dimension mismatch");
        const double purity = hs_inner(rho, rho);
        if (std::abs(purity - 1.0) > 1e-9) {
            std::ostringstream os;
            os << "state " << j << " is not pure (Tr rho^2 = " << purity << ")";
            fail(ErrorCode::InvalidInput, os.str());
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix());
        out.emplace_back(solver.eigenvectors().col(static_cast<Index>(d) - 1));
    }
    return out;
}

// Gram-Schmidt so the working basis is unitary to machine precision.
CMatrix orthonormal_columns(const std::vector<CVector> &vectors) {
    const auto d = static_cast<Index>(vectors.size());
    CMatrix u(d, d);
    for (Index j = 0; j < d; ++j) {
        CVector v = vectors[static_cast<std::size_t>(j)];
        for (int pass = 0; pass < 2; ++pass)
            for (Index i = 0; i < j; ++i) v -= u.col(i) * u.col(i).dot(v);
        u.col(j) = v.normalized();
    }
    return u;
}

double min_eig(const HermitianMatrix &h) { return eig_extrema(h).min; }

} // namespace

Decomposition::Decomposition(std::vector<OutcomeTerms> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        fail(ErrorCode::InvalidInput, "decomposition needs at least one outcome");
    }
    std::optional<std::size_t> dim;
    for (const auto &o : outcomes_)
        for (const auto &t : o.terms) {
            if (!dim) dim = t.s.dim();
            if (t.s.dim() != *dim || t.map.dim() != *dim) {
                fail(ErrorCode::DimensionMismatch, "decomposition terms have mixed dimensions");
            }
        }
    if (!dim) fail(ErrorCode::InvalidInput, "decomposition has no terms");
    dim_ = *dim;

    HermitianMatrix total = HermitianMatrix::zero(dim_);
    for (const auto &o : outcomes_) {
        for (std::size_t k = 0; k < o.terms.size(); ++k) {
            const double lo = min_eig(o.terms[k].s);
            if (lo < -kPsdTol) {
                std::ostringstream os;
                os << "S for outcome '" << o.label << "' term " << k
                   << " is not positive semi-definite (min eigenvalue " << lo << ")";
                fail(ErrorCode::InvariantViolation, os.str());
            }
            total += apply(o.terms[k].map, o.terms[k].s);
        }
    }
    const double residual = max_abs_diff(total, HermitianMatrix::identity(dim_));
    if (residual > 1e-9) {
        std::ostringstream os;
        os << "induced effects do not sum to the identity (max entry residual " << residual << ")";
        fail(ErrorCode::InvariantViolation, os.str());
    }
}

Measurement Decomposition::induced_measurement() const {
    std::vector<Outcome> out;
    out.reserve(outcomes_.size());
    for (const auto &o : outcomes_) {
        HermitianMatrix n = HermitianMatrix::zero(dim_);
        for (const auto &t : o.terms) n += apply(t.map, t.s);
        out.push_back({o.label, std::move(n)});
    }
    return Measurement(std::move(out), 1e-9);
}

std::vector<SuperMap> Decomposition::maps() const {
    std::vector<SuperMap> out;
    for (const auto &o : outcomes_)
        for (const auto &t : o.terms) out.push_back(t.map);
    return out;
}

PostSelectedPOVM construct_povm(const Decomposition &dec, std::optional<std::string> reject_label) {
    const std::size_t d = dec.dim();
    const std::string reject = pick_reject_label(dec.outcomes(), std::move(reject_label));

    std::vector<HermitianMatrix> sums;
    HermitianMatrix total = HermitianMatrix::zero(d);
    for (const auto &o : dec.outcomes()) {
        HermitianMatrix s = HermitianMatrix::zero(d);
        for (const auto &t : o.terms) s += t.s;
        total += s;
        sums.push_back(std::move(s));
    }
    const RVector ev = eigenvalues(total);
    const double c = ev(ev.size() - 1);
    if (!(c > 1e-12)) {
        fail(ErrorCode::DegenerateDecomposition,
             "sum of S has no positive eigenvalue; nothing to normalize");
    }
    std::size_t ties = 0;
    for (Index i = 0; i < ev.size(); ++i)
        if (c - ev(i) <= 1e-10) ++ties;

    std::vector<Outcome> outcomes;
    outcomes.reserve(sums.size() + 1);
    HermitianMatrix accepted = HermitianMatrix::zero(d);
    for (std::size_t i = 0; i < sums.size(); ++i) {
        HermitianMatrix m = sums[i] * (1.0 / c);
        accepted += m;
        outcomes.push_back({dec.outcomes()[i].label, std::move(m)});
    }
    outcomes.push_back({reject, HermitianMatrix::identity(d) - accepted});
    PostSelectedPOVM out{Measurement(std::move(outcomes)), reject, c, ties};
    const auto cls = classify(out.povm);
    if (!cls.is_povm()) {
        std::ostringstream os;
        os << "constructed measurement is not a POVM (effect " << *cls.witness_index
           << " min eigenvalue " << cls.witness_min_eig << ")";
        fail(ErrorCode::InvariantViolation, os.str());
    }
    return out;
}

ImplementationDomain implementation_domain(const Decomposition &dec, double tol) {
    const std::vector<SuperMap> maps = dec.maps();
    Subspace k = common_fixed_subspace(maps, dec.dim());
    const bool has_identity = k.contains_identity(tol);
    return {std::move(k), tol, has_identity};
}

RatioCheck ratio_check(const Measurement &npovm, const Measurement &povm,
                       const std::string &reject_label, std::span<const DensityMatrix> states) {
    if (npovm.dim() != povm.dim()) {
        fail(ErrorCode::DimensionMismatch, "N-POVM and POVM dimensions differ");
    }
    if (states.empty()) fail(ErrorCode::InvalidInput, "ratio check needs at least one state");
    const std::size_t reject = povm.index_of(reject_label);
    std::vector<std::size_t> match;
    for (const auto &o : npovm.outcomes()) {
        const std::size_t j = povm.index_of(o.label);
        if (j == reject) fail(ErrorCode::InvalidInput, "N-POVM outcome matches the reject label");
        match.push_back(j);
    }

    RatioCheck out;
    out.min_accept = std::numeric_limits<double>::infinity();
    out.max_accept = -std::numeric_limits<double>::infinity();
    double sum_accept = 0.0;
    for (const auto &rho : states) {
        const std::vector<double> pm = raw_probabilities(rho.matrix(), povm);
        const std::vector<double> pn = raw_probabilities(rho.matrix(), npovm);
        double accept = 0.0;
        for (std::size_t j = 0; j < pm.size(); ++j)
            if (j != reject) accept += pm[j];
        if (!(accept > 1e-12)) {
            fail(ErrorCode::AllOutcomesRejected,
                 "a domain state is rejected with certainty; ratio undefined");
        }
        for (std::size_t i = 0; i < pn.size(); ++i)
            out.max_ratio_error = std::max(out.max_ratio_error, std::abs(pn[i] - pm[match[i]] / accept));
        out.min_accept = std::min(out.min_accept, accept);
        out.max_accept = std::max(out.max_accept, accept);
        sum_accept += accept;
    }
    out.mean_accept = sum_accept / static_cast<double>(states.size());
    return out;
}

bool samples_informative(const Measurement &npovm, std::span<const DensityMatrix> states,
                         double tol) {
    std::vector<std::vector<double>> probs;
    probs.reserve(states.size());
    for (const auto &rho : states) probs.push_back(raw_probabilities(rho.matrix(), npovm));
    for (std::size_t a = 0; a < states.size(); ++a)
        for (std::size_t b = a + 1; b < states.size(); ++b) {
            if (max_abs_diff(states[a].matrix(), states[b].matrix()) <= 1e-12) continue;
            bool separated = false;
            for (std::size_t i = 0; i < probs[a].size() && !separated; ++i)
                separated = std::abs(probs[a][i] - probs[b][i]) > tol;
            if (!separated) return false;
        }
    return true;
}

ImplementationReport verify_implementation(const Measurement &npovm, const PostSelectedPOVM &ps,
                                           const ImplementationDomain &dom,
                                           std::size_t n_samples, std::uint64_t seed, double tol) {
    if (npovm.dim() != ps.povm.dim() || npovm.dim() != dom.subspace.ambient_dim()) {
        fail(ErrorCode::DimensionMismatch, "verify: dimensions differ");
    }
    (void)tol; // the report carries raw errors; callers compare against their tolerance
    const DomainSample sample = sample_domain_states(dom.subspace, n_samples, seed);
    const RatioCheck rc = ratio_check(npovm, ps.povm, ps.reject_label, sample.states);
    ImplementationReport out;
    out.max_ratio_error = rc.max_ratio_error;
    out.lemma1_constancy_spread = rc.max_accept - rc.min_accept;
    out.acceptance = rc.mean_accept;
    out.samples_used = sample.states.size();
    out.informativeness = samples_informative(npovm, sample.states);
    return out;
}

AcceptanceBound acceptance_bound_check(const Decomposition &dec, const PostSelectedPOVM &ps) {
    AcceptanceBound out;
    out.acc = ps.acceptance();
    out.bound = 1.0 / static_cast<double>(dec.dim());
    const auto maps = dec.maps();
    out.trace_preserving = std::all_of(maps.begin(), maps.end(),
                                       [](const SuperMap &f) { return is_trace_preserving(f); });
    out.satisfied = !out.trace_preserving || out.acc >= out.bound - 1e-12;
    return out;
}

C1C2Report check_c1_c2(const Measurement &npovm, std::span<const DensityMatrix> pure_states) {
    const std::size_t d = npovm.dim();
    (void)pure_state_vectors(pure_states, d); // count and purity checks

    C1C2Report out;
    out.c1 = true;
    for (std::size_t a = 0; a < pure_states.size() && out.c1; ++a) {
        out.c1 = in_quantum_domain(pure_states[a], npovm, 1e-9);
        for (std::size_t b = a + 1; b < pure_states.size() && out.c1; ++b)
            out.c1 = std::abs(hs_inner(pure_states[a].matrix(), pure_states[b].matrix())) <= 1e-9;
    }

    const double cap = d > 1 ? 1.0 / std::sqrt(static_cast<double>(d * (d - 1)))
                             : std::numeric_limits<double>::infinity();
    double eps = cap;
    const HermitianMatrix id = HermitianMatrix::identity(d);
    for (const auto &o : npovm.outcomes()) {
        const double centre = o.effect.trace() / static_cast<double>(d);
        const double spread = (o.effect - id * centre).hs_norm();
        if (spread > 1e-12) {
            eps = std::min(eps, centre / spread);
        } else if (centre < -1e-12) {
            eps = -std::numeric_limits<double>::infinity();
        }
    }
    out.eps_max = eps;
    out.c2 = eps > 1e-12;
    return out;
}

OrthogonalPipelineResult appendix_e_pipeline(const Measurement &npovm,
                                    std::span<const DensityMatrix> pure_states,
                                    std::optional<std::string> reject_label) {
    const std::size_t d = npovm.dim();
    const auto nd = static_cast<Index>(d);
    const std::vector<CVector> vectors = pure_state_vectors(pure_states, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b)
            if (std::abs(vectors[a].dot(vectors[b])) > 1e-9) {
                fail(ErrorCode::PreconditionFailed, "pure states are not pairwise orthogonal (C1)");
            }
    const CMatrix u = orthonormal_columns(vectors);
    const CMatrix u_dag = u.adjoint();

    // Effects in the working basis; diagonal entries must be non-negative and
    // not all zero for a non-zero effect.
    std::vector<HermitianMatrix> local;
    for (std::size_t i = 0; i < npovm.size(); ++i) {
        HermitianMatrix n = conjugate(u_dag, npovm[i].effect);
        const RVector diag = n.matrix().diagonal().real();
        const Index worst = [&] { Index w; diag.minCoeff(&w); return w; }();
        if (diag(worst) < -1e-10) {
            std::ostringstream os;
            os << "effect '" << npovm[i].label << "' has diagonal entry " << diag(worst)
               << " at position " << worst << " in the pure-state basis";
            fail(ErrorCode::Lemma2Violation, os.str());
        }
        if (diag.maxCoeff() <= 1e-12 && n.hs_norm() > 1e-12) {
            fail(ErrorCode::Lemma2Violation, "effect '" + npovm[i].label +
                                                 "' is non-zero but its diagonal vanishes");
        }
        local.push_back(std::move(n));
    }
    const C1C2Report pre = check_c1_c2(npovm, pure_states);
    if (!pre.c1 || !pre.c2) {
        std::ostringstream os;
        os << "conditions not met (c1 " << pre.c1 << ", c2 " << pre.c2 << ", eps_max "
           << pre.eps_max << ")";
        fail(ErrorCode::PreconditionFailed, os.str());
    }

    const SuperMap to_work = SuperMap::unitary_conjugation(u_dag);
    const SuperMap from_work = SuperMap::unitary_conjugation(u);

    std::vector<OutcomeTerms> terms;
    std::vector<double> deltas;
    std::vector<HermitianMatrix> offdiag_parts;
    for (std::size_t i = 0; i < local.size(); ++i) {
        const HermitianMatrix &n = local[i];
        const HermitianMatrix diag_part(CMatrix(n.matrix().diagonal().asDiagonal()));
        const HermitianMatrix off = n - diag_part;
        const double off_norm = off.hs_norm();

        SuperMap f_work = SuperMap::identity(d);
        HermitianMatrix s_work = diag_part;
        double delta = 0.0;
        if (off_norm > 1e-12) {
            offdiag_parts.push_back(off);
            const HermitianMatrix dir = off * (1.0 / off_norm);
            double delta_max = std::numeric_limits<double>::infinity();
            for (Index j = 0; j < nd; ++j) {
                const double v = diag_part.matrix()(j, j).real();
                if (v > 1e-12) delta_max = std::min(delta_max, v);
            }
            auto psd_at = [&](double t) { return min_eig(diag_part + dir * t) >= -1e-12; };
            if (psd_at(delta_max)) {
                delta = delta_max;
            } else {
                double lo = 0.0, hi = delta_max;
                for (int it = 0; it < 16; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (psd_at(mid) ? lo : hi) = mid;
                }
                delta = lo;
            }
            if (!(delta > 0.0)) {
                std::ostringstream os;
                os << "effect '" << npovm[i].label
                   << "': no step along its off-diagonal direction keeps the diagonal part "
                      "positive semi-definite (a zero diagonal entry meets off-diagonal support)";
                fail(ErrorCode::NBarInfeasible, os.str());
            }
            s_work = HermitianMatrix::from_computed((diag_part + dir * delta).matrix());
            const RVector v = to_coords(dir);
            RMatrix action = RMatrix::Identity(nd * nd, nd * nd);
            action += (off_norm / delta - 1.0) * v * v.transpose();
            f_work = SuperMap(std::move(action));
        }
        deltas.push_back(delta);

        SuperMap f = compose(from_work, compose(f_work, to_work));
        HermitianMatrix s = conjugate(u, s_work);
        std::vector<DecompositionTerm> t;
        t.push_back({std::move(f), std::move(s)});
        terms.push_back({npovm[i].label, std::move(t)});
    }

    const Subspace offdiag_span = Subspace::span(d, offdiag_parts);
    Decomposition dec(std::move(terms));
    ImplementationDomain dom = implementation_domain(dec);
    PostSelectedPOVM ps = construct_povm(dec, std::move(reject_label));

    OrthogonalPipelineResult out{std::move(dec), std::move(dom), std::move(ps)};
    out.offdiag_span_dim = offdiag_span.size();
    out.dim_prime_upper = d + out.offdiag_span_dim;
    out.dim_bound_ok = out.domain.dim() + 2 * out.dim_prime_upper >= d * d + d;
    out.acc_bound_ok = out.povm.acceptance() >= 1.0 / static_cast<double>(d) - 1e-12;
    out.deltas = std::move(deltas);
    return out;
}

ConditionIReport check_condition_i(const Measurement &m, const std::string &reject_label,
                                   const Subspace &k, double c0, double tol,
                                   std::span<const DensityMatrix> states, std::uint64_t seed) {
    if (!(c0 > 1.0) || !std::isfinite(c0)) {
        std::ostringstream os;
        os << "c0 = " << c0 << " leaves no rejection mass";
        fail(ErrorCode::DegenerateC0, os.str());
    }
    if (k.ambient_dim() != m.dim()) fail(ErrorCode::DimensionMismatch, "subspace dimension mismatch");
    const HermitianMatrix &reject = m.effect(reject_label);
    const HermitianMatrix target = reject * c0 - HermitianMatrix::identity(m.dim());

    ConditionIReport out;
    out.projection_norm = k.project(target).hs_norm();
    out.holds = out.projection_norm <= tol;

    std::vector<DensityMatrix> sampled;
    if (states.empty() && k.contains_identity()) {
        sampled = sample_domain_states(k, 64, seed).states;
        states = sampled;
    }
    if (!states.empty()) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo, dev = 0.0;
        for (const auto &rho : states) {
            const double p = hs_inner(rho.matrix(), reject);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
            dev = std::max(dev, std::abs(p - 1.0 / c0));
        }
        out.reject_prob_spread = hi - lo;
        out.reject_prob_max_deviation = dev;
    }
    return out;
}

std::optional<double> infer_c0(const Measurement &m, const std::string &reject_label,
                               const Subspace &k) {
    if (!k.contains_identity()) return std::nullopt;
    const double p = m.effect(reject_label).trace() / static_cast<double>(m.dim());
    if (!(p > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / p;
}

double c0_from_c(double c) {
    if (!(c > 1.0)) {
        fail(ErrorCode::DegenerateC0, "c <= 1: the construction has no reject mass");
    }
    return c / (c - 1.0);
}

Measurement invert_postselection(const Measurement &m, const std::string &reject_label,
                                 const Subspace &k, double c0, double tol) {
    if (!(c0 > 1.0) || !std::isfinite(c0)) {
        std::ostringstream os;
        os << "c0 = " << c0 << ": no rejection mass, post-selection is trivial";
        fail(ErrorCode::DegenerateC0, os.str());
    }
    const std::size_t reject = m.index_of(reject_label);
    if (m.size() < 2) fail(ErrorCode::InvalidInput, "need at least one non-reject outcome");

    const ConditionIReport cond = check_condition_i(m, reject_label, k, c0, tol);
    if (!cond.holds) {
        std::ostringstream os;
        os << "projection of c0 M_reject - 1 onto K has norm " << cond.projection_norm
           << " > " << tol;
        fail(ErrorCode::ConditionIFailed, os.str());
    }
    if (const auto inferred = infer_c0(m, reject_label, k);
        inferred && !(std::abs(*inferred - c0) <= 1e-8)) {
        std::ostringstream os;
        os << "supplied c0 = " << c0 << " disagrees with c0 = " << *inferred
           << " inferred from the maximally mixed state";
        fail(ErrorCode::ConditionIFailed, os.str());
    }

    const std::size_t d = m.dim();
    const double n_out = static_cast<double>(m.size() - 1);
    const HermitianMatrix shared =
        (m[reject].effect * c0 - HermitianMatrix::identity(d)) * (1.0 / n_out);
    std::vector<Outcome> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == reject) continue;
        out.push_back({m[i].label, (m[i].effect * c0 + shared) * (1.0 / (c0 - 1.0))});
    }
    return Measurement(std::move(out));
}

} // namespace npovm
