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

#include "npovm/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace npovm {

namespace {

constexpr double kNegativeClip = 1e-9;
constexpr int kMaxJitterHalvings = 6;
constexpr int kRejectionBudget = 1000;

} // namespace

Measurement::Measurement(std::vector<Outcome> outcomes, double sum_tol)
    : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        fail(ErrorCode::NotMeasurement, "measurement needs at least one outcome");
    }
    const std::size_t d = outcomes_.front().effect.dim();
    std::set<std::string> seen;
    CMatrix sum = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto &o : outcomes_) {
        if (o.effect.dim() != d) {
            fail(ErrorCode::DimensionMismatch, "measurement effects have different dimensions");
        }
        if (!seen.insert(o.label).second) {
            fail(ErrorCode::NotMeasurement, "duplicate outcome label '" + o.label + "'");
        }
        sum += o.effect.matrix();
    }
    const double residual =
        (sum - CMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
    if (!(residual <= sum_tol)) {
        std::ostringstream os;
        os << "effects do not sum to the identity (max entry residual " << residual << ")";
        fail(ErrorCode::NotMeasurement, os.str());
    }
}

std::optional<std::size_t> Measurement::find(const std::string &label) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i)
        if (outcomes_[i].label == label) return i;
    return std::nullopt;
}

std::size_t Measurement::index_of(const std::string &label) const {
    const auto i = find(label);
    if (!i) fail(ErrorCode::UnknownLabel, "no outcome labelled '" + label + "'");
    return *i;
}

std::vector<std::string> Measurement::labels() const {
    std::vector<std::string> out;
    out.reserve(outcomes_.size());
    for (const auto &o : outcomes_) out.push_back(o.label);
    return out;
}

MeasurementClass classify(const Measurement &m, double tol) {
    MeasurementClass out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double lo = eig_extrema(m[i].effect).min;
        if (lo < -tol) {
            out.kind = MeasurementClass::Kind::NPOVM;
            out.witness_index = i;
            out.witness_min_eig = lo;
            break;
        }
    }
    return out;
}

bool in_quantum_domain(const DensityMatrix &rho, const Measurement &m, double tol) {
    for (double p : raw_probabilities(rho.matrix(), m))
        if (p < -tol) return false;
    return true;
}

std::vector<double> raw_probabilities(const HermitianMatrix &rho, const Measurement &m) {
    if (rho.dim() != m.dim()) {
        fail(ErrorCode::DimensionMismatch, "state and measurement dimensions differ");
    }
    std::vector<double> p;
    p.reserve(m.size());
    for (const auto &o : m.outcomes()) p.push_back(hs_inner(rho, o.effect));
    return p;
}

std::vector<double> outcome_probabilities(const DensityMatrix &rho, const Measurement &m) {
    std::vector<double> p = raw_probabilities(rho.matrix(), m);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < -kNegativeClip) {
            std::ostringstream os;
            os << "negative probability " << p[i] << " for outcome '" << m[i].label
               << "': state lies outside the quantum domain";
            fail(ErrorCode::NegativeProbability, os.str());
        }
        p[i] = std::clamp(p[i], 0.0, 1.0);
    }
    return p;
}

DomainSample sample_domain_states(const Subspace &subspace, std::size_t count,
                                  std::uint64_t seed, double jitter) {
    const std::size_t d = subspace.ambient_dim();
    const HermitianMatrix anchor = HermitianMatrix::identity(d) * (1.0 / static_cast<double>(d));
    if (!subspace.contains(anchor, 1e-9)) {
        fail(ErrorCode::AnchorOutsideSubspace,
             "the maximally mixed state is not in the span of the subspace");
    }
    if (!(jitter > 0.0)) {
        fail(ErrorCode::InvalidInput, "jitter must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto k = static_cast<Eigen::Index>(subspace.size());
    const RVector anchor_coords = to_coords(anchor);

    auto draw_direction = [&]() -> RVector {
        RVector g(k);
        for (Eigen::Index i = 0; i < k; ++i) g(i) = gauss(rng);
        RVector x = subspace.coords() * g;
        // Remove the trace: 1/d lies in the subspace, so this stays inside.
        const double tr = x.head(static_cast<Eigen::Index>(d)).sum();
        x -= tr * anchor_coords;
        const double n = x.norm();
        return n > 1e-14 ? RVector(x / n) : RVector(RVector::Zero(x.size()));
    };

    double eps = jitter;
    for (int halving = 0; halving <= kMaxJitterHalvings; ++halving, eps *= 0.5) {
        DomainSample out{{}, subspace, eps};
        out.states.reserve(count);
        bool exhausted = false;
        while (out.states.size() < count && !exhausted) {
            int tries = 0;
            for (; tries < kRejectionBudget; ++tries) {
                const RVector x = anchor_coords + eps * unit(rng) * draw_direction();
                HermitianMatrix h = from_coords(x, d);
                if (eig_extrema(h).min < 0.0) continue;
                h *= 1.0 / h.trace();
                out.states.emplace_back(std::move(h));
                break;
            }
            exhausted = tries == kRejectionBudget;
        }
        if (!exhausted) return out;
    }
    fail(ErrorCode::RejectionBudgetExceeded,
         "could not sample positive states in the subspace; jitter too large");
}

std::vector<DensityMatrix> sample_convex_states(std::span<const DensityMatrix> generators,
                                                std::size_t count, std::uint64_t seed) {
    if (generators.empty()) {
        fail(ErrorCode::InvalidInput, "convex sampling needs at least one generator");
    }
    std::vector<DensityMatrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < std::min(count, generators.size()); ++i)
        out.push_back(generators[i]);
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    const std::size_t d = generators.front().dim();
    while (out.size() < count) {
        std::vector<double> w(generators.size());
        double total = 0.0;
        for (auto &wi : w) total += (wi = expo(rng));
        HermitianMatrix mix = HermitianMatrix::zero(d);
        for (std::size_t j = 0; j < generators.size(); ++j)
            mix += generators[j].matrix() * (w[j] / total);
        mix *= 1.0 / mix.trace();
        out.emplace_back(std::move(mix));
    }
    return out;
}

SimulationResult simulate_postselected(const Measurement &m, const std::string &reject_label,
                                       const DensityMatrix &rho, std::uint64_t shots,
                                       std::uint64_t seed) {
    if (!classify(m).is_povm()) {
        fail(ErrorCode::NotPOVM, "post-selection can only be simulated for a POVM");
    }
    const std::size_t reject = m.index_of(reject_label);
    const std::vector<double> p = outcome_probabilities(rho, m);

    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> draw(p.begin(), p.end());
    std::vector<std::uint64_t> counts(m.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) ++counts[draw(rng)];

    SimulationResult out;
    out.shots = shots;
    out.seed = seed;
    out.accepted = shots - counts[reject];
    if (out.accepted == 0) {
        fail(ErrorCode::AllShotsRejected, "every shot was rejected (or no shots were taken)");
    }
    out.acceptance_rate = static_cast<double>(out.accepted) / static_cast<double>(shots);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == reject) continue;
        out.counts.emplace_back(m[i].label, counts[i]);
        out.conditional_freqs.emplace_back(
            m[i].label, static_cast<double>(counts[i]) / static_cast<double>(out.accepted));
    }
    return out;
}

} // namespace npovm
