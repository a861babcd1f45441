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

#include "npovm/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "npovm/asd.hpp"
#include "npovm/json_io.hpp"
#include "npovm/pt_example.hpp"

namespace npovm::cli {

using json::Json;
using json::to_json;

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError: return kParse;
    case ErrorCode::ConditionIFailed: return kConditionI;
    case ErrorCode::DegenerateC0: return kDegenerate;
    case ErrorCode::RejectionBudgetExceeded:
    case ErrorCode::AllShotsRejected:
    case ErrorCode::AllOutcomesRejected: return kVerification;
    default: return kInvariant;
    }
}

namespace {

struct Inputs {
    std::vector<std::string> paths;
    std::string reject;
    std::string subspace;
    std::string state;
    std::string basis;
    std::string emit_dir;
    std::optional<double> c0;
};

class Context {
  public:
    Context(const RunConfig &cfg, std::ostream &out, std::ostream &err)
        : cfg_(cfg), out_(out), err_(err) {}

    Json header() const {
        Json h;
        h["tool"] = {{"name", "npovm"}, {"version", kVersion}};
        h["command"] = cfg_.command;
        h["seed"] = cfg_.seed;
        h["samples"] = cfg_.samples;
        h["tolerances"] = {{"ratio", cfg_.tol.ratio}, {"psd", cfg_.tol.psd}, {"fixed", cfg_.tol.fixed}};
        return h;
    }

    void emit(const Json &report) const {
        const std::string text = report.dump(2) + "\n";
        if (cfg_.out_path.empty()) {
            out_ << text;
        } else {
            std::ofstream f(cfg_.out_path);
            if (!f) fail(ErrorCode::InvalidInput, "cannot write '" + cfg_.out_path + "'");
            f << text;
        }
    }

    std::ostream &log() const { return err_; }
    const RunConfig &cfg() const { return cfg_; }

  private:
    const RunConfig &cfg_;
    std::ostream &out_;
    std::ostream &err_;
};

Json domain_json(const ImplementationDomain &dom) {
    Json j;
    j["dim"] = dom.dim();
    j["contains_identity"] = dom.contains_identity;
    j["tol"] = dom.tol;
    j["subspace"] = to_json(dom.subspace);
    return j;
}

Json condition_json(const ConditionIReport &r) {
    Json j;
    j["projection_norm"] = r.projection_norm;
    j["holds"] = r.holds;
    j["reject_prob_spread"] = r.reject_prob_spread ? Json(*r.reject_prob_spread) : Json(nullptr);
    j["reject_prob_max_deviation"] =
        r.reject_prob_max_deviation ? Json(*r.reject_prob_max_deviation) : Json(nullptr);
    return j;
}

Json ratio_json(const RatioCheck &r, std::size_t samples) {
    Json j;
    j["max_ratio_error"] = r.max_ratio_error;
    j["acceptance_min"] = r.min_accept;
    j["acceptance_max"] = r.max_accept;
    j["acceptance_mean"] = r.mean_accept;
    j["samples_used"] = samples;
    return j;
}

Json classify_json(const Measurement &m) {
    const auto c = classify(m);
    Json j;
    j["kind"] = c.is_povm() ? "POVM" : "N-POVM";
    j["witness_index"] = c.witness_index ? Json(*c.witness_index) : Json(nullptr);
    j["witness_min_eig"] = c.witness_min_eig;
    return j;
}

std::vector<DensityMatrix> states_from(const Json &j) {
    std::vector<DensityMatrix> out;
    const Json &states = j.contains("states") ? j.at("states") : j;
    if (!states.is_array()) fail(ErrorCode::ParseError, "expected an array of pure states");
    for (const auto &s : states) out.push_back(DensityMatrix::pure(json::cvector_from(s)));
    return out;
}

// Shared tail of implement and auto-implement.
int implement_report(const Context &ctx, Json report, const Decomposition &dec,
                     const PostSelectedPOVM &ps, const ImplementationDomain &dom) {
    const auto &cfg = ctx.cfg();
    const Measurement npovm = dec.induced_measurement();
    const AcceptanceBound bound = acceptance_bound_check(dec, ps);

    report["npovm_class"] = classify_json(npovm);
    report["povm"] = to_json(ps);
    report["domain"] = domain_json(dom);
    report["acceptance_bound"] = {{"acc", bound.acc},
                                  {"bound", bound.bound},
                                  {"trace_preserving", bound.trace_preserving},
                                  {"satisfied", bound.satisfied}};
    if (!dom.contains_identity) {
        report["verification"] = nullptr;
        report["ok"] = false;
        ctx.emit(report);
        ctx.log() << "implement: domain does not contain 1/d; cannot sample states to verify\n";
        return kVerification;
    }
    const ImplementationReport rep =
        verify_implementation(npovm, ps, dom, cfg.samples, cfg.seed, cfg.tol.ratio);
    report["verification"] = to_json(rep);

    Json inverse = nullptr;
    if (ps.c > 1.0) {
        const double c0 = c0_from_c(ps.c);
        const ConditionIReport cond =
            check_condition_i(ps.povm, ps.reject_label, dom.subspace, c0, cfg.tol.fixed, {}, cfg.seed);
        const Measurement back =
            invert_postselection(ps.povm, ps.reject_label, dom.subspace, c0, cfg.tol.fixed);
        const auto states = sample_domain_states(dom.subspace, cfg.samples, cfg.seed).states;
        double err = 0.0;
        for (const auto &rho : states) {
            const auto p = raw_probabilities(rho.matrix(), npovm);
            const auto q = raw_probabilities(rho.matrix(), back);
            for (std::size_t i = 0; i < p.size(); ++i) err = std::max(err, std::abs(p[i] - q[i]));
        }
        inverse = {{"c0", c0}, {"condition_i", condition_json(cond)}, {"round_trip_error", err}};
    }
    report["inverse"] = inverse;

    const bool ok = rep.max_ratio_error <= cfg.tol.ratio;
    report["ok"] = ok;
    ctx.emit(report);
    ctx.log() << "implement: c = " << ps.c << ", acceptance = " << ps.acceptance()
              << ", domain dim = " << dom.dim() << ", max ratio error = " << rep.max_ratio_error
              << (ok ? " (ok)\n" : " (exceeds tolerance)\n");
    return ok ? kOk : kVerification;
}

int cmd_implement(const Context &ctx, const Inputs &in) {
    const Decomposition dec = json::decomposition_from(json::read_file(in.paths.at(0)));
    std::optional<std::string> reject;
    if (!in.reject.empty()) reject = in.reject;
    const PostSelectedPOVM ps = construct_povm(dec, reject);
    const ImplementationDomain dom = implementation_domain(dec, ctx.cfg().tol.fixed);
    Json report = ctx.header();
    report["decomposition"] = to_json(dec);
    return implement_report(ctx, std::move(report), dec, ps, dom);
}

int cmd_auto_implement(const Context &ctx, const Inputs &in) {
    const Measurement npovm = json::measurement_from(json::read_file(in.paths.at(0)));
    const auto states = states_from(json::read_file(in.basis));
    std::optional<std::string> reject;
    if (!in.reject.empty()) reject = in.reject;
    const C1C2Report pre = check_c1_c2(npovm, states);
    const OrthogonalPipelineResult res = appendix_e_pipeline(npovm, states, reject);
    Json report = ctx.header();
    report["c1"] = pre.c1;
    report["c2"] = pre.c2;
    report["eps_max"] = pre.eps_max;
    report["deltas"] = res.deltas;
    report["offdiag_span_dim"] = res.offdiag_span_dim;
    report["dim_prime_upper"] = res.dim_prime_upper;
    report["dim_bound_ok"] = res.dim_bound_ok;
    report["acc_bound_ok"] = res.acc_bound_ok;
    report["decomposition"] = to_json(res.decomposition);
    return implement_report(ctx, std::move(report), res.decomposition, res.povm, res.domain);
}

int cmd_invert(const Context &ctx, const Inputs &in) {
    const auto &cfg = ctx.cfg();
    const Measurement povm = json::measurement_from(json::read_file(in.paths.at(0)));
    const Subspace k = json::subspace_from(json::read_file(in.subspace));
    double c0 = 0.0;
    if (in.c0) {
        c0 = *in.c0;
    } else if (const auto inferred = infer_c0(povm, in.reject, k)) {
        c0 = *inferred;
    } else {
        fail(ErrorCode::InvalidInput, "--c0 is required when the subspace does not contain 1/d");
    }
    if (!classify(povm).is_povm()) fail(ErrorCode::NotPOVM, "input measurement is not a POVM");

    Json report = ctx.header();
    report["reject_label"] = in.reject;
    report["c0"] = c0;
    if (!(c0 > 1.0) || !std::isfinite(c0)) {
        fail(ErrorCode::DegenerateC0, "c0 <= 1: no rejection mass, post-selection is trivial");
    }
    const ConditionIReport cond = check_condition_i(povm, in.reject, k, c0, cfg.tol.fixed, {}, cfg.seed);
    report["condition_i"] = condition_json(cond);
    if (!cond.holds) {
        report["ok"] = false;
        report["error"] = {{"code", to_string(ErrorCode::ConditionIFailed)},
                           {"projection_norm", cond.projection_norm}};
        ctx.emit(report);
        ctx.log() << "invert: reject effect not constant on the subspace, projection norm " << cond.projection_norm << "\n";
        return kConditionI;
    }
    const Measurement npovm = invert_postselection(povm, in.reject, k, c0, cfg.tol.fixed);
    report["npovm"] = to_json(npovm);
    report["npovm_class"] = classify_json(npovm);

    bool ok = true;
    if (k.contains_identity()) {
        const auto states = sample_domain_states(k, cfg.samples, cfg.seed).states;
        const RatioCheck rc = ratio_check(npovm, povm, in.reject, states);
        report["verification"] = ratio_json(rc, states.size());
        ok = rc.max_ratio_error <= cfg.tol.ratio;
    } else {
        report["verification"] = nullptr;
    }
    report["ok"] = ok;
    ctx.emit(report);
    ctx.log() << "invert: c0 = " << c0 << ", projection norm " << cond.projection_norm << ", result "
              << (classify(npovm).is_povm() ? "POVM" : "N-POVM") << (ok ? "\n" : " (verification failed)\n");
    return ok ? kOk : kVerification;
}

int cmd_verify(const Context &ctx, const Inputs &in) {
    const auto &cfg = ctx.cfg();
    const Measurement npovm = json::measurement_from(json::read_file(in.paths.at(0)));
    const Measurement povm = json::measurement_from(json::read_file(in.paths.at(1)));
    const Subspace k = json::subspace_from(json::read_file(in.paths.at(2)));
    const auto states = sample_domain_states(k, cfg.samples, cfg.seed).states;
    const RatioCheck rc = ratio_check(npovm, povm, in.reject, states);
    const bool informative = samples_informative(npovm, states);
    const bool ok = rc.max_ratio_error <= cfg.tol.ratio;
    Json report = ctx.header();
    report["reject_label"] = in.reject;
    report["verification"] = ratio_json(rc, states.size());
    report["lemma1_constancy_spread"] = rc.max_accept - rc.min_accept;
    report["informativeness"] = informative;
    report["ok"] = ok;
    ctx.emit(report);
    ctx.log() << "verify: max ratio error " << rc.max_ratio_error << " over " << states.size()
              << " states" << (ok ? " (ok)\n" : " (exceeds tolerance)\n");
    return ok ? kOk : kVerification;
}

Json instance_json(const AsdInstance &inst) {
    Json j;
    j["c"] = inst.c;
    j["acceptance"] = inst.check.acceptance;
    j["acceptance_spread"] = inst.check.acceptance_spread;
    j["max_conditional_error"] = inst.check.max_conditional_error;
    Json fam = Json::array();
    for (const auto &s : inst.family.states()) fam.push_back(to_json(s));
    j["family"] = std::move(fam);
    j["povm"] = to_json(inst.povm);
    return j;
}

// N-POVM conversion; DegenerateC0 is reported, not fatal.
Json conversion_json(const PureStateFamily &family, std::span<const CVector> vectors,
                     std::span<const double> c) {
    try {
        const AsdNpovm res = asd_to_npovm(family, vectors, c);
        Json j;
        j["c0"] = res.c0;
        j["condition_i"] = condition_json(res.condition);
        j["max_delta_error"] = res.max_delta_error;
        j["npovm"] = to_json(res.npovm);
        j["npovm_class"] = classify_json(res.npovm);
        j["domain_dim"] = res.domain.dim();
        return j;
    } catch (const Error &e) {
        if (e.code() != ErrorCode::DegenerateC0) throw;
        return {{"npovm", nullptr}, {"reason", e.what()}};
    }
}

int cmd_asd(const Context &ctx, const Inputs &in) {
    const Json input = json::read_file(in.paths.at(0));
    Json report = ctx.header();
    double err = 0.0;

    if (input.contains("characters") || input.contains("blocks")) {
        CovariantInstance inst = input.contains("characters")
                                     ? covariant_family(json::commutative_rep_from(input))
                                     : covariant_family(json::block_rep_from(input));
        report["input"] = input.contains("characters") ? "commutative_group" : "block_group";
        report["c"] = inst.c_psi;
        report["c_psi"] = inst.c_psi;
        report["c_phi"] = inst.c_phi;
        report["shortcut_c"] = inst.shortcut_c ? Json(*inst.shortcut_c) : Json(nullptr);
        report["t_inv"] = inst.t_inv;
        report["biorthogonality_error"] = inst.biorthogonality_error;
        report["psi"] = to_json(inst.psi);
        report["phi"] = to_json(inst.phi);
        report["psi_measured"] = instance_json(inst.psi_measured);
        report["phi_measured"] = instance_json(inst.phi_measured);
        const std::vector<double> cs(inst.psi_measured.vectors.size(), inst.psi_measured.c);
        report["conversion"] = conversion_json(inst.psi_measured.family, inst.psi_measured.vectors, cs);
        err = std::max(inst.psi_measured.check.max_conditional_error,
                       inst.phi_measured.check.max_conditional_error);
        ctx.log() << "asd: group of order " << inst.psi_orbit.size() << ", c = " << inst.c_psi
                  << ", acceptance spread " << inst.psi_measured.check.acceptance_spread << "\n";
    } else {
        const PureStateFamily family = json::family_from(input);
        const DualBasis dual = dual_basis(family);
        std::vector<double> cs;
        if (!input.contains("c") || input.at("c").is_string()) {
            cs.assign(family.size(), max_uniform_c(dual));
        } else if (input.at("c").is_number()) {
            cs.assign(family.size(), input.at("c").get<double>());
        } else {
            if (!input.at("c").is_array()) fail(ErrorCode::ParseError, "'c' must be a number or a list");
            for (const auto &v : input.at("c")) {
                if (!v.is_number()) fail(ErrorCode::ParseError, "'c' entries must be numbers");
                cs.push_back(v.get<double>());
            }
        }
        const Measurement povm = asd_measurement(dual, cs);
        const DiscriminationCheck check = check_discrimination(povm, family);
        report["input"] = "family";
        report["c"] = cs;
        Json duals = Json::array();
        for (const auto &v : dual.vectors) duals.push_back(to_json(v));
        report["dual"] = std::move(duals);
        report["povm"] = to_json(povm);
        report["m0_norm"] = povm.effect(kInconclusiveLabel).hs_norm();
        report["acceptance"] = check.acceptance;
        report["max_conditional_error"] = check.max_conditional_error;
        report["conversion"] = conversion_json(family, dual.vectors, cs);
        err = check.max_conditional_error;
        ctx.log() << "asd: " << family.size() << " states, max conditional error " << err << "\n";
    }
    const bool ok = err <= 1e-10;
    report["ok"] = ok;
    ctx.emit(report);
    return ok ? kOk : kVerification;
}

void write_json(const std::filesystem::path &p, const Json &j) {
    std::ofstream f(p);
    if (!f) fail(ErrorCode::InvalidInput, "cannot write '" + p.string() + "'");
    f << j.dump(2) << "\n";
}

int cmd_demo_pt(const Context &ctx, const Inputs &in) {
    const auto &cfg = ctx.cfg();
    const Decomposition dec = pt::decomposition();
    const Measurement npovm = pt::npovm();
    const PostSelectedPOVM ps = construct_povm(dec, std::string(pt::kRejectLabel));
    const ImplementationDomain dom = implementation_domain(dec, cfg.tol.fixed);
    const AcceptanceBound bound = acceptance_bound_check(dec, ps);

    Json checks = Json::array();
    std::optional<std::string> first_failure;
    auto check = [&](const std::string &name, bool ok, Json value) {
        checks.push_back({{"name", name}, {"ok", ok}, {"value", std::move(value)}});
        if (!ok && !first_failure) first_failure = name;
    };

    check("c == 2", std::abs(ps.c - 2.0) <= 1e-12, ps.c);
    const double d0 = max_abs_diff(ps.povm.effect("0"), pt::m0());
    const double d1 = max_abs_diff(ps.povm.effect("1"), pt::m1());
    const double d2 = max_abs_diff(ps.povm.effect(pt::kRejectLabel), pt::m2());
    check("M0 == Gamma(N0)/2", d0 <= 1e-12, d0);
    check("M1 == N1/2", d1 <= 1e-12, d1);
    check("M2 entrywise", d2 <= 1e-12, d2);
    check("M is a POVM", classify(ps.povm).is_povm(), classify_json(ps.povm));
    check("acceptance == 1/2", std::abs(ps.acceptance() - 0.5) <= 1e-12, ps.acceptance());
    check("acceptance >= 1/d", bound.trace_preserving && bound.satisfied,
          {{"acc", bound.acc}, {"bound", bound.bound}});

    const DensityMatrix rhos[2] = {pt::rho0(), pt::rho1()};
    double delta_err = 0.0;
    for (int i = 0; i < 2; ++i) {
        const auto p = raw_probabilities(rhos[i].matrix(), npovm);
        for (int j = 0; j < 2; ++j) delta_err = std::max(delta_err, std::abs(p[j] - (i == j ? 1.0 : 0.0)));
    }
    check("Tr rho_i N_j == delta_ij", delta_err <= 1e-12, delta_err);
    const SuperMap g = pt::gamma();
    double fixed_err = 0.0;
    for (const auto &r : rhos) fixed_err = std::max(fixed_err, max_abs_diff(apply(g, r.matrix()), r.matrix()));
    check("rho_i fixed by Gamma", fixed_err <= 1e-12, fixed_err);
    check("domain dimension 12", dom.dim() == 12, dom.dim());

    const ImplementationReport rep = verify_implementation(npovm, ps, dom, cfg.samples, cfg.seed);
    check("sum_{j=0,1} Tr rho M_j == 1/2 on samples",
          rep.lemma1_constancy_spread <= 1e-10 && std::abs(rep.acceptance - 0.5) <= 1e-10,
          {{"spread", rep.lemma1_constancy_spread}, {"mean", rep.acceptance}});
    check("ratio identity on samples", rep.max_ratio_error <= cfg.tol.ratio, rep.max_ratio_error);

    Json mc = Json::array();
    for (int i = 0; i < 2; ++i) {
        const SimulationResult sim =
            simulate_postselected(ps.povm, pt::kRejectLabel, rhos[i], cfg.shots, cfg.seed + static_cast<std::uint64_t>(i));
        const double n = static_cast<double>(sim.shots);
        const double sigma_acc = std::sqrt(0.25 / n);
        const double freq = sim.conditional_freqs[static_cast<std::size_t>(i)].second;
        const bool ok = std::abs(sim.acceptance_rate - 0.5) <= 4.0 * sigma_acc && freq == 1.0;
        mc.push_back({{"state", i},
                      {"shots", sim.shots},
                      {"acceptance_rate", sim.acceptance_rate},
                      {"sigma", sigma_acc},
                      {"conditional_frequency_correct", freq}});
        check("Monte Carlo rho_" + std::to_string(i), ok, mc.back());
    }

    if (!in.emit_dir.empty()) {
        const std::filesystem::path dir(in.emit_dir);
        std::filesystem::create_directories(dir);
        write_json(dir / "pt_decomposition.json", to_json(dec));
        write_json(dir / "pt_npovm.json", to_json(npovm));
        write_json(dir / "pt_povm.json", to_json(ps.povm));
        write_json(dir / "pt_rho0.json", to_json(pt::rho0().matrix()));
        write_json(dir / "pt_rho1.json", to_json(pt::rho1().matrix()));
        write_json(dir / "pt_gamma_fixed.json",
                   Json{{"dim", 4}, {"fixed_by", Json::array({to_json(g)})}});
        Json basis = Json::array();
        for (const auto &b : dom.subspace.basis()) basis.push_back(to_json(b));
        write_json(dir / "pt_gamma_spanning.json", Json{{"dim", 4}, {"spanning", std::move(basis)}});
    }

    Json report = ctx.header();
    report["shots"] = cfg.shots;
    report["povm"] = to_json(ps);
    report["checks"] = std::move(checks);
    report["first_failure"] = first_failure ? Json(*first_failure) : Json(nullptr);
    report["ok"] = !first_failure;
    ctx.emit(report);
    if (first_failure) {
        ctx.log() << "demo-pt: FAILED at '" << *first_failure << "'\n";
        return kVerification;
    }
    ctx.log() << "demo-pt: c = 2, acceptance = 1/2 >= 1/4, perfect discrimination reproduced\n";
    return kOk;
}

int cmd_simulate(const Context &ctx, const Inputs &in) {
    const auto &cfg = ctx.cfg();
    const Measurement povm = json::measurement_from(json::read_file(in.paths.at(0)));
    const DensityMatrix rho = json::density_from(json::read_file(in.state));
    const SimulationResult sim = simulate_postselected(povm, in.reject, rho, cfg.shots, cfg.seed);

    const auto p = outcome_probabilities(rho, povm);
    const std::size_t reject = povm.index_of(in.reject);
    const double acc = 1.0 - p[reject];
    const double n = static_cast<double>(sim.shots);
    Json outcomes = Json::array();
    for (std::size_t i = 0, k = 0; i < povm.size(); ++i) {
        if (i == reject) continue;
        const double expected = acc > 0.0 ? p[i] / acc : 0.0;
        const double m = static_cast<double>(sim.accepted);
        outcomes.push_back({{"label", povm[i].label},
                            {"count", sim.counts[k].second},
                            {"frequency", sim.conditional_freqs[k].second},
                            {"expected", expected},
                            {"sigma", std::sqrt(expected * (1.0 - expected) / m)}});
        ++k;
    }
    Json report = ctx.header();
    report["shots"] = sim.shots;
    report["reject_label"] = in.reject;
    report["accepted"] = sim.accepted;
    report["acceptance_rate"] = sim.acceptance_rate;
    report["expected_acceptance"] = acc;
    report["acceptance_sigma"] = std::sqrt(acc * (1.0 - acc) / n);
    report["outcomes"] = std::move(outcomes);
    ctx.emit(report);
    ctx.log() << "simulate: " << sim.accepted << "/" << sim.shots << " accepted (rate "
              << sim.acceptance_rate << ")\n";
    return kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    Inputs in;

    CLI::App app{"Post-selected POVM / N-POVM toolkit", "npovm"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--samples", cfg.samples, "domain samples")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--shots", cfg.shots, "Monte Carlo shots")->capture_default_str();
    app.add_option("--tol-ratio", cfg.tol.ratio, "ratio tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out_path, "write the JSON report here instead of stdout");

    auto *implement = app.add_subcommand("implement", "build the post-selected POVM of a decomposition");
    implement->add_option("decomposition", in.paths, "decomposition JSON")->required()->expected(1);
    implement->add_option("--reject", in.reject, "reject label");

    auto *auto_impl = app.add_subcommand("auto-implement", "derive a decomposition from orthogonal pure states");
    auto_impl->add_option("npovm", in.paths, "N-POVM JSON")->required()->expected(1);
    auto_impl->add_option("--basis", in.basis, "pure states JSON")->required();
    auto_impl->add_option("--reject", in.reject, "reject label");

    auto *invert = app.add_subcommand("invert", "N-POVM simulated by a POVM with post-selection");
    invert->add_option("povm", in.paths, "POVM JSON")->required()->expected(1);
    invert->add_option("--reject", in.reject, "reject label")->required();
    invert->add_option("--subspace", in.subspace, "subspace JSON")->required();
    invert->add_option("--c0", in.c0, "inverse reject probability");

    auto *verify = app.add_subcommand("verify", "check the post-selected ratio identity on a subspace");
    verify->add_option("inputs", in.paths, "npovm.json povm.json subspace.json")->required()->expected(3);
    verify->add_option("--reject", in.reject, "reject label");

    auto *asd = app.add_subcommand("asd", "ambiguous state discrimination instance");
    asd->add_option("input", in.paths, "family or group-rep JSON")->required()->expected(1);

    auto *demo = app.add_subcommand("demo-pt", "two-qubit partial-transpose example");
    demo->add_option("--emit-dir", in.emit_dir, "write the example's JSON files here");

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo post-selection");
    simulate->add_option("povm", in.paths, "POVM JSON")->required()->expected(1);
    simulate->add_option("--state", in.state, "density matrix JSON")->required();
    simulate->add_option("--reject", in.reject, "reject label")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParse;
    }
    if (verify->parsed() && in.reject.empty()) in.reject = kDefaultRejectLabel;

    const std::map<CLI::App *, std::function<int(const Context &, const Inputs &)>> commands = {
        {implement, cmd_implement}, {auto_impl, cmd_auto_implement}, {invert, cmd_invert},
        {verify, cmd_verify},       {asd, cmd_asd},                  {demo, cmd_demo_pt},
        {simulate, cmd_simulate}};
    for (const auto &[sub, fn] : commands) {
        if (!sub->parsed()) continue;
        cfg.command = sub->get_name();
        const Context ctx(cfg, out, err);
        try {
            return fn(ctx, in);
        } catch (const Error &e) {
            Json report = ctx.header();
            report["ok"] = false;
            report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
            out << report.dump(2) << "\n";
            err << cfg.command << ": " << to_string(e.code()) << ": " << e.what() << "\n";
            return exit_code_for(e.code());
        }
    }
    return kParse;
}

} // namespace npovm::cli
