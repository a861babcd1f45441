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

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "npovm/asd.hpp"
#include "npovm/cli.hpp"
#include "npovm/json_io.hpp"
#include "npovm/pt_example.hpp"

namespace py = pybind11;
using namespace npovm;

namespace {

py::object to_py(const json::Json &j) { return py::module_::import("json").attr("loads")(j.dump()); }

json::Json from_py(const py::object &o) {
    return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Measurement measurement_of(const std::vector<CMatrix> &effects) {
    std::vector<Outcome> out;
    for (std::size_t i = 0; i < effects.size(); ++i) out.push_back({std::to_string(i), HermitianMatrix(effects[i])});
    return Measurement(std::move(out));
}

} // namespace

PYBIND11_MODULE(npovm, m) {
    m.doc() = "Post-selected POVM / N-POVM toolkit";
    m.attr("__version__") = cli::kVersion;

    py::register_exception<Error>(m, "NpovmError");

    m.def("run_cli", [](std::vector<std::string> args) {
        args.insert(args.begin(), "npovm");
        std::vector<const char *> argv;
        for (const auto &a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");

    m.def("implement", [](const py::object &decomposition, std::optional<std::string> reject) {
        const Decomposition dec = json::decomposition_from(from_py(decomposition));
        json::Json j = json::to_json(construct_povm(dec, std::move(reject)));
        j["domain_dim"] = implementation_domain(dec).dim();
        return to_py(j);
    }, py::arg("decomposition"), py::arg("reject") = py::none());

    m.def("is_povm", [](const std::vector<CMatrix> &effects) {
        return classify(measurement_of(effects)).is_povm();
    }, py::arg("effects"));

    m.def("partial_transpose", [](const CMatrix &x, std::size_t da, std::size_t db) {
        return partial_transpose(HermitianMatrix(x), da, db).matrix();
    }, py::arg("matrix"), py::arg("dim_a"), py::arg("dim_b"));

    m.def("demo_pt_povm", [] { return to_py(json::to_json(construct_povm(pt::decomposition(), std::string("2")))); });

    m.def("covariant", [](const CMatrix &characters, const std::vector<Complex> &amplitudes) {
        const CovariantInstance inst = covariant_family(CommutativeGroupRep(characters, amplitudes));
        py::dict d;
        d["c_psi"] = inst.c_psi;
        d["c_phi"] = inst.c_phi;
        d["t_inv"] = inst.t_inv;
        d["shortcut_c"] = inst.shortcut_c ? py::cast(*inst.shortcut_c) : py::none();
        d["acceptance_spread"] = inst.psi_measured.check.acceptance_spread;
        return d;
    }, py::arg("characters"), py::arg("amplitudes"));

    m.def("asd_c", [](const std::vector<CVector> &states) {
        return max_uniform_c(dual_basis(PureStateFamily(states)));
    }, py::arg("states"), "Largest uniform c for unambiguous discrimination of the states.");
}
