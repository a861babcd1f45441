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

#include "npovm/pt_example.hpp"

namespace npovm::pt {

namespace {

HermitianMatrix real4(std::initializer_list<std::initializer_list<double>> rows, double scale = 1.0) {
    CMatrix m(4, 4);
    Eigen::Index r = 0;
    for (const auto &row : rows) {
        Eigen::Index c = 0;
        for (double v : row) m(r, c++) = scale * v;
        ++r;
    }
    return HermitianMatrix(std::move(m));
}

} // namespace

HermitianMatrix n0() {
    return real4({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
}

HermitianMatrix n1() {
    return real4({{0, 0, 0, 0}, {0, 1, -1, 0}, {0, -1, 1, 0}, {0, 0, 0, 0}});
}

HermitianMatrix m0() { return partial_transpose(n0(), 2, 2) * 0.5; }

HermitianMatrix m1() { return n1() * 0.5; }

HermitianMatrix m2() {
    return real4({{1, 0, 0, -1}, {0, 1, 1, 0}, {0, 1, 1, 0}, {-1, 0, 0, 1}}, 0.5);
}

DensityMatrix rho0() {
    return DensityMatrix(real4({{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
}

DensityMatrix rho1() {
    return DensityMatrix(real4({{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}}, 0.5));
}

SuperMap gamma() { return SuperMap::partial_transpose(2, 2); }

Measurement npovm() { return Measurement({{"0", n0()}, {"1", n1()}}); }

Measurement povm() { return Measurement({{"0", m0()}, {"1", m1()}, {kRejectLabel, m2()}}); }

Decomposition decomposition() {
    std::vector<OutcomeTerms> outcomes;
    outcomes.push_back({"0", {{gamma(), partial_transpose(n0(), 2, 2)}}});
    outcomes.push_back({"1", {{SuperMap::identity(4), n1()}}});
    return Decomposition(std::move(outcomes));
}

} // namespace npovm::pt
