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
 * Two-qubit partial-transpose example. N_0 is the swap operator, N_1 twice
 * the singlet projector; N_0 = Gamma(S_0) with S_0 = Gamma(N_0) PSD, so the
 * pair is implemented on the Gamma-fixed states by M_0 = Gamma(N_0)/2,
 * M_1 = N_1/2 and the reject effect M_2 = 1 - M_0 - M_1.
 */

#pragma once

#include "npovm/bridge.hpp"

namespace npovm::pt {

inline constexpr const char *kRejectLabel = "2";

HermitianMatrix n0();
HermitianMatrix n1();
HermitianMatrix m0();
HermitianMatrix m1();
/// Entrywise as written out: (1/2)[[1,0,0,-1],[0,1,1,0],[0,1,1,0],[-1,0,0,1]].
HermitianMatrix m2();
/// |00><00|.
DensityMatrix rho0();
/// (|01><01| + |10><10|) / 2.
DensityMatrix rho1();

SuperMap gamma();
/// Labels "0", "1".
Measurement npovm();
/// Labels "0", "1", "2".
Measurement povm();
/// N_0 = Gamma(Gamma(N_0)), N_1 = id(N_1).
Decomposition decomposition();

} // namespace npovm::pt
