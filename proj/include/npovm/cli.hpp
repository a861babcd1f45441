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
 * Command-line front end. JSON reports go to stdout (or --out), a short
 * human summary to stderr.
 *
 * Exit codes: 0 success, 2 parse error, 3 input invariant violated,
 * 4 verification failed, 5 reject probability not constant on the subspace, 6 degenerate c0.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "npovm/error.hpp"

namespace npovm::cli {

inline constexpr const char *kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kParse = 2,
    kInvariant = 3,
    kVerification = 4,
    kConditionI = 5,
    kDegenerate = 6,
};

int exit_code_for(ErrorCode code);

struct Tolerances {
    double ratio = 1e-9;
    double psd = 1e-10;
    double fixed = 1e-9;
};

struct RunConfig {
    std::string command;
    std::uint64_t seed = 42;
    std::size_t samples = 200;
    std::uint64_t shots = 100000;
    Tolerances tol;
    std::string out_path; // empty: stdout
};

/// Parses argv and runs one command.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace npovm::cli
