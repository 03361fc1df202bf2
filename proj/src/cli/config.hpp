// Copyright 2026 The twostate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twostate/qcore.hpp"

namespace twostate::cli {

enum class Command { HardyTable, DetectorStats, Abl, WeakMeasure, Simultaneous, Collective, Verify };
enum class Format { Json, Csv };

std::string command_name(Command c);

/// Raised for anything wrong with the user's input; maps to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::HardyTable;
    double g = 0.05;
    double delta = 1.0;
    bool delta_given = false;
    std::size_t trials = 100000;
    std::optional<std::uint64_t> seed;
    std::size_t n_pairs = 100;
    std::optional<double> width_ratio;  ///< collective: delta = c g sqrt(N)
    std::vector<std::string> observables;  ///< empty = all eight
    std::optional<std::string> output_path;
    Format format = Format::Json;
    unsigned workers = 1;
    std::optional<std::vector<Complex>> pre;
    std::optional<std::vector<Complex>> post;
    std::size_t pdf_grid = 0;
    bool timing = false;
};

/// Outcome of argument parsing: either a config to run, or an exit code with
/// text already produced (help, version).
struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = 0;
    std::string message;
};

/// Parses flags and an optional `--config` file (flags win). Throws
/// ConfigError on invalid input.
ParseOutcome parse_args(int argc, const char *const *argv);

/// "0.5,0.5,0.5,0" or with complex entries as re:im, e.g. "0.5,0:0.5".
std::vector<Complex> parse_amplitudes(const std::string &text);

}  // namespace twostate::cli
