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

#include <iosfwd>

#include "config.hpp"
#include "document.hpp"

namespace twostate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitComputationError = 3;

/// Builds the result document. Throws ConfigError or twostate::Error.
Json execute(const RunConfig &cfg);

/// Full CLI entry point. The document goes to `out` (or --output-path);
/// failures print one JSON line {"error": ..., "kind": ..., "message": ...}
/// to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace twostate::cli
