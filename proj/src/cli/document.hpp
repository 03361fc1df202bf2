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

// Result documents emitted by the CLI.
//
// JSON layout (schema in docs/result.schema.json):
//
//   {
//     "schema_version": "1.0.0",
//     "command": "hardy-table",
//     "inputs": { ... },
//     "results": { ... },        numbers, {"re", "im"} objects, arrays, tables
//     "warnings": [ "..." ],
//     "timing_ms": 12.5          only with --timing
//   }
//
// Documents are emitted with two-space indentation and a trailing newline;
// parsing and re-emitting a document reproduces it byte for byte.

#include <json.hpp>
#include <string>

#include "twostate/qcore.hpp"

namespace twostate::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchemaVersion = "1.0.0";

Json complex_json(Complex z);

std::string to_json_text(const Json &doc);

/// Long format: one `name,re,im` row per scalar in "results" (real values
/// carry im = 0). When "results" holds a "pdf" table the wide
/// `q,<column>...` grid is emitted instead, for external plotting.
std::string to_csv_text(const Json &doc);

}  // namespace twostate::cli
