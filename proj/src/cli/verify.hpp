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

#include <string>
#include <vector>

namespace twostate::cli {

struct CheckOutcome {
    std::string name;
    bool passed;
    std::string detail;
};

/// Every property of the library, from the exact Hardy table to the
/// collective pointer statistics. Deterministic (fixed seeds).
std::vector<CheckOutcome> run_verification();

}  // namespace twostate::cli
