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

#include <stdexcept>
#include <string>

namespace twostate {

/// Base class for every error raised by the library. The CLI maps all of
/// these to the "computation error" exit code.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
    /// Short machine-parsable tag, e.g. "DegenerateEnsemble".
    virtual const char *kind() const noexcept = 0;
};

#define TWOSTATE_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                      \
       public:                                                       \
        using Error::Error;                                          \
        const char *kind() const noexcept override { return #Name; } \
    }

TWOSTATE_DEFINE_ERROR(DimensionMismatch);
TWOSTATE_DEFINE_ERROR(NotNormalized);
TWOSTATE_DEFINE_ERROR(NotHermitian);
TWOSTATE_DEFINE_ERROR(InvalidArgument);
TWOSTATE_DEFINE_ERROR(DegenerateEnsemble);
TWOSTATE_DEFINE_ERROR(AllBranchesVanish);
TWOSTATE_DEFINE_ERROR(UnsupportedConfiguration);

#undef TWOSTATE_DEFINE_ERROR

}  // namespace twostate
