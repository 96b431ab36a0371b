// Copyright 2026 The stabtherm Authors
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

namespace stabtherm {

// Every error raised by the library derives from Error. The CLI maps the
// subclasses onto process exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operand shapes disagree (qubit counts, matrix dimensions).
struct DimensionError : Error {
    using Error::Error;
};

// A configured size limit would be exceeded.
struct CapacityError : Error {
    using Error::Error;
};

// A scalar parameter is out of its allowed range.
struct ParameterError : Error {
    using Error::Error;
};

// A physical model is inconsistent (non-commuting stabilizers, missing
// decompositions, frequency mismatches).
struct ModelError : Error {
    using Error::Error;
};

// An iterative numerical method failed to converge or a step was rejected.
struct NumericalError : Error {
    using Error::Error;
};

// Structured input (tables, schedules, configs, text forms) is malformed.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace stabtherm
