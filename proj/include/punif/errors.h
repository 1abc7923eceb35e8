// Copyright 2026 The punif Authors
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

#ifndef PUNIF_ERRORS_H
#define PUNIF_ERRORS_H

#include <stdexcept>
#include <string>

namespace punif {

/// Operands disagree on n, d, or matrix dimension.
struct ParameterMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A modulus that is not prime, or some other malformed scalar parameter.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operator that was required to be unitary is not, within tolerance.
struct NotUnitary : std::invalid_argument {
    NotUnitary(const std::string &what, double defect) : std::invalid_argument(what), defect(defect) {
    }
    double defect;
};

/// Exact evaluation would exceed the configured work budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameters lie outside the range a routine supports (enumeration limits, tester regime).
struct OutOfScope : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A gate expression or input file that does not parse.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace punif

#endif
