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

#ifndef PUNIF_GATES_H
#define PUNIF_GATES_H

#include <string>
#include <vector>

#include "punif/dense_operator.h"

namespace punif::gates {

// Qubit gates.
DenseOperator I();
DenseOperator X();
DenseOperator Y();
DenseOperator Z();
DenseOperator H();
DenseOperator S();
DenseOperator T();
/// diag(1, e^{i pi m / 4})
DenseOperator phase_eighth(int m);
DenseOperator CZ();
/// Control on qudit 0.
DenseOperator CNOT();

// Single-qudit generalizations.
DenseOperator shift(int d);
DenseOperator clock(int d);
/// F|x> = sum_y omega^{xy} |y> / sqrt(d); equals H for d = 2.
DenseOperator fourier(int d);
/// S for d = 2, diag(omega^{x(x-1)/2}) for odd d.
DenseOperator phase(int d);

struct NamedGate {
    std::string name;
    UnitaryHandle gate;
};

/// Test battery: all Weyl operators (n = 1, d = 2), T, H, S, CZ, CNOT. The 24 single-qubit Cliffords are
/// added by callers from the level-2 enumeration.
std::vector<NamedGate> battery();

}  // namespace punif::gates

#endif
