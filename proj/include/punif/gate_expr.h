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

// Gate expressions.
//
//   product  := tensor ('*' tensor)*
//   tensor   := postfix (('x' | '⊗') postfix)*
//   postfix  := primary '\''*
//   primary  := NAME | 'W[' ints ';' ints ']' | 'exp(' ['-'] 'i' '*' angle ')' | '(' product ')'
//   angle    := arithmetic over numbers and 'pi' with + - * / and parentheses
//
// Adjoint binds tighter than tensor, which binds tighter than product, so
// "H x T' * CZ" is (H (x) T*) CZ. NAME is one of I X Y Z H S T CZ CNOT; only
// I, X (shift), Z (clock) and W[...] exist for d > 2. exp(i*theta) is a scalar
// and may only appear as a factor of a product.

#ifndef PUNIF_GATE_EXPR_H
#define PUNIF_GATE_EXPR_H

#include <string_view>

#include "punif/dense_operator.h"

namespace punif {

/// Throws ParseError on malformed input or mismatched operand sizes.
DenseOperator parse_gate_expression(std::string_view text, int d = 2);

}  // namespace punif

#endif
