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

#include "punif/gate_expr.h"

#include <cctype>
#include <charconv>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "punif/errors.h"
#include "punif/galois.h"
#include "punif/gates.h"
#include "punif/pauli_group.h"

namespace punif {

namespace {

// Either a global phase or an operator.
struct Value {
    std::optional<Complex> scalar;
    std::optional<DenseOperator> op;
};

class Parser {
   public:
    Parser(std::string_view text, int d) : text_(text), d_(d) {
    }

    DenseOperator parse() {
        Value v = product();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        if (!v.op) {
            fail("expression is a bare phase, not an operator");
        }
        return *v.op;
    }

   private:
    [[noreturn]] void fail(const std::string &why) const {
        throw ParseError("gate expression, column " + std::to_string(pos_ + 1) + ": " + why);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token)) {
            fail("expected '" + std::string(token) + "'");
        }
    }

    // 'x' is the tensor operator only when it stands alone, not as the start of a lowercase word.
    bool accept_tensor() {
        skip_space();
        if (accept("⊗")) {
            return true;
        }
        if (pos_ < text_.size() && text_[pos_] == 'x' &&
            (pos_ + 1 == text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            return true;
        }
        return false;
    }

    Value product() {
        Value acc = tensor();
        while (accept("*")) {
            Value rhs = tensor();
            acc = multiply(std::move(acc), std::move(rhs));
        }
        return acc;
    }

    Value multiply(Value a, Value b) {
        if (a.scalar && b.scalar) {
            return {*a.scalar * *b.scalar, std::nullopt};
        }
        if (a.scalar) {
            return {std::nullopt, *a.scalar * *b.op};
        }
        if (b.scalar) {
            return {std::nullopt, *b.scalar * *a.op};
        }
        if (a.op->dim() != b.op->dim()) {
            fail("product of operators on " + std::to_string(a.op->n()) + " and " + std::to_string(b.op->n()) +
                 " qudits");
        }
        return {std::nullopt, *a.op * *b.op};
    }

    Value tensor() {
        Value acc = postfix();
        while (accept_tensor()) {
            Value rhs = postfix();
            if (acc.scalar || rhs.scalar) {
                fail("tensor product with a phase; use '*'");
            }
            acc.op = punif::tensor(*acc.op, *rhs.op);
        }
        return acc;
    }

    Value postfix() {
        Value v = primary();
        while (accept("'")) {
            if (v.scalar) {
                v.scalar = std::conj(*v.scalar);
            } else {
                v.op = adjoint(*v.op);
            }
        }
        return v;
    }

    Value primary() {
        skip_space();
        if (accept("(")) {
            Value v = product();
            expect(")");
            return v;
        }
        if (accept("exp")) {
            return {phase(), std::nullopt};
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isupper(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        const std::string name(text_.substr(start, pos_ - start));
        if (name.empty()) {
            fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of input");
        }
        if (name == "W") {
            return {std::nullopt, weyl()};
        }
        return {std::nullopt, named(name)};
    }

    DenseOperator named(const std::string &name) {
        if (name == "I") {
            return identity(1, d_);
        }
        if (name == "X") {
            return gates::shift(d_);
        }
        if (name == "Z") {
            return gates::clock(d_);
        }
        static const std::vector<std::pair<std::string, DenseOperator (*)()>> qubit_gates = {
            {"Y", gates::Y}, {"H", gates::H}, {"S", gates::S}, {"T", gates::T}, {"CZ", gates::CZ}, {"CNOT", gates::CNOT},
        };
        for (const auto &[gate_name, make] : qubit_gates) {
            if (gate_name == name) {
                if (d_ != 2) {
                    fail(name + " is only defined for qubits");
                }
                return make();
            }
        }
        fail("unknown gate '" + name + "'");
    }

    std::vector<int> integers() {
        std::vector<int> out;
        while (true) {
            skip_space();
            int value = 0;
            const char *begin = text_.data() + pos_;
            const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
            if (ec != std::errc()) {
                fail("expected an integer");
            }
            pos_ += static_cast<std::size_t>(ptr - begin);
            out.push_back(value);
            if (!accept(",")) {
                return out;
            }
        }
    }

    DenseOperator weyl() {
        expect("[");
        const std::vector<int> u = integers();
        expect(";");
        const std::vector<int> v = integers();
        expect("]");
        if (u.size() != v.size()) {
            fail("W[u;v] needs as many u entries as v entries");
        }
        return weyl_matrix(SympVector(u, v, PrimeModulus(d_)));
    }

    Complex phase() {
        expect("(");
        const bool negative = accept("-");
        expect("i");
        expect("*");
        const double theta = angle_sum();
        expect(")");
        return std::polar(1.0, negative ? -theta : theta);
    }

    double angle_sum() {
        double acc = angle_term();
        while (true) {
            if (accept("+")) {
                acc += angle_term();
            } else if (accept("-")) {
                acc -= angle_term();
            } else {
                return acc;
            }
        }
    }

    double angle_term() {
        double acc = angle_factor();
        while (true) {
            if (accept("*")) {
                acc *= angle_factor();
            } else if (accept("/")) {
                const double den = angle_factor();
                if (den == 0) {
                    fail("division by zero");
                }
                acc /= den;
            } else {
                return acc;
            }
        }
    }

    double angle_factor() {
        if (accept("-")) {
            return -angle_factor();
        }
        if (accept("(")) {
            const double v = angle_sum();
            expect(")");
            return v;
        }
        if (accept("pi")) {
            return std::numbers::pi;
        }
        skip_space();
        double value = 0;
        const char *begin = text_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
        if (ec != std::errc()) {
            fail("expected a number or 'pi'");
        }
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    std::string_view text_;
    int d_;
    std::size_t pos_ = 0;
};

}  // namespace

DenseOperator parse_gate_expression(std::string_view text, int d) {
    (void)PrimeModulus(d);
    try {
        return Parser(text, d).parse();
    } catch (const ParameterMismatch &e) {
        throw ParseError(std::string("gate expression: ") + e.what());
    }
}

}  // namespace punif
