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

#include "punif/galois.h"

#include <ostream>
#include <sstream>

#include "punif/errors.h"

namespace punif {

namespace {

int reduce(std::int64_t value, int m) {
    std::int64_t r = value % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

bool is_prime(int d) {
    if (d < 2) {
        return false;
    }
    for (int p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            return false;
        }
    }
    return true;
}

PrimeModulus::PrimeModulus(int d) : d_(d) {
    if (!is_prime(d)) {
        throw InvalidParameter("modulus " + std::to_string(d) + " is not prime");
    }
}

FieldScalar::FieldScalar(std::int64_t value, PrimeModulus d) : value_(reduce(value, d.value())), d_(d) {
}

void FieldScalar::check_same(FieldScalar other) const {
    if (other.d_ != d_) {
        throw ParameterMismatch("field scalars over different moduli");
    }
}

FieldScalar FieldScalar::operator+(FieldScalar other) const {
    check_same(other);
    return {static_cast<std::int64_t>(value_) + other.value_, d_};
}

FieldScalar FieldScalar::operator-(FieldScalar other) const {
    check_same(other);
    return {static_cast<std::int64_t>(value_) - other.value_, d_};
}

FieldScalar FieldScalar::operator*(FieldScalar other) const {
    check_same(other);
    return {static_cast<std::int64_t>(value_) * other.value_, d_};
}

FieldScalar FieldScalar::operator-() const {
    return {-static_cast<std::int64_t>(value_), d_};
}

PhaseExponent::PhaseExponent(std::int64_t value, PrimeModulus d)
    : value_(reduce(value, d.phase_order())), order_(d.phase_order()), d_(d) {
}

void PhaseExponent::check_same(PhaseExponent other) const {
    if (other.d_ != d_) {
        throw ParameterMismatch("phase exponents over different rings");
    }
}

PhaseExponent PhaseExponent::operator+(PhaseExponent other) const {
    check_same(other);
    return {static_cast<std::int64_t>(value_) + other.value_, d_};
}

PhaseExponent PhaseExponent::operator-(PhaseExponent other) const {
    check_same(other);
    return {static_cast<std::int64_t>(value_) - other.value_, d_};
}

PhaseExponent PhaseExponent::operator-() const {
    return {-static_cast<std::int64_t>(value_), d_};
}

PhaseExponent phase_add(PhaseExponent p, PhaseExponent q) {
    return p + q;
}

SympVector::SympVector(std::vector<int> u, std::vector<int> v, PrimeModulus d)
    : d_(d), u_(std::move(u)), v_(std::move(v)) {
    if (u_.size() != v_.size()) {
        throw ParameterMismatch("symplectic vector halves have different lengths");
    }
    for (auto &x : u_) {
        x = reduce(x, d_.value());
    }
    for (auto &x : v_) {
        x = reduce(x, d_.value());
    }
}

SympVector SympVector::zero(int n, PrimeModulus d) {
    return {std::vector<int>(n, 0), std::vector<int>(n, 0), d};
}

SympVector SympVector::from_index(std::uint64_t index, int n, PrimeModulus d) {
    std::vector<int> u(n), v(n);
    const auto m = static_cast<std::uint64_t>(d.value());
    for (int i = n - 1; i >= 0; --i) {
        v[i] = static_cast<int>(index % m);
        index /= m;
    }
    for (int i = n - 1; i >= 0; --i) {
        u[i] = static_cast<int>(index % m);
        index /= m;
    }
    if (index != 0) {
        throw InvalidParameter("symplectic vector index out of range");
    }
    return {std::move(u), std::move(v), d};
}

FieldScalar SympVector::u(int i) const {
    return {u_.at(i), d_};
}

FieldScalar SympVector::v(int i) const {
    return {v_.at(i), d_};
}

bool SympVector::is_zero() const {
    for (std::size_t i = 0; i < u_.size(); ++i) {
        if (u_[i] != 0 || v_[i] != 0) {
            return false;
        }
    }
    return true;
}

std::uint64_t SympVector::index() const {
    const auto m = static_cast<std::uint64_t>(d_.value());
    std::uint64_t r = 0;
    for (int x : u_) {
        r = r * m + static_cast<std::uint64_t>(x);
    }
    for (int x : v_) {
        r = r * m + static_cast<std::uint64_t>(x);
    }
    return r;
}

std::string SympVector::str() const {
    std::ostringstream out;
    out << *this;
    return out.str();
}

std::ostream &operator<<(std::ostream &out, const SympVector &a) {
    out << "(";
    for (int i = 0; i < a.n(); ++i) {
        out << (i ? "," : "") << a.u_lifts()[i];
    }
    out << ";";
    for (int i = 0; i < a.n(); ++i) {
        out << (i ? "," : "") << a.v_lifts()[i];
    }
    return out << ")";
}

std::uint64_t int_pow(std::uint64_t base, unsigned exponent) {
    std::uint64_t r = 1;
    while (exponent--) {
        r *= base;
    }
    return r;
}

std::uint64_t num_symp_vectors(int n, int d) {
    return int_pow(static_cast<std::uint64_t>(d), 2 * static_cast<unsigned>(n));
}

namespace {

void check_compatible(const SympVector &a, const SympVector &b) {
    if (a.n() != b.n() || a.modulus() != b.modulus()) {
        throw ParameterMismatch("symplectic vectors " + a.str() + " and " + b.str() + " live in different spaces");
    }
}

}  // namespace

FieldScalar symplectic_form(const SympVector &a, const SympVector &b) {
    check_compatible(a, b);
    std::int64_t acc = 0;
    for (int i = 0; i < a.n(); ++i) {
        acc += static_cast<std::int64_t>(a.u_lifts()[i]) * b.v_lifts()[i];
        acc -= static_cast<std::int64_t>(b.u_lifts()[i]) * a.v_lifts()[i];
    }
    return {acc, a.prime()};
}

SympVector vec_add(const SympVector &a, const SympVector &b) {
    check_compatible(a, b);
    std::vector<int> u(a.n()), v(a.n());
    for (int i = 0; i < a.n(); ++i) {
        u[i] = a.u_lifts()[i] + b.u_lifts()[i];
        v[i] = a.v_lifts()[i] + b.v_lifts()[i];
    }
    return {std::move(u), std::move(v), a.prime()};
}

SympVector vec_neg(const SympVector &a) {
    std::vector<int> u(a.n()), v(a.n());
    for (int i = 0; i < a.n(); ++i) {
        u[i] = -a.u_lifts()[i];
        v[i] = -a.v_lifts()[i];
    }
    return {std::move(u), std::move(v), a.prime()};
}

SympVector vec_sub(const SympVector &a, const SympVector &b) {
    return vec_add(a, vec_neg(b));
}

}  // namespace punif
