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

// Exact arithmetic over the prime field F_d, the phase ring Z_D and the
// symplectic space F_d^{2n} that labels Weyl operators.

#ifndef PUNIF_GALOIS_H
#define PUNIF_GALOIS_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace punif {

bool is_prime(int d);

/// A prime d >= 2. Validated by trial division on construction.
class PrimeModulus {
   public:
    explicit PrimeModulus(int d);

    int value() const {
        return d_;
    }
    /// Order D of the phase tau: 2d for d = 2, d otherwise.
    int phase_order() const {
        return d_ == 2 ? 4 : d_;
    }

    bool operator==(const PrimeModulus &) const = default;

   private:
    int d_;
};

/// Residue in F_d. Always stored as the canonical representative in [0, d).
class FieldScalar {
   public:
    FieldScalar(std::int64_t value, PrimeModulus d);

    int value() const {
        return value_;
    }
    int modulus() const {
        return d_.value();
    }
    PrimeModulus prime() const {
        return d_;
    }

    FieldScalar operator+(FieldScalar other) const;
    FieldScalar operator-(FieldScalar other) const;
    FieldScalar operator*(FieldScalar other) const;
    FieldScalar operator-() const;
    bool operator==(const FieldScalar &) const = default;

   private:
    void check_same(FieldScalar other) const;

    int value_;
    PrimeModulus d_;
};

/// The natural map F_d -> {0, ..., d-1}. Not additive: lift(x + y) may differ from lift(x) + lift(y).
inline int lift(FieldScalar x) {
    return x.value();
}

/// Residue in Z_D, the exponent group of tau.
class PhaseExponent {
   public:
    PhaseExponent(std::int64_t value, PrimeModulus d);

    int value() const {
        return value_;
    }
    int order() const {
        return order_;
    }
    int field_modulus() const {
        return d_.value();
    }

    PhaseExponent operator+(PhaseExponent other) const;
    PhaseExponent operator-(PhaseExponent other) const;
    PhaseExponent operator-() const;
    bool operator==(const PhaseExponent &) const = default;

   private:
    void check_same(PhaseExponent other) const;

    int value_;
    int order_;
    PrimeModulus d_;
};

PhaseExponent phase_add(PhaseExponent p, PhaseExponent q);

/// a = (u, v) in F_d^{2n}. The u half is the Z-type exponent, v the X-type shift.
class SympVector {
   public:
    SympVector(std::vector<int> u, std::vector<int> v, PrimeModulus d);

    static SympVector zero(int n, PrimeModulus d);
    /// Inverse of index(): digits (u_0..u_{n-1}, v_0..v_{n-1}), most significant first.
    static SympVector from_index(std::uint64_t index, int n, PrimeModulus d);

    int n() const {
        return static_cast<int>(u_.size());
    }
    int modulus() const {
        return d_.value();
    }
    PrimeModulus prime() const {
        return d_;
    }
    FieldScalar u(int i) const;
    FieldScalar v(int i) const;
    std::span<const int> u_lifts() const {
        return u_;
    }
    std::span<const int> v_lifts() const {
        return v_;
    }
    bool is_zero() const;

    /// Position in the lexicographic enumeration of F_d^{2n}.
    std::uint64_t index() const;

    std::string str() const;

    bool operator==(const SympVector &) const = default;

   private:
    PrimeModulus d_;
    std::vector<int> u_;
    std::vector<int> v_;
};

std::ostream &operator<<(std::ostream &out, const SympVector &a);

/// |F_d^{2n}| = d^{2n}.
std::uint64_t num_symp_vectors(int n, int d);
/// d^n.
std::uint64_t int_pow(std::uint64_t base, unsigned exponent);

/// [(u,v),(u',v')] = u.v' - u'.v
FieldScalar symplectic_form(const SympVector &a, const SympVector &b);

SympVector vec_add(const SympVector &a, const SympVector &b);
SympVector vec_neg(const SympVector &a);
SympVector vec_sub(const SympVector &a, const SympVector &b);

inline SympVector operator+(const SympVector &a, const SympVector &b) {
    return vec_add(a, b);
}
inline SympVector operator-(const SympVector &a) {
    return vec_neg(a);
}
inline SympVector operator-(const SympVector &a, const SympVector &b) {
    return vec_sub(a, b);
}

}  // namespace punif

template <>
struct std::hash<punif::SympVector> {
    std::size_t operator()(const punif::SympVector &a) const noexcept {
        return std::hash<std::uint64_t>()(a.index() * 131 + static_cast<std::uint64_t>(a.modulus()));
    }
};

#endif
