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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabtherm/linalg.hpp"

namespace stabtherm {

enum class Axis { X, Y, Z };

char axis_letter(Axis axis);
Axis parse_axis(std::string_view text);

// Signed n-qubit Pauli operator in symplectic form.
//
// The represented operator is i^phase * (P_0 (x) P_1 (x) ... ), where the
// letter on qubit q is I, X, Z or Y according to the (x, z) bit pair
// (0,0), (1,0), (0,1), (1,1), and Y = iXZ. Dense and sparse realizations
// place qubit q on bit q of the basis index (qubit 0 is least significant).
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits);

    // Parses "+1 IXYZ", "-i XX", "+i Z". The phase token may be omitted
    // ("XYZ" means "+1 XYZ").
    static PauliString from_text(std::string_view text);
    static PauliString single(std::size_t num_qubits, std::size_t qubit, Axis axis);
    static PauliString on_support(std::size_t num_qubits, std::span<const std::size_t> qubits, Axis axis);

    std::size_t num_qubits() const { return num_qubits_; }
    bool x_bit(std::size_t qubit) const;
    bool z_bit(std::size_t qubit) const;
    char letter(std::size_t qubit) const;
    // Phase as a power of i in {0, 1, 2, 3}.
    std::uint8_t log_i_phase() const { return phase_; }
    cplx phase_factor() const;

    PauliString with_letter(std::size_t qubit, char letter) const;
    PauliString with_log_i_phase(std::uint8_t phase) const;
    PauliString without_phase() const { return with_log_i_phase(0); }
    // Places this string on `num_qubits` qubits with qubit q moved to q + offset.
    PauliString embedded(std::size_t num_qubits, std::size_t offset) const;

    PauliString operator*(const PauliString& rhs) const;
    PauliString adjoint() const;
    bool commutes(const PauliString& other) const;
    bool is_identity_up_to_phase() const;
    bool is_hermitian() const { return (phase_ & 1U) == 0; }
    std::size_t weight() const;
    std::vector<std::size_t> support() const;

    std::string str() const;
    SparseMatrix to_sparse(std::size_t max_qubits = kDefaultSparseQubitLimit) const;
    Matrix to_dense(std::size_t max_qubits = kDefaultDenseQubitLimit) const;

    const std::vector<std::uint64_t>& x_words() const { return xs_; }
    const std::vector<std::uint64_t>& z_words() const { return zs_; }

    bool operator==(const PauliString& other) const = default;
    bool same_letters(const PauliString& other) const;
    bool operator<(const PauliString& other) const;

   private:
    void check_compatible(const PauliString& other) const;

    std::size_t num_qubits_ = 0;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
    std::uint8_t phase_ = 0;
};

PauliString multiply(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);
Matrix to_dense(const PauliString& p, std::size_t max_qubits = kDefaultDenseQubitLimit);

// Linear combination of Pauli strings. Strings are stored with unit phase
// (the phase is folded into the coefficient) and duplicates are merged, so
// two PauliSums representing the same operator have identical term lists.
class PauliSum {
   public:
    struct Term {
        cplx coefficient;
        PauliString string;
    };

    PauliSum() = default;
    explicit PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) {}
    PauliSum(const PauliString& p, cplx coefficient = 1.0);

    static PauliSum identity(std::size_t num_qubits, cplx coefficient = 1.0);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    PauliSum& operator+=(const PauliSum& rhs);
    PauliSum& operator-=(const PauliSum& rhs);
    PauliSum& operator*=(cplx scale);
    PauliSum operator+(const PauliSum& rhs) const;
    PauliSum operator-(const PauliSum& rhs) const;
    PauliSum operator*(const PauliSum& rhs) const;
    PauliSum operator*(cplx scale) const;
    PauliSum adjoint() const;

    // Sum of |coefficient|; zero iff the operator is zero.
    double coefficient_l1() const;
    bool is_hermitian(double tol = 1e-12) const;

    SparseMatrix to_sparse(std::size_t max_qubits = kDefaultSparseQubitLimit) const;
    Matrix to_dense(std::size_t max_qubits = kDefaultDenseQubitLimit) const;

   private:
    void add_term(cplx coefficient, const PauliString& p);
    void canonicalize();

    std::size_t num_qubits_ = 0;
    std::vector<Term> terms_;
};

inline PauliSum operator*(cplx scale, const PauliSum& p) { return p * scale; }

// (I + sign * h) / 2 for a Hermitian Pauli h.
PauliSum spectral_projector(const PauliString& h, int sign);

}  // namespace stabtherm
