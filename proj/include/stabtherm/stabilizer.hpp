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
#include <optional>
#include <string>
#include <vector>

#include "stabtherm/pauli.hpp"

namespace stabtherm {

enum class TermKind { Vertex, Plaquette, Other };

std::string term_kind_name(TermKind kind);

struct StabilizerTerm {
    double coupling = 1.0;  // J > 0, an energy
    PauliString stabilizer;
    TermKind kind = TermKind::Other;
    std::size_t index = 0;  // vertex / plaquette number for lattice terms
};

// H = -sum_k J_k h_k for mutually commuting Hermitian Pauli stabilizers h_k.
// The commutation and involution invariants are checked on construction.
class StabilizerHamiltonian {
   public:
    StabilizerHamiltonian(std::size_t num_qubits, std::vector<StabilizerTerm> terms);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<StabilizerTerm>& terms() const { return terms_; }
    std::optional<std::size_t> find_term(TermKind kind, std::size_t index) const;

    // Ground energy when every stabilizer can be +1 simultaneously.
    double frustration_free_ground_energy() const;

    PauliSum as_pauli_sum() const;
    SparseMatrix to_sparse(std::size_t max_qubits = kDefaultSparseQubitLimit) const;
    Matrix to_dense(std::size_t max_qubits = kDefaultDenseQubitLimit) const;

   private:
    std::size_t num_qubits_;
    std::vector<StabilizerTerm> terms_;
};

// One Fourier component of a local Pauli in the interaction picture. The
// lowering part changes the energy by -2 * epsilon, the raising part by
// +2 * epsilon. For epsilon == 0 both parts equal T / 2 with T the
// energy-preserving (translation) part.
struct FourierComponent {
    double epsilon = 0.0;
    PauliSum lowering;
    PauliSum raising;
};

struct EigenoperatorDecomposition {
    std::size_t site = 0;
    Axis axis = Axis::X;
    // Sorted by increasing epsilon; at most one component has epsilon == 0.
    std::vector<FourierComponent> components;

    std::size_t num_qubits() const;
    // sum_k (a_k + a_k^dagger); equals the source Pauli.
    PauliSum reconstruct() const;
    const FourierComponent* zero_frequency() const;
    std::vector<double> frequencies() const;
    // e^{iHt} sigma e^{-iHt} assembled from the components.
    Matrix heisenberg(double t) const;
};

// Splits sigma^axis_site into eigenoperators of H by sandwiching it between
// products of spectral projectors (I +- h) / 2 of the stabilizers that
// anticommute with it.
EigenoperatorDecomposition eigenoperator_decomposition(const StabilizerHamiltonian& h, std::size_t site,
                                                       Axis axis);

}  // namespace stabtherm
