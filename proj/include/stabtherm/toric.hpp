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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stabtherm/stabilizer.hpp"

namespace stabtherm {

// Z2 toric code on an L x L torus with qubits on links.
//
// Vertex (r, c) sits at x = c, y = r. Horizontal link h(r, c) runs from
// vertex (r, c) to (r, c + 1) and has index 2 (r L + c); vertical link
// v(r, c) runs from (r, c) to (r + 1, c) and has index 2 (r L + c) + 1.
// Stars are listed clockwise starting from the upward link; plaquette (r, c)
// has lower-left corner (r, c) and lists bottom, right, top, left.
struct ToricLattice {
    std::size_t size = 0;
    std::vector<std::array<std::size_t, 4>> vertices;
    std::vector<std::array<std::size_t, 4>> plaquettes;
    std::vector<std::array<std::size_t, 2>> link_vertices;
    std::vector<std::array<std::size_t, 2>> link_plaquettes;

    std::size_t num_links() const { return 2 * size * size; }
    std::size_t horizontal_link(long r, long c) const;
    std::size_t vertical_link(long r, long c) const;
    std::size_t vertex_index(long r, long c) const;
    std::size_t plaquette_index(long r, long c) const;
};

ToricLattice build_torus(std::size_t size);

// H = -lambda_e sum_v A_v - lambda_m sum_p B_p, A_v = prod Z, B_p = prod X.
StabilizerHamiltonian toric_hamiltonian(const ToricLattice& lattice, double lambda_e, double lambda_m);

// Non-contractible loops. W^x_1: X on the horizontal links of row 0;
// W^x_2: X on the vertical links of column 0; W^z_1: Z on the vertical
// links of row 0; W^z_2: Z on the horizontal links of column 0. W^x_a
// anticommutes with W^z_b exactly when a != b.
struct LoopOperators {
    PauliString x1;
    PauliString x2;
    PauliString z1;
    PauliString z2;

    std::array<PauliString, 4> all() const { return {x1, x2, z1, z2}; }
};

LoopOperators loop_operators(const ToricLattice& lattice);

enum class Sector { Electric, Magnetic };

std::string sector_name(Sector sector);
Sector parse_sector(const std::string& text);
Axis sector_axis(Sector sector);

// Pair creation (E^dagger), pair annihilation (E) and translation (T) parts
// of sigma^x_j (electric) or sigma^z_j (magnetic). delta is the energy of a
// single excitation, 2 lambda; a pair costs 2 delta.
struct ExcitationOps {
    std::size_t link = 0;
    Sector sector = Sector::Electric;
    PauliSum annihilate;  // E
    PauliSum create;      // E^dagger
    PauliSum translate;   // T
    double delta = 0.0;
};

ExcitationOps excitation_ops(const ToricLattice& lattice, const StabilizerHamiltonian& h, std::size_t link,
                             Sector sector);
std::vector<ExcitationOps> all_excitation_ops(const ToricLattice& lattice, const StabilizerHamiltonian& h);

struct FourierFormFit {
    double prefactor = 0.0;
    double constant = 0.0;
    // ||H - prefactor * S - constant * I||_F / sqrt(dim), S = sum (2 E^dag E + T^2).
    double residual = 0.0;
};

// Least-squares fit of H against the excitation-number form. Works in the
// Pauli coefficient basis, where the Frobenius inner product is diagonal.
FourierFormFit fourier_form_check(const ToricLattice& lattice, const StabilizerHamiltonian& h,
                                  std::span<const ExcitationOps> ops);
PauliSum excitation_number_form(std::span<const ExcitationOps> ops);

}  // namespace stabtherm
