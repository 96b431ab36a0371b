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
#include <cstdint>
#include <string>
#include <vector>

#include "stabtherm/linalg.hpp"
#include "stabtherm/toric.hpp"

namespace stabtherm {

inline constexpr std::size_t kMaxGroupOrder = 24;

// Finite group given by its multiplication table. Elements are indices
// 0..order-1; mul(a, b) is the product ab, read as "apply b, then a" for
// permutation groups.
class FiniteGroup {
   public:
    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup symmetric(std::size_t n);
    static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names = {},
                                  std::string label = "table");

    std::size_t order() const { return table_.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    std::size_t identity() const { return identity_; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& label() const { return label_; }
    bool is_abelian() const;

    // Conjugacy classes, each sorted, ordered by smallest member.
    const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
    std::size_t class_of(std::size_t a) const;
    // Centralizer of the first member of class k.
    const std::vector<std::size_t>& centralizer(std::size_t k) const { return centralizers_[k]; }

   private:
    std::string label_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::string> names_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_ = 0;
    std::vector<std::vector<std::size_t>> classes_;
    std::vector<std::vector<std::size_t>> centralizers_;
};

// L+ multiplies from the left, L- from the right by the inverse.
// T+^h projects onto |h>, T-^h onto |h^-1>.
enum class Orientation { Plus, Minus };

char orientation_symbol(Orientation o);
Orientation parse_orientation(char c);

// Single-qudit operators in the group-element basis |g>.
Matrix left_multiplication(const FiniteGroup& g, std::size_t h);   // L+^h
Matrix right_multiplication(const FiniteGroup& g, std::size_t h);  // L-^h
Matrix element_projector(const FiniteGroup& g, std::size_t h, Orientation o);  // T+^h or T-^h

struct QuditOps {
    std::vector<Matrix> left;
    std::vector<Matrix> right;
    std::vector<Matrix> proj_plus;
    std::vector<Matrix> proj_minus;
};

QuditOps qudit_ops(const FiniteGroup& g);

// Dense operator on a few qudits. Qudit k of `sites` is digit k (base |G|,
// least significant first) of the local basis index.
struct QuditOperator {
    std::size_t local_dim = 0;
    std::vector<std::size_t> sites;
    Matrix matrix;
};

inline constexpr std::size_t kDenseQuditDimLimit = 4096;

// (1/|G|) sum_g prod_k L^g_k with the sign pattern given clockwise.
QuditOperator vertex_op(const FiniteGroup& g, const std::vector<Orientation>& pattern);
// Sum over g1 g2 g3 g4 = e of prod_k T^{g_k}_k with the given pattern.
QuditOperator plaquette_op(const FiniteGroup& g, const std::vector<Orientation>& pattern);

// Lattice conventions: horizontal links point right, vertical links point up.
// A star lists up, right, down, left (outgoing links take L+, incoming L-).
// A plaquette loop starts at the top-right corner and runs clockwise: right,
// bottom, left, top, with patterns -, -, +, +.
struct LinkAction {
    std::size_t link = 0;
    Orientation orientation = Orientation::Plus;
};

using Star = std::array<LinkAction, 4>;
using Loop = std::array<LinkAction, 4>;

std::vector<Orientation> standard_vertex_pattern();
std::vector<Orientation> standard_plaquette_pattern();

struct Patch {
    std::string name;
    std::size_t num_links = 0;
    std::vector<Star> vertices;
    std::vector<Loop> plaquettes;
};

// Matrix-free application on a patch register of |G|^num_links amplitudes.
Vector apply_vertex(const FiniteGroup& g, const Star& star, std::size_t num_links, const Vector& psi);
Vector apply_plaquette(const FiniteGroup& g, const Loop& loop, std::size_t num_links, const Vector& psi);
Vector apply_single(const Matrix& op, std::size_t link, std::size_t local_dim, std::size_t num_links,
                    const Vector& psi);
bool loop_is_flat(const FiniteGroup& g, const Loop& loop, std::size_t num_links, std::size_t config);

std::size_t patch_dimension(const FiniteGroup& g, std::size_t num_links);

// A plaquette with one vertex at the given corner ("TL", "TR", "BR", "BL"):
// six links, two shared. Links 0..3 are the plaquette's right, bottom, left,
// top edges; 4 and 5 are the vertex's other links.
Patch corner_patch(const std::string& corner);
// Vertex and plaquette with no common link (eight links).
Patch disjoint_patch();
// Two plaquettes side by side sharing link 0 (the left plaquette's right
// edge). Seven links.
Patch two_plaquette_patch();
// Two vertices joined by a horizontal link 0. Seven links.
Patch two_vertex_patch();

// Star and loop lists of the L x L torus, in ToricLattice link numbering.
Patch torus_patch(const ToricLattice& lattice);

struct CommutationEntry {
    std::string geometry;
    std::size_t shared_links = 0;
    std::size_t num_links = 0;
    std::string method;  // "dense", "matrix-free" or "disjoint"
    double commutator_norm = 0.0;
};

struct CommutationReport {
    std::vector<CommutationEntry> entries;
    double max_norm() const;
    bool passed(double tol = 1e-12) const { return max_norm() < tol; }
};

struct CommutationOptions {
    std::size_t num_vectors = 200;
    std::uint64_t seed = 1;
    // Registers up to this dimension use dense matrices.
    std::size_t dense_limit = kDenseQuditDimLimit;
    // Larger registers are skipped above this (matrix-free) dimension.
    std::size_t max_dim = 2'000'000;
};

// [A_v, B_p] for every vertex/plaquette pair in each patch. Dense operator
// 2-norm when small, otherwise the largest ||[A, B] v|| / ||v|| over random v.
CommutationReport commutation_suite(const FiniteGroup& g, const std::vector<Patch>& patches,
                                    const CommutationOptions& options = {});
std::vector<Patch> standard_geometries();

// E+([h]) = |[h]|^{-1/2} sum_{h in [h]} L-^h.
Matrix flux_pair_creator(const FiniteGroup& g, std::size_t class_index);

// Uniform superposition over flat configurations of a patch, projected by
// every star; normalized. Throws ModelError if the projection vanishes.
Vector patch_ground_state(const FiniteGroup& g, const Patch& patch);

}  // namespace stabtherm
