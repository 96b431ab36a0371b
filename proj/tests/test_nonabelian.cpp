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


#include <algorithm>
#include <set>
#include <random>

#include "doctest.h"
#include "stabtherm/errors.hpp"
#include "stabtherm/nonabelian.hpp"
#include "stabtherm/toric.hpp"

using namespace stabtherm;

namespace {

Matrix kron_all(const std::vector<Matrix>& factors) {
    // factors[k] acts on digit k; the last factor is the most significant.
    Matrix out = Matrix::Identity(1, 1);
    for (const auto& f : factors) out = kron(f, out);
    return out;
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix hadamard() {
    Matrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

std::size_t rank_of(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    return static_cast<std::size_t>((es.eigenvalues().array() > 0.5).count());
}

Matrix dense_vertex(const FiniteGroup& g, const Star& s, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(patch_dimension(g, n));
    Matrix m(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        Vector e = Vector::Zero(dim);
        e(k) = 1.0;
        m.col(k) = apply_vertex(g, s, n, e);
    }
    return m;
}

Matrix dense_plaquette(const FiniteGroup& g, const Loop& l, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(patch_dimension(g, n));
    Vector d(dim);
    for (Eigen::Index k = 0; k < dim; ++k) d(k) = loop_is_flat(g, l, n, static_cast<std::size_t>(k)) ? 1.0 : 0.0;
    return d.asDiagonal();
}

Vector random_vector(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v(k) = cplx(n(rng), n(rng));
    return v / v.norm();
}

// Permutations of {0, 1, 2}, independent of the library's table.
using Perm = std::array<int, 3>;
Perm compose(const Perm& a, const Perm& b) { return {a[b[0]], a[b[1]], a[b[2]]}; }
Perm invert(const Perm& a) {
    Perm r{};
    for (int k = 0; k < 3; ++k) r[a[k]] = k;
    return r;
}

}  // namespace

TEST_CASE("groups") {
    SUBCASE("Z2") {
        const auto g = FiniteGroup::cyclic(2);
        CHECK(g.order() == 2);
        CHECK(g.classes().size() == 2);
        CHECK(g.is_abelian());
    }
    SUBCASE("S3 classes and centralizers") {
        const auto g = FiniteGroup::symmetric(3);
        CHECK(g.order() == 6);
        CHECK_FALSE(g.is_abelian());
        std::vector<std::size_t> sizes;
        for (const auto& c : g.classes()) sizes.push_back(c.size());
        CHECK(sizes == std::vector<std::size_t>{1, 3, 2});

        // Brute-force orbit sizes over all 36 (x, a) pairs on explicit permutations.
        std::vector<Perm> all{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        std::multiset<std::size_t> orbit_sizes;
        std::set<Perm> seen;
        for (const auto& a : all) {
            if (seen.count(a)) continue;
            std::set<Perm> orbit;
            for (const auto& x : all) orbit.insert(compose(compose(x, a), invert(x)));
            seen.insert(orbit.begin(), orbit.end());
            orbit_sizes.insert(orbit.size());
        }
        CHECK(orbit_sizes == std::multiset<std::size_t>{1, 2, 3});

        // A transposition commutes with itself and the identity only.
        const std::size_t t = g.classes()[1][0];
        CHECK(g.centralizer(g.class_of(t)).size() == 2);
        std::size_t brute = 0;
        for (std::size_t x = 0; x < 6; ++x) brute += g.mul(x, t) == g.mul(t, x);
        CHECK(brute == 2);
    }
    SUBCASE("table validation") {
        CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {0, 1}}), ValidationError);
        // a * b = -a - b mod 3 is a Latin square but not associative.
        CHECK_THROWS_AS(FiniteGroup::from_table({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), ValidationError);
        CHECK_THROWS_AS(FiniteGroup::from_table({{0, 3}, {1, 0}}), ValidationError);
        CHECK_THROWS_AS(FiniteGroup::cyclic(25), ValidationError);
        CHECK_THROWS_AS(FiniteGroup::symmetric(5), ValidationError);
        const auto z3 = FiniteGroup::from_table({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
        CHECK(z3.identity() == 2);
        CHECK(z3.classes()[z3.class_of(2)].size() == 1);
    }
    SUBCASE("S4 is consistent") {
        const auto g = FiniteGroup::symmetric(4);
        CHECK(g.order() == 24);
        std::vector<std::size_t> sizes;
        for (const auto& c : g.classes()) sizes.push_back(c.size());
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<std::size_t>{1, 3, 6, 6, 8});
    }
}

TEST_CASE("qudit operators") {
    for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(5), FiniteGroup::symmetric(3)}) {
        const auto ops = qudit_ops(g);
        const auto n = static_cast<Eigen::Index>(g.order());
        CHECK((ops.left[g.identity()] - Matrix::Identity(n, n)).norm() == 0.0);
        Matrix sum = Matrix::Zero(n, n);
        for (std::size_t a = 0; a < g.order(); ++a) {
            sum += ops.proj_plus[a];
            CHECK((ops.left[a] * ops.left[a].adjoint() - Matrix::Identity(n, n)).norm() == 0.0);
            CHECK((ops.proj_minus[a] - ops.proj_plus[g.inverse(a)]).norm() == 0.0);
            CHECK((ops.proj_plus[a] * ops.proj_plus[a] - ops.proj_plus[a]).norm() == 0.0);
            for (std::size_t b = 0; b < g.order(); ++b) {
                CHECK((ops.left[a] * ops.left[b] - ops.left[g.mul(a, b)]).norm() == 0.0);
                CHECK((ops.right[a] * ops.right[b] - ops.right[g.mul(a, b)]).norm() == 0.0);
                CHECK((ops.left[a] * ops.right[b] - ops.right[b] * ops.left[a]).norm() == 0.0);
            }
        }
        CHECK((sum - Matrix::Identity(n, n)).norm() == 0.0);
    }
    const auto z2 = FiniteGroup::cyclic(2);
    CHECK((left_multiplication(z2, 1) - pauli_x()).norm() == 0.0);
    CHECK((right_multiplication(z2, 1) - pauli_x()).norm() == 0.0);
}

TEST_CASE("vertex operator") {
    SUBCASE("Z2 matches (I + XXXX) / 2") {
        const auto a = vertex_op(FiniteGroup::cyclic(2), standard_vertex_pattern());
        const Matrix x4 = kron_all({pauli_x(), pauli_x(), pauli_x(), pauli_x()});
        CHECK((a.matrix - 0.5 * (Matrix::Identity(16, 16) + x4)).norm() < 1e-14);
        CHECK(rank_of(a.matrix) == 8);
    }
    SUBCASE("S3 projector against a Kronecker oracle") {
        const auto g = FiniteGroup::symmetric(3);
        const auto a = vertex_op(g, standard_vertex_pattern());
        CHECK(a.matrix.rows() == 1296);
        CHECK((a.matrix * a.matrix - a.matrix).norm() < 1e-12);
        CHECK((a.matrix - a.matrix.adjoint()).norm() < 1e-12);
        Matrix oracle = Matrix::Zero(1296, 1296);
        for (std::size_t h = 0; h < 6; ++h) {
            const Matrix lp = left_multiplication(g, h);
            const Matrix lm = right_multiplication(g, h);
            oracle += kron_all({lp, lp, lm, lm});
        }
        CHECK((a.matrix - oracle / 6.0).norm() < 1e-12);
    }
    SUBCASE("trivial group") {
        const auto a = vertex_op(FiniteGroup::cyclic(1), standard_vertex_pattern());
        CHECK((a.matrix - Matrix::Identity(1, 1)).norm() == 0.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(vertex_op(FiniteGroup::cyclic(2), {Orientation::Plus}), ValidationError);
        CHECK_THROWS_AS(vertex_op(FiniteGroup::symmetric(4), standard_vertex_pattern()), CapacityError);
        CHECK_THROWS_AS(parse_orientation('x'), ValidationError);
    }
}

TEST_CASE("plaquette operator") {
    SUBCASE("Z2 matches (I + ZZZZ) / 2") {
        const auto b = plaquette_op(FiniteGroup::cyclic(2), standard_plaquette_pattern());
        const Matrix z4 = kron_all({pauli_z(), pauli_z(), pauli_z(), pauli_z()});
        CHECK((b.matrix - 0.5 * (Matrix::Identity(16, 16) + z4)).norm() < 1e-14);
        CHECK(rank_of(b.matrix) == 8);
    }
    SUBCASE("S3 rank and Kronecker oracle") {
        const auto g = FiniteGroup::symmetric(3);
        const auto b = plaquette_op(g, standard_plaquette_pattern());
        CHECK(rank_of(b.matrix) == 216);
        CHECK((b.matrix * b.matrix - b.matrix).norm() < 1e-12);
        Matrix oracle = Matrix::Zero(1296, 1296);
        for (std::size_t g1 = 0; g1 < 6; ++g1) {
            for (std::size_t g2 = 0; g2 < 6; ++g2) {
                for (std::size_t g3 = 0; g3 < 6; ++g3) {
                    for (std::size_t g4 = 0; g4 < 6; ++g4) {
                        if (g.mul(g.mul(g1, g2), g.mul(g3, g4)) != g.identity()) continue;
                        oracle += kron_all({element_projector(g, g1, Orientation::Minus),
                                            element_projector(g, g2, Orientation::Minus),
                                            element_projector(g, g3, Orientation::Plus),
                                            element_projector(g, g4, Orientation::Plus)});
                    }
                }
            }
        }
        CHECK((b.matrix - oracle).norm() < 1e-12);
    }
    SUBCASE("trivial group") {
        const auto b = plaquette_op(FiniteGroup::cyclic(1), standard_plaquette_pattern());
        CHECK((b.matrix - Matrix::Identity(1, 1)).norm() == 0.0);
    }
}

TEST_CASE("commutation suite") {
    SUBCASE("Z2, dense") {
        const auto report = commutation_suite(FiniteGroup::cyclic(2), standard_geometries());
        CHECK(report.entries.size() == 5);
        for (const auto& e : report.entries) {
            CHECK(e.method == "dense");
            CHECK(e.shared_links == (e.geometry.rfind("disjoint", 0) == 0 ? 0u : 2u));
        }
        CHECK(report.passed());
    }
    SUBCASE("S3, matrix-free on shared-link corners") {
        const auto report = commutation_suite(FiniteGroup::symmetric(3), standard_geometries());
        for (const auto& e : report.entries) {
            CHECK(e.method == (e.shared_links == 0 ? "disjoint" : "matrix-free"));
        }
        CHECK(report.max_norm() < 1e-12);
    }
    SUBCASE("S3, sparse Kronecker cross-check on one corner") {
        const auto g = FiniteGroup::symmetric(3);
        const SparseMatrix id = sparse_identity(6);
        auto sparse = [](const Matrix& m) {
            SparseMatrix s = m.sparseView();
            return s;
        };
        auto kron6 = [&](const std::vector<SparseMatrix>& f) {
            SparseMatrix out = sparse_identity(1);
            for (const auto& m : f) out = kron(m, out);
            return out;
        };
        // Corner TR: plaquette right, bottom, left, top on links 0..3, star up 4, right 5, down 0, left 3.
        SparseMatrix a(46656, 46656), b(46656, 46656);
        for (std::size_t h = 0; h < 6; ++h) {
            const SparseMatrix lp = sparse(left_multiplication(g, h));
            const SparseMatrix lm = sparse(right_multiplication(g, h));
            a += kron6({lm, id, id, lm, lp, lp});
        }
        a /= 6.0;
        for (std::size_t g1 = 0; g1 < 6; ++g1) {
            for (std::size_t g2 = 0; g2 < 6; ++g2) {
                for (std::size_t g3 = 0; g3 < 6; ++g3) {
                    const std::size_t g4 = g.inverse(g.mul(g.mul(g1, g2), g3));
                    b += kron6({sparse(element_projector(g, g1, Orientation::Minus)),
                                sparse(element_projector(g, g2, Orientation::Minus)),
                                sparse(element_projector(g, g3, Orientation::Plus)),
                                sparse(element_projector(g, g4, Orientation::Plus)), id, id});
                }
            }
        }
        const SparseMatrix comm = a * b - b * a;
        CHECK(comm.norm() < 1e-12);
        const Patch p = corner_patch("TR");
        std::mt19937_64 rng(2);
        const Vector v = random_vector(46656, rng);
        CHECK((apply_vertex(g, p.vertices[0], 6, v) - a * v).norm() < 1e-12);
        CHECK((apply_plaquette(g, p.plaquettes[0], 6, v) - b * v).norm() < 1e-12);
    }
    SUBCASE("a mismatched loop orientation is detected") {
        Patch p = corner_patch("TR");
        for (auto& link : p.plaquettes[0]) {
            link.orientation = link.orientation == Orientation::Plus ? Orientation::Minus : Orientation::Plus;
        }
        std::swap(p.plaquettes[0][0], p.plaquettes[0][3]);
        std::swap(p.plaquettes[0][1], p.plaquettes[0][2]);
        // Reversed traversal of the same loop is still a valid holonomy.
        CHECK(commutation_suite(FiniteGroup::symmetric(3), {p}, {20}).max_norm() < 1e-12);
        p = corner_patch("TR");
        p.plaquettes[0][0].orientation = Orientation::Plus;
        CHECK(commutation_suite(FiniteGroup::symmetric(3), {p}, {20}).max_norm() > 1e-3);
    }
    SUBCASE("Z2 on the L=2 torus") {
        const auto report = commutation_suite(FiniteGroup::cyclic(2), {torus_patch(build_torus(2))});
        CHECK(report.entries.size() == 16);
        CHECK(report.passed());
    }
}

TEST_CASE("Z2 model maps onto the toric Hamiltonian") {
    const auto g = FiniteGroup::cyclic(2);
    const auto lattice = build_torus(2);
    const Patch p = torus_patch(lattice);
    Matrix h = Matrix::Zero(256, 256);
    const Matrix id = Matrix::Identity(256, 256);
    for (const auto& s : p.vertices) h -= 2.0 * dense_vertex(g, s, 8) - id;
    for (const auto& l : p.plaquettes) h -= 2.0 * dense_plaquette(g, l, 8) - id;
    std::vector<Matrix> hs(8, hadamard());
    const Matrix u = kron_all(hs);
    const Matrix toric = toric_hamiltonian(lattice, 1.0, 1.0).to_dense();
    CHECK((u * h * u - toric).norm() < 1e-12);
}

TEST_CASE("vertex operators commute with each other") {
    SUBCASE("Z2 dense") {
        const auto g = FiniteGroup::cyclic(2);
        const Patch p = two_vertex_patch();
        const Matrix a = dense_vertex(g, p.vertices[0], 7);
        const Matrix b = dense_vertex(g, p.vertices[1], 7);
        CHECK((a * b - b * a).norm() < 1e-12);
    }
    SUBCASE("S3 matrix-free") {
        const auto g = FiniteGroup::symmetric(3);
        const Patch p = two_vertex_patch();
        std::mt19937_64 rng(4);
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const Vector v = random_vector(static_cast<Eigen::Index>(patch_dimension(g, 7)), rng);
            const Vector ab = apply_vertex(g, p.vertices[0], 7, apply_vertex(g, p.vertices[1], 7, v));
            const Vector ba = apply_vertex(g, p.vertices[1], 7, apply_vertex(g, p.vertices[0], 7, v));
            worst = std::max(worst, (ab - ba).norm());
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("joint ground state of a patch") {
    for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)}) {
        for (const auto& p : {corner_patch("BL"), two_plaquette_patch()}) {
            const Vector psi = patch_ground_state(g, p);
            for (const auto& s : p.vertices) CHECK((apply_vertex(g, s, p.num_links, psi) - psi).norm() < 1e-12);
            for (const auto& l : p.plaquettes) CHECK((apply_plaquette(g, l, p.num_links, psi) - psi).norm() < 1e-12);
        }
    }
}

TEST_CASE("flux pair creation") {
    SUBCASE("identity class") {
        const auto g = FiniteGroup::symmetric(3);
        CHECK((flux_pair_creator(g, g.class_of(g.identity())) - Matrix::Identity(6, 6)).norm() == 0.0);
        CHECK_THROWS_AS(flux_pair_creator(g, 3), ValidationError);
    }
    SUBCASE("Z2 flips both neighbouring plaquettes") {
        const auto g = FiniteGroup::cyclic(2);
        const Matrix e = flux_pair_creator(g, 1);
        CHECK((e - right_multiplication(g, 1)).norm() == 0.0);
        const Patch p = two_plaquette_patch();
        const Vector psi = patch_ground_state(g, p);
        const Vector out = apply_single(e, 0, 2, 7, psi);
        CHECK(std::abs(out.norm() - 1.0) < 1e-12);
        for (const auto& l : p.plaquettes) CHECK(apply_plaquette(g, l, 7, out).norm() < 1e-12);
        // Link 1 borders only the left plaquette.
        const Vector edge = apply_single(e, 1, 2, 7, psi);
        CHECK(apply_plaquette(g, p.plaquettes[0], 7, edge).norm() < 1e-12);
        CHECK((apply_plaquette(g, p.plaquettes[1], 7, edge) - edge).norm() < 1e-12);
    }
    SUBCASE("S3 transposition class") {
        const auto g = FiniteGroup::symmetric(3);
        const std::size_t cls = g.class_of(g.classes()[1][0]);
        REQUIRE(g.classes()[cls].size() == 3);
        const Matrix e = flux_pair_creator(g, cls);
        Matrix sum = Matrix::Zero(6, 6);
        for (auto h : g.classes()[cls]) sum += right_multiplication(g, h);
        CHECK((e - sum / std::sqrt(3.0)).norm() < 1e-15);

        const Patch p = two_plaquette_patch();
        const std::size_t dim = patch_dimension(g, 7);
        Vector flat = Vector::Zero(static_cast<Eigen::Index>(dim));
        flat(0) = 1.0;  // every link in the identity element
        for (const Vector& psi : {flat, patch_ground_state(g, p)}) {
            for (const auto& l : p.plaquettes) CHECK((apply_plaquette(g, l, 7, psi) - psi).norm() < 1e-12);
            const Vector out = apply_single(e, 0, 6, 7, psi);
            CHECK(out.norm() > 0.5);
            for (const auto& l : p.plaquettes) CHECK(apply_plaquette(g, l, 7, out).norm() < 1e-12);
        }
    }
}
