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

#include <cmath>
#include <random>

#include "doctest.h"
#include "stabtherm/bath.hpp"
#include "stabtherm/errors.hpp"
#include "stabtherm/toric.hpp"

using namespace stabtherm;

namespace {

StabilizerHamiltonian single_vertex(double lambda) {
    return StabilizerHamiltonian(4, {{lambda, PauliString::from_text("ZZZZ"), TermKind::Vertex, 0}});
}

Matrix m2(cplx a, cplx b, cplx c, cplx d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

const Matrix kUp = m2(0, 0, 1, 0);    // |1><0|
const Matrix kDown = m2(0, 1, 0, 0);  // |0><1|
const Matrix kX = m2(0, 1, 1, 0);
const Matrix kZ = m2(1, 0, 0, -1);
const Matrix kI = Matrix::Identity(2, 2);

std::vector<EigenoperatorDecomposition> decompose(const StabilizerHamiltonian& h,
                                                  std::vector<std::pair<std::size_t, Axis>> where) {
    std::vector<EigenoperatorDecomposition> out;
    for (auto [s, a] : where) out.push_back(eigenoperator_decomposition(h, s, a));
    return out;
}

}  // namespace

TEST_CASE("detailed-balance rates") {
    CHECK(excitation_rate(0.0, 3.0, 0.4) == 0.4);
    CHECK(std::abs(excitation_rate(0.7, 2.0, 0.4) - 0.4 * std::exp(-1.4)) < 1e-15);
    CHECK(excitation_rate(2.0, 0.0, 0.3) == 0.3);
    CHECK_THROWS_AS(excitation_rate(-1.0, 1.0, 1.0), ParameterError);
}

TEST_CASE("mini-model with one ancilla") {
    const double lambda = 1.0;
    const auto h = single_vertex(lambda);
    const auto d = decompose(h, {{0, Axis::X}});
    for (double beta : {0.0, 1.0}) {
        auto [model, lab] = attach_ancillas(h, d, beta, 0.1);
        REQUIRE(model.ancillas.size() == 1);
        const auto& a = model.ancillas[0];
        CHECK(model.dim() == 32);
        CHECK(lab.dim() == 32);
        CHECK(model.ancilla_qubit(0) == 4);
        CHECK(a.type == AncillaType::Delta);
        CHECK(std::abs(a.omega - 2.0 * lambda) < 1e-15);
        CHECK(std::abs(a.gamma_plus - a.gamma_minus * std::exp(-beta * a.omega)) < 1e-15);
        CHECK(std::abs(model.coupling - 0.05 * a.omega) < 1e-15);

        // Oracle: H_sys - (w/2) Z_a + g X_0 X_a, assembled with Kronecker products.
        const Matrix hs = h.to_dense();
        const Matrix x0 = PauliString::single(4, 0, Axis::X).to_dense();
        const Matrix oracle = kron(kI, hs) - 0.5 * a.omega * kron(kZ, Matrix::Identity(16, 16)) +
                              model.coupling * kron(kX, x0);
        CHECK((Matrix(lab.hamiltonian()) - oracle).norm() < 1e-13);
        REQUIRE(lab.jumps().size() == 2);
        CHECK((Matrix(lab.jumps()[0].op) - kron(kDown, Matrix::Identity(16, 16))).norm() < 1e-15);
        CHECK((Matrix(lab.jumps()[1].op) - kron(kUp, Matrix::Identity(16, 16))).norm() < 1e-15);
        CHECK(lab.jumps()[0].rate == a.gamma_minus);
        CHECK(lab.jumps()[1].rate == a.gamma_plus);
    }
}

TEST_CASE("ancilla ordering is site-major, then axis, then type") {
    const auto lat = build_torus(2);
    const auto h = toric_hamiltonian(lat, 1.0, 1.0);
    const auto d = decompose(h, {{3, Axis::Z}, {1, Axis::X}, {1, Axis::Z}});
    BathOptions opt;
    opt.max_qubits = 14;
    auto [model, lab] = attach_ancillas(h, d, 1.0, 0.1, opt);
    REQUIRE(model.ancillas.size() == 6);
    const std::vector<std::tuple<std::size_t, Axis, AncillaType>> expected = {
        {1, Axis::X, AncillaType::Delta}, {1, Axis::X, AncillaType::Zero}, {1, Axis::Z, AncillaType::Delta},
        {1, Axis::Z, AncillaType::Zero},  {3, Axis::Z, AncillaType::Delta}, {3, Axis::Z, AncillaType::Zero}};
    for (std::size_t k = 0; k < expected.size(); ++k) {
        CHECK(model.ancillas[k].site == std::get<0>(expected[k]));
        CHECK(model.ancillas[k].axis == std::get<1>(expected[k]));
        CHECK(model.ancillas[k].type == std::get<2>(expected[k]));
    }
    CHECK(model.ancillas[1].omega == 0.0);
    CHECK(model.ancillas[1].gamma_plus == model.ancillas[1].gamma_minus);
    CHECK(std::abs(model.ancillas[0].omega - 4.0) < 1e-12);
}

TEST_CASE("full dressing of the L=2 torus exceeds capacity") {
    const auto lat = build_torus(2);
    const auto h = toric_hamiltonian(lat, 1.0, 1.0);
    std::vector<std::pair<std::size_t, Axis>> all;
    for (std::size_t j = 0; j < 8; ++j) {
        all.emplace_back(j, Axis::X);
        all.emplace_back(j, Axis::Z);
    }
    CHECK_THROWS_AS(attach_ancillas(h, decompose(h, all), 1.0, 0.1), CapacityError);
    CHECK_THROWS_AS(attach_ancillas(h, decompose(h, {{0, Axis::X}, {0, Axis::X}}), 1.0, 0.1), ModelError);
}

TEST_CASE("toric RWA Hamiltonian equals the excitation-operator form") {
    const auto lat = build_torus(2);
    const auto h = toric_hamiltonian(lat, 1.0, 1.0);
    const auto d = decompose(h, {{0, Axis::X}});
    BathOptions opt;
    opt.max_qubits = 10;
    opt.coupling = 1.0;
    auto [model, lab] = attach_ancillas(h, d, 1.0, 0.1, opt);
    REQUIRE(model.ancillas.size() == 2);
    const auto ops = excitation_ops(lat, h, 0, Sector::Electric);
    const Matrix e = ops.annihilate.to_dense();
    const Matrix ed = ops.create.to_dense();
    const Matrix t = ops.translate.to_dense();
    // Qubit 8: delta-type ancilla, qubit 9: zero-type ancilla.
    const Matrix oracle = kron(kI, kron(kUp, e)) + kron(kI, kron(kDown, ed)) + kron(kX, kron(kI, t));
    CHECK((rwa_hamiltonian(model, d).to_dense() - oracle).norm() < 1e-12);
}

TEST_CASE("RWA generator rejects mismatched decompositions") {
    const auto h = single_vertex(1.0);
    const auto d = decompose(h, {{0, Axis::X}});
    auto [model, lab] = attach_ancillas(h, d, 1.0, 0.1);
    auto wrong = model;
    wrong.ancillas[0].omega = 1.0;
    CHECK_THROWS_AS(rwa_generator(wrong, d), ModelError);
    CHECK_THROWS_AS(rwa_generator(model, decompose(h, {{1, Axis::X}})), ModelError);
}

TEST_CASE("mini-model composite: Gibbs times ancilla thermal state is stationary") {
    const auto h = single_vertex(1.0);
    for (double beta : {0.5, 1.0, 2.0}) {
        const auto d = decompose(h, {{0, Axis::X}, {1, Axis::X}});
        auto [model, lab] = attach_ancillas(h, d, beta, 0.1);
        const auto rwa = rwa_generator(model, d);
        const Matrix target = model.target_state();
        CHECK(std::abs(target.trace() - cplx(1.0)) < 1e-12);
        CHECK(apply_generator(rwa, target).norm() < 1e-9);
        const Matrix anc = model.ancilla_thermal_state();
        CHECK(std::abs(anc(1, 1).real() / anc(0, 0).real() - std::exp(-beta * 2.0)) < 1e-12);
    }
}

TEST_CASE("mini-model composite kernel counts conserved operators") {
    // Only sites 0 and 1 are coupled, so Z_2, Z_3, X_2 X_3 and their
    // products commute with every term: the RWA kernel is not one-dimensional.
    const auto h = single_vertex(1.0);
    const auto d = decompose(h, {{0, Axis::X}, {1, Axis::X}});
    auto [model, lab] = attach_ancillas(h, d, 1.0, 0.1);
    const auto rwa = rwa_generator(model, d);
    const auto ss = steady_states(rwa);
    CHECK(ss.kernel_dimension > 1);
    const Matrix z2 = kron(Matrix::Identity(4, 4), PauliString::single(4, 2, Axis::Z).to_dense());
    const Matrix x23 = kron(Matrix::Identity(4, 4), PauliString::from_text("IIXX").to_dense());
    for (const Matrix& c : {z2, x23}) {
        CHECK((Matrix(rwa.hamiltonian()) * c - c * Matrix(rwa.hamiltonian())).norm() < 1e-12);
    }
    const Matrix target = model.target_state();
    CHECK(apply_generator(rwa, (target * z2 + z2 * target) / 2.0).norm() < 1e-9);
}

TEST_CASE("Davies reduction on the mini-model") {
    const auto h = single_vertex(1.0);
    std::vector<std::pair<std::size_t, Axis>> all;
    for (std::size_t j = 0; j < 4; ++j) {
        all.emplace_back(j, Axis::X);
        all.emplace_back(j, Axis::Z);
    }
    const auto d = decompose(h, all);
    for (double beta : {0.0, 0.5, 2.0}) {
        const auto g = davies_reduction(h, d, beta, 0.3);
        CHECK(g.jumps().size() == 12);
        const Matrix gibbs = gibbs_state(h, beta);
        CHECK(apply_generator(g, gibbs).norm() < 1e-12);
        const auto ss = steady_states(g);
        CHECK(ss.kernel_dimension == 1);
        CHECK(trace_distance(ss.states.at(0), gibbs) < 1e-10);
    }
    CHECK_THROWS_AS(davies_reduction(h, decompose(h, {{0, Axis::X}}), 1.0, 1.0), ModelError);
    CHECK_THROWS_AS(davies_reduction(h, d, 1.0, 0.0), ParameterError);
    const auto g = davies_reduction(h, d, 1.0, 1.0);
    CHECK(std::abs(g.jumps()[1].rate - std::exp(-2.0)) < 1e-15);
    // Without the z decompositions X_0 X_1 X_2 X_3 is conserved.
    const auto gx = davies_reduction(h, decompose(h, {{0, Axis::X}, {1, Axis::X}, {2, Axis::X}, {3, Axis::X}}), 1.0, 1.0);
    CHECK(steady_states(gx).kernel_dimension > 1);
}

TEST_CASE("Davies reduction on the L=2 torus") {
    const auto lat = build_torus(2);
    const auto h = toric_hamiltonian(lat, 1.0, 1.0);
    std::vector<std::pair<std::size_t, Axis>> all;
    for (std::size_t j = 0; j < 8; ++j) {
        all.emplace_back(j, Axis::X);
        all.emplace_back(j, Axis::Z);
    }
    const auto d = decompose(h, all);

    SUBCASE("infinite temperature") {
        const auto g = davies_reduction(h, d, 0.0, 1.0);
        const auto ss = steady_states(g);
        CHECK(ss.kernel_dimension == 1);
        CHECK(trace_distance(ss.states.at(0), Matrix::Identity(256, 256) / 256.0) < 1e-9);
    }
    SUBCASE("translations alone are not ergodic") {
        DaviesOptions opt;
        opt.include_lowering = false;
        opt.include_raising = false;
        const auto g = davies_reduction(h, d, 1.0, 1.0, opt);
        CHECK(steady_states(g).kernel_dimension > 1);
    }
    SUBCASE("gibbs state is annihilated") {
        const auto g = davies_reduction(h, d, 1.0, 1.0);
        CHECK(apply_generator(g, gibbs_state(h, 1.0)).norm() < 1e-12);
    }
}

TEST_CASE("RWA validity probe") {
    const double lambda = 1.0;
    const auto h = single_vertex(lambda);
    const auto d = decompose(h, {{0, Axis::X}});
    const double delta = 2.0 * lambda;
    std::mt19937_64 rng(5);
    const Matrix rho0 = random_density_matrix(32, rng);

    const auto off = rwa_validity_probe(h, d, 1.0, 0.05 * delta, 0.0, 50.0 / delta, 25, rho0);
    CHECK(off.max_divergence < 1e-10);
    CHECK(off.samples.size() == 26);

    const auto weak = rwa_validity_probe(h, d, 1.0, 0.05 * delta, 0.05 * delta, 50.0 / delta, 25, rho0);
    const auto strong = rwa_validity_probe(h, d, 1.0, 0.05 * delta, 0.5 * delta, 50.0 / delta, 25, rho0);
    MESSAGE("RWA divergence g/D=0.05: " << weak.max_divergence << ", g/D=0.5: " << strong.max_divergence);
    CHECK(weak.max_divergence < 0.05);
    CHECK(strong.max_divergence > weak.max_divergence);
}
