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
#include <string>
#include <utility>
#include <vector>

#include "stabtherm/lindblad.hpp"
#include "stabtherm/stabilizer.hpp"

namespace stabtherm {

enum class AncillaType { Delta, Zero };

std::string ancilla_type_name(AncillaType type);

// One thermal pseudospin. omega is the level splitting; gamma_plus drives
// |0> -> |1>, gamma_minus drives |1> -> |0>.
struct AncillaSpec {
    std::size_t site = 0;
    Axis axis = Axis::X;
    AncillaType type = AncillaType::Delta;
    std::size_t component = 0;  // index into the matching decomposition
    double omega = 0.0;
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;

    std::string label() const;
};

// gamma_plus / gamma_minus = exp(-beta omega).
double excitation_rate(double beta, double omega, double gamma_minus);

struct CompositeModel {
    StabilizerHamiltonian system;
    std::vector<AncillaSpec> ancillas;
    double beta = 0.0;
    double coupling = 0.0;  // g in g * sigma (x) Sigma^x

    std::size_t num_system_qubits() const { return system.num_qubits(); }
    std::size_t num_qubits() const { return system.num_qubits() + ancillas.size(); }
    std::size_t dim() const { return std::size_t{1} << num_qubits(); }
    std::size_t ancilla_qubit(std::size_t k) const { return system.num_qubits() + k; }

    // Thermal state of every ancilla, as a 2^M x 2^M matrix.
    Matrix ancilla_thermal_state() const;
    // gibbs(system, beta) (x) ancilla thermal states.
    Matrix target_state() const;
};

struct BathOptions {
    // g; a negative value selects 0.05 times the smallest nonzero omega.
    double coupling = -1.0;
    // Largest composite (system + ancilla) qubit count.
    std::size_t max_qubits = 8;
};

// Lab-frame composite generator. Hamiltonian terms as Pauli strings.
struct HamiltonianTerm {
    cplx coefficient;
    PauliString pauli;
};

struct ResetSpec {
    std::size_t qubit = 0;
    double beta = 0.0;
    double omega = 0.0;
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;
};

struct LabFrameModel {
    std::size_t num_qubits = 0;
    std::vector<HamiltonianTerm> terms;
    std::vector<ResetSpec> resets;
};

LabFrameModel lab_frame_model(const CompositeModel& model);
LindbladGenerator lab_frame_generator(const LabFrameModel& lab);

std::pair<CompositeModel, LindbladGenerator> attach_ancillas(const StabilizerHamiltonian& h,
                                                             const std::vector<EigenoperatorDecomposition>& decomps,
                                                             double beta, double gamma_minus,
                                                             const BathOptions& options = {});

// Interaction-picture generator after the rotating wave approximation.
LindbladGenerator rwa_generator(const CompositeModel& model, const std::vector<EigenoperatorDecomposition>& decomps);

// Only the H_RWA part, as a Pauli sum on the composite register.
PauliSum rwa_hamiltonian(const CompositeModel& model, const std::vector<EigenoperatorDecomposition>& decomps);

struct DaviesOptions {
    bool include_lowering = true;
    bool include_raising = true;
    bool include_translation = true;
};

LindbladGenerator davies_reduction(const StabilizerHamiltonian& h,
                                   const std::vector<EigenoperatorDecomposition>& decomps, double beta, double gamma0,
                                   const DaviesOptions& options = {});

struct RwaProbeSample {
    double time = 0.0;
    double divergence = 0.0;
};

struct RwaProbeReport {
    double coupling = 0.0;
    double gamma_minus = 0.0;
    double max_divergence = 0.0;
    std::vector<RwaProbeSample> samples;
};

// Evolves the same initial state under the lab-frame and RWA generators and
// compares them in the interaction picture.
RwaProbeReport rwa_validity_probe(const StabilizerHamiltonian& h,
                                  const std::vector<EigenoperatorDecomposition>& decomps, double beta,
                                  double gamma_minus, double coupling, double t_max, std::size_t num_samples,
                                  const Matrix& rho0);

}  // namespace stabtherm
