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
#include <string>
#include <vector>

#include "stabtherm/bath.hpp"
#include "stabtherm/linalg.hpp"
#include "stabtherm/pauli.hpp"

namespace stabtherm {

enum class GateKind { Rot1, CPhase, MeasureZ, CondPulse, ThermalReset, SampleBoltzmannBit };

std::string gate_kind_name(GateKind kind);
GateKind parse_gate_kind(const std::string& name);

// ROT1(axis, angle) = exp(-i angle sigma_axis / 2).
// CPHASE multiplies |11> by exp(i angle); angle = pi is the standard CZ.
// COND_PULSE applies ROT1 when the XOR of its condition bits is 1.
// THERMAL_RESET relaxes the qubit towards diag(p0, p1), p1/p0 = exp(-beta omega),
// keeping a fraction `retain` of the populations and sqrt(retain) of the coherences.
struct Gate {
    GateKind kind = GateKind::Rot1;
    std::vector<std::size_t> qubits;
    Axis axis = Axis::Z;
    double angle = 0.0;
    std::size_t bit = 0;
    std::vector<std::size_t> condition;
    double beta = 0.0;
    double omega = 0.0;
    double retain = 0.0;

    bool operator==(const Gate& other) const = default;
};

Gate rot1(std::size_t qubit, Axis axis, double angle);
Gate cphase(std::size_t q1, std::size_t q2, double angle = 3.14159265358979323846);
Gate measure_z(std::size_t qubit, std::size_t bit);
Gate cond_pulse(std::size_t qubit, Axis axis, double angle, std::vector<std::size_t> condition);
Gate thermal_reset(std::size_t qubit, double beta, double omega, double retain = 0.0);
Gate sample_boltzmann_bit(double beta, double omega, std::size_t bit);

// Excited-state population exp(-beta omega) / (1 + exp(-beta omega)).
double boltzmann_excited_population(double beta, double omega);

struct GateSchedule {
    std::size_t num_qubits = 0;
    std::size_t num_bits = 0;
    double total_time = 0.0;
    std::size_t steps = 1;
    std::vector<Gate> gates;

    // Throws ValidationError on out-of-range qubits, non-finite parameters or
    // conditions on bits that were never written.
    void validate() const;
    bool unitary_only() const;
    void append(const GateSchedule& other);
};

// Exact exp(-i phi P) for a Hermitian Pauli string of weight 1..4, using ROT1 and CPHASE only.
GateSchedule compile_pauli_exponential(const PauliString& p, double phi);

enum class ResetMode {
    Rate,      // THERMAL_RESET with the exact per-step relaxation of the ancilla dissipator
    Full,      // THERMAL_RESET with retain = 0
    Measured,  // MEASURE_Z + SAMPLE_BOLTZMANN_BIT + COND_PULSE
};

// First-order Trotter schedule: per step every Hamiltonian term exponential,
// then every reset. With reset_interval = k the resets follow every k-th step
// only (in Rate mode they then carry the relaxation of k steps).
GateSchedule trotterize(const LabFrameModel& model, double t, std::size_t steps, ResetMode mode = ResetMode::Rate,
                        std::size_t reset_interval = 1);

// One-qubit reset schedules. kind 'a' is the THERMAL_RESET primitive, kind 'b'
// the measurement + Boltzmann bit + conditional pulse sequence.
GateSchedule reset_channel(double beta, double omega, char kind);

// Dense unitary of a ROT1/CPHASE schedule.
Matrix schedule_unitary(const GateSchedule& s);

// Channel semantics: measurements and Boltzmann bits are expanded into
// classical branches and summed; no sampling.
Matrix simulate_schedule(const GateSchedule& s, const Matrix& rho0, std::size_t repetitions = 1);

// Column-stacked superoperator of the schedule channel.
Matrix schedule_superoperator(const GateSchedule& s);

// sum_ij |i><j| (x) Phi(|i><j|), input factor on the high index.
Matrix choi_matrix(const GateSchedule& s);
std::size_t numerical_rank(const Matrix& m, double tol = 1e-10);

// Distance of two matrices up to a global phase: min_theta ||a - e^{i theta} b||_F.
double phase_insensitive_distance(const Matrix& a, const Matrix& b);

struct TrotterScaling {
    std::vector<std::size_t> steps;
    std::vector<double> errors;
    double slope = 0.0;  // fitted d log(error) / d log(1/N)
};

// ||S_step^N - exp(L t)||_F for each N, with L the lab-frame generator.
TrotterScaling trotter_scaling(const LabFrameModel& model, double t, const std::vector<std::size_t>& steps,
                               ResetMode mode = ResetMode::Rate);

}  // namespace stabtherm
