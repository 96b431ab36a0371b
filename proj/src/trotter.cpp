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


#include "stabtherm/trotter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "stabtherm/errors.hpp"

namespace stabtherm {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ValidationError(std::string("gate parameter '") + what + "' is not finite");
}

Matrix rotation(Axis axis, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const cplx i(0.0, 1.0);
    Matrix u(2, 2);
    switch (axis) {
        case Axis::X:
            u << c, -i * s, -i * s, c;
            break;
        case Axis::Y:
            u << c, -s, s, c;
            break;
        case Axis::Z:
            u << std::exp(-i * (angle / 2.0)), 0.0, 0.0, std::exp(i * (angle / 2.0));
            break;
    }
    return u;
}

// M <- U M U^dagger for U acting on one qubit.
void apply_one_qubit(Matrix& m, const Matrix& u, std::size_t qubit) {
    const Eigen::Index dim = m.rows();
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            if (r & bit) continue;
            const cplx a = m(r, c);
            const cplx b = m(r | bit, c);
            m(r, c) = u(0, 0) * a + u(0, 1) * b;
            m(r | bit, c) = u(1, 0) * a + u(1, 1) * b;
        }
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
        if (c & bit) continue;
        for (Eigen::Index r = 0; r < dim; ++r) {
            const cplx a = m(r, c);
            const cplx b = m(r, c | bit);
            m(r, c) = a * std::conj(u(0, 0)) + b * std::conj(u(0, 1));
            m(r, c | bit) = a * std::conj(u(1, 0)) + b * std::conj(u(1, 1));
        }
    }
}

void apply_cphase(Matrix& m, std::size_t q1, std::size_t q2, double angle) {
    const Eigen::Index mask = (Eigen::Index{1} << q1) | (Eigen::Index{1} << q2);
    const cplx ph = std::exp(cplx(0.0, angle));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const bool cc = (c & mask) == mask;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const bool rr = (r & mask) == mask;
            if (rr == cc) continue;
            m(r, c) *= rr ? ph : std::conj(ph);
        }
    }
}

void apply_thermal_reset(Matrix& m, std::size_t qubit, double p1, double retain) {
    const Eigen::Index dim = m.rows();
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    const double keep = std::sqrt(retain);
    for (Eigen::Index c = 0; c < dim; ++c) {
        if (c & bit) continue;
        for (Eigen::Index r = 0; r < dim; ++r) {
            if (r & bit) continue;
            const cplx b00 = m(r, c);
            const cplx b11 = m(r | bit, c | bit);
            const cplx tr = b00 + b11;
            m(r, c) = retain * b00 + (1.0 - retain) * (1.0 - p1) * tr;
            m(r | bit, c | bit) = retain * b11 + (1.0 - retain) * p1 * tr;
            m(r | bit, c) *= keep;
            m(r, c | bit) *= keep;
        }
    }
}

Matrix project(const Matrix& m, std::size_t qubit, bool outcome) {
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    Matrix out = m;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (((r & bit) != 0) != outcome || ((c & bit) != 0) != outcome) out(r, c) = 0.0;
        }
    }
    return out;
}

using Branches = std::map<std::uint64_t, Matrix>;

void merge(Branches& into, std::uint64_t key, Matrix m) {
    auto it = into.find(key);
    if (it == into.end()) {
        into.emplace(key, std::move(m));
    } else {
        it->second += m;
    }
}

std::uint64_t with_bit(std::uint64_t key, std::size_t bit, bool value) {
    return value ? (key | (std::uint64_t{1} << bit)) : (key & ~(std::uint64_t{1} << bit));
}

void run(const GateSchedule& s, Branches& branches) {
    for (const auto& g : s.gates) {
        switch (g.kind) {
            case GateKind::Rot1: {
                const Matrix u = rotation(g.axis, g.angle);
                for (auto& [k, m] : branches) apply_one_qubit(m, u, g.qubits[0]);
                break;
            }
            case GateKind::CPhase:
                for (auto& [k, m] : branches) apply_cphase(m, g.qubits[0], g.qubits[1], g.angle);
                break;
            case GateKind::ThermalReset: {
                const double p1 = boltzmann_excited_population(g.beta, g.omega);
                for (auto& [k, m] : branches) apply_thermal_reset(m, g.qubits[0], p1, g.retain);
                break;
            }
            case GateKind::CondPulse: {
                const Matrix u = rotation(g.axis, g.angle);
                for (auto& [k, m] : branches) {
                    bool parity = false;
                    for (auto b : g.condition) parity ^= ((k >> b) & 1U) != 0;
                    if (parity) apply_one_qubit(m, u, g.qubits[0]);
                }
                break;
            }
            case GateKind::MeasureZ: {
                Branches next;
                for (auto& [k, m] : branches) {
                    merge(next, with_bit(k, g.bit, false), project(m, g.qubits[0], false));
                    merge(next, with_bit(k, g.bit, true), project(m, g.qubits[0], true));
                }
                branches = std::move(next);
                break;
            }
            case GateKind::SampleBoltzmannBit: {
                const double p1 = boltzmann_excited_population(g.beta, g.omega);
                Branches next;
                for (auto& [k, m] : branches) {
                    merge(next, with_bit(k, g.bit, false), (1.0 - p1) * m);
                    merge(next, with_bit(k, g.bit, true), p1 * m);
                }
                branches = std::move(next);
                break;
            }
        }
    }
}

void emit_hadamard(GateSchedule& s, std::size_t q) {
    s.gates.push_back(rot1(q, Axis::Z, kPi));
    s.gates.push_back(rot1(q, Axis::Y, kPi / 2.0));
}

void emit_cnot(GateSchedule& s, std::size_t control, std::size_t target) {
    emit_hadamard(s, target);
    s.gates.push_back(cphase(control, target));
    emit_hadamard(s, target);
}

}  // namespace

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Rot1:
            return "ROT1";
        case GateKind::CPhase:
            return "CPHASE";
        case GateKind::MeasureZ:
            return "MEASURE_Z";
        case GateKind::CondPulse:
            return "COND_PULSE";
        case GateKind::ThermalReset:
            return "THERMAL_RESET";
        case GateKind::SampleBoltzmannBit:
            return "SAMPLE_BOLTZMANN_BIT";
    }
    return "?";
}

GateKind parse_gate_kind(const std::string& name) {
    for (GateKind k : {GateKind::Rot1, GateKind::CPhase, GateKind::MeasureZ, GateKind::CondPulse,
                       GateKind::ThermalReset, GateKind::SampleBoltzmannBit}) {
        if (gate_kind_name(k) == name) return k;
    }
    throw ValidationError("unknown gate kind '" + name + "'");
}

Gate rot1(std::size_t qubit, Axis axis, double angle) {
    Gate g;
    g.kind = GateKind::Rot1;
    g.qubits = {qubit};
    g.axis = axis;
    g.angle = angle;
    return g;
}

Gate cphase(std::size_t q1, std::size_t q2, double angle) {
    Gate g;
    g.kind = GateKind::CPhase;
    g.qubits = {q1, q2};
    g.angle = angle;
    return g;
}

Gate measure_z(std::size_t qubit, std::size_t bit) {
    Gate g;
    g.kind = GateKind::MeasureZ;
    g.qubits = {qubit};
    g.bit = bit;
    return g;
}

Gate cond_pulse(std::size_t qubit, Axis axis, double angle, std::vector<std::size_t> condition) {
    Gate g;
    g.kind = GateKind::CondPulse;
    g.qubits = {qubit};
    g.axis = axis;
    g.angle = angle;
    g.condition = std::move(condition);
    return g;
}

Gate thermal_reset(std::size_t qubit, double beta, double omega, double retain) {
    Gate g;
    g.kind = GateKind::ThermalReset;
    g.qubits = {qubit};
    g.beta = beta;
    g.omega = omega;
    g.retain = retain;
    return g;
}

Gate sample_boltzmann_bit(double beta, double omega, std::size_t bit) {
    Gate g;
    g.kind = GateKind::SampleBoltzmannBit;
    g.beta = beta;
    g.omega = omega;
    g.bit = bit;
    return g;
}

double boltzmann_excited_population(double beta, double omega) {
    const double r = std::exp(-beta * omega);
    return r / (1.0 + r);
}

void GateSchedule::validate() const {
    if (steps == 0) throw ValidationError("schedule: step count must be at least 1");
    if (num_bits > 64) throw ValidationError("schedule: at most 64 classical bits");
    require_finite(total_time, "total_time");
    std::vector<bool> written(num_bits, false);
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const Gate& g = gates[k];
        const std::string where = "gate " + std::to_string(k) + " (" + gate_kind_name(g.kind) + ")";
        const std::size_t want = g.kind == GateKind::CPhase ? 2 : g.kind == GateKind::SampleBoltzmannBit ? 0 : 1;
        if (g.qubits.size() != want) throw ValidationError(where + ": wrong number of qubits");
        for (auto q : g.qubits) {
            if (q >= num_qubits) throw ValidationError(where + ": qubit out of range");
        }
        if (want == 2 && g.qubits[0] == g.qubits[1]) throw ValidationError(where + ": repeated qubit");
        require_finite(g.angle, "angle");
        require_finite(g.beta, "beta");
        require_finite(g.omega, "omega");
        require_finite(g.retain, "retain");
        switch (g.kind) {
            case GateKind::MeasureZ:
            case GateKind::SampleBoltzmannBit:
                if (g.bit >= num_bits) throw ValidationError(where + ": classical bit out of range");
                written[g.bit] = true;
                break;
            case GateKind::CondPulse:
                if (g.condition.empty()) throw ValidationError(where + ": empty condition");
                for (auto b : g.condition) {
                    if (b >= num_bits || !written[b]) {
                        throw ValidationError(where + ": condition reads a bit that was never written");
                    }
                }
                break;
            case GateKind::ThermalReset:
                if (g.retain < 0.0 || g.retain > 1.0) throw ValidationError(where + ": retain must lie in [0, 1]");
                break;
            default:
                break;
        }
        if ((g.kind == GateKind::ThermalReset || g.kind == GateKind::SampleBoltzmannBit) &&
            (g.beta < 0.0 || g.beta * g.omega < 0.0)) {
            throw ValidationError(where + ": negative temperature");
        }
    }
}

bool GateSchedule::unitary_only() const {
    return std::all_of(gates.begin(), gates.end(),
                       [](const Gate& g) { return g.kind == GateKind::Rot1 || g.kind == GateKind::CPhase; });
}

void GateSchedule::append(const GateSchedule& other) {
    if (other.num_qubits != num_qubits) throw DimensionError("schedule append: qubit count mismatch");
    num_bits = std::max(num_bits, other.num_bits);
    const std::vector<Gate> copy = other.gates;
    gates.insert(gates.end(), copy.begin(), copy.end());
}

GateSchedule compile_pauli_exponential(const PauliString& p, double phi) {
    if (!std::isfinite(phi)) throw ParameterError("compile_pauli_exponential: angle must be finite");
    if (!p.is_hermitian()) throw ValidationError("compile_pauli_exponential: Pauli string must be Hermitian");
    const auto support = p.support();
    if (support.empty()) throw ValidationError("compile_pauli_exponential: weight must be at least 1");
    if (support.size() > 4) throw ValidationError("compile_pauli_exponential: weight above 4 is unsupported");
    if (p.log_i_phase() == 2) phi = -phi;

    GateSchedule s;
    s.num_qubits = p.num_qubits();
    if (phi == 0.0) return s;

    auto basis_in = [&](std::size_t q) {
        switch (p.letter(q)) {
            case 'X':
                emit_hadamard(s, q);
                break;
            case 'Y':
                s.gates.push_back(rot1(q, Axis::X, kPi / 2.0));
                break;
            default:
                break;
        }
    };
    auto basis_out = [&](std::size_t q) {
        switch (p.letter(q)) {
            case 'X':
                emit_hadamard(s, q);
                break;
            case 'Y':
                s.gates.push_back(rot1(q, Axis::X, -kPi / 2.0));
                break;
            default:
                break;
        }
    };
    for (auto q : support) basis_in(q);
    for (std::size_t k = 0; k + 1 < support.size(); ++k) emit_cnot(s, support[k], support[k + 1]);
    s.gates.push_back(rot1(support.back(), Axis::Z, 2.0 * phi));
    for (std::size_t k = support.size() - 1; k > 0; --k) emit_cnot(s, support[k - 1], support[k]);
    for (auto q : support) basis_out(q);
    return s;
}

GateSchedule trotterize(const LabFrameModel& model, double t, std::size_t steps, ResetMode mode,
                        std::size_t reset_interval) {
    if (steps == 0) throw ParameterError("trotterize: step count must be at least 1");
    if (reset_interval == 0) throw ParameterError("trotterize: reset interval must be at least 1");
    if (!std::isfinite(t) || t < 0.0) throw ParameterError("trotterize: time must be finite and non-negative");
    GateSchedule s;
    s.num_qubits = model.num_qubits;
    s.total_time = t;
    s.steps = steps;
    if (mode == ResetMode::Measured) s.num_bits = 2 * model.resets.size();
    if (t == 0.0) return s;
    const double dt = t / static_cast<double>(steps);

    GateSchedule step;
    step.num_qubits = model.num_qubits;
    step.num_bits = s.num_bits;
    GateSchedule resets = step;
    for (const auto& term : model.terms) {
        if (term.pauli.num_qubits() != model.num_qubits) throw DimensionError("trotterize: term qubit count");
        if (std::abs(term.coefficient.imag()) > 1e-12 * std::max(1.0, std::abs(term.coefficient))) {
            throw ModelError("trotterize: term " + term.pauli.str() + " has a complex coefficient");
        }
        if (term.pauli.weight() > 4) throw ModelError("trotterize: term " + term.pauli.str() + " has weight above 4");
        if (term.pauli.weight() == 0) continue;
        step.append(compile_pauli_exponential(term.pauli, term.coefficient.real() * dt));
    }
    for (std::size_t k = 0; k < model.resets.size(); ++k) {
        const auto& r = model.resets[k];
        if (r.qubit >= model.num_qubits) throw DimensionError("trotterize: reset qubit out of range");
        switch (mode) {
            case ResetMode::Rate: {
                const double total = 2.0 * (r.gamma_minus + r.gamma_plus);
                if (total == 0.0) break;
                resets.gates.push_back(
                    thermal_reset(r.qubit, r.beta, r.omega, std::exp(-total * dt * static_cast<double>(reset_interval))));
                break;
            }
            case ResetMode::Full:
                resets.gates.push_back(thermal_reset(r.qubit, r.beta, r.omega, 0.0));
                break;
            case ResetMode::Measured:
                resets.gates.push_back(measure_z(r.qubit, 2 * k));
                resets.gates.push_back(sample_boltzmann_bit(r.beta, r.omega, 2 * k + 1));
                resets.gates.push_back(cond_pulse(r.qubit, Axis::X, kPi, {2 * k, 2 * k + 1}));
                break;
        }
    }
    for (std::size_t n = 0; n < steps; ++n) {
        s.append(step);
        if ((n + 1) % reset_interval == 0) s.append(resets);
    }
    return s;
}

GateSchedule reset_channel(double beta, double omega, char kind) {
    if (!std::isfinite(beta) || !std::isfinite(omega)) throw ParameterError("reset_channel: parameters must be finite");
    if (beta < 0.0 || beta * omega < 0.0) throw ParameterError("reset_channel: negative temperature requested");
    GateSchedule s;
    s.num_qubits = 1;
    if (kind == 'a') {
        s.gates.push_back(thermal_reset(0, beta, omega, 0.0));
    } else if (kind == 'b') {
        s.num_bits = 2;
        s.gates.push_back(measure_z(0, 0));
        s.gates.push_back(sample_boltzmann_bit(beta, omega, 1));
        s.gates.push_back(cond_pulse(0, Axis::X, kPi, {0, 1}));
    } else {
        throw ParameterError("reset_channel: implementation must be 'a' or 'b'");
    }
    return s;
}

Matrix schedule_unitary(const GateSchedule& s) {
    s.validate();
    if (!s.unitary_only()) throw ValidationError("schedule_unitary: schedule contains non-unitary operations");
    if (s.num_qubits > kDefaultDenseQubitLimit) throw CapacityError("schedule_unitary: " + std::to_string(s.num_qubits) + " qubits exceeds the limit of " +
                            std::to_string(kDefaultDenseQubitLimit));
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits;
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto& g : s.gates) {
        if (g.kind == GateKind::Rot1) {
            const Matrix r = rotation(g.axis, g.angle);
            const Eigen::Index bit = Eigen::Index{1} << g.qubits[0];
            for (Eigen::Index c = 0; c < dim; ++c) {
                for (Eigen::Index row = 0; row < dim; ++row) {
                    if (row & bit) continue;
                    const cplx a = u(row, c);
                    const cplx b = u(row | bit, c);
                    u(row, c) = r(0, 0) * a + r(0, 1) * b;
                    u(row | bit, c) = r(1, 0) * a + r(1, 1) * b;
                }
            }
        } else {
            const Eigen::Index mask = (Eigen::Index{1} << g.qubits[0]) | (Eigen::Index{1} << g.qubits[1]);
            const cplx ph = std::exp(cplx(0.0, g.angle));
            for (Eigen::Index row = 0; row < dim; ++row) {
                if ((row & mask) == mask) u.row(row) *= ph;
            }
        }
    }
    return u;
}

Matrix simulate_schedule(const GateSchedule& s, const Matrix& rho0, std::size_t repetitions) {
    s.validate();
    if (s.num_qubits > kDefaultDenseQubitLimit) throw CapacityError("simulate_schedule: " + std::to_string(s.num_qubits) + " qubits exceeds the limit of " +
                            std::to_string(kDefaultDenseQubitLimit));
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits;
    if (rho0.rows() != dim || rho0.cols() != dim) throw DimensionError("simulate_schedule: state shape mismatch");
    Branches branches;
    branches.emplace(0, rho0);
    for (std::size_t r = 0; r < repetitions; ++r) run(s, branches);
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& [k, m] : branches) out += m;
    return out;
}

Matrix schedule_superoperator(const GateSchedule& s) {
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits;
    Matrix out(dim * dim, dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            Matrix e = Matrix::Zero(dim, dim);
            e(i, j) = 1.0;
            out.col(j * dim + i) = vectorize(simulate_schedule(s, e));
        }
    }
    return out;
}

Matrix choi_matrix(const GateSchedule& s) {
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits;
    Matrix out = Matrix::Zero(dim * dim, dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            Matrix e = Matrix::Zero(dim, dim);
            e(i, j) = 1.0;
            out.block(i * dim, j * dim, dim, dim) = simulate_schedule(s, e);
        }
    }
    return out;
}

std::size_t numerical_rank(const Matrix& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > tol * std::max(1.0, sv(0))) ++rank;
    }
    return rank;
}

double phase_insensitive_distance(const Matrix& a, const Matrix& b) {
    const cplx overlap = (b.adjoint() * a).trace();
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
    return (a - phase * b).norm();
}

TrotterScaling trotter_scaling(const LabFrameModel& model, double t, const std::vector<std::size_t>& steps,
                               ResetMode mode) {
    if (steps.size() < 2) throw ParameterError("trotter_scaling: need at least two step counts");
    const LindbladGenerator g = lab_frame_generator(model);
    const Matrix exact = (Matrix(build_superoperator(g)) * t).exp();
    TrotterScaling out;
    for (auto n : steps) {
        const GateSchedule one = trotterize(model, t / static_cast<double>(n), 1, mode);
        Matrix base = schedule_superoperator(one);
        Matrix power = Matrix::Identity(base.rows(), base.cols());
        for (std::size_t e = n; e > 0; e >>= 1) {
            if (e & 1U) power = power * base;
            if (e > 1) base = base * base;
        }
        out.steps.push_back(n);
        out.errors.push_back((power - exact).norm());
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double x = std::log(static_cast<double>(out.steps[i]));
        const double y = std::log(out.errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = -(k * sxy - sx * sy) / (k * sxx - sx * sx);
    return out;
}

}  // namespace stabtherm
