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


#include "stabtherm/bath.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "stabtherm/errors.hpp"

namespace stabtherm {

namespace {

PauliSum embed(const PauliSum& op, std::size_t num_qubits) {
    PauliSum out(num_qubits);
    for (const auto& t : op.terms()) out += PauliSum(t.string.embedded(num_qubits, 0), t.coefficient);
    return out;
}

PauliSum ancilla_op(std::size_t num_qubits, std::size_t qubit, char which) {
    const PauliSum x(PauliString::single(num_qubits, qubit, Axis::X));
    const PauliSum y(PauliString::single(num_qubits, qubit, Axis::Y));
    switch (which) {
        case '+':
            return (x - y * cplx(0.0, 1.0)) * 0.5;  // |1><0|
        case '-':
            return (x + y * cplx(0.0, 1.0)) * 0.5;  // |0><1|
        default:
            return x;
    }
}

std::vector<const EigenoperatorDecomposition*> sorted_decompositions(
    const StabilizerHamiltonian& h, const std::vector<EigenoperatorDecomposition>& decomps) {
    std::vector<const EigenoperatorDecomposition*> out;
    for (const auto& d : decomps) {
        if (d.site >= h.num_qubits()) throw DimensionError("decomposition site out of range");
        if (!d.components.empty() && d.num_qubits() != h.num_qubits()) {
            throw DimensionError("decomposition qubit count does not match the Hamiltonian");
        }
        out.push_back(&d);
    }
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) {
        return std::pair(a->site, static_cast<int>(a->axis)) < std::pair(b->site, static_cast<int>(b->axis));
    });
    for (std::size_t k = 1; k < out.size(); ++k) {
        if (out[k]->site == out[k - 1]->site && out[k]->axis == out[k - 1]->axis) {
            throw ModelError("duplicate decomposition for site " + std::to_string(out[k]->site));
        }
    }
    return out;
}

const EigenoperatorDecomposition& matching(const AncillaSpec& a,
                                           const std::vector<EigenoperatorDecomposition>& decomps) {
    for (const auto& d : decomps) {
        if (d.site == a.site && d.axis == a.axis) {
            if (a.component >= d.components.size()) throw ModelError("ancilla " + a.label() + ": no such component");
            const auto& c = d.components[a.component];
            const double expected = 2.0 * c.epsilon;
            if (std::abs(expected - a.omega) > 1e-9 * std::max(1.0, expected)) {
                throw ModelError("ancilla " + a.label() + ": frequency does not match its Fourier component");
            }
            if ((c.epsilon == 0.0) != (a.type == AncillaType::Zero)) {
                throw ModelError("ancilla " + a.label() + ": type does not match its Fourier component");
            }
            return d;
        }
    }
    throw ModelError("ancilla " + a.label() + ": no matching decomposition");
}

Matrix thermal_qubit(double p1_over_p0) {
    Matrix t = Matrix::Zero(2, 2);
    t(0, 0) = 1.0 / (1.0 + p1_over_p0);
    t(1, 1) = p1_over_p0 / (1.0 + p1_over_p0);
    return t;
}

}  // namespace

std::string ancilla_type_name(AncillaType type) { return type == AncillaType::Delta ? "delta" : "zero"; }

std::string AncillaSpec::label() const {
    std::ostringstream os;
    os << ancilla_type_name(type) << '[' << site << ',' << axis_letter(axis) << ",w=" << omega << ']';
    return os.str();
}

double excitation_rate(double beta, double omega, double gamma_minus) {
    if (!std::isfinite(beta) || beta < 0.0) throw ParameterError("beta must be finite and non-negative");
    if (!std::isfinite(gamma_minus) || gamma_minus < 0.0) throw ParameterError("gamma_minus must be non-negative");
    return gamma_minus * std::exp(-beta * omega);
}

Matrix CompositeModel::ancilla_thermal_state() const {
    Matrix state = Matrix::Identity(1, 1);
    for (const auto& a : ancillas) {
        const double ratio = a.gamma_minus > 0.0 ? a.gamma_plus / a.gamma_minus : std::exp(-beta * a.omega);
        state = kron(thermal_qubit(ratio), state);
    }
    return state;
}

Matrix CompositeModel::target_state() const { return kron(ancilla_thermal_state(), gibbs_state(system, beta)); }

LabFrameModel lab_frame_model(const CompositeModel& model) {
    LabFrameModel lab;
    lab.num_qubits = model.num_qubits();
    for (const auto& t : model.system.terms()) {
        lab.terms.push_back({-t.coupling, t.stabilizer.embedded(lab.num_qubits, 0)});
    }
    for (std::size_t k = 0; k < model.ancillas.size(); ++k) {
        const auto& a = model.ancillas[k];
        const std::size_t q = model.ancilla_qubit(k);
        if (a.omega != 0.0) lab.terms.push_back({-0.5 * a.omega, PauliString::single(lab.num_qubits, q, Axis::Z)});
        if (model.coupling != 0.0) {
            const PauliString s = PauliString::single(lab.num_qubits, a.site, a.axis) *
                                  PauliString::single(lab.num_qubits, q, Axis::X);
            lab.terms.push_back({model.coupling, s});
        }
        lab.resets.push_back({q, model.beta, a.omega, a.gamma_minus, a.gamma_plus});
    }
    return lab;
}

LindbladGenerator lab_frame_generator(const LabFrameModel& lab) {
    PauliSum h(lab.num_qubits);
    for (const auto& t : lab.terms) h += PauliSum(t.pauli, t.coefficient);
    std::vector<JumpOperator> jumps;
    for (const auto& r : lab.resets) {
        const std::string q = std::to_string(r.qubit);
        jumps.push_back({ancilla_op(lab.num_qubits, r.qubit, '-').to_sparse(), r.gamma_minus, "Sigma-[" + q + "]"});
        jumps.push_back({ancilla_op(lab.num_qubits, r.qubit, '+').to_sparse(), r.gamma_plus, "Sigma+[" + q + "]"});
    }
    return LindbladGenerator(h.to_sparse(), std::move(jumps));
}

std::pair<CompositeModel, LindbladGenerator> attach_ancillas(const StabilizerHamiltonian& h,
                                                             const std::vector<EigenoperatorDecomposition>& decomps,
                                                             double beta, double gamma_minus,
                                                             const BathOptions& options) {
    CompositeModel model{h, {}, beta, 0.0};
    for (const auto* d : sorted_decompositions(h, decomps)) {
        std::vector<std::size_t> order;
        for (std::size_t k = 0; k < d->components.size(); ++k) {
            if (d->components[k].epsilon > 0.0) order.push_back(k);
        }
        for (std::size_t k = 0; k < d->components.size(); ++k) {
            if (d->components[k].epsilon == 0.0) order.push_back(k);
        }
        for (std::size_t k : order) {
            AncillaSpec a;
            a.site = d->site;
            a.axis = d->axis;
            a.component = k;
            a.omega = 2.0 * d->components[k].epsilon;
            a.type = a.omega > 0.0 ? AncillaType::Delta : AncillaType::Zero;
            a.gamma_minus = gamma_minus;
            a.gamma_plus = excitation_rate(beta, a.omega, gamma_minus);
            model.ancillas.push_back(a);
        }
    }
    if (model.num_qubits() > options.max_qubits) {
        throw CapacityError("composite model needs " + std::to_string(model.num_qubits()) + " qubits (" +
                            std::to_string(h.num_qubits()) + " system + " + std::to_string(model.ancillas.size()) +
                            " ancillas); limit is " + std::to_string(options.max_qubits));
    }
    if (options.coupling >= 0.0) {
        model.coupling = options.coupling;
    } else {
        double smallest = 0.0;
        for (const auto& a : model.ancillas) {
            if (a.omega > 0.0 && (smallest == 0.0 || a.omega < smallest)) smallest = a.omega;
        }
        model.coupling = 0.05 * (smallest > 0.0 ? smallest : 1.0);
    }
    LindbladGenerator g = lab_frame_generator(lab_frame_model(model));
    return {std::move(model), std::move(g)};
}

PauliSum rwa_hamiltonian(const CompositeModel& model, const std::vector<EigenoperatorDecomposition>& decomps) {
    const std::size_t n = model.num_qubits();
    PauliSum h(n);
    for (std::size_t k = 0; k < model.ancillas.size(); ++k) {
        const auto& a = model.ancillas[k];
        const auto& c = matching(a, decomps).components[a.component];
        const std::size_t q = model.ancilla_qubit(k);
        if (a.type == AncillaType::Delta) {
            h += embed(c.lowering, n) * ancilla_op(n, q, '+');
            h += embed(c.raising, n) * ancilla_op(n, q, '-');
        } else {
            h += embed(c.lowering + c.raising, n) * ancilla_op(n, q, 'x');
        }
    }
    return h * model.coupling;
}

LindbladGenerator rwa_generator(const CompositeModel& model, const std::vector<EigenoperatorDecomposition>& decomps) {
    const LindbladGenerator lab = lab_frame_generator(lab_frame_model(model));
    return LindbladGenerator(rwa_hamiltonian(model, decomps).to_sparse(), lab.jumps());
}

LindbladGenerator davies_reduction(const StabilizerHamiltonian& h,
                                   const std::vector<EigenoperatorDecomposition>& decomps, double beta, double gamma0,
                                   const DaviesOptions& options) {
    if (!std::isfinite(gamma0) || gamma0 <= 0.0) throw ParameterError("davies_reduction: gamma0 must be positive");
    if (!std::isfinite(beta) || beta < 0.0) throw ParameterError("davies_reduction: beta must be non-negative");
    const auto sorted = sorted_decompositions(h, decomps);
    std::vector<bool> covered(h.num_qubits(), false);
    for (const auto* d : sorted) covered[d->site] = true;
    for (std::size_t q = 0; q < covered.size(); ++q) {
        if (!covered[q]) throw ModelError("davies_reduction: no decomposition covers qubit " + std::to_string(q));
    }
    std::vector<JumpOperator> jumps;
    for (const auto* d : sorted) {
        const std::string where = std::to_string(d->site) + ',' + axis_letter(d->axis);
        for (const auto& c : d->components) {
            const std::string tag = where + ",eps=" + std::to_string(c.epsilon) + ']';
            if (c.epsilon == 0.0) {
                if (options.include_translation) {
                    jumps.push_back({(c.lowering + c.raising).to_sparse(), gamma0, "T[" + tag});
                }
                continue;
            }
            if (options.include_lowering) jumps.push_back({c.lowering.to_sparse(), gamma0, "a[" + tag});
            if (options.include_raising) {
                jumps.push_back({c.raising.to_sparse(), gamma0 * std::exp(-2.0 * beta * c.epsilon), "a+[" + tag});
            }
        }
    }
    return LindbladGenerator(h.to_sparse(), std::move(jumps));
}

RwaProbeReport rwa_validity_probe(const StabilizerHamiltonian& h,
                                  const std::vector<EigenoperatorDecomposition>& decomps, double beta,
                                  double gamma_minus, double coupling, double t_max, std::size_t num_samples,
                                  const Matrix& rho0) {
    if (num_samples == 0) throw ParameterError("rwa_validity_probe: need at least one sample");
    BathOptions opts;
    opts.coupling = coupling;
    auto [model, lab] = attach_ancillas(h, decomps, beta, gamma_minus, opts);
    const LindbladGenerator rwa = rwa_generator(model, decomps);

    PauliSum h0(model.num_qubits());
    for (const auto& t : lab_frame_model(model).terms) {
        if (t.pauli.weight() == 1 && t.pauli.support()[0] >= model.num_system_qubits()) {
            h0 += PauliSum(t.pauli, t.coefficient);
        }
    }
    for (const auto& t : model.system.terms()) h0 += PauliSum(t.stabilizer.embedded(model.num_qubits(), 0), -t.coupling);
    const Matrix h0d = h0.to_dense();

    EvolveOptions eo;
    eo.sample_interval = t_max / static_cast<double>(num_samples);
    eo.relative_tolerance = 1e-12;
    eo.absolute_tolerance = 1e-14;
    std::vector<std::pair<double, Matrix>> lab_states;
    std::vector<Matrix> rwa_states;
    evolve(lab, rho0, t_max, eo, [&](double t, const Matrix& rho) { lab_states.emplace_back(t, rho); });
    evolve(rwa, rho0, t_max, eo, [&](double, const Matrix& rho) { rwa_states.push_back(rho); });
    if (lab_states.size() != rwa_states.size()) throw NumericalError("rwa_validity_probe: sample count mismatch");

    RwaProbeReport report;
    report.coupling = coupling;
    report.gamma_minus = gamma_minus;
    for (std::size_t k = 0; k < lab_states.size(); ++k) {
        const auto& [t, rho_lab] = lab_states[k];
        const Matrix u = unitary_propagator(h0d, t);
        const double d = trace_distance(u.adjoint() * rho_lab * u, rwa_states[k]);
        report.samples.push_back({t, d});
        report.max_divergence = std::max(report.max_divergence, d);
    }
    return report;
}

}  // namespace stabtherm
