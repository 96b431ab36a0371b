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

#include "stabtherm/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stabtherm/errors.hpp"

namespace stabtherm {

std::string term_kind_name(TermKind kind) {
    switch (kind) {
        case TermKind::Vertex:
            return "vertex";
        case TermKind::Plaquette:
            return "plaquette";
        case TermKind::Other:
            return "other";
    }
    return "other";
}

StabilizerHamiltonian::StabilizerHamiltonian(std::size_t num_qubits, std::vector<StabilizerTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.stabilizer.num_qubits() != num_qubits_) throw DimensionError("stabilizer term has wrong qubit count");
        if (!(t.coupling > 0.0) || !std::isfinite(t.coupling)) {
            throw ParameterError("stabilizer couplings must be positive and finite");
        }
        if (!t.stabilizer.is_hermitian()) throw ModelError("stabilizer " + t.stabilizer.str() + " squares to -I");
    }
    for (std::size_t a = 0; a < terms_.size(); ++a) {
        for (std::size_t b = a + 1; b < terms_.size(); ++b) {
            if (!terms_[a].stabilizer.commutes(terms_[b].stabilizer)) {
                throw ModelError("stabilizers " + terms_[a].stabilizer.str() + " and " + terms_[b].stabilizer.str() +
                                 " do not commute");
            }
        }
    }
}

std::optional<std::size_t> StabilizerHamiltonian::find_term(TermKind kind, std::size_t index) const {
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].kind == kind && terms_[k].index == index) return k;
    }
    return std::nullopt;
}

double StabilizerHamiltonian::frustration_free_ground_energy() const {
    double e = 0.0;
    for (const auto& t : terms_) e -= t.coupling;
    return e;
}

PauliSum StabilizerHamiltonian::as_pauli_sum() const {
    PauliSum h(num_qubits_);
    for (const auto& t : terms_) h += PauliSum(t.stabilizer, -t.coupling);
    return h;
}

SparseMatrix StabilizerHamiltonian::to_sparse(std::size_t max_qubits) const {
    return as_pauli_sum().to_sparse(max_qubits);
}

Matrix StabilizerHamiltonian::to_dense(std::size_t max_qubits) const { return as_pauli_sum().to_dense(max_qubits); }

std::size_t EigenoperatorDecomposition::num_qubits() const {
    for (const auto& c : components) {
        if (c.lowering.num_qubits() != 0) return c.lowering.num_qubits();
    }
    return 0;
}

PauliSum EigenoperatorDecomposition::reconstruct() const {
    PauliSum out(num_qubits());
    for (const auto& c : components) {
        out += c.lowering;
        out += c.raising;
    }
    return out;
}

const FourierComponent* EigenoperatorDecomposition::zero_frequency() const {
    for (const auto& c : components) {
        if (c.epsilon == 0.0) return &c;
    }
    return nullptr;
}

std::vector<double> EigenoperatorDecomposition::frequencies() const {
    std::vector<double> out;
    for (const auto& c : components) out.push_back(c.epsilon);
    return out;
}

Matrix EigenoperatorDecomposition::heisenberg(double t) const {
    const std::size_t dim = std::size_t{1} << num_qubits();
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& c : components) {
        const cplx down = std::exp(cplx(0.0, -2.0 * c.epsilon * t));
        out += down * c.lowering.to_dense() + std::conj(down) * c.raising.to_dense();
    }
    return out;
}

EigenoperatorDecomposition eigenoperator_decomposition(const StabilizerHamiltonian& h, std::size_t site,
                                                       Axis axis) {
    if (site >= h.num_qubits()) throw DimensionError("site out of range");
    const PauliString sigma = PauliString::single(h.num_qubits(), site, axis);

    std::vector<const StabilizerTerm*> flipped;
    for (const auto& t : h.terms()) {
        if (!t.stabilizer.commutes(sigma)) flipped.push_back(&t);
    }
    if (flipped.size() > 20) throw CapacityError("too many stabilizers anticommute with the local Pauli");

    double scale = 0.0;
    for (const auto* t : flipped) scale += t->coupling;
    const double key_tol = 1e-9 * std::max(scale, 1.0);

    // Energy change -> accumulated operator. Input pattern s (stabilizer h
    // at eigenvalue s_h) has energy -sum J s; sigma flips every s.
    std::vector<std::pair<double, PauliSum>> groups;
    const std::size_t patterns = std::size_t{1} << flipped.size();
    for (std::size_t mask = 0; mask < patterns; ++mask) {
        PauliSum piece(sigma);
        double change = 0.0;
        for (std::size_t k = 0; k < flipped.size(); ++k) {
            const int s = ((mask >> k) & 1U) ? -1 : +1;
            piece = piece * spectral_projector(flipped[k]->stabilizer, s);
            change += 2.0 * flipped[k]->coupling * s;
        }
        if (piece.empty()) continue;
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return std::abs(g.first - change) <= key_tol; });
        if (it == groups.end()) {
            groups.emplace_back(change, piece);
        } else {
            it->second += piece;
        }
    }

    std::map<double, FourierComponent> by_epsilon;
    for (auto& [change, op] : groups) {
        if (op.empty()) continue;
        if (std::abs(change) <= key_tol) {
            auto& c = by_epsilon[0.0];
            c.epsilon = 0.0;
            c.lowering = op * 0.5;
            c.raising = op * 0.5;
            continue;
        }
        const double eps = std::abs(change) / 2.0;
        auto it = std::find_if(by_epsilon.begin(), by_epsilon.end(),
                               [&](const auto& kv) { return std::abs(kv.first - eps) <= key_tol; });
        FourierComponent& c = it == by_epsilon.end() ? by_epsilon[eps] : it->second;
        c.epsilon = it == by_epsilon.end() ? eps : c.epsilon;
        if (change < 0) {
            c.lowering = c.lowering.empty() ? op : c.lowering + op;
        } else {
            c.raising = c.raising.empty() ? op : c.raising + op;
        }
    }

    EigenoperatorDecomposition out;
    out.site = site;
    out.axis = axis;
    for (auto& [eps, c] : by_epsilon) {
        if (c.lowering.empty()) c.lowering = PauliSum(h.num_qubits());
        if (c.raising.empty()) c.raising = PauliSum(h.num_qubits());
        out.components.push_back(std::move(c));
    }
    return out;
}

}  // namespace stabtherm
