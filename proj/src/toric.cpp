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

#include "stabtherm/toric.hpp"

#include <cmath>

#include "stabtherm/errors.hpp"

namespace stabtherm {

namespace {

std::size_t wrap(long v, std::size_t size) {
    const long l = static_cast<long>(size);
    return static_cast<std::size_t>(((v % l) + l) % l);
}

}  // namespace

std::size_t ToricLattice::horizontal_link(long r, long c) const {
    return 2 * (wrap(r, size) * size + wrap(c, size));
}

std::size_t ToricLattice::vertical_link(long r, long c) const { return horizontal_link(r, c) + 1; }

std::size_t ToricLattice::vertex_index(long r, long c) const { return wrap(r, size) * size + wrap(c, size); }

std::size_t ToricLattice::plaquette_index(long r, long c) const { return wrap(r, size) * size + wrap(c, size); }

ToricLattice build_torus(std::size_t size) {
    if (size < 2) throw ParameterError("torus size must be at least 2");
    ToricLattice lat;
    lat.size = size;
    const long l = static_cast<long>(size);
    lat.link_vertices.resize(lat.num_links());
    lat.link_plaquettes.resize(lat.num_links());
    for (long r = 0; r < l; ++r) {
        for (long c = 0; c < l; ++c) {
            lat.vertices.push_back({lat.vertical_link(r, c), lat.horizontal_link(r, c), lat.vertical_link(r - 1, c),
                                    lat.horizontal_link(r, c - 1)});
        }
    }
    for (long r = 0; r < l; ++r) {
        for (long c = 0; c < l; ++c) {
            lat.plaquettes.push_back({lat.horizontal_link(r, c), lat.vertical_link(r, c + 1),
                                      lat.horizontal_link(r + 1, c), lat.vertical_link(r, c)});
        }
    }
    for (long r = 0; r < l; ++r) {
        for (long c = 0; c < l; ++c) {
            lat.link_vertices[lat.horizontal_link(r, c)] = {lat.vertex_index(r, c), lat.vertex_index(r, c + 1)};
            lat.link_vertices[lat.vertical_link(r, c)] = {lat.vertex_index(r, c), lat.vertex_index(r + 1, c)};
            lat.link_plaquettes[lat.horizontal_link(r, c)] = {lat.plaquette_index(r - 1, c), lat.plaquette_index(r, c)};
            lat.link_plaquettes[lat.vertical_link(r, c)] = {lat.plaquette_index(r, c - 1), lat.plaquette_index(r, c)};
        }
    }
    return lat;
}

StabilizerHamiltonian toric_hamiltonian(const ToricLattice& lattice, double lambda_e, double lambda_m) {
    if (!(lambda_e > 0.0) || !(lambda_m > 0.0) || !std::isfinite(lambda_e) || !std::isfinite(lambda_m)) {
        throw ParameterError("toric couplings must be positive and finite");
    }
    const std::size_t n = lattice.num_links();
    std::vector<StabilizerTerm> terms;
    for (std::size_t v = 0; v < lattice.vertices.size(); ++v) {
        terms.push_back({lambda_e, PauliString::on_support(n, lattice.vertices[v], Axis::Z), TermKind::Vertex, v});
    }
    for (std::size_t p = 0; p < lattice.plaquettes.size(); ++p) {
        terms.push_back(
            {lambda_m, PauliString::on_support(n, lattice.plaquettes[p], Axis::X), TermKind::Plaquette, p});
    }
    return StabilizerHamiltonian(n, std::move(terms));
}

LoopOperators loop_operators(const ToricLattice& lattice) {
    const std::size_t n = lattice.num_links();
    const long l = static_cast<long>(lattice.size);
    std::vector<std::size_t> row_h;
    std::vector<std::size_t> col_v;
    std::vector<std::size_t> row_v;
    std::vector<std::size_t> col_h;
    for (long k = 0; k < l; ++k) {
        row_h.push_back(lattice.horizontal_link(0, k));
        col_v.push_back(lattice.vertical_link(k, 0));
        row_v.push_back(lattice.vertical_link(0, k));
        col_h.push_back(lattice.horizontal_link(k, 0));
    }
    return {PauliString::on_support(n, row_h, Axis::X), PauliString::on_support(n, col_v, Axis::X),
            PauliString::on_support(n, row_v, Axis::Z), PauliString::on_support(n, col_h, Axis::Z)};
}

std::string sector_name(Sector sector) { return sector == Sector::Electric ? "electric" : "magnetic"; }

Sector parse_sector(const std::string& text) {
    if (text == "electric" || text == "e" || text == "E") return Sector::Electric;
    if (text == "magnetic" || text == "m" || text == "M") return Sector::Magnetic;
    throw ValidationError("unknown sector '" + text + "'");
}

Axis sector_axis(Sector sector) { return sector == Sector::Electric ? Axis::X : Axis::Z; }

ExcitationOps excitation_ops(const ToricLattice& lattice, const StabilizerHamiltonian& h, std::size_t link,
                             Sector sector) {
    if (link >= lattice.num_links()) throw DimensionError("link index out of range");
    if (h.num_qubits() != lattice.num_links()) throw DimensionError("Hamiltonian does not match lattice");
    const TermKind kind = sector == Sector::Electric ? TermKind::Vertex : TermKind::Plaquette;
    const auto& hoods = sector == Sector::Electric ? lattice.link_vertices[link] : lattice.link_plaquettes[link];
    const auto t1 = h.find_term(kind, hoods[0]);
    const auto t2 = h.find_term(kind, hoods[1]);
    if (!t1 || !t2) throw ModelError("Hamiltonian lacks the stabilizers adjacent to link " + std::to_string(link));
    const auto& h1 = h.terms()[*t1];
    const auto& h2 = h.terms()[*t2];
    if (h1.coupling != h2.coupling) throw ModelError("adjacent stabilizers of one sector have unequal couplings");

    const PauliSum sigma(PauliString::single(h.num_qubits(), link, sector_axis(sector)));
    const PauliSum p1 = spectral_projector(h1.stabilizer, +1);
    const PauliSum m1 = spectral_projector(h1.stabilizer, -1);
    const PauliSum p2 = spectral_projector(h2.stabilizer, +1);
    const PauliSum m2 = spectral_projector(h2.stabilizer, -1);

    ExcitationOps out;
    out.link = link;
    out.sector = sector;
    out.delta = 2.0 * h1.coupling;
    out.create = m1 * m2 * sigma * p1 * p2;
    out.annihilate = out.create.adjoint();
    out.translate = p1 * m2 * sigma * m1 * p2 + m1 * p2 * sigma * p1 * m2;
    return out;
}

std::vector<ExcitationOps> all_excitation_ops(const ToricLattice& lattice, const StabilizerHamiltonian& h) {
    std::vector<ExcitationOps> out;
    for (std::size_t j = 0; j < lattice.num_links(); ++j) {
        out.push_back(excitation_ops(lattice, h, j, Sector::Electric));
        out.push_back(excitation_ops(lattice, h, j, Sector::Magnetic));
    }
    return out;
}

PauliSum excitation_number_form(std::span<const ExcitationOps> ops) {
    if (ops.empty()) throw ModelError("no excitation operators supplied");
    PauliSum s(ops.front().create.num_qubits());
    for (const auto& op : ops) {
        s += op.create * op.annihilate * 2.0;
        s += op.translate * op.translate;
    }
    return s;
}

FourierFormFit fourier_form_check(const ToricLattice& lattice, const StabilizerHamiltonian& h,
                                  std::span<const ExcitationOps> ops) {
    std::vector<int> seen(2 * lattice.num_links(), 0);
    for (const auto& op : ops) {
        if (op.link >= lattice.num_links()) throw DimensionError("excitation operator link out of range");
        ++seen[2 * op.link + (op.sector == Sector::Electric ? 0 : 1)];
    }
    for (int count : seen) {
        if (count != 1) throw ModelError("fourier_form_check needs exactly one E/T set per link and sector");
    }

    const PauliSum s = excitation_number_form(ops);
    const PauliSum hs = h.as_pauli_sum();
    const PauliString id(h.num_qubits());

    // Frobenius products divided by the dimension: <A,B> = sum conj(a_P) b_P.
    auto inner = [](const PauliSum& a, const PauliSum& b) {
        cplx total = 0.0;
        std::size_t j = 0;
        for (const auto& ta : a.terms()) {
            while (j < b.terms().size() && b.terms()[j].string < ta.string) ++j;
            if (j < b.terms().size() && b.terms()[j].string == ta.string) {
                total += std::conj(ta.coefficient) * b.terms()[j].coefficient;
            }
        }
        return total.real();
    };
    const PauliSum ident = PauliSum::identity(h.num_qubits());
    const double ss = inner(s, s);
    const double si = inner(s, ident);
    const double ii = 1.0;
    const double hs_s = inner(s, hs);
    const double hs_i = inner(ident, hs);
    const double det = ss * ii - si * si;
    if (std::abs(det) < 1e-14 * std::max(ss, 1.0)) throw NumericalError("degenerate excitation-number form");

    FourierFormFit fit;
    fit.prefactor = (hs_s * ii - si * hs_i) / det;
    fit.constant = (ss * hs_i - si * hs_s) / det;
    const PauliSum r = hs - s * fit.prefactor - ident * fit.constant;
    fit.residual = std::sqrt(std::max(inner(r, r), 0.0));
    return fit;
}

}  // namespace stabtherm
