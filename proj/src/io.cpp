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


#include "stabtherm/io.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "stabtherm/errors.hpp"

namespace stabtherm {

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

template <typename T>
T field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(where + ": field '" + key + "' has the wrong type");
    }
}

std::string axis_name(Axis a) { return std::string(1, static_cast<char>(std::tolower(axis_letter(a)))); }

}  // namespace

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 2 < bytes.size(); i += 3) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        for (int s = 18; s >= 0; s -= 6) out += kAlphabet[(v >> s) & 63];
    }
    if (i + 1 == bytes.size()) {
        const std::uint32_t v = bytes[i] << 16;
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += "==";
    } else if (i + 2 == bytes.size()) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += kAlphabet[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    std::array<int, 256> lookup;
    lookup.fill(-1);
    for (int k = 0; k < 64; ++k) lookup[static_cast<unsigned char>(kAlphabet[k])] = k;
    if (text.size() % 4 != 0) throw ValidationError("base64: length is not a multiple of 4");
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < text.size(); i += 4) {
        std::uint32_t v = 0;
        int pad = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const char c = text[i + k];
            if (c == '=' && i + 4 == text.size() && k >= 2) {
                ++pad;
                v <<= 6;
                continue;
            }
            const int d = lookup[static_cast<unsigned char>(c)];
            if (d < 0 || pad > 0) throw ValidationError("base64: invalid character");
            v = (v << 6) | static_cast<std::uint32_t>(d);
        }
        out.push_back(static_cast<std::uint8_t>(v >> 16));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>(v >> 8));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

Json lattice_to_json(const ToricLattice& lattice) {
    Json links = Json::array();
    for (std::size_t k = 0; k < lattice.num_links(); ++k) {
        links.push_back({{"index", k},
                         {"direction", k % 2 == 0 ? "horizontal" : "vertical"},
                         {"vertices", lattice.link_vertices[k]},
                         {"plaquettes", lattice.link_plaquettes[k]}});
    }
    return {{"L", lattice.size},
            {"num_links", lattice.num_links()},
            {"num_vertices", lattice.vertices.size()},
            {"num_plaquettes", lattice.plaquettes.size()},
            {"vertices", lattice.vertices},
            {"plaquettes", lattice.plaquettes},
            {"links", links}};
}

Json hamiltonian_to_json(const StabilizerHamiltonian& h) {
    Json terms = Json::array();
    for (const auto& t : h.terms()) {
        terms.push_back({{"coupling", t.coupling},
                         {"stabilizer", t.stabilizer.str()},
                         {"kind", term_kind_name(t.kind)},
                         {"index", t.index}});
    }
    return {{"num_qubits", h.num_qubits()}, {"convention", "H = -sum coupling * stabilizer"}, {"terms", terms}};
}

StabilizerHamiltonian hamiltonian_from_json(const Json& j) {
    const auto n = field<std::size_t>(j, "num_qubits", "hamiltonian");
    std::vector<StabilizerTerm> terms;
    for (const auto& t : field<Json>(j, "terms", "hamiltonian")) {
        StabilizerTerm term;
        term.coupling = field<double>(t, "coupling", "hamiltonian term");
        term.stabilizer = PauliString::from_text(field<std::string>(t, "stabilizer", "hamiltonian term"));
        const auto kind = field<std::string>(t, "kind", "hamiltonian term");
        if (kind == term_kind_name(TermKind::Vertex)) {
            term.kind = TermKind::Vertex;
        } else if (kind == term_kind_name(TermKind::Plaquette)) {
            term.kind = TermKind::Plaquette;
        } else {
            term.kind = TermKind::Other;
        }
        term.index = field<std::size_t>(t, "index", "hamiltonian term");
        terms.push_back(std::move(term));
    }
    return StabilizerHamiltonian(n, std::move(terms));
}

Json matrix_to_json(const Matrix& m) {
    static_assert(std::endian::native == std::endian::little, "float64 encoding assumes a little-endian host");
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(m.size()) * 16);
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        const double re = m.data()[k].real();
        const double im = m.data()[k].imag();
        std::memcpy(bytes.data() + 16 * k, &re, 8);
        std::memcpy(bytes.data() + 16 * k + 8, &im, 8);
    }
    return {{"rows", m.rows()},
            {"cols", m.cols()},
            {"encoding", "base64-float64-le"},
            {"layout", "column-major, (re, im) pairs"},
            {"data", base64_encode(bytes)}};
}

Matrix matrix_from_json(const Json& j) {
    const auto rows = field<Eigen::Index>(j, "rows", "matrix");
    const auto cols = field<Eigen::Index>(j, "cols", "matrix");
    if (field<std::string>(j, "encoding", "matrix") != "base64-float64-le") {
        throw ValidationError("matrix: unsupported encoding");
    }
    const auto bytes = base64_decode(field<std::string>(j, "data", "matrix"));
    if (rows < 0 || cols < 0 || bytes.size() != static_cast<std::size_t>(rows * cols) * 16) {
        throw ValidationError("matrix: data length does not match the shape");
    }
    Matrix m(rows, cols);
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        double re, im;
        std::memcpy(&re, bytes.data() + 16 * k, 8);
        std::memcpy(&im, bytes.data() + 16 * k + 8, 8);
        m.data()[k] = cplx(re, im);
    }
    return m;
}

Json gate_to_json(const Gate& g) {
    Json j{{"op", gate_kind_name(g.kind)}};
    switch (g.kind) {
        case GateKind::Rot1:
            j["qubit"] = g.qubits.at(0);
            j["axis"] = axis_name(g.axis);
            j["angle"] = g.angle;
            break;
        case GateKind::CPhase:
            j["qubits"] = g.qubits;
            j["angle"] = g.angle;
            break;
        case GateKind::MeasureZ:
            j["qubit"] = g.qubits.at(0);
            j["bit"] = g.bit;
            break;
        case GateKind::CondPulse:
            j["qubit"] = g.qubits.at(0);
            j["axis"] = axis_name(g.axis);
            j["angle"] = g.angle;
            j["condition"] = g.condition;
            break;
        case GateKind::ThermalReset:
            j["qubit"] = g.qubits.at(0);
            j["beta"] = g.beta;
            j["omega"] = g.omega;
            j["retain"] = g.retain;
            break;
        case GateKind::SampleBoltzmannBit:
            j["beta"] = g.beta;
            j["omega"] = g.omega;
            j["bit"] = g.bit;
            break;
    }
    return j;
}

Gate gate_from_json(const Json& j) {
    const std::string where = "gate";
    const GateKind kind = parse_gate_kind(field<std::string>(j, "op", where));
    auto axis = [&] {
        try {
            return parse_axis(field<std::string>(j, "axis", where));
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            throw ValidationError(std::string("gate: ") + e.what());
        }
    };
    switch (kind) {
        case GateKind::Rot1:
            return rot1(field<std::size_t>(j, "qubit", where), axis(), field<double>(j, "angle", where));
        case GateKind::CPhase: {
            const auto q = field<std::vector<std::size_t>>(j, "qubits", where);
            if (q.size() != 2) throw ValidationError("gate: CPHASE needs two qubits");
            return cphase(q[0], q[1], field<double>(j, "angle", where));
        }
        case GateKind::MeasureZ:
            return measure_z(field<std::size_t>(j, "qubit", where), field<std::size_t>(j, "bit", where));
        case GateKind::CondPulse:
            return cond_pulse(field<std::size_t>(j, "qubit", where), axis(), field<double>(j, "angle", where),
                              field<std::vector<std::size_t>>(j, "condition", where));
        case GateKind::ThermalReset:
            return thermal_reset(field<std::size_t>(j, "qubit", where), field<double>(j, "beta", where),
                                 field<double>(j, "omega", where), j.value("retain", 0.0));
        case GateKind::SampleBoltzmannBit:
            return sample_boltzmann_bit(field<double>(j, "beta", where), field<double>(j, "omega", where),
                                        field<std::size_t>(j, "bit", where));
    }
    throw ValidationError("gate: unknown op");
}

void write_schedule(std::ostream& out, const GateSchedule& s) {
    const Json header{{"format", "stabtherm-schedule"},
                      {"version", 1},
                      {"num_qubits", s.num_qubits},
                      {"num_bits", s.num_bits},
                      {"total_time", s.total_time},
                      {"steps", s.steps},
                      {"num_gates", s.gates.size()}};
    out << header.dump() << '\n';
    for (const auto& g : s.gates) out << gate_to_json(g).dump() << '\n';
}

GateSchedule read_schedule(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    GateSchedule s;
    bool have_header = false;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError("schedule line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            if (!have_header) {
                if (j.value("format", "") != "stabtherm-schedule") {
                    throw ValidationError("first line is not a stabtherm-schedule header");
                }
                s.num_qubits = field<std::size_t>(j, "num_qubits", "header");
                s.num_bits = field<std::size_t>(j, "num_bits", "header");
                s.total_time = field<double>(j, "total_time", "header");
                s.steps = field<std::size_t>(j, "steps", "header");
                expected = j.value("num_gates", std::size_t{0});
                have_header = true;
            } else {
                s.gates.push_back(gate_from_json(j));
            }
        } catch (const Error& e) {
            throw ValidationError("schedule line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw ValidationError("schedule: empty input");
    if (expected != s.gates.size()) throw ValidationError("schedule: gate count does not match the header");
    s.validate();
    return s;
}

void save_schedule(const std::string& path, const GateSchedule& s) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    write_schedule(out, s);
}

GateSchedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return read_schedule(in);
}

Json group_to_json(const FiniteGroup& g) {
    Json classes = Json::array();
    for (std::size_t k = 0; k < g.classes().size(); ++k) {
        classes.push_back({{"elements", g.classes()[k]}, {"centralizer", g.centralizer(k)}});
    }
    return {{"label", g.label()},   {"order", g.order()}, {"identity", g.identity()},
            {"names", g.names()},   {"table", g.table()}, {"inverse", [&] {
                                                                  std::vector<std::size_t> inv;
                                                                  for (std::size_t a = 0; a < g.order(); ++a)
                                                                      inv.push_back(g.inverse(a));
                                                                  return inv;
                                                              }()},
            {"classes", classes}};
}

FiniteGroup group_from_json(const Json& j) {
    auto table = field<std::vector<std::vector<std::size_t>>>(j, "table", "group");
    std::vector<std::string> names;
    if (j.contains("names")) names = field<std::vector<std::string>>(j, "names", "group");
    return FiniteGroup::from_table(std::move(table), std::move(names), j.value("label", "table"));
}

Json decomposition_to_json(const EigenoperatorDecomposition& d) {
    Json comps = Json::array();
    for (const auto& c : d.components) {
        Json terms = Json::array();
        for (const auto& t : c.lowering.terms()) {
            terms.push_back({{"re", t.coefficient.real()}, {"im", t.coefficient.imag()}, {"pauli", t.string.str()}});
        }
        double weight = 0.0;
        for (const auto& t : c.lowering.terms()) weight += std::norm(t.coefficient);
        // ||a||_F / sqrt(dim), from the orthogonality of Pauli strings.
        comps.push_back({{"epsilon", c.epsilon}, {"normalized_norm", std::sqrt(weight)}, {"lowering", terms}});
    }
    return {{"site", d.site}, {"axis", axis_name(d.axis)}, {"components", comps}};
}

}  // namespace stabtherm
