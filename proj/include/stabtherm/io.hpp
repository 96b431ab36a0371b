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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabtherm/nonabelian.hpp"
#include "stabtherm/stabilizer.hpp"
#include "stabtherm/toric.hpp"
#include "stabtherm/trotter.hpp"

namespace stabtherm {

using Json = nlohmann::json;

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

Json lattice_to_json(const ToricLattice& lattice);
Json hamiltonian_to_json(const StabilizerHamiltonian& h);
StabilizerHamiltonian hamiltonian_from_json(const Json& j);

// Square complex matrix as little-endian float64 pairs (re, im), column-major,
// base64 encoded.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json gate_to_json(const Gate& g);
Gate gate_from_json(const Json& j);
// JSON lines: a header object, then one gate per line.
void write_schedule(std::ostream& out, const GateSchedule& s);
GateSchedule read_schedule(std::istream& in);
void save_schedule(const std::string& path, const GateSchedule& s);
GateSchedule load_schedule(const std::string& path);

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

Json decomposition_to_json(const EigenoperatorDecomposition& d);

}  // namespace stabtherm
