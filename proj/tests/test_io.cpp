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


#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "stabtherm/errors.hpp"
#include "stabtherm/io.hpp"
#include "stabtherm/toric.hpp"

using namespace stabtherm;

namespace {

std::vector<std::uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

GateSchedule mixed_schedule() {
    GateSchedule s;
    s.num_qubits = 3;
    s.num_bits = 2;
    s.total_time = 0.25;
    s.steps = 2;
    s.gates = {rot1(0, Axis::X, 0.125),
               rot1(2, Axis::Y, -1.0 / 3.0),
               cphase(0, 1),
               measure_z(1, 0),
               sample_boltzmann_bit(0.7, 2.0, 1),
               cond_pulse(1, Axis::X, std::numbers::pi, {0, 1}),
               thermal_reset(2, 0.7, 2.0, 0.3)};
    return s;
}

}  // namespace

TEST_CASE("base64 matches the RFC 4648 vectors") {
    const std::vector<std::pair<std::string, std::string>> vectors{
        {"", ""},         {"f", "Zg=="},         {"fo", "Zm8="},        {"foo", "Zm9v"},
        {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"}};
    for (const auto& [plain, coded] : vectors) {
        CHECK(base64_encode(bytes(plain)) == coded);
        CHECK(base64_decode(coded) == bytes(plain));
    }
    std::mt19937_64 rng(3);
    std::vector<std::uint8_t> b(1000);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    CHECK(base64_decode(base64_encode(b)) == b);
    CHECK_THROWS_AS(base64_decode("Zm9"), ValidationError);
    CHECK_THROWS_AS(base64_decode("Zm!v"), ValidationError);
    CHECK_THROWS_AS(base64_decode("Z=9v"), ValidationError);
}

TEST_CASE("matrix JSON is column-major little-endian (re, im) pairs") {
    Matrix m(2, 2);
    m << cplx(1.0, 2.0), cplx(3.0, 4.0), cplx(5.0, 6.0), cplx(-0.5, 1e-300);
    const Json j = matrix_to_json(m);
    CHECK(j.at("rows") == 2);
    CHECK(j.at("cols") == 2);
    const auto raw = base64_decode(j.at("data").get<std::string>());
    REQUIRE(raw.size() == 4 * 16);
    auto value = [&](std::size_t k) {
        std::uint64_t u = 0;
        for (int b = 7; b >= 0; --b) u = (u << 8) | raw[8 * k + static_cast<std::size_t>(b)];
        double d;
        std::memcpy(&d, &u, sizeof d);
        return d;
    };
    // column 0 is (1+2i, 5+6i)
    CHECK(value(0) == 1.0);
    CHECK(value(1) == 2.0);
    CHECK(value(2) == 5.0);
    CHECK(value(3) == 6.0);
    CHECK(value(4) == 3.0);
    CHECK(value(7) == 1e-300);

    std::mt19937_64 rng(8);
    const Matrix r = random_density_matrix(16, rng);
    CHECK(matrix_from_json(matrix_to_json(r)) == r);

    Json bad = j;
    bad["encoding"] = "hex";
    CHECK_THROWS_AS(matrix_from_json(bad), ValidationError);
    bad = j;
    bad["rows"] = 3;
    CHECK_THROWS_AS(matrix_from_json(bad), ValidationError);
    bad = j;
    bad.erase("data");
    CHECK_THROWS_AS(matrix_from_json(bad), ValidationError);
}

TEST_CASE("Hamiltonian JSON round trip") {
    const auto h = toric_hamiltonian(build_torus(2), 1.5, 0.75);
    const Json j = hamiltonian_to_json(h);
    CHECK(j.at("num_qubits") == 8);
    CHECK(j.at("terms").size() == 8);
    const auto back = hamiltonian_from_json(j);
    CHECK(back.num_qubits() == 8);
    CHECK((back.to_dense() - h.to_dense()).norm() == doctest::Approx(0.0));
    CHECK(hamiltonian_to_json(back) == j);

    const Json lat = lattice_to_json(build_torus(3));
    CHECK(lat.at("num_links") == 18);
    CHECK(lat.at("vertices").size() == 9);
}

TEST_CASE("schedule JSON lines round trip") {
    const GateSchedule s = mixed_schedule();
    s.validate();
    std::stringstream ss;
    write_schedule(ss, s);
    const std::string text = ss.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + static_cast<long>(s.gates.size()));

    const GateSchedule back = read_schedule(ss);
    CHECK(back.num_qubits == s.num_qubits);
    CHECK(back.num_bits == s.num_bits);
    CHECK(back.total_time == s.total_time);
    CHECK(back.steps == s.steps);
    CHECK(back.gates == s.gates);

    for (const auto& g : s.gates) CHECK(gate_from_json(gate_to_json(g)) == g);

    std::mt19937_64 rng(2);
    const Matrix rho = random_density_matrix(8, rng);
    CHECK((simulate_schedule(back, rho) - simulate_schedule(s, rho)).norm() == 0.0);
}

TEST_CASE("malformed schedules are rejected with the line number") {
    const GateSchedule s = mixed_schedule();
    std::stringstream good;
    write_schedule(good, s);
    const std::string text = good.str();
    const auto first_nl = text.find('\n');

    auto read = [](const std::string& t) {
        std::stringstream in(t);
        return read_schedule(in);
    };
    CHECK_THROWS_AS(read(""), ValidationError);
    CHECK_THROWS_AS(read(text.substr(first_nl + 1)), ValidationError);
    CHECK_THROWS_AS(read(text.substr(0, text.rfind('\n', text.size() - 2) + 1)), ValidationError);

    std::string bad_gate = text.substr(0, first_nl + 1) + "{\"op\": \"TELEPORT\", \"qubits\": [0]}\n";
    try {
        read(bad_gate);
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::string out_of_range = text.substr(0, first_nl + 1) +
                               gate_to_json(rot1(7, Axis::X, 0.1)).dump() + "\n";
    CHECK_THROWS_AS(read(out_of_range), ValidationError);
    CHECK_THROWS_AS(read(text.substr(0, first_nl + 1) + "not json\n"), ValidationError);
    CHECK_THROWS_AS(load_schedule("/nonexistent/schedule.jsonl"), ValidationError);
}

TEST_CASE("group JSON round trip") {
    for (const auto& g : {FiniteGroup::cyclic(5), FiniteGroup::symmetric(3)}) {
        const FiniteGroup back = group_from_json(group_to_json(g));
        CHECK(back.table() == g.table());
        CHECK(back.classes() == g.classes());
        CHECK(back.names() == g.names());
    }
    CHECK_THROWS_AS(group_from_json(Json{{"table", {{0, 1}, {1, 1}}}}), ValidationError);
    CHECK_THROWS_AS(group_from_json(Json{{"names", {"e"}}}), ValidationError);
}

TEST_CASE("decomposition JSON lists components with norms") {
    const auto h = toric_hamiltonian(build_torus(2), 1.0, 1.0);
    const auto d = eigenoperator_decomposition(h, 0, Axis::X);
    const Json j = decomposition_to_json(d);
    REQUIRE(j.at("components").is_array());
    // sigma = sum_eps (a + a^dagger): the eps = 0 part is Hermitian, so it
    // enters with weight 4 |a_0|^2, the others with 2 |a|^2.
    double total = 0.0;
    for (const auto& c : j.at("components")) {
        const double w = c.at("normalized_norm").get<double>() * c.at("normalized_norm").get<double>();
        total += c.at("epsilon").get<double>() == 0.0 ? 4.0 * w : 2.0 * w;
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(j.at("components").size() == 2);
}
