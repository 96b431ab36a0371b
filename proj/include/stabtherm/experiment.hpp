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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabtherm/io.hpp"
#include "stabtherm/verifier.hpp"

namespace stabtherm {

inline constexpr const char* kVersion = "0.1.0";

struct ModelSpec {
    std::string type = "toric";  // toric | mini-vertex | nonabelian
    std::size_t L = 2;
    double lambda_e = 1.0;
    double lambda_m = 1.0;
    double lambda = 1.0;
    std::string group = "S3";  // Z<n> | S<n> | table
    Json table;
    std::vector<std::string> geometries;
};

struct DynamicsSpec {
    std::string type = "gibbs";  // none | gibbs | davies | rwa | composite | trotterized
    std::vector<double> betas{1.0};  // in units of 1 / lambda
    double gamma0 = 0.1;
    double coupling = -1.0;
    double t = 0.0;
    std::size_t steps = 1;
    std::string reset = "rate";  // rate | full | measured
    std::size_t reset_interval = 1;
    std::vector<std::pair<std::size_t, Axis>> decompositions;
    std::string initial = "mixed";  // mixed | zero | random
};

struct OutputSpec {
    std::string json;
    std::string csv;
    std::string schedule;
};

struct ExperimentConfig {
    Json raw;
    ModelSpec model;
    DynamicsSpec dynamics;
    std::vector<std::string> observables;
    std::uint64_t seed = 1;
    OutputSpec output;
};

const std::vector<std::string>& known_observables();

// Checks every field; throws ValidationError naming the offending path.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);

// SHA-256 of the canonical (sorted-key, compact) config text.
std::string config_hash(const Json& j);
std::string sha256_hex(const std::string& text);

Json versions();

// Energy unit of a stabilizer model: lambda_e for the torus, lambda otherwise.
double energy_unit(const ModelSpec& m);
StabilizerHamiltonian build_hamiltonian(const ModelSpec& m);
FiniteGroup build_group(const ModelSpec& m);

struct ExperimentResult {
    Json json;
    std::vector<std::string> csv_header;
    std::vector<std::vector<double>> csv_rows;
};

ExperimentResult run_experiment(const ExperimentConfig& config);
void write_csv(std::ostream& out, const ExperimentResult& r);
// Writes the JSON and CSV paths named in the config (when set).
void write_outputs(const ExperimentConfig& config, const ExperimentResult& r);

Json fixed_point_report_to_json(const FixedPointReport& r, bool include_residuals);
// Fixed-point conditions on gibbs(beta) of the toric model.
FixedPointReport verify_appendix(std::size_t L, double lambda_e, double lambda_m, double beta);

}  // namespace stabtherm
