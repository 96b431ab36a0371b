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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabtherm/kernel.hpp"
#include "stabtherm/lindblad.hpp"
#include "stabtherm/toric.hpp"

namespace stabtherm {

struct FixedPointResidual {
    std::size_t link = 0;
    Sector sector = Sector::Electric;
    double lowering = 0.0;     // || p0 E rho - p1 rho E ||
    double raising = 0.0;      // || p1 E^+ rho - p0 rho E^+ ||
    double translation = 0.0;  // || [T, rho] ||
};

struct FixedPointReport {
    double beta = 0.0;
    double p0 = 0.0;
    double p1 = 0.0;
    std::vector<FixedPointResidual> residuals;
    double max_lowering = 0.0;
    double max_raising = 0.0;
    double max_translation = 0.0;
    std::optional<std::size_t> kernel_dimension;
    std::optional<double> gibbs_distance;
    std::optional<bool> ergodic;

    double max_residual() const;
    bool satisfied(double tolerance) const { return max_residual() < tolerance; }
};

// Pair energy 2 delta sets p1 / p0 = exp(-2 beta delta).
FixedPointReport check_fixed_point_conditions(const Matrix& rho, std::span<const ExcitationOps> ops, double beta);

struct EigenspaceDetail {
    double energy = 0.0;
    std::size_t dimension = 0;
    bool analysed = false;
    std::size_t words = 0;                  // energy-preserving words used
    std::size_t commutant_dimension = 0;    // within this eigenspace
};

struct ProbeResult {
    std::string name;
    double max_commutator = 0.0;
    bool in_commutant = false;
};

struct ErgodicityOptions {
    KernelOptions kernel;
    // Eigenspaces larger than this are not analysed individually.
    std::size_t detail_limit = 16;
    // Longest word of jump operators used in the per-eigenspace algebra.
    std::size_t max_word_length = 2;
    double tolerance = 1e-9;
    std::size_t max_dim = kDefaultSuperoperatorDimLimit;
};

struct ErgodicityReport {
    std::size_t commutant_dimension = 0;
    bool saturated = false;
    bool ergodic = false;
    double residual = 0.0;
    std::vector<EigenspaceDetail> eigenspaces;
    std::vector<ProbeResult> probes;
};

struct NamedOperator {
    std::string name;
    SparseMatrix op;
};

// Commutant of {H} together with every jump operator and its adjoint.
ErgodicityReport ergodicity_check(const SparseMatrix& h, const std::vector<SparseMatrix>& jumps,
                                  const ErgodicityOptions& options = {},
                                  const std::vector<NamedOperator>& probes = {});
ErgodicityReport ergodicity_check(const LindbladGenerator& g, const ErgodicityOptions& options = {},
                                  const std::vector<NamedOperator>& probes = {});

// Largest ||[A, X]|| over the operators and their adjoints.
double max_commutator(const std::vector<SparseMatrix>& ops, const Matrix& x);

struct AttractorReport {
    std::size_t kernel_dimension = 0;
    bool saturated = false;
    Matrix reference;  // steady state the trials are compared to
    std::vector<double> distances;
    double max_distance = 0.0;
    double max_pairwise_distance = 0.0;
};

struct AttractorOptions {
    KernelOptions kernel;
    KrylovOptions krylov;
    std::uint64_t seed = 1;
    std::size_t max_dim = kDefaultSuperoperatorDimLimit;
};

AttractorReport uniqueness_and_attractor_probe(const LindbladGenerator& g, std::size_t trials, double t_max,
                                               const AttractorOptions& options = {});
// Same, from caller-chosen initial states.
AttractorReport uniqueness_and_attractor_probe(const LindbladGenerator& g, const std::vector<Matrix>& starts,
                                               double t_max, const AttractorOptions& options = {});

}  // namespace stabtherm
