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
#include <functional>
#include <string>
#include <vector>

#include "stabtherm/kernel.hpp"
#include "stabtherm/linalg.hpp"
#include "stabtherm/stabilizer.hpp"

namespace stabtherm {

struct JumpOperator {
    SparseMatrix op;
    double rate = 0.0;
    std::string label;
};

// d rho/dt = -i[H, rho] + sum_k rate_k (2 K rho K^+ - K^+K rho - rho K^+K), hbar = 1.
class LindbladGenerator {
   public:
    LindbladGenerator(SparseMatrix hamiltonian, std::vector<JumpOperator> jumps);

    std::size_t dim() const { return static_cast<std::size_t>(hamiltonian_.rows()); }
    const SparseMatrix& hamiltonian() const { return hamiltonian_; }
    const std::vector<JumpOperator>& jumps() const { return jumps_; }

    // Largest |H| entry-sum or jump rate * ||K||^2, a rough energy scale.
    double energy_scale() const;

    LindbladGenerator operator+(const LindbladGenerator& other) const;
    LindbladGenerator with_jumps(std::vector<JumpOperator> jumps) const;

   private:
    SparseMatrix hamiltonian_;
    std::vector<JumpOperator> jumps_;
};

class DensityMatrix {
   public:
    static constexpr double kTraceTolerance = 1e-10;
    static constexpr double kPositivityTolerance = 1e-8;

    explicit DensityMatrix(Matrix rho);

    static DensityMatrix pure(const Vector& psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const Matrix& matrix() const { return rho_; }
    cplx expectation(const Matrix& op) const { return (op * rho_).trace(); }
    cplx expectation(const SparseMatrix& op) const;

   private:
    Matrix rho_;
};

inline constexpr std::size_t kDefaultSuperoperatorDimLimit = 256;

SparseMatrix build_superoperator(const LindbladGenerator& g, std::size_t max_dim = kDefaultSuperoperatorDimLimit);

// Direct evaluation of the generator on an operator.
Matrix apply_generator(const LindbladGenerator& g, const Matrix& rho);

struct EvolveOptions {
    double dt = 0.0;  // initial step; 0 picks 0.1 / energy_scale
    double dt_min = 1e-12;
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-12;
    // Use the dense exponential when dim^2 is at most this.
    std::size_t exact_limit = 256;
    // Interval between observer callbacks and positivity checks; 0 means only at the end.
    double sample_interval = 0.0;
    std::size_t max_dim = kDefaultSuperoperatorDimLimit;
};

struct EvolveResult {
    Matrix state;
    std::size_t steps = 0;
    std::size_t rejected = 0;
    double min_eigenvalue = 0.0;  // smallest seen at sample points
    bool positivity_warning = false;
    bool exact = false;
};

using EvolveObserver = std::function<void(double t, const Matrix& rho)>;

EvolveResult evolve(const LindbladGenerator& g, const Matrix& rho0, double t, const EvolveOptions& options = {},
                    const EvolveObserver& observer = {});

// Same integration on a prebuilt superoperator.
EvolveResult evolve_superoperator(const SparseMatrix& superop, std::size_t dim, const Matrix& rho0, double t,
                                  const EvolveOptions& options = {}, const EvolveObserver& observer = {});

struct KrylovOptions {
    double tolerance = 1e-10;
    std::size_t max_dimension = 90;
    std::size_t check_every = 6;
    // The shifted operator is (I - shift_fraction * t * L).
    double shift_fraction = 0.1;
};

// exp(L t) applied to each state with a shift-and-invert Krylov method (one
// sparse factorization shared by all states). Suited to long times on large
// stiff generators; returns Hermitized matrices.
std::vector<Matrix> propagate(const SparseMatrix& superop, std::size_t dim, const std::vector<Matrix>& states,
                              double t, const KrylovOptions& options = {});

struct SteadyStateResult {
    std::size_t kernel_dimension = 0;
    bool saturated = false;
    bool unique = false;
    std::vector<Matrix> basis;   // reshaped kernel vectors
    std::vector<Matrix> states;  // Hermitized, unit trace (trace-carrying vectors only)
    double residual = 0.0;       // max ||L v|| over the kernel basis
    double superoperator_norm = 0.0;
};

SteadyStateResult steady_states(const LindbladGenerator& g, const KernelOptions& options = {},
                                std::size_t max_dim = kDefaultSuperoperatorDimLimit);
SteadyStateResult steady_states(const SparseMatrix& superop, std::size_t dim, const KernelOptions& options = {});

// e^{-beta H} / Z. beta may be +infinity (normalized ground projector).
Matrix gibbs_state(const Matrix& h, double beta);
Matrix gibbs_state(const StabilizerHamiltonian& h, double beta);

}  // namespace stabtherm
