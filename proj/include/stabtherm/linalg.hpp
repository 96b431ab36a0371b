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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace stabtherm {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using RealVector = Eigen::VectorXd;

// Units: hbar = 1 everywhere. Energies are in units of the stabilizer
// coupling lambda and times in units of 1 / lambda.

// Largest qubit count for which dense 2^n x 2^n matrices are produced.
inline constexpr std::size_t kDefaultDenseQubitLimit = 14;
// Largest qubit count for sparse Pauli realizations.
inline constexpr std::size_t kDefaultSparseQubitLimit = 22;
// Largest Hilbert dimension for which a Liouvillian is assembled.
inline constexpr std::size_t kDefaultLiouvilleDimLimit = 256;

SparseMatrix sparse_identity(std::size_t dim);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

// Frobenius-norm distance from Hermiticity, ||A - A^dagger||_F.
double hermiticity_defect(const Matrix& a);
Matrix hermitian_part(const Matrix& a);

// 0.5 * ||a - b||_1 for Hermitian arguments.
double trace_distance(const Matrix& a, const Matrix& b);

// Smallest eigenvalue of the Hermitian part of a.
double min_eigenvalue(const Matrix& a);

// Operator 2-norm of a (largest singular value).
double spectral_norm(const Matrix& a);

// Column-stacking vectorization: vec(rho)[col * dim + row] = rho(row, col).
Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, std::size_t dim);

// Haar-ish random pure state projector mixed with a random full-rank part;
// deterministic for a given generator state.
Matrix random_density_matrix(std::size_t dim, std::mt19937_64& rng);
Matrix random_unitary(std::size_t dim, std::mt19937_64& rng);
Matrix random_hermitian(std::size_t dim, std::mt19937_64& rng);

// Unitary matrix exponential exp(-i t h) for Hermitian h.
Matrix unitary_propagator(const Matrix& h, double t);

// Reduced state of the leading `keep_qubits` qubits (low-order bits) of a
// state on `total_qubits` qubits.
Matrix partial_trace_high(const Matrix& rho, std::size_t keep_qubits, std::size_t total_qubits);

}  // namespace stabtherm
