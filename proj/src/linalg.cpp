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

#include "stabtherm/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "stabtherm/errors.hpp"

namespace stabtherm {

SparseMatrix sparse_identity(std::size_t dim) {
    SparseMatrix id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    id.setIdentity();
    return id;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out = Eigen::kroneckerProduct(a, b);
    out.makeCompressed();
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

double hermiticity_defect(const Matrix& a) { return (a - a.adjoint()).norm(); }

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

double trace_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("trace_distance shape mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a - b), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double spectral_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

Vector vectorize(const Matrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, std::size_t dim) {
    if (static_cast<std::size_t>(v.size()) != dim * dim) throw DimensionError("unvectorize size mismatch");
    return Eigen::Map<const Matrix>(v.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

namespace {

Matrix gaussian_matrix(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, dim);
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
        for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = cplx(normal(rng), normal(rng));
    }
    return g;
}

}  // namespace

Matrix random_density_matrix(std::size_t dim, std::mt19937_64& rng) {
    const Matrix g = gaussian_matrix(dim, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return hermitian_part(rho);
}

Matrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
    const Matrix g = gaussian_matrix(dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const cplx d = r(k, k);
        if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
    }
    return q;
}

Matrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    return hermitian_part(gaussian_matrix(dim, rng));
}

Matrix unitary_propagator(const Matrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
    const Vector phases = (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix partial_trace_high(const Matrix& rho, std::size_t keep_qubits, std::size_t total_qubits) {
    const std::size_t keep = std::size_t{1} << keep_qubits;
    const std::size_t drop = std::size_t{1} << (total_qubits - keep_qubits);
    if (static_cast<std::size_t>(rho.rows()) != keep * drop) throw DimensionError("partial trace size mismatch");
    Matrix out = Matrix::Zero(keep, keep);
    for (std::size_t d = 0; d < drop; ++d) {
        out += rho.block(d * keep, d * keep, keep, keep);
    }
    return out;
}

}  // namespace stabtherm
