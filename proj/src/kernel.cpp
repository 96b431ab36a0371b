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


#include "stabtherm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/UmfPackSupport>

#include "stabtherm/errors.hpp"

namespace stabtherm {

double one_norm(const SparseMatrix& a) {
    double best = 0.0;
    for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
        double s = 0.0;
        for (SparseMatrix::InnerIterator it(a, c); it; ++it) s += std::abs(it.value());
        best = std::max(best, s);
    }
    return best;
}

namespace {

KernelResult dense_kernel(const SparseMatrix& a, const KernelOptions& options, double norm) {
    KernelResult out;
    out.dense = true;
    out.norm = norm;
    out.threshold = options.relative_tolerance * norm;
    const Matrix d(a);
    Eigen::BDCSVD<Matrix> svd(d, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) >= out.threshold) ++rank;
    out.dimension = static_cast<std::size_t>(d.cols() - rank);
    out.basis = svd.matrixV().rightCols(d.cols() - rank);
    for (Eigen::Index k = 0; k < out.basis.cols(); ++k) {
        out.residual = std::max(out.residual, (d * out.basis.col(k)).norm());
    }
    return out;
}

Matrix orthonormalize(const Matrix& x) {
    Eigen::HouseholderQR<Matrix> qr(x);
    return qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
}

}  // namespace

KernelResult kernel(const SparseMatrix& a, const KernelOptions& options) {
    if (a.rows() != a.cols()) throw DimensionError("kernel: matrix must be square");
    const auto n = static_cast<std::size_t>(a.rows());
    const double norm = one_norm(a);
    if (n == 0) return {};
    if (norm == 0.0) {
        KernelResult out;
        out.dimension = n;
        out.basis = Matrix::Identity(a.rows(), a.cols());
        return out;
    }
    if (n <= options.dense_limit) return dense_kernel(a, options, norm);

    const double shift = options.relative_shift * norm;
    SparseMatrix shifted = a - shift * sparse_identity(n);
    shifted.makeCompressed();
    Eigen::UmfPackLU<SparseMatrix> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success) throw NumericalError("kernel: sparse LU factorization failed");

    KernelResult out;
    out.norm = norm;
    out.threshold = options.relative_tolerance * norm;

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t block = std::max<std::size_t>(1, options.initial_block);
    const std::size_t max_block = std::max(block, std::min(options.max_block, n));
    while (true) {
        block = std::min(block, n);
        Matrix q(a.rows(), static_cast<Eigen::Index>(block));
        for (Eigen::Index c = 0; c < q.cols(); ++c) {
            for (Eigen::Index r = 0; r < q.rows(); ++r) q(r, c) = cplx(normal(rng), normal(rng));
        }
        q = orthonormalize(q);
        for (std::size_t it = 0; it < options.iterations; ++it) {
            Matrix next = lu.solve(q);
            if (lu.info() != Eigen::Success || !next.allFinite()) {
                throw NumericalError("kernel: shifted solve failed");
            }
            q = orthonormalize(next);
        }
        const Matrix aq = a * q;
        Eigen::JacobiSVD<Matrix> svd(aq, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        Eigen::Index rank = 0;
        while (rank < s.size() && s(rank) >= out.threshold) ++rank;
        const Eigen::Index nullity = s.size() - rank;
        if (nullity < static_cast<Eigen::Index>(block) || block >= max_block) {
            out.dimension = static_cast<std::size_t>(nullity);
            out.basis = q * svd.matrixV().rightCols(nullity);
            out.saturated = nullity == static_cast<Eigen::Index>(block) && block < n;
            for (Eigen::Index k = 0; k < out.basis.cols(); ++k) {
                out.residual = std::max(out.residual, (a * out.basis.col(k)).norm());
            }
            return out;
        }
        block *= 2;
    }
}

}  // namespace stabtherm
