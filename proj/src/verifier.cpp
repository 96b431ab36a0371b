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


#include "stabtherm/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stabtherm/errors.hpp"

namespace stabtherm {

double FixedPointReport::max_residual() const { return std::max({max_lowering, max_raising, max_translation}); }

FixedPointReport check_fixed_point_conditions(const Matrix& rho, std::span<const ExcitationOps> ops, double beta) {
    if (!std::isfinite(beta) || beta < 0.0) throw ParameterError("fixed-point check: beta must be non-negative");
    if (rho.rows() != rho.cols()) throw DimensionError("fixed-point check: state must be square");
    FixedPointReport report;
    report.beta = beta;
    for (const auto& o : ops) {
        const std::size_t n = o.annihilate.num_qubits();
        if ((std::size_t{1} << n) != static_cast<std::size_t>(rho.rows())) {
            throw DimensionError("fixed-point check: operator and state dimensions differ");
        }
        const double ratio = std::exp(-2.0 * beta * o.delta);
        const double p0 = 1.0 / (1.0 + ratio);
        const double p1 = ratio / (1.0 + ratio);
        report.p0 = p0;
        report.p1 = p1;
        const SparseMatrix e = o.annihilate.to_sparse();
        const SparseMatrix ed = o.create.to_sparse();
        const SparseMatrix t = o.translate.to_sparse();
        auto right = [&](const SparseMatrix& a) -> Matrix { return (a.transpose() * rho.transpose()).transpose(); };
        FixedPointResidual r;
        r.link = o.link;
        r.sector = o.sector;
        r.lowering = (p0 * (e * rho) - p1 * right(e)).norm();
        r.raising = (p1 * (ed * rho) - p0 * right(ed)).norm();
        r.translation = (Matrix(t * rho) - right(t)).norm();
        report.max_lowering = std::max(report.max_lowering, r.lowering);
        report.max_raising = std::max(report.max_raising, r.raising);
        report.max_translation = std::max(report.max_translation, r.translation);
        report.residuals.push_back(r);
    }
    return report;
}

namespace {

SparseMatrix adjoint_action(const SparseMatrix& a) {
    const SparseMatrix id = sparse_identity(static_cast<std::size_t>(a.rows()));
    const SparseMatrix at = a.transpose();
    return SparseMatrix(kron(id, a) - kron(at, id));
}

std::vector<SparseMatrix> with_adjoints(const SparseMatrix& h, const std::vector<SparseMatrix>& jumps) {
    std::vector<SparseMatrix> ops{h};
    for (const auto& k : jumps) {
        ops.push_back(k);
        ops.push_back(SparseMatrix(k.adjoint()));
    }
    return ops;
}

std::size_t dense_nullity(const Matrix& g, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(g), Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::size_t count = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        if (std::abs(es.eigenvalues()(k)) < tol * scale) ++count;
    }
    return count;
}

void analyse_eigenspace(EigenspaceDetail& detail, const Matrix& q, const std::vector<SparseMatrix>& ops,
                        const ErgodicityOptions& options) {
    constexpr std::size_t kWordBudget = 200000;
    const auto d = q.cols();
    const Matrix id = Matrix::Identity(d, d);
    Matrix gram = Matrix::Zero(d * d, d * d);
    std::vector<Matrix> frontier{q};
    std::size_t visited = 0;
    for (std::size_t len = 1; len <= options.max_word_length && !frontier.empty(); ++len) {
        std::vector<Matrix> next;
        for (const auto& y : frontier) {
            for (const auto& a : ops) {
                if (++visited > kWordBudget) break;
                Matrix z = a * y;
                if (z.norm() < 1e-12) continue;
                const Matrix r = q.adjoint() * z;
                if (r.norm() > 1e-12) {
                    const Matrix ad = kron(id, r) - kron(Matrix(r.transpose()), id);
                    gram += ad.adjoint() * ad;
                    ++detail.words;
                }
                if (len < options.max_word_length) next.push_back(std::move(z));
            }
        }
        frontier = std::move(next);
    }
    detail.commutant_dimension = dense_nullity(gram, options.tolerance);
    detail.analysed = true;
}

}  // namespace

double max_commutator(const std::vector<SparseMatrix>& ops, const Matrix& x) {
    double worst = 0.0;
    for (const auto& a : ops) {
        const Matrix ax = a * x;
        const Matrix xa = (a.transpose() * x.transpose()).transpose();
        worst = std::max(worst, (ax - xa).norm());
        const SparseMatrix ad = a.adjoint();
        const Matrix adx = ad * x;
        const Matrix xad = (ad.transpose() * x.transpose()).transpose();
        worst = std::max(worst, (adx - xad).norm());
    }
    return worst;
}

ErgodicityReport ergodicity_check(const SparseMatrix& h, const std::vector<SparseMatrix>& jumps,
                                  const ErgodicityOptions& options, const std::vector<NamedOperator>& probes) {
    const auto dim = static_cast<std::size_t>(h.rows());
    if (h.rows() != h.cols()) throw DimensionError("ergodicity_check: Hamiltonian must be square");
    if (dim > options.max_dim) {
        throw CapacityError("ergodicity_check: dimension " + std::to_string(dim) + " exceeds limit " +
                            std::to_string(options.max_dim));
    }
    for (const auto& k : jumps) {
        if (k.rows() != h.rows() || k.cols() != h.cols()) throw DimensionError("ergodicity_check: jump shape");
    }
    const auto ops = with_adjoints(h, jumps);
    SparseMatrix m(static_cast<Eigen::Index>(dim * dim), static_cast<Eigen::Index>(dim * dim));
    for (const auto& a : ops) {
        const SparseMatrix ad = adjoint_action(a);
        m += SparseMatrix(SparseMatrix(ad.adjoint()) * ad);
    }
    m.prune(cplx(0.0), 1e-14);
    m.makeCompressed();
    const KernelResult k = kernel(m, options.kernel);

    ErgodicityReport report;
    report.commutant_dimension = k.dimension;
    report.saturated = k.saturated;
    report.residual = k.residual;
    report.ergodic = k.dimension == 1 && !k.saturated;

    if (dim <= 1024) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(Matrix(h)));
        const RealVector& e = es.eigenvalues();
        const double tol = 1e-9 * std::max(1.0, e.cwiseAbs().maxCoeff());
        Eigen::Index start = 0;
        while (start < e.size()) {
            Eigen::Index stop = start + 1;
            while (stop < e.size() && e(stop) - e(start) < tol) ++stop;
            EigenspaceDetail detail;
            detail.energy = e.segment(start, stop - start).mean();
            detail.dimension = static_cast<std::size_t>(stop - start);
            if (detail.dimension <= options.detail_limit) {
                analyse_eigenspace(detail, es.eigenvectors().middleCols(start, stop - start), ops, options);
            }
            report.eigenspaces.push_back(detail);
            start = stop;
        }
    }

    for (const auto& p : probes) {
        if (p.op.rows() != h.rows() || p.op.cols() != h.cols()) throw DimensionError("ergodicity_check: probe shape");
        ProbeResult r;
        r.name = p.name;
        const Matrix x(p.op);
        r.max_commutator = max_commutator(ops, x);
        r.in_commutant = r.max_commutator < options.tolerance * std::max(1.0, x.norm());
        report.probes.push_back(r);
    }
    return report;
}

ErgodicityReport ergodicity_check(const LindbladGenerator& g, const ErgodicityOptions& options,
                                  const std::vector<NamedOperator>& probes) {
    std::vector<SparseMatrix> jumps;
    for (const auto& j : g.jumps()) {
        if (j.rate > 0.0) jumps.push_back(j.op);
    }
    return ergodicity_check(g.hamiltonian(), jumps, options, probes);
}

AttractorReport uniqueness_and_attractor_probe(const LindbladGenerator& g, const std::vector<Matrix>& starts,
                                               double t_max, const AttractorOptions& options) {
    const SparseMatrix l = build_superoperator(g, options.max_dim);
    const SteadyStateResult ss = steady_states(l, g.dim(), options.kernel);
    AttractorReport report;
    report.kernel_dimension = ss.kernel_dimension;
    report.saturated = ss.saturated;
    report.reference = ss.states.empty() ? Matrix::Zero(g.dim(), g.dim()) : ss.states.front();
    const auto finals = propagate(l, g.dim(), starts, t_max, options.krylov);
    for (const auto& f : finals) {
        const double d = trace_distance(f, report.reference);
        report.distances.push_back(d);
        report.max_distance = std::max(report.max_distance, d);
    }
    for (std::size_t a = 0; a < finals.size(); ++a) {
        for (std::size_t b = a + 1; b < finals.size(); ++b) {
            report.max_pairwise_distance = std::max(report.max_pairwise_distance, trace_distance(finals[a], finals[b]));
        }
    }
    return report;
}

AttractorReport uniqueness_and_attractor_probe(const LindbladGenerator& g, std::size_t trials, double t_max,
                                               const AttractorOptions& options) {
    if (trials == 0) throw ParameterError("attractor probe: need at least one trial");
    std::mt19937_64 rng(options.seed);
    std::vector<Matrix> starts;
    for (std::size_t k = 0; k < trials; ++k) starts.push_back(random_density_matrix(g.dim(), rng));
    return uniqueness_and_attractor_probe(g, starts, t_max, options);
}

}  // namespace stabtherm
