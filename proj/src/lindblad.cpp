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


#include "stabtherm/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/UmfPackSupport>
#include <unsupported/Eigen/MatrixFunctions>

#include "stabtherm/errors.hpp"

namespace stabtherm {

namespace {

double sparse_norm(const SparseMatrix& a) { return a.norm(); }

}  // namespace

LindbladGenerator::LindbladGenerator(SparseMatrix hamiltonian, std::vector<JumpOperator> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
    if (hamiltonian_.rows() != hamiltonian_.cols() || hamiltonian_.rows() == 0) {
        throw DimensionError("Lindblad generator: Hamiltonian must be square and non-empty");
    }
    const SparseMatrix adj = hamiltonian_.adjoint();
    const double defect = sparse_norm(hamiltonian_ - adj);
    if (!(defect <= 1e-12 * std::max(1.0, sparse_norm(hamiltonian_)))) {
        throw ModelError("Lindblad generator: Hamiltonian is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    for (const auto& j : jumps_) {
        if (j.op.rows() != hamiltonian_.rows() || j.op.cols() != hamiltonian_.cols()) {
            throw DimensionError("Lindblad generator: jump '" + j.label + "' has the wrong shape");
        }
        if (!std::isfinite(j.rate) || j.rate < 0.0) {
            throw ParameterError("Lindblad generator: jump '" + j.label + "' has invalid rate");
        }
    }
    hamiltonian_.makeCompressed();
}

double LindbladGenerator::energy_scale() const {
    double scale = one_norm(hamiltonian_);
    for (const auto& j : jumps_) {
        const double k = one_norm(j.op);
        scale = std::max(scale, 4.0 * j.rate * k * k);
    }
    return scale;
}

LindbladGenerator LindbladGenerator::operator+(const LindbladGenerator& other) const {
    if (other.dim() != dim()) throw DimensionError("Lindblad generator sum: dimension mismatch");
    std::vector<JumpOperator> all = jumps_;
    all.insert(all.end(), other.jumps_.begin(), other.jumps_.end());
    return LindbladGenerator(hamiltonian_ + other.hamiltonian_, std::move(all));
}

LindbladGenerator LindbladGenerator::with_jumps(std::vector<JumpOperator> jumps) const {
    return LindbladGenerator(hamiltonian_, std::move(jumps));
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw DimensionError("density matrix must be square");
    if (!rho_.allFinite()) throw ValidationError("density matrix has non-finite entries");
    const double scale = std::max(1.0, rho_.norm());
    if (hermiticity_defect(rho_) > 1e-10 * scale) throw ValidationError("density matrix is not Hermitian");
    if (std::abs(rho_.trace() - cplx(1.0)) > kTraceTolerance) throw ValidationError("density matrix trace is not 1");
    if (min_eigenvalue(rho_) < -kPositivityTolerance) throw ValidationError("density matrix is not positive");
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw ValidationError("pure state from zero vector");
    const Vector u = psi / n;
    return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

cplx DensityMatrix::expectation(const SparseMatrix& op) const { return (op * rho_).trace(); }

SparseMatrix build_superoperator(const LindbladGenerator& g, std::size_t max_dim) {
    const std::size_t dim = g.dim();
    if (dim > max_dim) {
        throw CapacityError("superoperator: dimension " + std::to_string(dim) + " exceeds limit " +
                            std::to_string(max_dim));
    }
    const SparseMatrix id = sparse_identity(dim);
    const SparseMatrix h = g.hamiltonian();
    const SparseMatrix ht = h.transpose();
    SparseMatrix out = cplx(0.0, -1.0) * (kron(id, h) - kron(ht, id));
    for (const auto& j : g.jumps()) {
        if (j.rate == 0.0) continue;
        const SparseMatrix k = j.op;
        const SparseMatrix kdk = SparseMatrix(k.adjoint()) * k;
        const SparseMatrix kbar = k.conjugate();
        const SparseMatrix kdkt = kdk.transpose();
        out += j.rate * (2.0 * kron(kbar, k) - kron(id, kdk) - kron(kdkt, id));
    }
    out.prune(cplx(0.0), 1e-15);
    out.makeCompressed();
    return out;
}

Matrix apply_generator(const LindbladGenerator& g, const Matrix& rho) {
    if (static_cast<std::size_t>(rho.rows()) != g.dim() || rho.rows() != rho.cols()) {
        throw DimensionError("apply_generator: operator shape mismatch");
    }
    const SparseMatrix& h = g.hamiltonian();
    Matrix out = cplx(0.0, -1.0) * (h * rho - (h.transpose() * rho.transpose()).transpose());
    for (const auto& j : g.jumps()) {
        const Matrix k(j.op);
        const Matrix kdk = k.adjoint() * k;
        out += j.rate * (2.0 * k * rho * k.adjoint() - kdk * rho - rho * kdk);
    }
    return out;
}

namespace {

void hermitize(Vector& v, std::size_t dim) {
    Eigen::Map<Matrix> m(v.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const Matrix h = 0.5 * (m + m.adjoint());
    m = h;
}

// Dormand-Prince 5(4) step; returns the error estimate vector in err.
void dopri_step(const SparseMatrix& l, const Vector& y, const Vector& k1, double h, Vector& y5, Vector& k7,
                Vector& err) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                            b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    const Vector k2 = l * (y + h * a21 * k1);
    const Vector k3 = l * (y + h * (a31 * k1 + a32 * k2));
    const Vector k4 = l * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vector k5 = l * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vector k6 = l * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = l * y5;
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
}

struct Integrator {
    const SparseMatrix& l;
    std::size_t dim;
    const EvolveOptions& options;
    double h = 0.0;
    std::size_t steps = 0;
    std::size_t rejected = 0;

    void advance(Vector& y, double span) {
        double done = 0.0;
        Vector k1 = l * y;
        Vector y5, k7, err;
        while (done < span) {
            const double remaining = span - done;
            const bool last = h >= remaining;
            const double step = last ? remaining : h;
            dopri_step(l, y, k1, step, y5, k7, err);
            double e = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double sc = options.absolute_tolerance +
                                  options.relative_tolerance * std::max(std::abs(y(i)), std::abs(y5(i)));
                e = std::max(e, std::abs(err(i)) / sc);
            }
            if (!std::isfinite(e)) throw NumericalError("evolve: non-finite error estimate");
            const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
            if (e <= 1.0) {
                done = last ? span : done + step;
                y = y5;
                hermitize(y, dim);
                k1 = l * y;
                ++steps;
                if (!last || factor < 1.0) h = step * factor;
            } else {
                ++rejected;
                h = step * factor;
                if (h < options.dt_min) {
                    throw NumericalError("evolve: step size fell below dt_min (stiff generator?)");
                }
            }
        }
    }
};

double positivity(const Vector& v, std::size_t dim) { return min_eigenvalue(unvectorize(v, dim)); }

}  // namespace

EvolveResult evolve_superoperator(const SparseMatrix& superop, std::size_t dim, const Matrix& rho0, double t,
                                  const EvolveOptions& options, const EvolveObserver& observer) {
    if (static_cast<std::size_t>(rho0.rows()) != dim || rho0.rows() != rho0.cols()) {
        throw DimensionError("evolve: initial state has the wrong shape");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("evolve: time must be finite and non-negative");
    if (static_cast<std::size_t>(superop.rows()) != dim * dim) throw DimensionError("evolve: superoperator shape");

    EvolveResult result;
    Vector y = vectorize(rho0);
    result.min_eigenvalue = positivity(y, dim);
    if (observer) observer(0.0, rho0);

    const double interval = options.sample_interval > 0.0 ? options.sample_interval : t;
    const bool exact = dim * dim <= options.exact_limit;
    result.exact = exact;

    Matrix propagator;
    double propagator_span = -1.0;
    const double norm = std::max(one_norm(superop), 1e-300);
    Integrator rk{superop, dim, options, options.dt > 0.0 ? options.dt : 0.1 / norm};

    double now = 0.0;
    while (now < t) {
        const double span = std::min(interval, t - now);
        if (span <= 0.0) break;
        if (exact) {
            if (span != propagator_span) {
                propagator = (Matrix(superop) * span).exp();
                propagator_span = span;
            }
            y = propagator * y;
            hermitize(y, dim);
            ++result.steps;
        } else {
            rk.advance(y, span);
        }
        now = (t - now - span) <= 1e-14 * t ? t : now + span;
        const double m = positivity(y, dim);
        result.min_eigenvalue = std::min(result.min_eigenvalue, m);
        if (observer) observer(now, unvectorize(y, dim));
    }
    if (!exact) {
        result.steps = rk.steps;
        result.rejected = rk.rejected;
    }
    result.positivity_warning = result.min_eigenvalue < -1e-6;
    result.state = unvectorize(y, dim);
    return result;
}

EvolveResult evolve(const LindbladGenerator& g, const Matrix& rho0, double t, const EvolveOptions& options,
                    const EvolveObserver& observer) {
    return evolve_superoperator(build_superoperator(g, options.max_dim), g.dim(), rho0, t, options, observer);
}

std::vector<Matrix> propagate(const SparseMatrix& superop, std::size_t dim, const std::vector<Matrix>& states,
                              double t, const KrylovOptions& options) {
    const auto n = static_cast<Eigen::Index>(dim * dim);
    if (superop.rows() != n || superop.cols() != n) throw DimensionError("propagate: superoperator shape");
    if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("propagate: time must be finite and non-negative");
    std::vector<Matrix> out;
    if (t == 0.0) return states;
    const double gamma = options.shift_fraction * t;
    SparseMatrix shifted = sparse_identity(dim * dim) - gamma * superop;
    shifted.makeCompressed();
    Eigen::UmfPackLU<SparseMatrix> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success) throw NumericalError("propagate: factorization failed");

    for (const auto& rho : states) {
        if (static_cast<std::size_t>(rho.rows()) != dim || rho.rows() != rho.cols()) {
            throw DimensionError("propagate: state has the wrong shape");
        }
        const Vector v = vectorize(rho);
        const double beta = v.norm();
        if (beta == 0.0) {
            out.push_back(rho);
            continue;
        }
        const auto m_max = static_cast<Eigen::Index>(std::min<std::size_t>(options.max_dimension, dim * dim));
        Matrix basis(n, m_max);
        Matrix image(n, m_max);  // L * basis
        basis.col(0) = v / beta;
        image.col(0) = superop * basis.col(0);
        Vector previous;
        Vector result;
        bool converged = false;
        Eigen::Index m = 1;
        while (true) {
            const bool breakdown = [&] {
                if (m >= m_max) return false;
                Vector w = lu.solve(Vector(basis.col(m - 1)));
                for (int pass = 0; pass < 2; ++pass) {
                    const Vector c = basis.leftCols(m).adjoint() * w;
                    w -= basis.leftCols(m) * c;
                }
                const double norm = w.norm();
                if (norm < 1e-13) return true;
                basis.col(m) = w / norm;
                image.col(m) = superop * basis.col(m);
                ++m;
                return false;
            }();
            const bool check = breakdown || m >= m_max || m % static_cast<Eigen::Index>(options.check_every) == 0;
            if (!check) continue;
            const Matrix projected = basis.leftCols(m).adjoint() * image.leftCols(m);
            const Matrix e = (projected * t).exp();
            result = basis.leftCols(m) * (beta * e.col(0));
            if (breakdown) {
                converged = true;
                break;
            }
            if (previous.size() == result.size() && (result - previous).norm() <= options.tolerance * beta) {
                converged = true;
                break;
            }
            if (m >= m_max) break;
            previous = result;
        }
        if (!converged) throw NumericalError("propagate: Krylov iteration did not converge");
        hermitize(result, dim);
        out.push_back(unvectorize(result, dim));
    }
    return out;
}

SteadyStateResult steady_states(const SparseMatrix& superop, std::size_t dim, const KernelOptions& options) {
    if (static_cast<std::size_t>(superop.rows()) != dim * dim) throw DimensionError("steady_states: shape");
    const KernelResult k = kernel(superop, options);
    SteadyStateResult out;
    out.kernel_dimension = k.dimension;
    out.saturated = k.saturated;
    out.unique = k.dimension == 1 && !k.saturated;
    out.residual = k.residual;
    out.superoperator_norm = k.norm;
    for (Eigen::Index c = 0; c < k.basis.cols(); ++c) {
        const Matrix m = unvectorize(k.basis.col(c), dim);
        out.basis.push_back(m);
        const cplx tr = m.trace();
        if (std::abs(tr) > 1e-8) out.states.push_back(hermitian_part(m / tr));
    }
    if (out.residual > 1e3 * k.threshold + 1e-9) {
        throw NumericalError("steady_states: kernel residual " + std::to_string(out.residual) + " too large");
    }
    return out;
}

SteadyStateResult steady_states(const LindbladGenerator& g, const KernelOptions& options, std::size_t max_dim) {
    return steady_states(build_superoperator(g, max_dim), g.dim(), options);
}

Matrix gibbs_state(const Matrix& h, double beta) {
    if (std::isnan(beta) || beta < 0.0) throw ParameterError("gibbs_state: beta must be non-negative");
    if (h.rows() != h.cols() || h.rows() == 0) throw DimensionError("gibbs_state: Hamiltonian must be square");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
    const RealVector& e = es.eigenvalues();
    const double e0 = e.minCoeff();
    const double gap_tol = 1e-9 * std::max(1.0, e.cwiseAbs().maxCoeff());
    RealVector w(e.size());
    for (Eigen::Index k = 0; k < e.size(); ++k) {
        const double shifted = e(k) - e0;
        if (std::isinf(beta)) {
            w(k) = shifted <= gap_tol ? 1.0 : 0.0;
        } else {
            w(k) = beta == 0.0 ? 1.0 : std::exp(-beta * shifted);
        }
    }
    w /= w.sum();
    return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix gibbs_state(const StabilizerHamiltonian& h, double beta) { return gibbs_state(h.to_dense(), beta); }

}  // namespace stabtherm
