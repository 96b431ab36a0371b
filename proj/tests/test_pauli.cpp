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

#include <random>

#include "doctest.h"
#include "stabtherm/errors.hpp"
#include "stabtherm/pauli.hpp"

using namespace stabtherm;

namespace {

// Independent realization: Kronecker product of explicit 2x2 matrices, with
// qubit 0 as the least significant tensor factor.
Matrix oracle_dense(const std::string& letters, cplx phase) {
    Matrix out = Matrix::Identity(1, 1);
    for (char c : letters) {
        Matrix m(2, 2);
        switch (c) {
            case 'I': m << 1, 0, 0, 1; break;
            case 'X': m << 0, 1, 1, 0; break;
            case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
            case 'Z': m << 1, 0, 0, -1; break;
        }
        out = kron(m, out);
    }
    return phase * out;
}

// Column action of a Pauli string on basis state `col`, letter by letter.
std::pair<std::uint64_t, cplx> oracle_column(const std::string& letters, cplx phase, std::uint64_t col) {
    std::uint64_t row = 0;
    cplx value = phase;
    for (std::size_t q = 0; q < letters.size(); ++q) {
        const int b = (col >> q) & 1;
        int out_bit = b;
        switch (letters[q]) {
            case 'I': break;
            case 'X': out_bit = 1 - b; break;
            case 'Y': out_bit = 1 - b; value *= b == 0 ? cplx(0, 1) : cplx(0, -1); break;
            case 'Z': value *= b == 0 ? 1.0 : -1.0; break;
        }
        row |= static_cast<std::uint64_t>(out_bit) << q;
    }
    return {row, value};
}

std::string random_letters(std::size_t n, std::mt19937_64& rng) {
    static const char kL[4] = {'I', 'X', 'Y', 'Z'};
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += kL[rng() % 4];
    return s;
}

std::string letters_of(const PauliString& p) { return p.str().substr(3); }

}  // namespace

TEST_CASE("single-qubit products") {
    const auto x = PauliString::from_text("X");
    const auto z = PauliString::from_text("Z");
    CHECK((x * x).str() == "+1 I");
    CHECK((x * z).str() == "-i Y");
    CHECK((z * x).str() == "+i Y");
    CHECK(oracle_dense("X", 1.0) * oracle_dense("Z", 1.0) == oracle_dense("Y", cplx(0, -1)));
}

TEST_CASE("overlapping four-body product matches dense oracle") {
    const auto a = PauliString::from_text("ZZZZII");
    const auto b = PauliString::from_text("IIXXXX");
    const auto r = a * b;
    CHECK(letters_of(r) == "ZZYYXX");
    const Matrix expected = oracle_dense("ZZZZII", 1.0) * oracle_dense("IIXXXX", 1.0);
    CHECK((r.to_dense() - expected).norm() < 1e-12);
    // Z*X = iY on two sites gives an overall -1.
    CHECK(r.log_i_phase() == 2);
}

TEST_CASE("multiply agrees with dense product on random pairs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const std::string la = random_letters(n, rng);
        const std::string lb = random_letters(n, rng);
        const std::uint8_t pa = rng() % 4;
        const std::uint8_t pb = rng() % 4;
        const auto a = PauliString::from_text(la).with_log_i_phase(pa);
        const auto b = PauliString::from_text(lb).with_log_i_phase(pb);
        const SparseMatrix prod = (a * b).to_sparse();
        const cplx phase_a = a.phase_factor();
        const cplx phase_b = b.phase_factor();
        for (std::uint64_t col = 0; col < (1ULL << n); ++col) {
            const auto [mid, vb] = oracle_column(lb, phase_b, col);
            const auto [row, va] = oracle_column(la, phase_a, mid);
            REQUIRE(std::abs(prod.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) - va * vb) <
                    1e-12);
        }
    }
}

TEST_CASE("commutes agrees with dense commutator") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const std::string la = random_letters(n, rng);
        const std::string lb = random_letters(n, rng);
        const Matrix a = oracle_dense(la, 1.0);
        const Matrix b = oracle_dense(lb, 1.0);
        const bool dense = (a * b - b * a).norm() < 1e-12;
        CHECK(commutes(PauliString::from_text(la), PauliString::from_text(lb)) == dense);
    }
    CHECK_FALSE(commutes(PauliString::from_text("X"), PauliString::from_text("Z")));
}

TEST_CASE("sigma_x on a vertex site anticommutes with the vertex stabilizer") {
    const auto av = PauliString::from_text("ZZZZ");
    for (std::size_t j = 0; j < 4; ++j) {
        const auto x = PauliString::single(4, j, Axis::X);
        CHECK_FALSE(x.commutes(av));
        CHECK((x.to_dense() * av.to_dense() - av.to_dense() * x.to_dense()).norm() > 1.0);
    }
}

TEST_CASE("involution and unitarity") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        const auto p = PauliString::from_text(random_letters(n, rng)).with_log_i_phase(rng() % 4);
        const auto sq = p * p;
        CHECK(sq.is_identity_up_to_phase());
        CHECK((sq.log_i_phase() == 0 || sq.log_i_phase() == 2));
        CHECK((p * p.adjoint()).str() == PauliString(n).str());
        const Matrix d = p.to_dense();
        CHECK((d * d.adjoint() - Matrix::Identity(d.rows(), d.cols())).norm() < 1e-12);
        if (p.is_hermitian()) {
            CHECK((d - d.adjoint()).norm() < 1e-12);
        } else {
            CHECK((d + d.adjoint()).norm() < 1e-12);
        }
    }
}

TEST_CASE("dense realizations") {
    CHECK(PauliString(1).to_dense() == Matrix::Identity(2, 2));
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    CHECK(PauliString::from_text("Z").to_dense() == z);
    const Matrix av = PauliString::from_text("ZZZZ").to_dense();
    Eigen::SelfAdjointEigenSolver<Matrix> es(av);
    int plus = 0;
    int minus = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        if (std::abs(es.eigenvalues()(k) - 1.0) < 1e-12) ++plus;
        if (std::abs(es.eigenvalues()(k) + 1.0) < 1e-12) ++minus;
    }
    CHECK(plus == 8);
    CHECK(minus == 8);
    CHECK((PauliString::from_text("-i XYZI").to_dense() - oracle_dense("XYZI", cplx(0, -1))).norm() < 1e-12);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(PauliString::from_text("XX") * PauliString::from_text("XXX"), DimensionError);
    CHECK_THROWS_AS(PauliString::from_text("XX").commutes(PauliString::from_text("X")), DimensionError);
    CHECK_THROWS_AS(PauliString(15).to_dense(), CapacityError);
    CHECK_THROWS_AS(PauliString(4).to_dense(3), CapacityError);
    CHECK_THROWS_AS(PauliString::from_text("+2 XX"), ValidationError);
    CHECK_THROWS_AS(PauliString::from_text("XQ"), ValidationError);
}

TEST_CASE("text form round trips") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = PauliString::from_text(random_letters(1 + rng() % 70, rng)).with_log_i_phase(rng() % 4);
        CHECK(PauliString::from_text(p.str()) == p);
    }
    CHECK(PauliString::from_text("-1 IXYZ").str() == "-1 IXYZ");
}

TEST_CASE("wide strings cross word boundaries") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 65 + rng() % 100;
        const std::string la = random_letters(n, rng);
        const std::string lb = random_letters(n, rng);
        const auto r = PauliString::from_text(la) * PauliString::from_text(lb);
        // Phase by site-wise accumulation through 1-qubit products.
        unsigned phase = 0;
        for (std::size_t q = 0; q < n; ++q) {
            const auto s = PauliString::from_text(std::string(1, la[q])) * PauliString::from_text(std::string(1, lb[q]));
            phase += s.log_i_phase();
            CHECK(r.letter(q) == s.letter(0));
        }
        CHECK(r.log_i_phase() == (phase & 3U));
    }
}

TEST_CASE("PauliSum merges duplicates and folds phases") {
    const auto x = PauliString::from_text("XI");
    PauliSum s(x, 0.5);
    s += PauliSum(x.with_log_i_phase(2), 0.25);
    REQUIRE(s.size() == 1);
    CHECK(std::abs(s.terms()[0].coefficient - 0.25) < 1e-15);
    s -= PauliSum(x, 0.25);
    CHECK(s.empty());

    const auto zz = PauliString::from_text("ZZ");
    const PauliSum proj = spectral_projector(zz, +1) * spectral_projector(zz, +1);
    CHECK((proj.to_dense() - spectral_projector(zz, +1).to_dense()).norm() < 1e-14);
    CHECK((spectral_projector(zz, +1) * spectral_projector(zz, -1)).empty());

    const PauliSum y_from_xz = PauliSum(PauliString::from_text("X")) * PauliSum(PauliString::from_text("Z"));
    CHECK((y_from_xz.to_dense() - oracle_dense("Y", cplx(0, -1))).norm() < 1e-14);
    CHECK(y_from_xz.adjoint().to_dense().isApprox(y_from_xz.to_dense().adjoint()));
}
