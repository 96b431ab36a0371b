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

#include "stabtherm/linalg.hpp"

namespace stabtherm {

struct KernelOptions {
    // Matrices up to this size are handled by a dense SVD.
    std::size_t dense_limit = 1024;
    // Singular values below relative_tolerance * ||A||_1 count as zero.
    double relative_tolerance = 1e-10;
    // Shift for the sparse inverse iteration, relative to ||A||_1.
    double relative_shift = 1e-6;
    std::size_t initial_block = 4;
    std::size_t max_block = 16;
    std::size_t iterations = 6;
    std::uint64_t seed = 0x5eed;
};

struct KernelResult {
    std::size_t dimension = 0;
    // Orthonormal columns spanning the computed kernel.
    Matrix basis;
    // True when every probe direction landed in the kernel, so dimension is
    // only a lower bound.
    bool saturated = false;
    double norm = 0.0;       // ||A||_1
    double residual = 0.0;   // max_k ||A v_k||
    double threshold = 0.0;  // absolute zero threshold used
    bool dense = false;
};

double one_norm(const SparseMatrix& a);

// Right null space of a square matrix.
KernelResult kernel(const SparseMatrix& a, const KernelOptions& options = {});

}  // namespace stabtherm
