// SPDX-License-Identifier: Apache-2.0
//
// agingmimo: spectral efficiency and pilot spacing for aging MIMO uplinks
// Copyright (C) 2026 The agingmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <random>

#include "agingmimo/matops.hpp"

namespace agingmimo::testing {

inline CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            out(i, j) = Complex(n(rng), n(rng));
    return out;
}

inline CMatrix random_psd(Eigen::Index n, std::uint64_t seed, double ridge = 0.1) {
    const CMatrix a = random_complex(n, n, seed);
    CMatrix p = a * a.adjoint() / static_cast<double>(n);
    p.diagonal().array() += ridge;
    return p;
}

inline CVector random_unit(Eigen::Index n, std::uint64_t seed) {
    CVector v = random_complex(n, 1, seed);
    return v / v.norm();
}

inline double rel_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).norm() / std::max(1e-300, b.norm());
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

} // namespace agingmimo::testing
