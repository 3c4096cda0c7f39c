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

#include <catch_amalgamated.hpp>

#include "agingmimo/matops.hpp"
#include "support.hpp"

using namespace agingmimo;
using agingmimo::testing::random_complex;
using agingmimo::testing::random_psd;
using agingmimo::testing::rel_diff;

TEST_CASE("commutation matrix maps vec(A) to vec(A^T)") {
    for (auto [r, c] : {std::pair{1, 1}, {2, 3}, {4, 2}, {5, 5}}) {
        const CMatrix a = random_complex(r, c, 11 + r * c);
        const CMatrix p = commutation_matrix(r, c);
        CHECK((p * vec(a) - vec(a.transpose())).norm() < 1e-14);
        CHECK((p.adjoint() * p - CMatrix::Identity(r * c, r * c)).norm() < 1e-14);
    }
}

TEST_CASE("commutation matrix swaps Kronecker factors") {
    const CMatrix a = random_complex(2, 2, 1);
    const CMatrix b = random_complex(3, 3, 2);
    const CMatrix p = commutation_matrix(3, 2);
    const CMatrix q = commutation_matrix(2, 3);
    CHECK(rel_diff(p * kron(a, b) * q, kron(b, a)) < 1e-13);
}

TEST_CASE("kron follows the mixed-product rule") {
    const CMatrix a = random_complex(2, 3, 3), b = random_complex(4, 2, 4);
    const CMatrix c = random_complex(3, 2, 5), d = random_complex(2, 3, 6);
    CHECK(rel_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-13);
}

TEST_CASE("vec and unvec are inverse and column-major") {
    const CMatrix a = random_complex(3, 4, 7);
    const CVector v = vec(a);
    CHECK(v(1) == a(1, 0));
    CHECK(v(3) == a(0, 1));
    CHECK(unvec(v, 3, 4) == a);
    CHECK_THROWS_AS(unvec(v, 5, 2), DimensionMismatchError);
}

TEST_CASE("frobenius inner product conjugates the left argument") {
    const CMatrix a = random_complex(3, 3, 8), b = random_complex(3, 3, 9);
    CHECK(std::abs(frobenius_inner(a, b) - (a.adjoint() * b).trace()) < 1e-12);
    CHECK(std::abs(frobenius_inner(a, a).imag()) < 1e-12);
}

TEST_CASE("herm_solve matches an explicit inverse") {
    const CMatrix a = random_psd(6, 10);
    const CMatrix b = random_complex(6, 2, 11);
    CHECK(rel_diff(herm_solve(a, b), a.inverse() * b) < 1e-12);
}

TEST_CASE("herm_solve rejects indefinite matrices") {
    CMatrix a = CMatrix::Identity(3, 3);
    a(2, 2) = -1.0;
    CHECK_THROWS_AS(herm_solve(a, CMatrix::Identity(3, 3)), SingularMatrixError);
    CHECK_THROWS_AS(herm_solve(a, CMatrix::Identity(2, 2)), DimensionMismatchError);
}

TEST_CASE("herm_solve with jitter solves the shifted system") {
    const CMatrix a = random_psd(4, 12);
    const CMatrix b = random_complex(4, 1, 13);
    const CMatrix shifted = a + 0.5 * CMatrix::Identity(4, 4);
    CHECK(rel_diff(herm_solve(a, b, 0.5), shifted.inverse() * b) < 1e-12);
}

TEST_CASE("psd_sqrt squares back and is Hermitian") {
    const CMatrix a = random_psd(5, 14, 0.0);
    const CMatrix r = psd_sqrt(a);
    CHECK(hermitian_deviation(r) < 1e-12);
    CHECK(rel_diff(r * r, a) < 1e-10);
}

TEST_CASE("psd helpers clamp round-off but reject real negatives") {
    const CVector v = agingmimo::testing::random_unit(4, 15);
    CMatrix a = v * v.adjoint();
    a -= 1e-14 * CMatrix::Identity(4, 4);
    CHECK(hermitian_eigenvalues(clamp_psd(a)).minCoeff() >= -1e-15);
    CHECK(is_hermitian_psd(clamp_psd(a)));

    CMatrix bad = CMatrix::Identity(3, 3);
    bad(0, 0) = -0.5;
    CHECK_FALSE(is_hermitian_psd(bad));
    CHECK_THROWS_AS(clamp_psd(bad), NotPsdError);
    CHECK_THROWS_AS(psd_sqrt(bad), NotPsdError);
}

TEST_CASE("hermitian_part removes the skew component") {
    const CMatrix a = random_complex(4, 4, 16);
    const CMatrix h = hermitian_part(a);
    CHECK(hermitian_deviation(h) < 1e-15);
    CHECK(rel_diff(h, 0.5 * (a + a.adjoint())) < 1e-15);
}
