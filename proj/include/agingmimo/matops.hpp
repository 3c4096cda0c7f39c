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

#include <complex>
#include <Eigen/Dense>

#include "agingmimo/errors.hpp"

namespace agingmimo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// All vectorization in this library is column-major: vec(X)[r + c * rows] = X(r, c).

/// Permutation P with P * vec(X) == vec(X^T) for every n_r x n_t matrix X.
CMatrix commutation_matrix(Eigen::Index n_r, Eigen::Index n_t);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Frobenius inner product <A, B> = trace(A^H B).
Complex frobenius_inner(const CMatrix& a, const CMatrix& b);

CVector vec(const CMatrix& x);
CMatrix unvec(const CVector& x, Eigen::Index rows, Eigen::Index cols);

/// Largest elementwise deviation |A - A^H|.
double hermitian_deviation(const CMatrix& a);

/// (A + A^H) / 2.
CMatrix hermitian_part(const CMatrix& a);

/// Eigenvalues of the Hermitian part, ascending.
RVector hermitian_eigenvalues(const CMatrix& a);

/// True when A is Hermitian within 1e-10 and its smallest eigenvalue is at
/// least -rel_tol * (largest eigenvalue).
bool is_hermitian_psd(const CMatrix& a, double rel_tol = 1e-10);

/// Symmetrizes and clamps eigenvalues in [-1e-8 * lambda_max, 0) to zero.
/// Throws NotPsdError if an eigenvalue lies below that floor.
CMatrix clamp_psd(const CMatrix& a);

/// Hermitian square root B (B * B == A) of a numerically PSD matrix.
/// Throws NotPsdError when the smallest eigenvalue is below -1e-8 * lambda_max.
CMatrix psd_sqrt(const CMatrix& a);

/// Solves (A + jitter * I) X = B for Hermitian PSD A with a Cholesky
/// factorization. If the factorization fails, the jitter is raised once by
/// 1e-12 * trace(A) / dim before SingularMatrixError is thrown.
CMatrix herm_solve(const CMatrix& a, const CMatrix& b, double jitter = 0.0);

} // namespace agingmimo
