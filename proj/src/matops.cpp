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

#include "agingmimo/matops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace agingmimo {

namespace {

constexpr double kPsdRejectFloor = 1e-8;

Eigen::SelfAdjointEigenSolver<CMatrix> eigen_hermitian(const CMatrix& a, bool vectors) {
    if (a.rows() != a.cols())
        throw DimensionMismatchError("expected a square matrix, got " + std::to_string(a.rows()) + "x" +
                                     std::to_string(a.cols()));
    return Eigen::SelfAdjointEigenSolver<CMatrix>(hermitian_part(a),
                                                  vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

// Clamps eigenvalues in [-floor * lambda_max, 0) and rejects anything below.
RVector clamped_spectrum(const RVector& ev) {
    const double lambda_max = std::max(ev.maxCoeff(), 0.0);
    if (ev.minCoeff() < -kPsdRejectFloor * lambda_max)
        throw NotPsdError("matrix is not positive semidefinite (min eigenvalue " + std::to_string(ev.minCoeff()) +
                          ", max " + std::to_string(lambda_max) + ")");
    return ev.cwiseMax(0.0);
}

} // namespace

CMatrix commutation_matrix(Eigen::Index n_r, Eigen::Index n_t) {
    if (n_r < 1 || n_t < 1)
        throw std::invalid_argument("commutation_matrix: sizes must be positive");
    const Eigen::Index n = n_r * n_t;
    CMatrix p = CMatrix::Zero(n, n);
    // X(r, c) sits at r + c * n_r in vec(X) and at c + r * n_t in vec(X^T).
    for (Eigen::Index r = 0; r < n_r; ++r)
        for (Eigen::Index c = 0; c < n_t; ++c)
            p(c + r * n_t, r + c * n_r) = 1.0;
    return p;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Complex frobenius_inner(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("frobenius_inner: shape mismatch");
    return (a.conjugate().cwiseProduct(b)).sum();
}

CVector vec(const CMatrix& x) {
    return Eigen::Map<const CVector>(x.data(), x.size());
}

CMatrix unvec(const CVector& x, Eigen::Index rows, Eigen::Index cols) {
    if (x.size() != rows * cols)
        throw DimensionMismatchError("unvec: length " + std::to_string(x.size()) + " does not match " +
                                     std::to_string(rows) + "x" + std::to_string(cols));
    return Eigen::Map<const CMatrix>(x.data(), rows, cols);
}

double hermitian_deviation(const CMatrix& a) {
    if (a.rows() != a.cols())
        return std::numeric_limits<double>::infinity();
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix& a) {
    return 0.5 * (a + a.adjoint());
}

RVector hermitian_eigenvalues(const CMatrix& a) {
    return eigen_hermitian(a, false).eigenvalues();
}

bool is_hermitian_psd(const CMatrix& a, double rel_tol) {
    if (a.rows() != a.cols() || hermitian_deviation(a) > 1e-10)
        return false;
    const RVector ev = hermitian_eigenvalues(a);
    return ev.minCoeff() >= -rel_tol * std::max(ev.maxCoeff(), 0.0);
}

CMatrix clamp_psd(const CMatrix& a) {
    const auto es = eigen_hermitian(a, true);
    const RVector ev = clamped_spectrum(es.eigenvalues());
    const CMatrix& v = es.eigenvectors();
    return hermitian_part(v * ev.cast<Complex>().asDiagonal() * v.adjoint());
}

CMatrix psd_sqrt(const CMatrix& a) {
    const auto es = eigen_hermitian(a, true);
    const RVector root = clamped_spectrum(es.eigenvalues()).cwiseSqrt();
    const CMatrix& v = es.eigenvectors();
    return hermitian_part(v * root.cast<Complex>().asDiagonal() * v.adjoint());
}

CMatrix herm_solve(const CMatrix& a, const CMatrix& b, double jitter) {
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw DimensionMismatchError("herm_solve: A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                     ", B has " + std::to_string(b.rows()) + " rows");
    if (!(jitter >= 0.0))
        throw std::invalid_argument("herm_solve: jitter must be non-negative");

    const Eigen::Index n = a.rows();
    CMatrix shifted = a;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<CMatrix> llt(shifted);
    if (llt.info() == Eigen::Success)
        return llt.solve(b);

    const double escalation = 1e-12 * a.trace().real() / static_cast<double>(n);
    if (escalation > 0.0) {
        shifted.diagonal().array() += escalation;
        llt.compute(shifted);
        if (llt.info() == Eigen::Success)
            return llt.solve(b);
    }
    throw SingularMatrixError("herm_solve: Cholesky factorization failed after jitter escalation");
}

} // namespace agingmimo
