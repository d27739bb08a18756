// Copyright 2026 The gbsgraph Authors
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

#include <vector>

#include "gbsgraph/matrix.hpp"

namespace gbsgraph {

/// Relative tolerance shared by the dense kernels (Frobenius, relative to input scale).
inline constexpr double kLinalgTolerance = 1e-9;

/// Determinant by LU factorization with partial pivoting.
Complex det(const ComplexMatrix& m);

/// Inverse by LU factorization with partial pivoting. Throws NumericalError when
/// a pivot falls below 1e-12 of the largest entry.
ComplexMatrix inverse(const ComplexMatrix& m);

/// max |m - m^T| <= tol * max(1, max|m|).
bool is_symmetric(const ComplexMatrix& m, double tol);
/// max |m - m^H| <= tol * max(1, max|m|).
bool is_hermitian(const ComplexMatrix& m, double tol);

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

/// s = unitary * diag(values) * unitary^T with values >= 0 sorted descending.
struct TakagiFactorization {
    ComplexMatrix unitary;
    std::vector<double> values;
};

/// Takagi-Autonne factorization of a complex symmetric matrix.
///
/// Computed from the SVD s = W diag(values) V^H. For symmetric s the matrix
/// Q = W^H conj(V) is a symmetric unitary that commutes with diag(values), so
/// unitary = W sqrt(Q) satisfies the factorization. The square root is taken
/// with the branch cut placed in the widest gap of Q's spectrum so equal
/// eigenvalues never straddle the cut.
TakagiFactorization takagi(const ComplexMatrix& s);

}  // namespace gbsgraph
