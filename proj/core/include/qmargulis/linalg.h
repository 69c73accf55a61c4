// Copyright 2026 The qmargulis Authors
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

// Dense linear-algebra vocabulary shared by every module. Everything here is
// a thin layer over Eigen; the eigen-decomposition entry points add the
// residual check and error reporting the rest of the library relies on.

#ifndef QMARGULIS_LINALG_H_
#define QMARGULIS_LINALG_H_

#include <complex>
#include <cstdint>
#include <random>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qmargulis {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// N x N complex matrix; houses states, Weyl/phase-point operators and the
/// unitaries U_T.
using DenseOperator = CMatrix;

/// Deterministic generator used for every randomized check.
using Rng = std::mt19937_64;

/// Eigenvalues of a real symmetric matrix, ascending. Throws NumericalError
/// when the solver does not converge.
RVector symmetric_eigenvalues(const RMatrix& m);

/// Eigenvalues of a complex hermitian matrix, ascending.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Eigenpairs of a real symmetric matrix (columns of `vectors`), ascending.
struct SymmetricEigen {
  RVector values;
  RMatrix vectors;
};
SymmetricEigen symmetric_eigen(const RMatrix& m);

/// max |eigenvalue| of `m` compressed onto the orthogonal complement of `v`.
/// `m` must be self-adjoint; the compression P m P (P = 1 - v v^+ / |v|^2)
/// carries the spectrum of m on v's complement plus a zero for v itself.
double max_abs_eigenvalue_on_complement(const RMatrix& m, const RVector& v);
double max_abs_eigenvalue_on_complement(const CMatrix& m, const CVector& v);

/// Sort by absolute value, largest first; ties broken by signed value.
std::vector<double> sorted_by_magnitude(const RVector& values);

bool is_unitary(const CMatrix& u, double tol = 1e-10);
bool is_hermitian(const CMatrix& h, double tol = 1e-10);

namespace detail {
double max_abs_diff_real(const RMatrix& a, const RMatrix& b);
double max_abs_diff_complex(const CMatrix& a, const CMatrix& b);
}  // namespace detail

/// Largest entrywise modulus of a - b. Accepts matrices or unevaluated Eigen
/// expressions; complex if either side is. Throws DimensionError on a shape
/// mismatch.
template <typename DA, typename DB>
double max_abs_diff(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if constexpr (std::is_same_v<typename DA::Scalar, double> && std::is_same_v<typename DB::Scalar, double>) {
    return detail::max_abs_diff_real(RMatrix(a), RMatrix(b));
  } else {
    return detail::max_abs_diff_complex(CMatrix(a.template cast<Complex>()), CMatrix(b.template cast<Complex>()));
  }
}

/// Result of a projective comparison: `equal` iff |tr(A^+ B)| = N within
/// tolerance; `phase` is tr(A^+ B)/|tr(A^+ B)|, so that B ~ phase * A.
struct PhaseMatch {
  bool equal = false;
  Complex phase{1.0, 0.0};
  double overlap = 0.0;  // |tr(A^+ B)|
};

/// Compare two operators up to a global phase. `b` is expected unitary.
PhaseMatch equal_up_to_phase(const CMatrix& a, const CMatrix& b, double tol = 1e-8);

/// Random hermitian matrix with i.i.d. standard-normal parts.
CMatrix random_hermitian(int dim, Rng& rng);

/// Random density matrix G G^+ / tr(G G^+).
CMatrix random_density(int dim, Rng& rng);

/// Column-stacking vectorization.
CVector vectorize(const CMatrix& m);
CMatrix unvectorize(const CVector& v, int dim);

}  // namespace qmargulis

#endif  // QMARGULIS_LINALG_H_
