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

#include "qmargulis/linalg.h"

#include <algorithm>
#include <cmath>

#include "qmargulis/errors.h"

namespace qmargulis {

namespace {

template <typename Matrix>
void check_square(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("eigensolver input is not square");
  }
}

template <typename Solver, typename Matrix>
void check_converged(const Solver& solver, const Matrix& m, bool have_vectors) {
  if (solver.info() == Eigen::Success) return;
  double residual = 0.0;
  if (have_vectors) {
    residual = (m * solver.eigenvectors() -
                solver.eigenvectors() * solver.eigenvalues().asDiagonal())
                   .norm();
  }
  throw NumericalError("self-adjoint eigensolver did not converge", residual);
}

template <typename Matrix, typename Vector>
double compressed_max_abs(const Matrix& m, const Vector& v) {
  check_square(m);
  if (v.size() != m.rows()) throw DimensionError("complement vector has wrong length");
  const double norm2 = v.squaredNorm();
  if (norm2 == 0.0) throw PreconditionError("complement vector is zero");
  Matrix projector = Matrix::Identity(m.rows(), m.cols()) - (v * v.adjoint()) / norm2;
  Matrix compressed = projector * m * projector;
  compressed = (compressed + compressed.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(compressed, Eigen::EigenvaluesOnly);
  check_converged(solver, compressed, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

RVector symmetric_eigenvalues(const RMatrix& m) {
  check_square(m);
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(m, Eigen::EigenvaluesOnly);
  check_converged(solver, m, false);
  return solver.eigenvalues();
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  check_square(m);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  check_converged(solver, m, false);
  return solver.eigenvalues();
}

SymmetricEigen symmetric_eigen(const RMatrix& m) {
  check_square(m);
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(m, Eigen::ComputeEigenvectors);
  check_converged(solver, m, true);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double max_abs_eigenvalue_on_complement(const RMatrix& m, const RVector& v) {
  return compressed_max_abs(m, v);
}

double max_abs_eigenvalue_on_complement(const CMatrix& m, const CVector& v) {
  return compressed_max_abs(m, v);
}

std::vector<double> sorted_by_magnitude(const RVector& values) {
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end(), [](double a, double b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return a > b;
  });
  return out;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix product = u * u.adjoint();
  return max_abs_diff(product, CMatrix::Identity(u.rows(), u.cols())) < tol;
}

bool is_hermitian(const CMatrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  const CMatrix adj = h.adjoint();
  return max_abs_diff(h, adj) < tol;
}

double detail::max_abs_diff_complex(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double detail::max_abs_diff_real(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

PhaseMatch equal_up_to_phase(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("equal_up_to_phase: shape mismatch");
  }
  const Complex overlap = (a.adjoint() * b).trace();
  PhaseMatch out;
  out.overlap = std::abs(overlap);
  if (out.overlap > 0.0) out.phase = overlap / out.overlap;
  out.equal = std::abs(out.overlap - static_cast<double>(a.rows())) < tol;
  return out;
}

CMatrix random_hermitian(int dim, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return (g + g.adjoint()) * 0.5;
}

CMatrix random_density(int dim, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

CVector vectorize(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvectorize(const CVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionError("unvectorize: length is not dim^2");
  }
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

}  // namespace qmargulis
