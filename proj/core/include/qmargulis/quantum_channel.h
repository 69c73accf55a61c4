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

// The quantum Margulis channel
//
//   Lambda(rho) = (1/8) sum_{T in S} U_T rho U_T^+
//
// and its superoperator. Because U_T A(v) U_T^+ = A(T v), Lambda acts on
// Wigner tables exactly as the classical walk acts on distributions, so the
// two share their spectrum.

#ifndef QMARGULIS_QUANTUM_CHANNEL_H_
#define QMARGULIS_QUANTUM_CHANNEL_H_

#include <cstdint>
#include <vector>

#include "qmargulis/linalg.h"
#include "qmargulis/phase_space.h"

namespace qmargulis {

/// Uniform mixture of unitaries: Kraus operators U_i / sqrt(D).
class KrausChannel {
 public:
  /// Throws DimensionError if the unitaries are not all dim x dim, and
  /// PreconditionError if any is not unitary to 1e-10.
  KrausChannel(int64_t dim, std::vector<DenseOperator> unitaries);

  int64_t dim() const { return dim_; }
  int degree() const { return static_cast<int>(unitaries_.size()); }
  const std::vector<DenseOperator>& unitaries() const { return unitaries_; }
  /// U_i / sqrt(D).
  std::vector<DenseOperator> kraus() const;

 private:
  int64_t dim_;
  std::vector<DenseOperator> unitaries_;
};

/// Eight unitaries affine_unitary(ctx, T), T over margulis_generators.
KrausChannel margulis_channel(const PhaseSpaceContext& ctx);

/// Degree-1 channel whose only Kraus operator is the identity.
KrausChannel identity_channel(int64_t dim);

DenseOperator apply_channel(const KrausChannel& channel, const DenseOperator& rho);

inline constexpr int64_t kDefaultSuperoperatorCap = 9;

/// N^2 x N^2 matrix of the channel under column-stacking vectorization:
/// vec(A rho B^+) = (conj(B) kron A) vec(rho), so
/// M = (1/D) sum_i conj(U_i) kron U_i. Throws MemoryGuardError for N > cap.
CMatrix superoperator(const KrausChannel& channel, int64_t cap = kDefaultSuperoperatorCap);

/// Largest singular value of the superoperator on the complement of vec(I).
/// Requires a hermitian superoperator (checked), in which case singular
/// values are absolute eigenvalues.
double expander_lambda(const KrausChannel& channel, int64_t cap = kDefaultSuperoperatorCap);

/// Superoperator spectrum, largest |eigenvalue| first.
std::vector<double> superoperator_spectrum(const KrausChannel& channel,
                                           int64_t cap = kDefaultSuperoperatorCap);

struct Observation1Report {
  int64_t modulus = 0;
  int trials = 0;
  /// max over trials and cells of |W(Lambda(rho)) - walk_step(W(rho))|.
  double max_wigner_deviation = 0.0;
  /// max over classical eigenpairs (l, f) of |Lambda(X) - l X|_F with
  /// X = inverse_wigner(f).
  double max_eigenoperator_deviation = 0.0;
  /// |Lambda(I/N) - I/N|_F: the uniform eigen-distribution maps to I/N.
  double fixed_point_deviation = 0.0;

  bool passed(double wigner_tol = 1e-10, double eigen_tol = 1e-8) const {
    return max_wigner_deviation < wigner_tol && max_eigenoperator_deviation < eigen_tol &&
           fixed_point_deviation < wigner_tol;
  }
};

/// Checks that Lambda intertwines with the classical walk on `trials` random
/// hermitian operators, and that classical eigen-distributions pulled back
/// through inverse_wigner are eigen-operators of Lambda.
Observation1Report verify_observation1(const PhaseSpaceContext& ctx, int trials, Rng& rng);

}  // namespace qmargulis

#endif  // QMARGULIS_QUANTUM_CHANNEL_H_
