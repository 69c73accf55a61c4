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

// Discrete phase space of a single N-level system, N odd.
//
// Conventions (all arithmetic mod N, omega = exp(2 pi i / N)):
//
//   x(q)|k> = |k + q>             shift
//   z(p)|k> = omega^{p k} |k>     boost
//   w(p, q) = omega^{-inv2 p q} z(p) x(q),   inv2 = (N + 1) / 2
//   A(0, 0)|k> = |-k>             parity
//   A(p, q) = w(p, q) A(0, 0) w(p, q)^+
//   W_rho(p, q) = tr(A(p, q) rho) / N
//
// The N^2 phase-point operators are an orthogonal basis, (1/N) tr(A(v) A(w)) =
// delta_{v,w}, and every affine map T: v -> S v + t with det S = 1 has a
// unitary U_T = w(t) mu(S) with U_T A(v) U_T^+ = A(T v).
//
// Metaplectic generator images (mu is projective; the representative is fixed
// by these formulas):
//
//   mu(J)     = F                 J  = [[0, 1], [-1, 0]]
//   mu(S1)    = U_-               S1 = [[1, 2], [0, 1]]
//   mu(S1^-1) = U_+
//   mu(S2)    = F U_+ F^+         S2 = J S1^-1 J^-1
//   mu(S2^-1) = F U_- F^+
//
// with U_+-|j> = exp(-+ 2 pi i j^2 / N) |j>.

#ifndef QMARGULIS_PHASE_SPACE_H_
#define QMARGULIS_PHASE_SPACE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmargulis/classical_walk.h"
#include "qmargulis/linalg.h"

namespace qmargulis {

class PhaseSpaceContext {
 public:
  /// Throws ModulusError unless N is odd and >= 3.
  explicit PhaseSpaceContext(int64_t n);

  int64_t dim() const { return n_; }
  /// (N + 1) / 2, the inverse of 2 mod N.
  int64_t inv2() const { return inv2_; }
  /// omega^k with k reduced mod N first.
  Complex omega_pow(int64_t k) const;

 private:
  int64_t n_;
  int64_t inv2_;
};

/// Shift and boost operators {x(q), z(p)}.
struct ShiftBoost {
  DenseOperator shift;  // x(q)
  DenseOperator boost;  // z(p)
};
ShiftBoost shift_boost(const PhaseSpaceContext& ctx, int64_t p, int64_t q);
DenseOperator shift_op(const PhaseSpaceContext& ctx, int64_t q);
DenseOperator boost_op(const PhaseSpaceContext& ctx, int64_t p);

DenseOperator weyl(const PhaseSpaceContext& ctx, int64_t p, int64_t q);
DenseOperator parity(const PhaseSpaceContext& ctx);
DenseOperator phase_point(const PhaseSpaceContext& ctx, int64_t p, int64_t q);

/// All N^2 phase-point operators, indexed like GridDist (p * N + q).
std::vector<DenseOperator> phase_point_basis(const PhaseSpaceContext& ctx);

/// Wigner function of a hermitian operator; the table sums to tr(rho).
struct WignerTable {
  GridDist values;
};

/// Throws PreconditionError for non-hermitian input (tolerance 1e-10 scaled by
/// the operator's largest entry) and DimensionError for a size mismatch.
WignerTable wigner(const PhaseSpaceContext& ctx, const DenseOperator& rho);

/// rho = sum_a W(a) A(a).
DenseOperator inverse_wigner(const PhaseSpaceContext& ctx, const WignerTable& table);

/// F|j> = N^{-1/2} sum_k omega^{j k} |k>.
DenseOperator fourier(const PhaseSpaceContext& ctx);

enum class Sign { kPlus, kMinus };

/// U_+-|j> = exp(-+ 2 pi i j^2 / N)|j>.
DenseOperator quadratic_phase(const PhaseSpaceContext& ctx, Sign sign);

enum class Generator { kS1, kS2, kS1Inv, kS2Inv, kJ };

/// "S1", "S2", "S1inv", "S2inv", "J". Throws UnsupportedError otherwise.
Generator parse_generator(std::string_view symbol);
std::string_view generator_symbol(Generator g);
Matrix2 generator_matrix(Generator g);

/// Matrix product of the word, left to right.
Matrix2 word_matrix(std::span<const Generator> word);

/// mu(g1) mu(g2) ... for word [g1, g2, ...]. Throws UnsupportedError for an
/// empty word.
DenseOperator metaplectic(const PhaseSpaceContext& ctx, std::span<const Generator> word);

/// Shortest generator word whose product is `linear` mod N (identity maps to
/// the empty word). Covers I, S1, S2, their inverses, and the powers of J;
/// throws UnsupportedError for anything else.
std::vector<Generator> metaplectic_word_for(const Matrix2& linear, int64_t modulus);

/// U_T = w(t) mu(S) for T: v -> S v + t.
DenseOperator affine_unitary(const PhaseSpaceContext& ctx, const AffineMap& map);

}  // namespace qmargulis

#endif  // QMARGULIS_PHASE_SPACE_H_
