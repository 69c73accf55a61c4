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

// The classical Margulis expander on the N x N torus Z_N^2.
//
// Vertices are lattice points (p, q). Two points are adjacent when one of the
// eight affine maps
//
//   T1: v -> S1 v            T3: v -> S2 v
//   T2: v -> S1 v + (1, 0)   T4: v -> S2 v - (0, 1)
//
// (S1 = [[1,2],[0,1]], S2 = [[1,0],[2,1]]) or their inverses sends one to
// the other. Multi-edges and self-loops are kept, so the walk has degree 8.

#ifndef QMARGULIS_CLASSICAL_WALK_H_
#define QMARGULIS_CLASSICAL_WALK_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qmargulis/linalg.h"

namespace qmargulis {

/// Non-negative residue of `value` modulo `modulus` (> 0).
int64_t mod(int64_t value, int64_t modulus);

/// Throws ModulusError unless N is odd and >= 3.
void require_odd_modulus(int64_t n);

struct LatticePoint {
  int64_t p = 0;
  int64_t q = 0;
  int64_t modulus = 1;

  LatticePoint() = default;
  /// Reduces (p, q) modulo `modulus`.
  LatticePoint(int64_t p, int64_t q, int64_t modulus);

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// 2x2 integer matrix [[a, b], [c, d]].
struct Matrix2 {
  int64_t a = 1, b = 0, c = 0, d = 1;

  static Matrix2 identity() { return {}; }
  Matrix2 operator*(const Matrix2& rhs) const;
  Matrix2 reduced(int64_t modulus) const;
  int64_t det() const { return a * d - b * c; }

  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// v -> linear * v + shift on Z_N^2 with det(linear) = 1 mod N.
class AffineMap {
 public:
  /// Throws ModulusError if det(linear) is not 1 mod N or the shift lives on a
  /// different modulus.
  AffineMap(const Matrix2& linear, const LatticePoint& shift);

  static AffineMap identity(int64_t modulus);

  const Matrix2& linear() const { return linear_; }
  const LatticePoint& shift() const { return shift_; }
  int64_t modulus() const { return shift_.modulus; }

  LatticePoint operator()(const LatticePoint& v) const;

  AffineMap inverse() const;
  /// (*this) after `inner`: v -> this(inner(v)).
  AffineMap compose(const AffineMap& inner) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  Matrix2 linear_;
  LatticePoint shift_;
};

inline constexpr Matrix2 kS1{1, 2, 0, 1};
inline constexpr Matrix2 kS2{1, 0, 2, 1};
inline constexpr int kMargulisDegree = 8;

/// Names of the eight generators in the order margulis_generators() returns
/// them: T1..T4 then T1inv..T4inv.
inline constexpr std::array<std::string_view, 8> kGeneratorNames = {
    "T1", "T2", "T3", "T4", "T1inv", "T2inv", "T3inv", "T4inv"};

/// [T1, T2, T3, T4, T1^-1, T2^-1, T3^-1, T4^-1] on Z_N^2. N must be odd >= 3.
std::vector<AffineMap> margulis_generators(int64_t n);

/// Look up one generator by name ("T1".."T4", "T1inv".."T4inv").
AffineMap margulis_generator(int64_t n, std::string_view name);

/// S v + t mod N. Throws ModulusError on mismatched moduli.
LatticePoint apply_affine(const AffineMap& map, const LatticePoint& v);

/// Real-valued function on Z_N^2, stored with index(p, q) = p * N + q.
class GridDist {
 public:
  explicit GridDist(int64_t modulus);
  GridDist(int64_t modulus, std::vector<double> values);

  static GridDist delta(int64_t modulus, const LatticePoint& at);
  static GridDist uniform(int64_t modulus);

  int64_t modulus() const { return modulus_; }
  std::size_t size() const { return values_.size(); }
  std::size_t index(int64_t p, int64_t q) const;

  double operator()(int64_t p, int64_t q) const { return values_[index(p, q)]; }
  double& operator()(int64_t p, int64_t q) { return values_[index(p, q)]; }

  const std::vector<double>& values() const { return values_; }
  RVector as_vector() const;
  static GridDist from_vector(int64_t modulus, const RVector& v);

  double total() const;
  double l2_norm() const;
  /// Non-negative entries summing to 1 within `tol`.
  bool is_probability(double tol = 1e-12) const;

 private:
  int64_t modulus_;
  std::vector<double> values_;
};

/// One step of the walk: (1/8) sum_T f o T^-1.
GridDist walk_step(const GridDist& f);

/// Same step written as a pushforward, (1/8) sum_T sum_v f(v) e(T(v)). Equal to
/// walk_step because the generator set is closed under inversion.
GridDist walk_step_pushforward(const GridDist& f);

inline constexpr int64_t kDefaultWalkMatrixCap = 49;

/// Matrix of walk_step in the e(v) basis (N^2 x N^2, doubly stochastic,
/// symmetric). Throws MemoryGuardError for N > cap.
RMatrix walk_matrix(int64_t n, int64_t cap = kDefaultWalkMatrixCap);

struct SpectralReport {
  int64_t modulus = 0;
  int degree = kMargulisDegree;
  /// max |eigenvalue| on the orthogonal complement of the uniform vector.
  double lambda = 0.0;
  /// Full spectrum, largest |eigenvalue| first.
  std::vector<double> spectrum;
};

/// Spectrum and expansion parameter of a symmetric row-stochastic matrix.
/// `modulus` is recorded in the report only.
SpectralReport spectral_report(const RMatrix& m, int64_t modulus = 0);

/// sqrt(2) * 5 / 8, the N-independent bound on lambda for this family.
inline constexpr double kGabberGalilBound = 0.8838834764831844;

}  // namespace qmargulis

#endif  // QMARGULIS_CLASSICAL_WALK_H_
