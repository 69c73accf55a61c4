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

// Continuous-variable side of the Margulis map, where the eight affine maps
// act on R^2.
//
// Moment dynamics: the map sends the mean m to (1/8) sum_T T(m) and the
// covariance to
//
//   f(gamma) = g(gamma) + 2 G(m),   g(gamma) = (1/8) sum_T S_T gamma S_T^T,
//
// with G(m) the covariance of the eight image points T(m). In closed form
// g([[a, b], [b, c]]) = [[a + 2c, b], [b, c + 2a]].
//
// Discretization: a zero-mean compactly supported test function is averaged
// over delta x delta cells, embedded into Z_N^2 with N large enough that the
// walk never wraps, and stepped once to measure |A f|_2 / |f|_2.

#ifndef QMARGULIS_CONTINUOUS_H_
#define QMARGULIS_CONTINUOUS_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qmargulis {

struct MeanVector {
  double x = 0.0;  // <X>
  double p = 0.0;  // <P>

  friend bool operator==(const MeanVector&, const MeanVector&) = default;
};

/// Symmetric 2x2 matrix [[a, b], [b, c]].
struct CovMatrix {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double trace() const { return a + c; }
  double det() const { return a * c - b * b; }
  /// Eigenvalues, ascending.
  std::array<double, 2> eigenvalues() const;
  bool is_psd(double tol = 1e-12) const { return eigenvalues()[0] >= -tol; }

  CovMatrix operator+(const CovMatrix& o) const { return {a + o.a, b + o.b, c + o.c}; }
  CovMatrix operator-(const CovMatrix& o) const { return {a - o.a, b - o.b, c - o.c}; }
  CovMatrix operator*(double s) const { return {a * s, b * s, c * s}; }

  friend bool operator==(const CovMatrix&, const CovMatrix&) = default;
};

/// One of the eight real affine maps: v -> [[a, b], [c, d]] v + (tx, ty).
struct RealAffine {
  double a, b, c, d, tx, ty;
  MeanVector operator()(const MeanVector& v) const {
    return {a * v.x + b * v.p + tx, c * v.x + d * v.p + ty};
  }
};

/// T1..T4, T1^-1..T4^-1 acting on R^2.
std::vector<RealAffine> real_margulis_maps();

MeanVector mean_update(const MeanVector& m);

/// Covariance of the eight image points T(m).
CovMatrix g_matrix(const MeanVector& m);

/// Covariance of an arbitrary point multiset (population normalization).
CovMatrix point_covariance(const std::vector<MeanVector>& points);

/// Closed form [[a + 2c, b], [b, c + 2a]].
CovMatrix g_map(const CovMatrix& gamma);

struct Moments {
  CovMatrix gamma;
  MeanVector mean;
};

/// (g(gamma) + 2 G(m), mean_update(m)).
Moments f_map(const CovMatrix& gamma, const MeanVector& m);

/// n-fold g_map in closed form: diagonal 3^n alpha +- (-1)^n beta, b fixed.
/// Throws std::overflow_error for n > 500.
CovMatrix gn_closed_form(const CovMatrix& gamma, int n);

/// (1/n) log_3 of the diagonal of g^(n)(gamma) as [[d11, 0], [0, d22]].
/// Throws PreconditionError when alpha = (a + c)/2 <= 0 or n < 1.
CovMatrix growth_rate(const CovMatrix& gamma, int n);

/// Built-in zero-mean test functions with compact support.
enum class TestFunction {
  kZero,
  kBoxes,      // +1 on [0.125, 1.125] x [-0.625, 0.625], -1 on its mirror x -> -x
  kGaussians,  // h(|v - c|) - h(|v + c|), c = (0.6, 0), with the continuous bump
               // h(r) = exp(-r^2 / (2 s^2)) - exp(-1 / (2 s^2)) for r <= 1, else 0;
               // s = 0.25
};

TestFunction parse_test_function(std::string_view name);
std::string_view test_function_name(TestFunction fn);

/// Point value of the test function.
double test_function_value(TestFunction fn, double x, double y);
/// Half-width of a square containing the support.
double test_function_support(TestFunction fn);
/// |f|_{L^2}: exact for boxes, fine tensor Gauss-Legendre for Gaussians.
double test_function_l2_norm(TestFunction fn);

/// Cell averages f_delta(x, y) for integer x, y in [-R, R].
class SampledField {
 public:
  SampledField(double delta, int radius);

  double delta() const { return delta_; }
  int radius() const { return radius_; }
  int side() const { return 2 * radius_ + 1; }

  double operator()(int x, int y) const { return values_[index(x, y)]; }
  double& operator()(int x, int y) { return values_[index(x, y)]; }
  const std::vector<double>& values() const { return values_; }

  /// sum f_delta * delta^2
  double integral() const;
  /// (delta^2 sum |f_delta|^2)^{1/2}
  double l2_norm() const;
  /// max(|x|, |y|) over nonzero cells, or -1 for an all-zero field.
  int support_radius() const;

 private:
  std::size_t index(int x, int y) const;

  double delta_;
  int radius_;
  std::vector<double> values_;
};

/// Cell averages over Q_delta(x, y) = [(x - 1/2) delta, (x + 1/2) delta] x ...
/// Box indicators use exact overlap areas, Gaussians 4-point Gauss-Legendre
/// per axis. Throws PreconditionError when the support does not fit inside
/// R * delta.
SampledField discretize(TestFunction fn, double delta, int radius);

struct ContractionReport {
  double delta = 0.0;
  int radius = 0;
  int64_t n_embed = 0;
  double norm_in = 0.0;
  double norm_out = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  double mass_in = 0.0;
  double mass_out = 0.0;
  bool within_bound = false;
};

inline constexpr double kContractionBound = 0.884;
inline constexpr double kContractionSlack = 0.01;

/// Smallest odd N that holds the field and its one-step image without
/// wrap-around: N > 2 (3 r + 1) for support radius r.
int64_t embedding_modulus(const SampledField& field);

/// Embed into Z_N^2 (N = embedding_modulus unless `n_embed` > 0), apply one
/// walk step, and report the norm ratio (0 for the zero field). Throws
/// PreconditionError when the field is not zero-mean or the requested N would
/// wrap.
ContractionReport contraction_check(const SampledField& field, int64_t n_embed = 0);

}  // namespace qmargulis

#endif  // QMARGULIS_CONTINUOUS_H_
