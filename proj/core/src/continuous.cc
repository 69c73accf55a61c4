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

#include "qmargulis/continuous.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmargulis/classical_walk.h"
#include "qmargulis/errors.h"

namespace qmargulis {

std::array<double, 2> CovMatrix::eigenvalues() const {
  const double mean = 0.5 * (a + c);
  const double half_gap = std::hypot(0.5 * (a - c), b);
  return {mean - half_gap, mean + half_gap};
}

std::vector<RealAffine> real_margulis_maps() {
  // Inverse of v -> S v + t is v -> S^-1 v - S^-1 t.
  return {
      {1, 2, 0, 1, 0, 0},   {1, 2, 0, 1, 1, 0},  {1, 0, 2, 1, 0, 0},  {1, 0, 2, 1, 0, -1},
      {1, -2, 0, 1, 0, 0},  {1, -2, 0, 1, -1, 0}, {1, 0, -2, 1, 0, 0}, {1, 0, -2, 1, 0, 1},
  };
}

MeanVector mean_update(const MeanVector& m) {
  MeanVector out;
  const auto maps = real_margulis_maps();
  for (const auto& t : maps) {
    const MeanVector v = t(m);
    out.x += v.x;
    out.p += v.p;
  }
  out.x /= static_cast<double>(maps.size());
  out.p /= static_cast<double>(maps.size());
  return out;
}

CovMatrix point_covariance(const std::vector<MeanVector>& points) {
  if (points.empty()) return {};
  const double k = static_cast<double>(points.size());
  double sx = 0, sp = 0, sxx = 0, sxp = 0, spp = 0;
  for (const auto& v : points) {
    sx += v.x;
    sp += v.p;
    sxx += v.x * v.x;
    sxp += v.x * v.p;
    spp += v.p * v.p;
  }
  const double mx = sx / k;
  const double mp = sp / k;
  return {sxx / k - mx * mx, sxp / k - mx * mp, spp / k - mp * mp};
}

CovMatrix g_matrix(const MeanVector& m) {
  std::vector<MeanVector> images;
  for (const auto& t : real_margulis_maps()) images.push_back(t(m));
  return point_covariance(images);
}

CovMatrix g_map(const CovMatrix& gamma) {
  return {gamma.a + 2.0 * gamma.c, gamma.b, gamma.c + 2.0 * gamma.a};
}

Moments f_map(const CovMatrix& gamma, const MeanVector& m) {
  return {g_map(gamma) + g_matrix(m) * 2.0, mean_update(m)};
}

CovMatrix gn_closed_form(const CovMatrix& gamma, int n) {
  if (n < 0) throw PreconditionError("gn_closed_form: n must be non-negative");
  if (n > 500) throw std::overflow_error("gn_closed_form: n > 500 overflows double range");
  const double alpha = 0.5 * (gamma.a + gamma.c);
  const double beta = 0.5 * (gamma.a - gamma.c);
  const double growth = std::pow(3.0, n);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return {growth * alpha + sign * beta, gamma.b, growth * alpha - sign * beta};
}

CovMatrix growth_rate(const CovMatrix& gamma, int n) {
  if (n < 1) throw PreconditionError("growth_rate: n must be >= 1");
  if (0.5 * (gamma.a + gamma.c) <= 0.0) {
    throw PreconditionError("growth_rate: alpha = (a + c)/2 <= 0 is non-generic");
  }
  const CovMatrix g = gn_closed_form(gamma, n);
  if (g.a <= 0.0 || g.c <= 0.0) {
    throw PreconditionError("growth_rate: diagonal not yet positive at this n");
  }
  const double log3 = std::log(3.0);
  return {std::log(g.a) / log3 / n, 0.0, std::log(g.c) / log3 / n};
}

// ---------------------------------------------------------------------------
// Test functions

namespace {

constexpr double kBoxLo = 0.125, kBoxHi = 1.125, kBoxHalfHeight = 0.625;
constexpr double kGaussCenter = 0.6, kGaussSigma = 0.25, kGaussCutoff = 1.0;

constexpr std::array<double, 4> kGLNodes = {-0.8611363115940526, -0.3399810435848563,
                                            0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGLWeights = {0.3478548451374538, 0.6521451548625461,
                                              0.6521451548625461, 0.3478548451374538};

double bump(double r2) {
  if (r2 > kGaussCutoff * kGaussCutoff) return 0.0;
  const double s2 = 2.0 * kGaussSigma * kGaussSigma;
  return std::exp(-r2 / s2) - std::exp(-kGaussCutoff * kGaussCutoff / s2);
}

double overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

// Integral of f over [x0, x1] x [y0, y1] by Gauss-Legendre on a panels x panels grid.
double gauss_legendre_2d(TestFunction fn, double x0, double x1, double y0, double y1,
                         int panels) {
  const double hx = (x1 - x0) / panels;
  const double hy = (y1 - y0) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double cx = x0 + (i + 0.5) * hx;
    for (int j = 0; j < panels; ++j) {
      const double cy = y0 + (j + 0.5) * hy;
      double cell = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          cell += kGLWeights[a] * kGLWeights[b] *
                  test_function_value(fn, cx + 0.5 * hx * kGLNodes[a],
                                      cy + 0.5 * hy * kGLNodes[b]);
        }
      }
      total += cell * 0.25 * hx * hy;
    }
  }
  return total;
}

}  // namespace

TestFunction parse_test_function(std::string_view name) {
  if (name == "zero") return TestFunction::kZero;
  if (name == "boxes") return TestFunction::kBoxes;
  if (name == "gaussians") return TestFunction::kGaussians;
  throw UnsupportedError("unknown test function '" + std::string(name) + "'");
}

std::string_view test_function_name(TestFunction fn) {
  switch (fn) {
    case TestFunction::kZero: return "zero";
    case TestFunction::kBoxes: return "boxes";
    case TestFunction::kGaussians: return "gaussians";
  }
  return "?";
}

double test_function_value(TestFunction fn, double x, double y) {
  switch (fn) {
    case TestFunction::kZero: return 0.0;
    case TestFunction::kBoxes: {
      if (std::abs(y) > kBoxHalfHeight) return 0.0;
      if (x >= kBoxLo && x <= kBoxHi) return 1.0;
      if (x <= -kBoxLo && x >= -kBoxHi) return -1.0;
      return 0.0;
    }
    case TestFunction::kGaussians: {
      const double dp = x - kGaussCenter;
      const double dm = x + kGaussCenter;
      return bump(dp * dp + y * y) - bump(dm * dm + y * y);
    }
  }
  return 0.0;
}

double test_function_support(TestFunction fn) {
  switch (fn) {
    case TestFunction::kZero: return 0.0;
    case TestFunction::kBoxes: return kBoxHi;
    case TestFunction::kGaussians: return kGaussCenter + kGaussCutoff;
  }
  return 0.0;
}

double test_function_l2_norm(TestFunction fn) {
  switch (fn) {
    case TestFunction::kZero: return 0.0;
    case TestFunction::kBoxes:
      return std::sqrt(2.0 * (kBoxHi - kBoxLo) * 2.0 * kBoxHalfHeight);
    case TestFunction::kGaussians: {
      // Square of f integrated numerically; the bump is C^0 at the cutoff so a
      // fine grid is needed for ~1e-7 accuracy.
      const double h = test_function_support(fn);
      const int panels = 400;
      const double dx = 2.0 * h / panels;
      const double dy = 2.0 * kGaussCutoff / panels;
      double total = 0.0;
      for (int i = 0; i < panels; ++i) {
        const double cx = -h + (i + 0.5) * dx;
        for (int j = 0; j < panels; ++j) {
          const double cy = -kGaussCutoff + (j + 0.5) * dy;
          double cell = 0.0;
          for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
              const double v = test_function_value(fn, cx + 0.5 * dx * kGLNodes[a],
                                                   cy + 0.5 * dy * kGLNodes[b]);
              cell += kGLWeights[a] * kGLWeights[b] * v * v;
            }
          }
          total += cell * 0.25 * dx * dy;
        }
      }
      return std::sqrt(total);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// SampledField

SampledField::SampledField(double delta, int radius)
    : delta_(delta), radius_(radius),
      values_(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)), 0.0) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw PreconditionError("grid spacing must be positive");
  }
  if (radius < 0) throw PreconditionError("support radius must be non-negative");
}

std::size_t SampledField::index(int x, int y) const {
  if (std::abs(x) > radius_ || std::abs(y) > radius_) {
    throw std::out_of_range("SampledField index outside [-R, R]^2");
  }
  return static_cast<std::size_t>((x + radius_) * side() + (y + radius_));
}

double SampledField::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * delta_ * delta_;
}

double SampledField::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(delta_ * delta_ * s);
}

int SampledField::support_radius() const {
  int r = -1;
  for (int x = -radius_; x <= radius_; ++x) {
    for (int y = -radius_; y <= radius_; ++y) {
      if ((*this)(x, y) != 0.0) r = std::max({r, std::abs(x), std::abs(y)});
    }
  }
  return r;
}

SampledField discretize(TestFunction fn, double delta, int radius) {
  SampledField field(delta, radius);
  if (test_function_support(fn) > radius * delta) {
    throw PreconditionError("test function support exceeds R * delta");
  }
  const double area = delta * delta;
  for (int x = -radius; x <= radius; ++x) {
    const double x0 = (x - 0.5) * delta, x1 = (x + 0.5) * delta;
    for (int y = -radius; y <= radius; ++y) {
      const double y0 = (y - 0.5) * delta, y1 = (y + 0.5) * delta;
      double value = 0.0;
      switch (fn) {
        case TestFunction::kZero: break;
        case TestFunction::kBoxes: {
          const double oy = overlap(y0, y1, -kBoxHalfHeight, kBoxHalfHeight);
          value = (overlap(x0, x1, kBoxLo, kBoxHi) - overlap(x0, x1, -kBoxHi, -kBoxLo)) * oy /
                  area;
          break;
        }
        case TestFunction::kGaussians:
          value = gauss_legendre_2d(fn, x0, x1, y0, y1, 1) / area;
          break;
      }
      field(x, y) = value;
    }
  }
  return field;
}

// ---------------------------------------------------------------------------
// Contraction

int64_t embedding_modulus(const SampledField& field) {
  const int r = field.support_radius();
  if (r < 0) return 3;
  // Smallest odd integer exceeding 2 (3 r + 1).
  return 2 * (3 * static_cast<int64_t>(r) + 1) + 1;
}

ContractionReport contraction_check(const SampledField& field, int64_t n_embed) {
  ContractionReport report;
  report.delta = field.delta();
  report.radius = field.radius();
  report.bound = kContractionBound;
  report.mass_in = field.integral();
  report.norm_in = field.l2_norm();
  if (std::abs(report.mass_in) > 1e-9) {
    throw PreconditionError("contraction_check: field is not zero-mean");
  }

  const int64_t needed = embedding_modulus(field);
  const int64_t n = n_embed > 0 ? n_embed : needed;
  if (n < needed) {
    throw PreconditionError("contraction_check: N=" + std::to_string(n) +
                            " wraps around; need N >= " + std::to_string(needed));
  }
  require_odd_modulus(n);
  report.n_embed = n;

  GridDist lattice(n);
  const int r = field.radius();
  for (int x = -r; x <= r; ++x) {
    for (int y = -r; y <= r; ++y) {
      if (field(x, y) != 0.0) lattice(x, y) = field(x, y);
    }
  }
  const GridDist stepped = walk_step(lattice);
  const double area = field.delta() * field.delta();
  report.norm_out = std::sqrt(area) * stepped.l2_norm();
  report.mass_out = stepped.total() * area;
  report.ratio = report.norm_in == 0.0 ? 0.0 : report.norm_out / report.norm_in;
  report.within_bound = report.ratio <= kContractionBound + kContractionSlack;
  return report;
}

}  // namespace qmargulis
