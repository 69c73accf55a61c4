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

#include "qmargulis/classical_walk.h"

#include <cmath>
#include <numeric>

#include "qmargulis/errors.h"

namespace qmargulis {

int64_t mod(int64_t value, int64_t modulus) {
  const int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

void require_odd_modulus(int64_t n) {
  if (n < 3 || n % 2 == 0) {
    throw ModulusError("modulus must be odd and >= 3, got " + std::to_string(n));
  }
}

LatticePoint::LatticePoint(int64_t p_in, int64_t q_in, int64_t modulus_in)
    : p(mod(p_in, modulus_in)), q(mod(q_in, modulus_in)), modulus(modulus_in) {
  if (modulus_in < 1) throw ModulusError("lattice modulus must be positive");
}

Matrix2 Matrix2::operator*(const Matrix2& r) const {
  return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

Matrix2 Matrix2::reduced(int64_t modulus) const {
  return {mod(a, modulus), mod(b, modulus), mod(c, modulus), mod(d, modulus)};
}

AffineMap::AffineMap(const Matrix2& linear, const LatticePoint& shift)
    : linear_(linear.reduced(shift.modulus)), shift_(shift) {
  if (mod(linear_.det(), shift.modulus) != mod(1, shift.modulus)) {
    throw ModulusError("linear part must have determinant 1 mod " +
                       std::to_string(shift.modulus));
  }
}

AffineMap AffineMap::identity(int64_t modulus) {
  return AffineMap(Matrix2::identity(), LatticePoint(0, 0, modulus));
}

LatticePoint AffineMap::operator()(const LatticePoint& v) const {
  return apply_affine(*this, v);
}

AffineMap AffineMap::inverse() const {
  const int64_t n = modulus();
  // det = 1 mod N, so the adjugate is the inverse.
  const Matrix2 inv{linear_.d, -linear_.b, -linear_.c, linear_.a};
  const LatticePoint shift(-(inv.a * shift_.p + inv.b * shift_.q),
                           -(inv.c * shift_.p + inv.d * shift_.q), n);
  return AffineMap(inv, shift);
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  if (inner.modulus() != modulus()) throw ModulusError("compose: modulus mismatch");
  const LatticePoint t = apply_affine(*this, inner.shift());
  return AffineMap(linear_ * inner.linear_, t);
}

std::vector<AffineMap> margulis_generators(int64_t n) {
  require_odd_modulus(n);
  std::vector<AffineMap> out;
  out.reserve(kMargulisDegree);
  out.emplace_back(kS1, LatticePoint(0, 0, n));
  out.emplace_back(kS1, LatticePoint(1, 0, n));
  out.emplace_back(kS2, LatticePoint(0, 0, n));
  out.emplace_back(kS2, LatticePoint(0, -1, n));
  for (int i = 0; i < 4; ++i) out.push_back(out[i].inverse());
  return out;
}

AffineMap margulis_generator(int64_t n, std::string_view name) {
  for (std::size_t i = 0; i < kGeneratorNames.size(); ++i) {
    if (kGeneratorNames[i] == name) return margulis_generators(n)[i];
  }
  throw UnsupportedError("unknown generator '" + std::string(name) + "'");
}

LatticePoint apply_affine(const AffineMap& map, const LatticePoint& v) {
  if (map.modulus() != v.modulus) {
    throw ModulusError("apply_affine: map is mod " + std::to_string(map.modulus()) +
                       ", point is mod " + std::to_string(v.modulus));
  }
  const Matrix2& s = map.linear();
  const LatticePoint& t = map.shift();
  return LatticePoint(s.a * v.p + s.b * v.q + t.p, s.c * v.p + s.d * v.q + t.q,
                      v.modulus);
}

GridDist::GridDist(int64_t modulus)
    : modulus_(modulus), values_(static_cast<std::size_t>(modulus * modulus), 0.0) {
  if (modulus < 1) throw ModulusError("grid modulus must be positive");
}

GridDist::GridDist(int64_t modulus, std::vector<double> values)
    : modulus_(modulus), values_(std::move(values)) {
  if (modulus < 1) throw ModulusError("grid modulus must be positive");
  if (values_.size() != static_cast<std::size_t>(modulus * modulus)) {
    throw DimensionError("grid needs N^2 values");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("grid values must be finite");
  }
}

GridDist GridDist::delta(int64_t modulus, const LatticePoint& at) {
  if (at.modulus != modulus) throw ModulusError("delta: modulus mismatch");
  GridDist g(modulus);
  g(at.p, at.q) = 1.0;
  return g;
}

GridDist GridDist::uniform(int64_t modulus) {
  const double value = 1.0 / static_cast<double>(modulus * modulus);
  return GridDist(modulus,
                  std::vector<double>(static_cast<std::size_t>(modulus * modulus), value));
}

std::size_t GridDist::index(int64_t p, int64_t q) const {
  return static_cast<std::size_t>(mod(p, modulus_) * modulus_ + mod(q, modulus_));
}

RVector GridDist::as_vector() const {
  return Eigen::Map<const RVector>(values_.data(), static_cast<Eigen::Index>(values_.size()));
}

GridDist GridDist::from_vector(int64_t modulus, const RVector& v) {
  return GridDist(modulus, std::vector<double>(v.data(), v.data() + v.size()));
}

double GridDist::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double GridDist::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

bool GridDist::is_probability(double tol) const {
  for (double v : values_) {
    if (v < -tol) return false;
  }
  return std::abs(total() - 1.0) <= tol;
}

GridDist walk_step(const GridDist& f) {
  const int64_t n = f.modulus();
  require_odd_modulus(n);
  std::vector<AffineMap> inverses;
  for (const auto& t : margulis_generators(n)) inverses.push_back(t.inverse());
  GridDist out(n);
  for (int64_t p = 0; p < n; ++p) {
    for (int64_t q = 0; q < n; ++q) {
      const LatticePoint v(p, q, n);
      double acc = 0.0;
      for (const auto& t_inv : inverses) {
        const LatticePoint u = t_inv(v);
        acc += f(u.p, u.q);
      }
      out(p, q) = acc / kMargulisDegree;
    }
  }
  return out;
}

GridDist walk_step_pushforward(const GridDist& f) {
  const int64_t n = f.modulus();
  require_odd_modulus(n);
  const auto gens = margulis_generators(n);
  GridDist out(n);
  for (int64_t p = 0; p < n; ++p) {
    for (int64_t q = 0; q < n; ++q) {
      const double mass = f(p, q) / kMargulisDegree;
      if (mass == 0.0) continue;
      const LatticePoint v(p, q, n);
      for (const auto& t : gens) {
        const LatticePoint w = t(v);
        out(w.p, w.q) += mass;
      }
    }
  }
  return out;
}

RMatrix walk_matrix(int64_t n, int64_t cap) {
  require_odd_modulus(n);
  if (n > cap) {
    throw MemoryGuardError("walk_matrix: N=" + std::to_string(n) + " exceeds cap " +
                           std::to_string(cap));
  }
  const auto gens = margulis_generators(n);
  const GridDist shape(n);
  RMatrix m = RMatrix::Zero(n * n, n * n);
  for (int64_t p = 0; p < n; ++p) {
    for (int64_t q = 0; q < n; ++q) {
      const LatticePoint v(p, q, n);
      const auto col = static_cast<Eigen::Index>(shape.index(p, q));
      for (const auto& t : gens) {
        const LatticePoint w = t(v);
        m(static_cast<Eigen::Index>(shape.index(w.p, w.q)), col) += 1.0 / kMargulisDegree;
      }
    }
  }
  return m;
}

SpectralReport spectral_report(const RMatrix& m, int64_t modulus) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("spectral_report: matrix must be square and non-empty");
  }
  constexpr double kTol = 1e-10;
  if (max_abs_diff(m, m.transpose()) > kTol) {
    throw PreconditionError("spectral_report: matrix is not symmetric");
  }
  const RVector row_sums = m.rowwise().sum();
  if ((row_sums.array() - 1.0).abs().maxCoeff() > kTol) {
    throw PreconditionError("spectral_report: matrix is not row-stochastic");
  }

  SpectralReport report;
  report.modulus = modulus;
  report.spectrum = sorted_by_magnitude(symmetric_eigenvalues(m));
  const RVector uniform = RVector::Ones(m.rows());
  report.lambda = max_abs_eigenvalue_on_complement(m, uniform);
  return report;
}

}  // namespace qmargulis
