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

#include "qmargulis/phase_space.h"

#include <cmath>
#include <numbers>

#include "qmargulis/errors.h"

namespace qmargulis {

PhaseSpaceContext::PhaseSpaceContext(int64_t n) : n_(n), inv2_((n + 1) / 2) {
  require_odd_modulus(n);
}

Complex PhaseSpaceContext::omega_pow(int64_t k) const {
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(mod(k, n_)) / static_cast<double>(n_);
  return std::polar(1.0, angle);
}

DenseOperator shift_op(const PhaseSpaceContext& ctx, int64_t q) {
  const int64_t n = ctx.dim();
  DenseOperator x = DenseOperator::Zero(n, n);
  for (int64_t k = 0; k < n; ++k) x(mod(k + q, n), k) = 1.0;
  return x;
}

DenseOperator boost_op(const PhaseSpaceContext& ctx, int64_t p) {
  const int64_t n = ctx.dim();
  DenseOperator z = DenseOperator::Zero(n, n);
  for (int64_t k = 0; k < n; ++k) z(k, k) = ctx.omega_pow(p * k);
  return z;
}

ShiftBoost shift_boost(const PhaseSpaceContext& ctx, int64_t p, int64_t q) {
  return {shift_op(ctx, q), boost_op(ctx, p)};
}

DenseOperator weyl(const PhaseSpaceContext& ctx, int64_t p, int64_t q) {
  const int64_t n = ctx.dim();
  // Reduce first so that the inv2 * p * q product stays small.
  p = mod(p, n);
  q = mod(q, n);
  return ctx.omega_pow(-mod(ctx.inv2() * p, n) * q) * boost_op(ctx, p) * shift_op(ctx, q);
}

DenseOperator parity(const PhaseSpaceContext& ctx) {
  const int64_t n = ctx.dim();
  DenseOperator a = DenseOperator::Zero(n, n);
  for (int64_t k = 0; k < n; ++k) a(mod(-k, n), k) = 1.0;
  return a;
}

DenseOperator phase_point(const PhaseSpaceContext& ctx, int64_t p, int64_t q) {
  const DenseOperator w = weyl(ctx, p, q);
  return w * parity(ctx) * w.adjoint();
}

std::vector<DenseOperator> phase_point_basis(const PhaseSpaceContext& ctx) {
  const int64_t n = ctx.dim();
  std::vector<DenseOperator> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  for (int64_t p = 0; p < n; ++p) {
    for (int64_t q = 0; q < n; ++q) basis.push_back(phase_point(ctx, p, q));
  }
  return basis;
}

WignerTable wigner(const PhaseSpaceContext& ctx, const DenseOperator& rho) {
  const int64_t n = ctx.dim();
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionError("wigner: operator is not N x N");
  }
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if (!is_hermitian(rho, 1e-10 * scale)) {
    throw PreconditionError("wigner: operator is not hermitian");
  }
  const auto basis = phase_point_basis(ctx);
  GridDist table(n);
  for (int64_t p = 0; p < n; ++p) {
    for (int64_t q = 0; q < n; ++q) {
      const DenseOperator& a = basis[table.index(p, q)];
      // tr(A rho) = sum_ij A_ij rho_ji; real for hermitian A and rho.
      const Complex tr = (a.cwiseProduct(rho.transpose())).sum();
      table(p, q) = tr.real() / static_cast<double>(n);
    }
  }
  return {std::move(table)};
}

DenseOperator inverse_wigner(const PhaseSpaceContext& ctx, const WignerTable& table) {
  const int64_t n = ctx.dim();
  if (table.values.modulus() != n) throw ModulusError("inverse_wigner: modulus mismatch");
  DenseOperator rho = DenseOperator::Zero(n, n);
  for (int64_t p = 0; p < n; ++p) {
    for (int64_t q = 0; q < n; ++q) {
      const double c = table.values(p, q);
      if (c != 0.0) rho += c * phase_point(ctx, p, q);
    }
  }
  return rho;
}

DenseOperator fourier(const PhaseSpaceContext& ctx) {
  const int64_t n = ctx.dim();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  DenseOperator f(n, n);
  for (int64_t k = 0; k < n; ++k) {
    for (int64_t j = 0; j < n; ++j) f(k, j) = norm * ctx.omega_pow(j * k);
  }
  return f;
}

DenseOperator quadratic_phase(const PhaseSpaceContext& ctx, Sign sign) {
  const int64_t n = ctx.dim();
  const int64_t s = sign == Sign::kPlus ? -1 : 1;
  DenseOperator u = DenseOperator::Zero(n, n);
  for (int64_t j = 0; j < n; ++j) u(j, j) = ctx.omega_pow(s * mod(j * j, n));
  return u;
}

Generator parse_generator(std::string_view symbol) {
  if (symbol == "S1") return Generator::kS1;
  if (symbol == "S2") return Generator::kS2;
  if (symbol == "S1inv") return Generator::kS1Inv;
  if (symbol == "S2inv") return Generator::kS2Inv;
  if (symbol == "J") return Generator::kJ;
  throw UnsupportedError("unknown metaplectic generator '" + std::string(symbol) + "'");
}

std::string_view generator_symbol(Generator g) {
  switch (g) {
    case Generator::kS1: return "S1";
    case Generator::kS2: return "S2";
    case Generator::kS1Inv: return "S1inv";
    case Generator::kS2Inv: return "S2inv";
    case Generator::kJ: return "J";
  }
  return "?";
}

Matrix2 generator_matrix(Generator g) {
  switch (g) {
    case Generator::kS1: return kS1;
    case Generator::kS2: return kS2;
    case Generator::kS1Inv: return {1, -2, 0, 1};
    case Generator::kS2Inv: return {1, 0, -2, 1};
    case Generator::kJ: return {0, 1, -1, 0};
  }
  return Matrix2::identity();
}

Matrix2 word_matrix(std::span<const Generator> word) {
  Matrix2 m = Matrix2::identity();
  for (Generator g : word) m = m * generator_matrix(g);
  return m;
}

namespace {

DenseOperator generator_unitary(const PhaseSpaceContext& ctx, Generator g) {
  switch (g) {
    case Generator::kS1: return quadratic_phase(ctx, Sign::kMinus);
    case Generator::kS1Inv: return quadratic_phase(ctx, Sign::kPlus);
    case Generator::kS2: {
      const DenseOperator f = fourier(ctx);
      return f * quadratic_phase(ctx, Sign::kPlus) * f.adjoint();
    }
    case Generator::kS2Inv: {
      const DenseOperator f = fourier(ctx);
      return f * quadratic_phase(ctx, Sign::kMinus) * f.adjoint();
    }
    case Generator::kJ: return fourier(ctx);
  }
  throw UnsupportedError("unknown metaplectic generator");
}

}  // namespace

DenseOperator metaplectic(const PhaseSpaceContext& ctx, std::span<const Generator> word) {
  if (word.empty()) throw UnsupportedError("metaplectic: empty word");
  DenseOperator u = generator_unitary(ctx, word.front());
  for (std::size_t i = 1; i < word.size(); ++i) u = u * generator_unitary(ctx, word[i]);
  return u;
}

std::vector<Generator> metaplectic_word_for(const Matrix2& linear, int64_t modulus) {
  const Matrix2 target = linear.reduced(modulus);
  if (target == Matrix2::identity().reduced(modulus)) return {};
  static const std::vector<std::vector<Generator>> kCandidates = {
      {Generator::kS1},
      {Generator::kS1Inv},
      {Generator::kS2},
      {Generator::kS2Inv},
      {Generator::kJ},
      {Generator::kJ, Generator::kJ},
      {Generator::kJ, Generator::kJ, Generator::kJ},
  };
  for (const auto& word : kCandidates) {
    if (word_matrix(word).reduced(modulus) == target) return word;
  }
  throw UnsupportedError("no metaplectic word for linear part [[" + std::to_string(target.a) +
                         "," + std::to_string(target.b) + "],[" + std::to_string(target.c) +
                         "," + std::to_string(target.d) + "]]");
}

DenseOperator affine_unitary(const PhaseSpaceContext& ctx, const AffineMap& map) {
  if (map.modulus() != ctx.dim()) throw ModulusError("affine_unitary: modulus mismatch");
  const auto word = metaplectic_word_for(map.linear(), ctx.dim());
  const DenseOperator w = weyl(ctx, map.shift().p, map.shift().q);
  if (word.empty()) return w;
  return w * metaplectic(ctx, word);
}

}  // namespace qmargulis
