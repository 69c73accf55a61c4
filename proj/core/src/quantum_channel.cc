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

#include "qmargulis/quantum_channel.h"

#include <algorithm>
#include <cmath>

#include "qmargulis/classical_walk.h"
#include "qmargulis/errors.h"

namespace qmargulis {

KrausChannel::KrausChannel(int64_t dim, std::vector<DenseOperator> unitaries)
    : dim_(dim), unitaries_(std::move(unitaries)) {
  if (unitaries_.empty()) throw PreconditionError("channel needs at least one unitary");
  for (const auto& u : unitaries_) {
    if (u.rows() != dim || u.cols() != dim) {
      throw DimensionError("channel unitary has wrong dimension");
    }
    if (!is_unitary(u, 1e-10)) throw PreconditionError("channel operator is not unitary");
  }
}

std::vector<DenseOperator> KrausChannel::kraus() const {
  const double scale = 1.0 / std::sqrt(static_cast<double>(degree()));
  std::vector<DenseOperator> out;
  out.reserve(unitaries_.size());
  for (const auto& u : unitaries_) out.push_back(scale * u);
  return out;
}

KrausChannel margulis_channel(const PhaseSpaceContext& ctx) {
  std::vector<DenseOperator> unitaries;
  for (const auto& t : margulis_generators(ctx.dim())) {
    unitaries.push_back(affine_unitary(ctx, t));
  }
  return KrausChannel(ctx.dim(), std::move(unitaries));
}

KrausChannel identity_channel(int64_t dim) {
  return KrausChannel(dim, {DenseOperator::Identity(dim, dim)});
}

DenseOperator apply_channel(const KrausChannel& channel, const DenseOperator& rho) {
  if (rho.rows() != channel.dim() || rho.cols() != channel.dim()) {
    throw DimensionError("apply_channel: operator dimension does not match channel");
  }
  DenseOperator out = DenseOperator::Zero(rho.rows(), rho.cols());
  for (const auto& u : channel.unitaries()) out += u * rho * u.adjoint();
  return out / static_cast<double>(channel.degree());
}

CMatrix superoperator(const KrausChannel& channel, int64_t cap) {
  const int64_t n = channel.dim();
  if (n > cap) {
    throw MemoryGuardError("superoperator: N=" + std::to_string(n) + " exceeds cap " +
                           std::to_string(cap));
  }
  const Eigen::Index nn = n * n;
  CMatrix m = CMatrix::Zero(nn, nn);
  for (const auto& u : channel.unitaries()) {
    // (conj(U) kron U)[(a, i), (b, j)] = conj(U_ab) U_ij, block (a, b) of size n.
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index a = 0; a < n; ++a) {
        const Complex c = std::conj(u(a, b));
        if (c == Complex(0.0, 0.0)) continue;
        m.block(a * n, b * n, n, n) += c * u;
      }
    }
  }
  return m / static_cast<double>(channel.degree());
}

namespace {

CMatrix checked_hermitian_superoperator(const KrausChannel& channel, int64_t cap) {
  CMatrix m = superoperator(channel, cap);
  if (!is_hermitian(m, 1e-10)) {
    throw PreconditionError("superoperator is not hermitian; channel is not self-adjoint");
  }
  return (m + m.adjoint()) * 0.5;
}

}  // namespace

double expander_lambda(const KrausChannel& channel, int64_t cap) {
  const CMatrix m = checked_hermitian_superoperator(channel, cap);
  const CVector vec_identity = vectorize(CMatrix::Identity(channel.dim(), channel.dim()));
  return max_abs_eigenvalue_on_complement(m, vec_identity);
}

std::vector<double> superoperator_spectrum(const KrausChannel& channel, int64_t cap) {
  return sorted_by_magnitude(hermitian_eigenvalues(checked_hermitian_superoperator(channel, cap)));
}

Observation1Report verify_observation1(const PhaseSpaceContext& ctx, int trials, Rng& rng) {
  const int64_t n = ctx.dim();
  const KrausChannel channel = margulis_channel(ctx);

  Observation1Report report;
  report.modulus = n;
  report.trials = trials;

  for (int t = 0; t < trials; ++t) {
    const DenseOperator rho = random_hermitian(static_cast<int>(n), rng);
    const GridDist lhs = wigner(ctx, apply_channel(channel, rho)).values;
    const GridDist rhs = walk_step(wigner(ctx, rho).values);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      report.max_wigner_deviation =
          std::max(report.max_wigner_deviation, std::abs(lhs.values()[i] - rhs.values()[i]));
    }
  }

  const SymmetricEigen eig = symmetric_eigen(walk_matrix(n));
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const GridDist f = GridDist::from_vector(n, eig.vectors.col(k));
    const DenseOperator x = inverse_wigner(ctx, {f});
    const DenseOperator residual = apply_channel(channel, x) - eig.values(k) * x;
    report.max_eigenoperator_deviation =
        std::max(report.max_eigenoperator_deviation, residual.norm());
  }

  const DenseOperator maximally_mixed =
      DenseOperator::Identity(n, n) / static_cast<double>(n);
  const DenseOperator from_uniform = inverse_wigner(ctx, {GridDist::uniform(n)});
  report.fixed_point_deviation =
      std::max((apply_channel(channel, from_uniform) - maximally_mixed).norm(),
               (from_uniform - maximally_mixed).norm());
  return report;
}

}  // namespace qmargulis
