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


#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "qmargulis/errors.h"
#include "qmargulis/phase_space.h"

namespace qmargulis {
namespace {

const double kPi = std::acos(-1.0);

Complex omega(int64_t n, int64_t k) { return std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / n); }

double frob(const CMatrix& m) { return m.norm(); }

CMatrix eye(int64_t n) { return CMatrix::Identity(n, n); }

// A(T v) for every v, compared with U A(v) U^+.
double covariance_error(const PhaseSpaceContext& ctx, const CMatrix& u,
                        const std::function<LatticePoint(const LatticePoint&)>& t) {
  const int64_t n = ctx.dim();
  double worst = 0.0;
  for (int64_t p = 0; p < n; ++p) {
    for (int64_t q = 0; q < n; ++q) {
      const LatticePoint v(p, q, n);
      const LatticePoint tv = t(v);
      worst = std::max(worst, frob(u * phase_point(ctx, p, q) * u.adjoint() - phase_point(ctx, tv.p, tv.q)));
    }
  }
  return worst;
}

LatticePoint apply_linear(const Matrix2& s, const LatticePoint& v) {
  return LatticePoint(s.a * v.p + s.b * v.q, s.c * v.p + s.d * v.q, v.modulus);
}

TEST(Context, InverseOfTwo) {
  for (int64_t n : {3, 5, 7, 9, 15}) {
    const PhaseSpaceContext ctx(n);
    EXPECT_EQ((2 * ctx.inv2()) % n, 1);
    EXPECT_NEAR(std::abs(ctx.omega_pow(1)), 1.0, 1e-15);
  }
  EXPECT_THROW(PhaseSpaceContext(4), ModulusError);
  EXPECT_THROW(PhaseSpaceContext(1), ModulusError);
}

TEST(ShiftBoost, ZeroIsIdentity) {
  const PhaseSpaceContext ctx(5);
  const auto sb = shift_boost(ctx, 0, 0);
  EXPECT_EQ(sb.shift, eye(5));
  EXPECT_EQ(sb.boost, eye(5));
}

TEST(ShiftBoost, ShiftIsCyclicPermutation) {
  const PhaseSpaceContext ctx(3);
  const CMatrix x = shift_op(ctx, 1);
  for (int k = 0; k < 3; ++k) {
    for (int r = 0; r < 3; ++r) EXPECT_EQ(x(r, k), Complex(r == (k + 1) % 3 ? 1.0 : 0.0, 0.0));
  }
}

TEST(ShiftBoost, BoostIsDiagonalPhase) {
  const PhaseSpaceContext ctx(3);
  const CMatrix z = boost_op(ctx, 1);
  CMatrix want = CMatrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) want(k, k) = omega(3, k);
  EXPECT_LT(max_abs_diff(z, want), 1e-15);
  EXPECT_TRUE(is_unitary(z));
  EXPECT_TRUE(is_unitary(shift_op(ctx, 2)));
}

TEST(Weyl, OriginIsIdentity) {
  const PhaseSpaceContext ctx(7);
  EXPECT_LT(max_abs_diff(weyl(ctx, 0, 0), eye(7)), 1e-15);
}

TEST(Weyl, CompositionPhaseAtN3) {
  const PhaseSpaceContext ctx(3);
  const CMatrix lhs = weyl(ctx, 1, 0) * weyl(ctx, 0, 1);
  EXPECT_LT(max_abs_diff(lhs, omega(3, 2) * weyl(ctx, 1, 1)), 1e-12);
}

TEST(Weyl, Unitary) {
  const PhaseSpaceContext ctx(5);
  for (int64_t p = 0; p < 5; ++p) {
    for (int64_t q = 0; q < 5; ++q) {
      const CMatrix w = weyl(ctx, p, q);
      EXPECT_LT(max_abs_diff(w * w.adjoint(), eye(5)), 1e-12);
    }
  }
}

TEST(Weyl, CompositionLawRandom) {
  Rng rng(1);
  for (int64_t n : {5, 7, 9}) {
    const PhaseSpaceContext ctx(n);
    std::uniform_int_distribution<int64_t> c(0, n - 1);
    for (int k = 0; k < 50; ++k) {
      const int64_t p = c(rng), q = c(rng), p2 = c(rng), q2 = c(rng);
      const Complex phase = ctx.omega_pow(ctx.inv2() * (p * q2 - p2 * q));
      EXPECT_LT(max_abs_diff(weyl(ctx, p, q) * weyl(ctx, p2, q2), phase * weyl(ctx, p + p2, q + q2)), 1e-12);
    }
  }
}

TEST(Weyl, TranslatesPhasePoints) {
  Rng rng(2);
  for (int64_t n : {3, 5, 7, 9}) {
    const PhaseSpaceContext ctx(n);
    std::uniform_int_distribution<int64_t> c(0, n - 1);
    for (int k = 0; k < 50; ++k) {
      const int64_t p = c(rng), q = c(rng), p2 = c(rng), q2 = c(rng);
      const CMatrix w = weyl(ctx, p, q);
      EXPECT_LT(frob(w * phase_point(ctx, p2, q2) * w.adjoint() - phase_point(ctx, p + p2, q + q2)), 1e-10);
    }
  }
}

TEST(Parity, N3SwapsOneAndTwo) {
  const PhaseSpaceContext ctx(3);
  CMatrix want = CMatrix::Zero(3, 3);
  want(0, 0) = want(2, 1) = want(1, 2) = 1.0;
  EXPECT_EQ(parity(ctx), want);
}

TEST(Parity, InvolutionWithUnitTrace) {
  for (int64_t n : {3, 5, 7, 9}) {
    const PhaseSpaceContext ctx(n);
    const CMatrix a = parity(ctx);
    EXPECT_EQ(a * a, eye(n));
    EXPECT_EQ(a.trace(), Complex(1.0, 0.0));
    EXPECT_TRUE(is_hermitian(a));
  }
}

TEST(PhasePoint, OriginIsParity) {
  const PhaseSpaceContext ctx(7);
  EXPECT_LT(max_abs_diff(phase_point(ctx, 0, 0), parity(ctx)), 1e-15);
}

TEST(PhasePoint, Orthonormal) {
  for (int64_t n : {3, 5, 7, 9}) {
    const PhaseSpaceContext ctx(n);
    const auto basis = phase_point_basis(ctx);
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex ip = (basis[i] * basis[j]).trace() / static_cast<double>(n);
        worst = std::max(worst, std::abs(ip - Complex(i == j ? 1.0 : 0.0, 0.0)));
      }
    }
    EXPECT_LT(worst, 1e-10) << "N=" << n;
  }
}

TEST(PhasePoint, SumIsNTimesIdentity) {
  for (int64_t n : {3, 5, 7}) {
    const PhaseSpaceContext ctx(n);
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto& a : phase_point_basis(ctx)) sum += a;
    EXPECT_LT(max_abs_diff(sum, static_cast<double>(n) * eye(n)), 1e-10);
  }
}

TEST(PhasePoint, HermitianInvolutionsWithUnitTrace) {
  const PhaseSpaceContext ctx(9);
  for (const auto& a : phase_point_basis(ctx)) {
    EXPECT_TRUE(is_hermitian(a));
    EXPECT_LT(max_abs_diff(a * a, eye(9)), 1e-10);
    EXPECT_NEAR(a.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(a.trace().imag(), 0.0, 1e-12);
  }
}

TEST(Wigner, MaximallyMixedIsFlat) {
  const PhaseSpaceContext ctx(5);
  const auto w = wigner(ctx, eye(5) / 5.0);
  for (double v : w.values.values()) EXPECT_NEAR(v, 1.0 / 25.0, 1e-14);
}

TEST(Wigner, ParityIsDeltaAtOrigin) {
  const PhaseSpaceContext ctx(7);
  const auto w = wigner(ctx, parity(ctx));
  for (int64_t p = 0; p < 7; ++p) {
    for (int64_t q = 0; q < 7; ++q) EXPECT_NEAR(w.values(p, q), p == 0 && q == 0 ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Wigner, ComputationalBasisStateN3) {
  const PhaseSpaceContext ctx(3);
  CMatrix rho = CMatrix::Zero(3, 3);
  rho(0, 0) = 1.0;
  const auto w = wigner(ctx, rho);
  for (int64_t p = 0; p < 3; ++p) {
    for (int64_t q = 0; q < 3; ++q) EXPECT_NEAR(w.values(p, q), q == 0 ? 1.0 / 3.0 : 0.0, 1e-14);
  }
}

TEST(Wigner, SumsToTrace) {
  Rng rng(4);
  const PhaseSpaceContext ctx(7);
  for (int k = 0; k < 10; ++k) {
    const CMatrix h = random_hermitian(7, rng);
    EXPECT_NEAR(wigner(ctx, h).values.total(), h.trace().real(), 1e-10);
  }
}

TEST(Wigner, RejectsNonHermitianAndWrongSize) {
  const PhaseSpaceContext ctx(3);
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 1) = 1.0;
  EXPECT_THROW(wigner(ctx, m), PreconditionError);
  EXPECT_THROW(wigner(ctx, eye(5)), DimensionError);
}

TEST(InverseWigner, FlatTableIsMaximallyMixed) {
  const PhaseSpaceContext ctx(5);
  WignerTable t{GridDist::uniform(5)};
  EXPECT_LT(max_abs_diff(inverse_wigner(ctx, t), eye(5) / 5.0), 1e-14);
}

TEST(InverseWigner, DeltaIsPhasePoint) {
  const PhaseSpaceContext ctx(5);
  WignerTable t{GridDist::delta(5, LatticePoint(2, 3, 5))};
  EXPECT_LT(max_abs_diff(inverse_wigner(ctx, t), phase_point(ctx, 2, 3)), 1e-14);
}

TEST(InverseWigner, RoundTripRandomHermitian) {
  Rng rng(9);
  const PhaseSpaceContext ctx(7);
  for (int k = 0; k < 20; ++k) {
    const CMatrix h = random_hermitian(7, rng);
    EXPECT_LT(max_abs_diff(inverse_wigner(ctx, wigner(ctx, h)), h), 1e-12);
    const auto w = wigner(ctx, h);
    const auto back = wigner(ctx, inverse_wigner(ctx, w));
    for (std::size_t i = 0; i < w.values.size(); ++i) EXPECT_NEAR(back.values.values()[i], w.values.values()[i], 1e-12);
  }
}

TEST(Fourier, N3Entries) {
  const PhaseSpaceContext ctx(3);
  const CMatrix f = fourier(ctx);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(f(k, j) - omega(3, j * k) / std::sqrt(3.0)), 1e-15);
  }
}

TEST(Fourier, ConjugatesBoostIntoShift) {
  // F^+ z(1) F = x(1); the other order gives the inverse shift.
  for (int64_t n : {3, 5, 7, 9}) {
    const PhaseSpaceContext ctx(n);
    const CMatrix f = fourier(ctx);
    EXPECT_LT(max_abs_diff(f.adjoint() * boost_op(ctx, 1) * f, shift_op(ctx, 1)), 1e-12);
    EXPECT_LT(max_abs_diff(f * boost_op(ctx, 1) * f.adjoint(), shift_op(ctx, 1).adjoint()), 1e-12);
  }
}

TEST(Fourier, FourthPowerIsIdentity) {
  const PhaseSpaceContext ctx(7);
  const CMatrix f = fourier(ctx);
  EXPECT_TRUE(is_unitary(f));
  EXPECT_LT(max_abs_diff(f * f * f * f, eye(7)), 1e-12);
  EXPECT_LT(max_abs_diff(f * f, parity(ctx)), 1e-12);
}

TEST(QuadraticPhase, N3Plus) {
  const PhaseSpaceContext ctx(3);
  CMatrix want = CMatrix::Zero(3, 3);
  want(0, 0) = 1.0;
  want(1, 1) = want(2, 2) = omega(3, 2);
  EXPECT_LT(max_abs_diff(quadratic_phase(ctx, Sign::kPlus), want), 1e-14);
}

TEST(QuadraticPhase, PlusTimesMinusIsIdentity) {
  const PhaseSpaceContext ctx(9);
  const CMatrix up = quadratic_phase(ctx, Sign::kPlus);
  const CMatrix um = quadratic_phase(ctx, Sign::kMinus);
  EXPECT_LT(max_abs_diff(up * um, eye(9)), 1e-14);
  EXPECT_LT(max_abs_diff(up, um.adjoint()), 1e-14);
}

TEST(QuadraticPhase, MinusImplementsS1) {
  // U_- A(v) U_-^+ = A(S1 v) and U_+ A(v) U_+^+ = A(S1^-1 v).
  const PhaseSpaceContext ctx(5);
  const Matrix2 s1_inv{1, -2, 0, 1};
  EXPECT_LT(covariance_error(ctx, quadratic_phase(ctx, Sign::kMinus),
                             [](const LatticePoint& v) { return apply_linear(kS1, v); }),
            1e-10);
  EXPECT_LT(covariance_error(ctx, quadratic_phase(ctx, Sign::kPlus),
                             [&](const LatticePoint& v) { return apply_linear(s1_inv, v); }),
            1e-10);
}

TEST(Metaplectic, EveryGeneratorIsCovariant) {
  for (int64_t n : {3, 5, 7, 9, 15}) {
    const PhaseSpaceContext ctx(n);
    for (Generator g : {Generator::kS1, Generator::kS2, Generator::kS1Inv, Generator::kS2Inv, Generator::kJ}) {
      const std::vector<Generator> word = {g};
      const Matrix2 s = generator_matrix(g);
      EXPECT_LT(covariance_error(ctx, metaplectic(ctx, word),
                                 [&](const LatticePoint& v) { return apply_linear(s, v); }),
                1e-10)
          << "N=" << n << " " << generator_symbol(g);
    }
  }
}

TEST(Metaplectic, S1OnN7) {
  const PhaseSpaceContext ctx(7);
  const std::vector<Generator> word = {Generator::kS1};
  EXPECT_LT(covariance_error(ctx, metaplectic(ctx, word),
                             [](const LatticePoint& v) { return apply_linear(kS1, v); }),
            1e-10);
}

TEST(Metaplectic, S2IsConjugatedChirp) {
  const PhaseSpaceContext ctx(7);
  const std::vector<Generator> word = {Generator::kS2};
  const CMatrix f = fourier(ctx);
  EXPECT_TRUE(equal_up_to_phase(metaplectic(ctx, word), f * quadratic_phase(ctx, Sign::kPlus) * f.adjoint()).equal);
}

TEST(Metaplectic, JIsFourier) {
  const PhaseSpaceContext ctx(5);
  const std::vector<Generator> word = {Generator::kJ};
  EXPECT_TRUE(equal_up_to_phase(metaplectic(ctx, word), fourier(ctx)).equal);
}

TEST(Metaplectic, InversePairIsIdentityUpToPhase) {
  const PhaseSpaceContext ctx(7);
  const std::vector<Generator> w1 = {Generator::kS1, Generator::kS1Inv};
  const std::vector<Generator> w2 = {Generator::kS2Inv, Generator::kS2};
  EXPECT_TRUE(equal_up_to_phase(metaplectic(ctx, w1), eye(7)).equal);
  EXPECT_TRUE(equal_up_to_phase(metaplectic(ctx, w2), eye(7)).equal);
}

TEST(Metaplectic, WordCovariance) {
  const PhaseSpaceContext ctx(9);
  const std::vector<Generator> word = {Generator::kS1, Generator::kJ, Generator::kS2Inv, Generator::kS1};
  const Matrix2 s = word_matrix(word);
  EXPECT_LT(covariance_error(ctx, metaplectic(ctx, word), [&](const LatticePoint& v) { return apply_linear(s, v); }),
            1e-10);
}

TEST(Metaplectic, Errors) {
  const PhaseSpaceContext ctx(5);
  EXPECT_THROW(metaplectic(ctx, std::vector<Generator>{}), UnsupportedError);
  EXPECT_THROW(parse_generator("S3"), UnsupportedError);
  EXPECT_EQ(parse_generator("S2inv"), Generator::kS2Inv);
  EXPECT_THROW(metaplectic_word_for(Matrix2{1, 1, 1, 2}, 5), UnsupportedError);
  EXPECT_TRUE(metaplectic_word_for(Matrix2::identity(), 5).empty());
}

TEST(AffineUnitary, T1IsChirp) {
  const PhaseSpaceContext ctx(7);
  EXPECT_TRUE(equal_up_to_phase(affine_unitary(ctx, margulis_generator(7, "T1")),
                                quadratic_phase(ctx, Sign::kMinus))
                  .equal);
}

TEST(AffineUnitary, T2IsShiftedChirp) {
  const PhaseSpaceContext ctx(7);
  const AffineMap t2 = margulis_generator(7, "T2");
  const CMatrix u = affine_unitary(ctx, t2);
  EXPECT_TRUE(equal_up_to_phase(u, weyl(ctx, 1, 0) * quadratic_phase(ctx, Sign::kMinus)).equal);
  EXPECT_LT(covariance_error(ctx, u, [&](const LatticePoint& v) { return t2(v); }), 1e-10);
}

TEST(AffineUnitary, IdentityMap) {
  const PhaseSpaceContext ctx(5);
  EXPECT_TRUE(equal_up_to_phase(affine_unitary(ctx, AffineMap::identity(5)), eye(5)).equal);
}

TEST(AffineUnitary, CovarianceForAllGenerators) {
  for (int64_t n : {3, 5, 7, 9, 15}) {
    const PhaseSpaceContext ctx(n);
    for (const auto& t : margulis_generators(n)) {
      const CMatrix u = affine_unitary(ctx, t);
      EXPECT_TRUE(is_unitary(u));
      EXPECT_LT(covariance_error(ctx, u, [&](const LatticePoint& v) { return t(v); }), 1e-10) << "N=" << n;
    }
  }
}

TEST(AffineUnitary, WignerPullback) {
  Rng rng(12);
  const PhaseSpaceContext ctx(7);
  for (const auto& t : margulis_generators(7)) {
    const CMatrix u = affine_unitary(ctx, t);
    const AffineMap tinv = t.inverse();
    const CMatrix rho = random_density(7, rng);
    const auto before = wigner(ctx, rho).values;
    const auto after = wigner(ctx, u * rho * u.adjoint()).values;
    for (int64_t p = 0; p < 7; ++p) {
      for (int64_t q = 0; q < 7; ++q) {
        const LatticePoint src = tinv(LatticePoint(p, q, 7));
        EXPECT_NEAR(after(p, q), before(src.p, src.q), 1e-12);
      }
    }
  }
}

TEST(AffineUnitary, UnsupportedLinearPart) {
  const PhaseSpaceContext ctx(5);
  EXPECT_THROW(affine_unitary(ctx, AffineMap(Matrix2{1, 1, 1, 2}, LatticePoint(0, 0, 5))), UnsupportedError);
}

}  // namespace
}  // namespace qmargulis
