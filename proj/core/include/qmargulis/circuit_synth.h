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

// Qudit circuits for the channel unitaries on (C^d)^{(x) n}, N = d^n.
//
// Basis digits are most significant first: j = sum_l j_l d^{n-l}, qudit l in
// 1..n. Phases are exact rationals exp(2 pi i c x / M) with integer c, M, so a
// gate list is bit-exact; complex numbers only appear in evaluate().
//
// Gate lists are applied in order: gates[0] acts first.

#ifndef QMARGULIS_CIRCUIT_SYNTH_H_
#define QMARGULIS_CIRCUIT_SYNTH_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qmargulis/classical_walk.h"
#include "qmargulis/linalg.h"
#include "qmargulis/phase_space.h"

namespace qmargulis {

enum class GateKind {
  kFourier,         // |a> -> d^{-1/2} sum_b exp(2 pi i a b / d) |b>
  kFourierInv,
  kLinearPhase,     // exp(2 pi i c j_t / M)
  kQuadraticPhase,  // exp(2 pi i c j_t^2 / M)
  kCPhase,          // exp(2 pi i c j_t1 j_t2 / M)
  kReverse,         // swap qudits t1 and t2
};

std::string_view gate_kind_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

struct Gate {
  GateKind kind = GateKind::kFourier;
  int t1 = 1;
  int t2 = 0;  // 0 for single-qudit gates
  int64_t c = 0;
  int64_t M = 1;
  int d = 3;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct GateList {
  int d = 3;
  int n = 1;
  std::vector<Gate> gates;
  /// Global phase exp(2 pi i num / den) multiplying the product of gates.
  int64_t global_phase_num = 0;
  int64_t global_phase_den = 1;
  std::string transform;

  friend bool operator==(const GateList&, const GateList&) = default;
};

/// d^n, throwing ModulusError unless d is odd >= 3 and n >= 1.
int64_t qudit_dimension(int d, int n);

/// Inverse circuit: reversed order, each gate inverted, phase negated.
GateList inverse(const GateList& list);

/// Append `tail` (acting after `head`); global phases add.
GateList concat(const GateList& head, const GateList& tail);

/// Fourier ladder with n Fourier gates, n(n-1)/2 controlled phases, and
/// floor(n/2) qudit swaps; evaluates to fourier() on N = d^n exactly.
GateList qft_circuit(int d, int n);

/// U_+- as single-qudit quadratic phases (l = l') and controlled phases
/// (l < l', coefficient doubled). Pairs with l + l' <= n contribute an integer
/// exponent and are dropped unless keep_trivial is set, in which case they are
/// emitted with M = 1. Nontrivial count: #{(l, l'): l <= l', l + l' > n}.
GateList quadratic_circuit(int d, int n, Sign sign, bool keep_trivial = false);

/// w(p, q) = omega^{-inv2 p q} z(p) x(q) with z(p) as n linear phases and
/// x(q) = F^+ z(q) F. The scalar goes into the global-phase annotation.
GateList weyl_circuit(int d, int n, int64_t p, int64_t q);

/// Circuit for one metaplectic generator image.
GateList metaplectic_circuit(int d, int n, Generator g, bool keep_trivial = false);

/// U_T = w(t) mu(S): the generator word circuits followed by weyl_circuit(t).
/// Throws UnsupportedError when S has no known word.
GateList affine_circuit(int d, int n, const AffineMap& map, bool keep_trivial = false);

/// Ordered product of the gates (times the global phase) as a d^n x d^n
/// matrix. Throws DimensionError for a target out of range.
DenseOperator evaluate(const GateList& list);

/// Number of gates.
inline std::size_t gate_count(const GateList& list) { return list.gates.size(); }

/// JSON-lines form: a header object then one object per gate.
std::string to_json_lines(const GateList& list);
GateList from_json_lines(std::string_view text);

}  // namespace qmargulis

#endif  // QMARGULIS_CIRCUIT_SYNTH_H_
