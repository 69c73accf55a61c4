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

#include "qmargulis/circuit_synth.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "qmargulis/errors.h"

namespace qmargulis {

namespace {

int64_t ipow(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Complex exact_phase(int64_t c, int64_t x, int64_t m) {
  const int64_t r = mod(mod(c, m) * mod(x, m), m);
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                             static_cast<double>(m));
}

void add_phase(GateList& list, int64_t num, int64_t den) {
  const int64_t new_den = std::lcm(list.global_phase_den, den);
  int64_t new_num = list.global_phase_num * (new_den / list.global_phase_den) +
                    num * (new_den / den);
  new_num = mod(new_num, new_den);
  const int64_t g = std::gcd(new_num, new_den);
  list.global_phase_num = new_num / g;
  list.global_phase_den = new_den / g;
}

GateList empty_list(int d, int n) {
  qudit_dimension(d, n);
  GateList list;
  list.d = d;
  list.n = n;
  return list;
}

// z(r) on N = d^n: exp(2 pi i r j / N) = prod_l exp(2 pi i r j_l / d^l).
void append_boost(GateList& list, int64_t r) {
  for (int l = 1; l <= list.n; ++l) {
    const int64_t m = ipow(list.d, l);
    const int64_t c = mod(r, m);
    if (c == 0) continue;
    list.gates.push_back({GateKind::kLinearPhase, l, 0, c, m, list.d});
  }
}

void append(GateList& list, const GateList& tail) {
  list.gates.insert(list.gates.end(), tail.gates.begin(), tail.gates.end());
  add_phase(list, tail.global_phase_num, tail.global_phase_den);
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kFourier: return "fourier";
    case GateKind::kFourierInv: return "fourier_inv";
    case GateKind::kLinearPhase: return "linear_phase";
    case GateKind::kQuadraticPhase: return "quadratic_phase";
    case GateKind::kCPhase: return "cphase";
    case GateKind::kReverse: return "reverse";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : {GateKind::kFourier, GateKind::kFourierInv, GateKind::kLinearPhase,
                     GateKind::kQuadraticPhase, GateKind::kCPhase, GateKind::kReverse}) {
    if (gate_kind_name(k) == name) return k;
  }
  throw UnsupportedError("unknown gate op '" + std::string(name) + "'");
}

int64_t qudit_dimension(int d, int n) {
  if (d < 3 || d % 2 == 0) {
    throw ModulusError("qudit dimension d must be odd and >= 3, got " + std::to_string(d));
  }
  if (n < 1) throw ModulusError("need at least one qudit");
  return ipow(d, n);
}

GateList inverse(const GateList& list) {
  GateList out = list;
  out.gates.assign(list.gates.rbegin(), list.gates.rend());
  for (Gate& g : out.gates) {
    switch (g.kind) {
      case GateKind::kFourier: g.kind = GateKind::kFourierInv; break;
      case GateKind::kFourierInv: g.kind = GateKind::kFourier; break;
      case GateKind::kLinearPhase:
      case GateKind::kQuadraticPhase:
      case GateKind::kCPhase: g.c = -g.c; break;
      case GateKind::kReverse: break;
    }
  }
  out.global_phase_num = mod(-list.global_phase_num, list.global_phase_den);
  return out;
}

GateList concat(const GateList& head, const GateList& tail) {
  if (head.d != tail.d || head.n != tail.n) {
    throw DimensionError("concat: circuits act on different registers");
  }
  GateList out = head;
  append(out, tail);
  return out;
}

GateList qft_circuit(int d, int n) {
  GateList list = empty_list(d, n);
  // After the Fourier gate on qudit l it holds output digit k_{n-l+1}, whose
  // remaining phase is exp(2 pi i k j_{l'} / d^{l'-l+1}) for each l' > l.
  for (int l = 1; l <= n; ++l) {
    list.gates.push_back({GateKind::kFourier, l, 0, 0, 1, d});
    for (int lp = l + 1; lp <= n; ++lp) {
      list.gates.push_back({GateKind::kCPhase, l, lp, 1, ipow(d, lp - l + 1), d});
    }
  }
  for (int l = 1; l <= n / 2; ++l) {
    list.gates.push_back({GateKind::kReverse, l, n + 1 - l, 0, 1, d});
  }
  return list;
}

GateList quadratic_circuit(int d, int n, Sign sign, bool keep_trivial) {
  GateList list = empty_list(d, n);
  // j^2 / N = sum_{l,l'} j_l j_l' d^{n-l-l'}; terms with l + l' <= n are integers.
  const int64_t s = sign == Sign::kPlus ? -1 : 1;
  for (int l = 1; l <= n; ++l) {
    for (int lp = l; lp <= n; ++lp) {
      const bool trivial = l + lp <= n;
      if (trivial && !keep_trivial) continue;
      const int64_t m = trivial ? 1 : ipow(d, l + lp - n);
      if (l == lp) {
        list.gates.push_back({GateKind::kQuadraticPhase, l, 0, s, m, d});
      } else {
        list.gates.push_back({GateKind::kCPhase, l, lp, 2 * s, m, d});
      }
    }
  }
  return list;
}

GateList weyl_circuit(int d, int n, int64_t p, int64_t q) {
  GateList list = empty_list(d, n);
  const int64_t big_n = ipow(d, n);
  p = mod(p, big_n);
  q = mod(q, big_n);
  if (q != 0) {
    // x(q) = F^+ z(q) F
    const GateList f = qft_circuit(d, n);
    append(list, f);
    append_boost(list, q);
    append(list, inverse(f));
  }
  append_boost(list, p);
  const int64_t inv2 = (big_n + 1) / 2;
  add_phase(list, -mod(inv2 * p, big_n) * q, big_n);
  return list;
}

GateList metaplectic_circuit(int d, int n, Generator g, bool keep_trivial) {
  switch (g) {
    case Generator::kS1: return quadratic_circuit(d, n, Sign::kMinus, keep_trivial);
    case Generator::kS1Inv: return quadratic_circuit(d, n, Sign::kPlus, keep_trivial);
    case Generator::kS2:
    case Generator::kS2Inv: {
      // F U F^+: apply F^+ first.
      const GateList f = qft_circuit(d, n);
      const Sign sign = g == Generator::kS2 ? Sign::kPlus : Sign::kMinus;
      return concat(concat(inverse(f), quadratic_circuit(d, n, sign, keep_trivial)), f);
    }
    case Generator::kJ: return qft_circuit(d, n);
  }
  throw UnsupportedError("unknown metaplectic generator");
}

GateList affine_circuit(int d, int n, const AffineMap& map, bool keep_trivial) {
  const int64_t big_n = qudit_dimension(d, n);
  if (map.modulus() != big_n) {
    throw ModulusError("affine_circuit: map is mod " + std::to_string(map.modulus()) +
                       ", register has dimension " + std::to_string(big_n));
  }
  const auto word = metaplectic_word_for(map.linear(), big_n);
  GateList list = empty_list(d, n);
  // mu(g1) mu(g2) ... acts right to left.
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    append(list, metaplectic_circuit(d, n, *it, keep_trivial));
  }
  append(list, weyl_circuit(d, n, map.shift().p, map.shift().q));
  return list;
}

namespace {

void check_targets(const Gate& g, int n) {
  const bool two = g.kind == GateKind::kCPhase || g.kind == GateKind::kReverse;
  if (g.t1 < 1 || g.t1 > n || (two && (g.t2 < 1 || g.t2 > n || g.t2 == g.t1)) ||
      (!two && g.t2 != 0)) {
    throw DimensionError("gate " + std::string(gate_kind_name(g.kind)) +
                         " has target out of range for n=" + std::to_string(n));
  }
  if (g.M <= 0) throw PreconditionError("gate phase modulus must be positive");
}

}  // namespace

DenseOperator evaluate(const GateList& list) {
  const int64_t dim = qudit_dimension(list.d, list.n);
  const int d = list.d;
  const int n = list.n;
  std::vector<int64_t> stride(static_cast<std::size_t>(n) + 1);
  for (int l = 1; l <= n; ++l) stride[l] = ipow(d, n - l);
  auto digit = [&](int64_t j, int l) { return (j / stride[l]) % d; };

  DenseOperator u = DenseOperator::Identity(dim, dim);
  for (const Gate& g : list.gates) {
    if (g.d != d) throw DimensionError("gate qudit dimension differs from the list's");
    check_targets(g, n);
    switch (g.kind) {
      case GateKind::kLinearPhase:
      case GateKind::kQuadraticPhase:
      case GateKind::kCPhase: {
        for (int64_t j = 0; j < dim; ++j) {
          const int64_t a = digit(j, g.t1);
          int64_t x = a;
          if (g.kind == GateKind::kQuadraticPhase) x = a * a;
          if (g.kind == GateKind::kCPhase) x = a * digit(j, g.t2);
          u.row(j) *= exact_phase(g.c, x, g.M);
        }
        break;
      }
      case GateKind::kFourier:
      case GateKind::kFourierInv: {
        const int sgn = g.kind == GateKind::kFourier ? 1 : -1;
        const double norm = 1.0 / std::sqrt(static_cast<double>(d));
        const int64_t s = stride[g.t1];
        DenseOperator next(dim, dim);
        for (int64_t j = 0; j < dim; ++j) {
          const int64_t b = digit(j, g.t1);
          const int64_t base = j - b * s;
          next.row(j).setZero();
          for (int64_t a = 0; a < d; ++a) {
            next.row(j) += norm * exact_phase(sgn * a, b, d) * u.row(base + a * s);
          }
        }
        u = std::move(next);
        break;
      }
      case GateKind::kReverse: {
        DenseOperator next(dim, dim);
        for (int64_t j = 0; j < dim; ++j) {
          const int64_t a = digit(j, g.t1);
          const int64_t b = digit(j, g.t2);
          const int64_t src = j + (b - a) * stride[g.t1] + (a - b) * stride[g.t2];
          next.row(j) = u.row(src);
        }
        u = std::move(next);
        break;
      }
    }
  }
  return exact_phase(list.global_phase_num, 1, list.global_phase_den) * u;
}

std::string to_json_lines(const GateList& list) {
  std::ostringstream out;
  nlohmann::ordered_json header;
  header["d"] = list.d;
  header["n"] = list.n;
  header["transform"] = list.transform;
  header["global_phase_num"] = list.global_phase_num;
  header["global_phase_den"] = list.global_phase_den;
  out << header.dump() << '\n';
  for (const Gate& g : list.gates) {
    nlohmann::ordered_json line;
    line["op"] = gate_kind_name(g.kind);
    line["t1"] = g.t1;
    if (g.t2 != 0) line["t2"] = g.t2;
    if (g.kind != GateKind::kFourier && g.kind != GateKind::kFourierInv &&
        g.kind != GateKind::kReverse) {
      line["c"] = g.c;
      line["M"] = g.M;
    }
    line["d"] = g.d;
    out << line.dump() << '\n';
  }
  return out.str();
}

GateList from_json_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  GateList list;
  bool have_header = false;
  try {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto j = nlohmann::json::parse(line);
      if (!have_header) {
        list.d = j.at("d").get<int>();
        list.n = j.at("n").get<int>();
        list.transform = j.value("transform", std::string());
        list.global_phase_num = j.value("global_phase_num", int64_t{0});
        list.global_phase_den = j.value("global_phase_den", int64_t{1});
        have_header = true;
        continue;
      }
      Gate g;
      g.kind = parse_gate_kind(j.at("op").get<std::string>());
      g.t1 = j.at("t1").get<int>();
      g.t2 = j.value("t2", 0);
      g.c = j.value("c", int64_t{0});
      g.M = j.value("M", int64_t{1});
      g.d = j.value("d", list.d);
      list.gates.push_back(g);
    }
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed gate list: ") + e.what());
  }
  if (!have_header) throw PreconditionError("gate list has no header line");
  if (list.global_phase_den <= 0) throw PreconditionError("global phase denominator must be positive");
  return list;
}

}  // namespace qmargulis
