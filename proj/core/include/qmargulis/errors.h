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

#ifndef QMARGULIS_ERRORS_H_
#define QMARGULIS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qmargulis {

/// Modulus is even, too small, or two objects disagree on it.
class ModulusError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operand shapes do not match.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request would allocate past the configured size cap.
class MemoryGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Input is outside what the routine supports (e.g. a linear part with no
/// known metaplectic word, an unknown generator symbol).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates a mathematical precondition (non-hermitian, non-stochastic,
/// non-generic covariance, wrap-around on the embedding lattice).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An eigensolver or other numerical kernel failed.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace qmargulis

#endif  // QMARGULIS_ERRORS_H_
