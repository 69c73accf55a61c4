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

// Subcommands of the `qmargulis` tool. Each takes a validated RunConfig and
// returns the process exit status.

#ifndef QMARGULIS_TOOLS_COMMANDS_H_
#define QMARGULIS_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmargulis/continuous.h"

namespace qmargulis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "QMARGULIS_OUT";

struct RunConfig {
  std::string subcommand;

  // walk / verify
  int64_t n = 7;
  int steps = 3;
  int64_t start_p = 0;
  int64_t start_q = 0;
  bool fixed_scale = false;
  bool quantum = false;

  // spectrum
  std::vector<int64_t> n_list = {3, 5, 7};
  std::string mode = "both";  // classical | quantum | both
  bool override_cap = false;

  // verify
  uint64_t seed = 42;
  double tol = 1e-10;
  int trials = 20;
  std::string dump_dir;
  std::string golden_dir;

  // circuit
  int d = 3;
  int qudits = 2;
  std::string transform = "T1";
  bool check = false;
  bool keep_trivial = false;
  std::string out_file;

  // moments
  CovMatrix gamma{1.0, 0.0, 1.0};
  MeanVector mean{0.0, 0.0};
  int iters = 4;
  std::string map = "f";  // f | g

  // contraction
  double delta = 0.25;
  int radius = 8;
  std::string function = "all";  // boxes | gaussians | zero | all
  int64_t n_embed = 0;

  std::string out_dir;
  bool json = false;
};

int cmd_walk(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_circuit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_moments(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_contraction(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parse argv (CLI11), validate, and dispatch. Usage errors, including an even
/// N, return kExitUsage before any computation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmargulis::cli

#endif  // QMARGULIS_TOOLS_COMMANDS_H_
