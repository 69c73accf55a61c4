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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmargulis/circuit_synth.h"
#include "qmargulis/classical_walk.h"
#include "qmargulis/errors.h"
#include "qmargulis/io.h"
#include "qmargulis/phase_space.h"
#include "qmargulis/quantum_channel.h"

namespace qmargulis::cli {

namespace fs = std::filesystem;

namespace {

std::string output_dir(const RunConfig& config) {
  if (!config.out_dir.empty()) return config.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return ".";
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

// Deviation records for verify.
struct Check {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_deviation <= tolerance; }
};

// N = d^n with the smallest odd d >= 3.
std::pair<int, int> qudit_split(int64_t n) {
  for (int64_t d = 3; d <= n; d += 2) {
    int64_t power = d;
    int k = 1;
    while (power < n) {
      power *= d;
      ++k;
    }
    if (power == n) return {static_cast<int>(d), k};
  }
  return {static_cast<int>(n), 1};
}

}  // namespace

// ---------------------------------------------------------------------------
// walk

int cmd_walk(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const int64_t n = config.n;
  const fs::path dir = prepare_dir(output_dir(config));

  std::vector<GridDist> frames;
  frames.push_back(GridDist::delta(n, LatticePoint(config.start_p, config.start_q, n)));
  if (config.quantum) {
    // Same sequence obtained by running the channel on the operator whose
    // Wigner table is the starting delta, then reading the table back.
    const PhaseSpaceContext ctx(n);
    const KrausChannel channel = margulis_channel(ctx);
    DenseOperator rho = inverse_wigner(ctx, {frames.front()});
    for (int k = 1; k <= config.steps; ++k) {
      rho = apply_channel(channel, rho);
      rho = (rho + rho.adjoint()).eval() * 0.5;
      frames.push_back(wigner(ctx, rho).values);
    }
  } else {
    for (int k = 1; k <= config.steps; ++k) frames.push_back(walk_step(frames.back()));
  }

  std::optional<PgmScale> scale;
  if (config.fixed_scale) {
    PgmScale s{frames.front().values().front(), frames.front().values().front()};
    for (const auto& f : frames) {
      for (double v : f.values()) {
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
      }
    }
    scale = s;
  }

  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const std::string stem = "step_" + std::to_string(k);
    write_file((dir / (stem + ".csv")).string(), grid_to_csv(frames[k]));
    write_file((dir / (stem + ".pgm")).string(), grid_to_pgm(frames[k], scale));
    std::size_t nonzero = 0;
    for (double v : frames[k].values()) nonzero += std::abs(v) > 1e-15 ? 1 : 0;
    if (config.json) {
      summary.push_back({{"step", k}, {"nonzero", nonzero}, {"total", frames[k].total()},
                         {"csv", (dir / (stem + ".csv")).string()},
                         {"pgm", (dir / (stem + ".pgm")).string()}});
    } else {
      out << "step " << k << ": " << nonzero << " nonzero cells, total "
          << format_double(frames[k].total()) << " -> " << (dir / (stem + ".pgm")).string()
          << "\n";
    }
  }
  if (config.json) out << summary.dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// spectrum

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const bool want_classical = config.mode == "classical" || config.mode == "both";
  const bool want_quantum = config.mode == "quantum" || config.mode == "both";
  const int64_t classical_cap = config.override_cap ? INT64_MAX : kDefaultWalkMatrixCap;
  const int64_t quantum_cap = config.override_cap ? INT64_MAX : kDefaultSuperoperatorCap;

  for (int64_t n : config.n_list) {
    if ((want_classical && n > classical_cap) || (want_quantum && n > quantum_cap)) {
      err << "spectrum: N=" << n << " exceeds the size cap; pass --override-cap\n";
      return kExitUsage;
    }
  }

  std::vector<SpectrumRow> spectrum_rows;
  std::vector<LambdaRow> lambda_rows;
  for (int64_t n : config.n_list) {
    if (want_classical) {
      const SpectralReport report = spectral_report(walk_matrix(n, classical_cap), n);
      for (std::size_t i = 0; i < report.spectrum.size(); ++i) {
        spectrum_rows.push_back({n, "classical", static_cast<int64_t>(i), report.spectrum[i]});
      }
      lambda_rows.push_back({n, "classical", report.lambda, kGabberGalilBound});
    }
    if (want_quantum) {
      const KrausChannel channel = margulis_channel(PhaseSpaceContext(n));
      const auto spectrum = superoperator_spectrum(channel, quantum_cap);
      for (std::size_t i = 0; i < spectrum.size(); ++i) {
        spectrum_rows.push_back({n, "quantum", static_cast<int64_t>(i), spectrum[i]});
      }
      lambda_rows.push_back({n, "quantum", expander_lambda(channel, quantum_cap), kGabberGalilBound});
    }
  }

  const fs::path dir = prepare_dir(output_dir(config));
  write_file((dir / "spectrum.csv").string(), spectrum_to_csv(spectrum_rows));
  write_file((dir / "lambda.csv").string(), lambda_to_csv(lambda_rows));

  bool all_within = true;
  for (const auto& r : lambda_rows) all_within = all_within && r.lambda <= r.bound + 1e-6;

  if (config.json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : lambda_rows) {
      j.push_back({{"N", r.n}, {"kind", r.kind}, {"lambda", r.lambda}, {"bound", r.bound}});
    }
    out << j.dump() << "\n";
  } else {
    out << lambda_to_csv(lambda_rows);
  }
  return all_within ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const int64_t n = config.n;
  const PhaseSpaceContext ctx(n);
  Rng rng(config.seed);
  std::uniform_int_distribution<int64_t> coord(0, n - 1);
  std::vector<Check> checks;
  auto add = [&](std::string name, double dev) {
    checks.push_back({std::move(name), dev, config.tol});
  };

  const auto basis = phase_point_basis(ctx);
  const GridDist shape(n);
  auto a_at = [&](const LatticePoint& v) -> const DenseOperator& {
    return basis[shape.index(v.p, v.q)];
  };

  {
    double dev = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Complex ip = basis[i].cwiseProduct(basis[j].transpose()).sum() / static_cast<double>(n);
        dev = std::max(dev, std::abs(ip - Complex(i == j ? 1.0 : 0.0, 0.0)));
      }
    }
    add("orthonormality", dev);
  }
  {
    double dev = 0.0;
    for (const auto& t : margulis_generators(n)) {
      const DenseOperator u = affine_unitary(ctx, t);
      for (int64_t p = 0; p < n; ++p) {
        for (int64_t q = 0; q < n; ++q) {
          const LatticePoint v(p, q, n);
          dev = std::max(dev, (u * a_at(v) * u.adjoint() - a_at(t(v))).norm());
        }
      }
    }
    add("covariance", dev);
  }
  {
    double translation = 0.0, composition = 0.0;
    for (int k = 0; k < 50; ++k) {
      const LatticePoint a(coord(rng), coord(rng), n), b(coord(rng), coord(rng), n);
      const DenseOperator wa = weyl(ctx, a.p, a.q);
      const LatticePoint sum(a.p + b.p, a.q + b.q, n);
      translation = std::max(translation, (wa * a_at(b) * wa.adjoint() - a_at(sum)).norm());
      const Complex phase = ctx.omega_pow(ctx.inv2() * (a.p * b.q - b.p * a.q));
      composition = std::max(
          composition, (wa * weyl(ctx, b.p, b.q) - phase * weyl(ctx, sum.p, sum.q)).norm());
    }
    add("weyl_translation", translation);
    add("weyl_composition", composition);
  }
  {
    const Observation1Report report = verify_observation1(ctx, config.trials, rng);
    add("intertwining", report.max_wigner_deviation);
    add("eigen_operators", report.max_eigenoperator_deviation);
    add("fixed_point", report.fixed_point_deviation);
  }
  if (n <= kDefaultSuperoperatorCap) {
    const auto quantum = superoperator_spectrum(margulis_channel(ctx));
    const auto classical = spectral_report(walk_matrix(n), n).spectrum;
    double dev = 0.0;
    for (std::size_t i = 0; i < classical.size(); ++i) {
      dev = std::max(dev, std::abs(quantum[i] - classical[i]));
    }
    add("spectrum_equality", dev);
  }
  {
    const auto [d, qudits] = qudit_split(n);
    double dev = 0.0;
    for (const auto& t : margulis_generators(n)) {
      const PhaseMatch m = equal_up_to_phase(evaluate(affine_circuit(d, qudits, t)),
                                             affine_unitary(ctx, t));
      dev = std::max(dev, std::abs(m.overlap - static_cast<double>(n)));
    }
    add("circuit_equivalence", dev);
  }

  // Operator goldens.
  std::vector<std::pair<std::string, DenseOperator>> goldens = {
      {"fourier", fourier(ctx)},
      {"parity", parity(ctx)},
      {"u_plus", quadratic_phase(ctx, Sign::kPlus)},
      {"weyl_1_0", weyl(ctx, 1, 0)},
      {"weyl_0_1", weyl(ctx, 0, 1)},
  };
  const auto gens = margulis_generators(n);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    goldens.emplace_back("u_" + std::string(kGeneratorNames[i]), affine_unitary(ctx, gens[i]));
  }
  if (!config.dump_dir.empty()) {
    const fs::path dir = prepare_dir(config.dump_dir);
    for (const auto& [name, op] : goldens) {
      write_file((dir / ("N" + std::to_string(n) + "_" + name + ".json")).string(),
                 operator_to_json(op));
    }
  }
  if (!config.golden_dir.empty()) {
    for (const auto& [name, op] : goldens) {
      const fs::path path = fs::path(config.golden_dir) / ("N" + std::to_string(n) + "_" + name + ".json");
      double dev = std::numeric_limits<double>::infinity();
      if (fs::exists(path)) {
        const CMatrix golden = operator_from_json(read_file(path.string()));
        if (golden.rows() == op.rows()) dev = max_abs_diff(golden, op);
      }
      add("golden_" + name, dev);
    }
  }

  const bool all_passed =
      std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });

  nlohmann::ordered_json report;
  report["N"] = n;
  report["seed"] = config.seed;
  report["tol"] = config.tol;
  report["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    report["checks"].push_back({{"name", c.name},
                                {"max_deviation", c.max_deviation},
                                {"tolerance", c.tolerance},
                                {"passed", c.passed()}});
  }
  report["passed"] = all_passed;

  if (!config.out_dir.empty() || std::getenv(kOutDirEnv) != nullptr) {
    const fs::path dir = prepare_dir(output_dir(config));
    write_file((dir / "verify_report.json").string(), report.dump(2) + "\n");
  }

  if (config.json) {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& c : checks) {
      out << (c.passed() ? "PASS " : "FAIL ") << c.name << "  max deviation "
          << format_double(c.max_deviation) << " (tol " << format_double(c.tolerance) << ")\n";
    }
    out << (all_passed ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return all_passed ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// circuit

int cmd_circuit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int64_t big_n = qudit_dimension(config.d, config.qudits);
  const PhaseSpaceContext ctx(big_n);

  GateList list;
  DenseOperator dense;
  if (config.transform == "F") {
    list = qft_circuit(config.d, config.qudits);
    dense = fourier(ctx);
  } else if (config.transform == "Uplus" || config.transform == "Uminus") {
    const Sign sign = config.transform == "Uplus" ? Sign::kPlus : Sign::kMinus;
    list = quadratic_circuit(config.d, config.qudits, sign, config.keep_trivial);
    dense = quadratic_phase(ctx, sign);
  } else {
    const AffineMap map = margulis_generator(big_n, config.transform);
    list = affine_circuit(config.d, config.qudits, map, config.keep_trivial);
    dense = affine_unitary(ctx, map);
  }
  list.transform = config.transform;

  const std::string text = to_json_lines(list);
  if (!config.out_file.empty()) {
    write_file(config.out_file, text);
  } else {
    out << text;
  }
  if (!config.check) return kExitOk;

  const PhaseMatch m = equal_up_to_phase(evaluate(list), dense);
  if (config.json) {
    nlohmann::ordered_json j;
    j["equal_up_to_phase"] = m.equal;
    j["overlap"] = m.overlap;
    j["dim"] = big_n;
    j["gates"] = list.gates.size();
    out << j.dump() << "\n";
  } else {
    out << "equal up to phase: " << (m.equal ? "true" : "false") << "\n";
  }
  if (!m.equal) err << "circuit does not match the dense unitary\n";
  return m.equal ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// moments

int cmd_moments(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  std::vector<MomentRow> rows;
  CovMatrix gamma = config.gamma;
  MeanVector mean = config.mean;
  rows.push_back({0, gamma, mean});
  for (int k = 1; k <= config.iters; ++k) {
    if (config.map == "g") {
      gamma = g_map(gamma);
    } else {
      const Moments next = f_map(gamma, mean);
      gamma = next.gamma;
      mean = next.mean;
    }
    rows.push_back({k, gamma, mean});
  }
  const std::string csv = moments_to_csv(rows);
  if (!config.out_file.empty()) write_file(config.out_file, csv);
  out << csv;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// contraction

int cmd_contraction(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  std::vector<TestFunction> functions;
  if (config.function == "all") {
    functions = {TestFunction::kBoxes, TestFunction::kGaussians};
  } else {
    functions = {parse_test_function(config.function)};
  }
  bool ok = true;
  std::string body;
  for (TestFunction fn : functions) {
    const ContractionReport report =
        contraction_check(discretize(fn, config.delta, config.radius), config.n_embed);
    ok = ok && report.within_bound;
    std::string line = contraction_to_json(report);
    if (config.json || functions.size() > 1) {
      line = "{\"function\":\"" + std::string(test_function_name(fn)) + "\"," + line.substr(1);
    }
    body += line;
  }
  if (!config.out_file.empty()) write_file(config.out_file, body);
  out << body;
  return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// argument parsing

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    if constexpr (std::is_integral_v<T>) {
      out.push_back(static_cast<T>(std::stoll(item, &used)));
    } else {
      out.push_back(static_cast<T>(std::stod(item, &used)));
    }
    if (used != item.size()) throw std::invalid_argument("bad list element '" + item + "'");
  }
  return out;
}

void validate(RunConfig& c) {
  const auto& s = c.subcommand;
  if (s == "walk" || s == "verify") require_odd_modulus(c.n);
  if (s == "walk") {
    if (c.steps < 0) throw std::invalid_argument("--steps must be >= 0");
  }
  if (s == "spectrum") {
    if (c.n_list.empty()) throw std::invalid_argument("--N-list is empty");
    for (int64_t n : c.n_list) require_odd_modulus(n);
    if (c.mode != "classical" && c.mode != "quantum" && c.mode != "both") {
      throw std::invalid_argument("--mode must be classical, quantum or both");
    }
  }
  if (s == "verify" && (c.trials < 0 || !(c.tol >= 0.0))) {
    throw std::invalid_argument("--trials and --tol must be non-negative");
  }
  if (s == "circuit") qudit_dimension(c.d, c.qudits);
  if (s == "moments") {
    if (c.iters < 0) throw std::invalid_argument("--iters must be >= 0");
    if (c.map != "f" && c.map != "g") throw std::invalid_argument("--map must be f or g");
  }
  if (s == "contraction") {
    if (!(c.delta > 0.0)) throw std::invalid_argument("--delta must be positive");
    if (c.radius < 1) throw std::invalid_argument("--radius must be >= 1");
    std::vector<TestFunction> fns = {TestFunction::kBoxes, TestFunction::kGaussians};
    if (c.function != "all") fns = {parse_test_function(c.function)};
    for (TestFunction fn : fns) {
      if (test_function_support(fn) > c.radius * c.delta) {
        throw std::invalid_argument("support of '" + std::string(test_function_name(fn)) +
                                    "' does not fit inside R * delta; raise --radius");
      }
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Quantum Margulis expander toolkit", "qmargulis"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out-dir", config.out_dir,
                 std::string("Output directory (default $") + kOutDirEnv + " or .)");
  app.add_flag("--json", config.json, "Machine-readable output");

  auto* walk = app.add_subcommand("walk", "Iterate the classical walk from a delta and write heatmaps");
  walk->add_option("--N", config.n, "Odd lattice size");
  walk->add_option("--steps", config.steps, "Number of walk steps");
  walk->add_option("--start-p", config.start_p);
  walk->add_option("--start-q", config.start_q);
  walk->add_flag("--fixed-scale", config.fixed_scale, "Share one intensity scale across frames");
  walk->add_flag("--quantum", config.quantum, "Propagate through the quantum channel instead");

  std::string n_list_text;
  auto* spectrum = app.add_subcommand("spectrum", "Classical and quantum spectra per N");
  spectrum->add_option("--N-list", n_list_text, "Comma-separated odd N values");
  spectrum->add_option("--mode", config.mode, "classical | quantum | both");
  spectrum->add_flag("--override-cap", config.override_cap, "Lift the matrix size caps");

  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--N", config.n);
  verify->add_option("--seed", config.seed);
  verify->add_option("--tol", config.tol);
  verify->add_option("--trials", config.trials);
  verify->add_option("--dump", config.dump_dir, "Write operator JSON files here");
  verify->add_option("--golden", config.golden_dir, "Compare against operator JSON files here");

  auto* circuit = app.add_subcommand("circuit", "Synthesize a qudit circuit for one unitary");
  circuit->add_option("--d", config.d, "Odd qudit dimension");
  circuit->add_option("--qudits", config.qudits, "Number of qudits");
  circuit->add_option("--transform", config.transform, "T1..T4, T1inv..T4inv, F, Uplus, Uminus");
  circuit->add_flag("--check", config.check, "Compare against the dense matrix");
  circuit->add_flag("--keep-trivial", config.keep_trivial, "Emit identity R(l,l') gates too");
  circuit->add_option("--out", config.out_file, "Write gate list here instead of stdout");

  std::string gamma_text, mean_text;
  auto* moments = app.add_subcommand("moments", "Iterate first and second moments");
  moments->add_option("--gamma", gamma_text, "a,b,c of [[a,b],[b,c]]");
  moments->add_option("--mean", mean_text, "x,p");
  moments->add_option("--iters", config.iters);
  moments->add_option("--map", config.map, "f (full) or g (covariance only)");
  moments->add_option("--out", config.out_file);

  auto* contraction = app.add_subcommand("contraction", "Discretized contraction demo");
  contraction->add_option("--delta", config.delta);
  contraction->add_option("--radius", config.radius);
  contraction->add_option("--function", config.function, "boxes | gaussians | zero | all");
  contraction->add_option("--n-embed", config.n_embed, "Embedding lattice size (0 = automatic)");
  contraction->add_option("--out", config.out_file);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    config.subcommand = app.get_subcommands().front()->get_name();
    if (!n_list_text.empty()) config.n_list = parse_list<int64_t>(n_list_text);
    if (!gamma_text.empty()) {
      const auto g = parse_list<double>(gamma_text);
      if (g.size() != 3) throw std::invalid_argument("--gamma needs a,b,c");
      config.gamma = {g[0], g[1], g[2]};
    }
    if (!mean_text.empty()) {
      const auto m = parse_list<double>(mean_text);
      if (m.size() != 2) throw std::invalid_argument("--mean needs x,p");
      config.mean = {m[0], m[1]};
    }
    validate(config);
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const auto& s = config.subcommand;
    if (s == "walk") return cmd_walk(config, out, err);
    if (s == "spectrum") return cmd_spectrum(config, out, err);
    if (s == "verify") return cmd_verify(config, out, err);
    if (s == "circuit") return cmd_circuit(config, out, err);
    if (s == "moments") return cmd_moments(config, out, err);
    if (s == "contraction") return cmd_contraction(config, out, err);
  } catch (const UnsupportedError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace qmargulis::cli
