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

#include "qmargulis/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qmargulis/errors.h"

namespace qmargulis {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

std::vector<std::string> data_lines(std::string_view text, std::string_view header) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> lines;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      if (line != header) {
        throw PreconditionError("expected CSV header '" + std::string(header) + "', got '" +
                                line + "'");
      }
      first = false;
      continue;
    }
    lines.push_back(line);
  }
  if (first) throw PreconditionError("CSV input is empty");
  return lines;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string grid_to_csv(const GridDist& grid) {
  std::string out = "p,q,value\n";
  const int64_t n = grid.modulus();
  for (int64_t q = 0; q < n; ++q) {
    for (int64_t p = 0; p < n; ++p) {
      out += std::to_string(p) + "," + std::to_string(q) + "," + format_double(grid(p, q)) + "\n";
    }
  }
  return out;
}

GridDist grid_from_csv(std::string_view text) {
  const auto lines = data_lines(text, "p,q,value");
  const auto n = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(lines.size()))));
  if (n * n != static_cast<int64_t>(lines.size())) {
    throw PreconditionError("grid CSV does not hold N^2 rows");
  }
  GridDist grid(n);
  for (const auto& line : lines) {
    const auto f = split(line, ',');
    if (f.size() != 3) throw PreconditionError("grid CSV row needs 3 fields: " + line);
    const int64_t p = std::stoll(f[0]);
    const int64_t q = std::stoll(f[1]);
    if (p < 0 || p >= n || q < 0 || q >= n) throw PreconditionError("grid CSV index out of range");
    grid(p, q) = std::stod(f[2]);
  }
  return grid;
}

std::string grid_to_pgm(const GridDist& grid, std::optional<PgmScale> scale) {
  const int64_t n = grid.modulus();
  double lo, hi;
  if (scale) {
    lo = scale->min;
    hi = scale->max;
  } else {
    const auto [mn, mx] = std::minmax_element(grid.values().begin(), grid.values().end());
    lo = *mn;
    hi = *mx;
  }
  std::ostringstream out;
  out << "P2\n" << n << ' ' << n << "\n255\n";
  for (int64_t q = 0; q < n; ++q) {
    for (int64_t p = 0; p < n; ++p) {
      int level = 0;
      if (hi > lo) {
        const double t = std::clamp((grid(p, q) - lo) / (hi - lo), 0.0, 1.0);
        level = static_cast<int>(std::lround(255.0 * t));
      }
      out << level << (p + 1 < n ? ' ' : '\n');
    }
  }
  return out.str();
}

std::string operator_to_json(const CMatrix& op) {
  auto write_part = [&](bool imag) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < op.rows(); ++i) {
      s += i == 0 ? "[" : ",[";
      for (Eigen::Index j = 0; j < op.cols(); ++j) {
        if (j > 0) s += ",";
        s += format_double(imag ? op(i, j).imag() : op(i, j).real());
      }
      s += "]";
    }
    return s + "]";
  };
  return "{\"dim\":" + std::to_string(op.rows()) + ",\"re\":" + write_part(false) +
         ",\"im\":" + write_part(true) + "}\n";
}

CMatrix operator_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const int dim = j.at("dim").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (dim < 0 || re.size() != static_cast<std::size_t>(dim) ||
        im.size() != static_cast<std::size_t>(dim)) {
      throw DimensionError("operator JSON: re/im must have dim rows");
    }
    CMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
      if (re[r].size() != static_cast<std::size_t>(dim) ||
          im[r].size() != static_cast<std::size_t>(dim)) {
        throw DimensionError("operator JSON: ragged row");
      }
      for (int c = 0; c < dim; ++c) m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed operator JSON: ") + e.what());
  }
}

std::string spectrum_to_csv(const std::vector<SpectrumRow>& rows) {
  std::string out = "N,kind,index,eigenvalue\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + r.kind + "," + std::to_string(r.index) + "," +
           format_double(r.eigenvalue) + "\n";
  }
  return out;
}

std::string lambda_to_csv(const std::vector<LambdaRow>& rows) {
  std::string out = "N,kind,lambda,bound\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + r.kind + "," + format_double(r.lambda) + "," +
           format_double(r.bound) + "\n";
  }
  return out;
}

std::vector<LambdaRow> lambda_from_csv(std::string_view text) {
  std::vector<LambdaRow> rows;
  for (const auto& line : data_lines(text, "N,kind,lambda,bound")) {
    const auto f = split(line, ',');
    if (f.size() != 4) throw PreconditionError("lambda CSV row needs 4 fields: " + line);
    rows.push_back({std::stoll(f[0]), f[1], std::stod(f[2]), std::stod(f[3])});
  }
  return rows;
}

std::string moments_to_csv(const std::vector<MomentRow>& rows) {
  std::string out = "n,a,b,c,mean_x,mean_p,trace,det\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + format_double(r.gamma.a) + "," +
           format_double(r.gamma.b) + "," + format_double(r.gamma.c) + "," +
           format_double(r.mean.x) + "," + format_double(r.mean.p) + "," +
           format_double(r.gamma.trace()) + "," + format_double(r.gamma.det()) + "\n";
  }
  return out;
}

std::string contraction_to_json(const ContractionReport& r) {
  return "{\"delta\":" + format_double(r.delta) + ",\"R\":" + std::to_string(r.radius) +
         ",\"N_embed\":" + std::to_string(r.n_embed) + ",\"norm_in\":" +
         format_double(r.norm_in) + ",\"norm_out\":" + format_double(r.norm_out) +
         ",\"ratio\":" + format_double(r.ratio) + ",\"bound\":" + format_double(r.bound) +
         "}\n";
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qmargulis
