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

// Text formats. Floating-point values are always written with 17 significant
// digits so identical runs give byte-identical files.

#ifndef QMARGULIS_IO_H_
#define QMARGULIS_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmargulis/classical_walk.h"
#include "qmargulis/continuous.h"
#include "qmargulis/linalg.h"

namespace qmargulis {

/// "%.17g"
std::string format_double(double value);

/// Header `p,q,value`, one row per cell, q-major (for q: for p:).
std::string grid_to_csv(const GridDist& grid);
GridDist grid_from_csv(std::string_view text);

/// Fixed intensity range for PGM export; when absent, each frame is scaled
/// by its own min/max.
struct PgmScale {
  double min = 0.0;
  double max = 1.0;
};

/// Plain (P2) PGM, width = height = N, maxval 255. Pixel (column p, row q)
/// holds round(255 (v - min) / (max - min)); a flat frame is all zeros.
std::string grid_to_pgm(const GridDist& grid, std::optional<PgmScale> scale = std::nullopt);

/// {"dim": N, "re": [[...]], "im": [[...]]}, row-major.
std::string operator_to_json(const CMatrix& op);
CMatrix operator_from_json(std::string_view text);

struct SpectrumRow {
  int64_t n = 0;
  std::string kind;  // "classical" or "quantum"
  int64_t index = 0;
  double eigenvalue = 0.0;
};
/// Header `N,kind,index,eigenvalue`.
std::string spectrum_to_csv(const std::vector<SpectrumRow>& rows);

struct LambdaRow {
  int64_t n = 0;
  std::string kind;
  double lambda = 0.0;
  double bound = 0.0;
};
/// Header `N,kind,lambda,bound`.
std::string lambda_to_csv(const std::vector<LambdaRow>& rows);
std::vector<LambdaRow> lambda_from_csv(std::string_view text);

struct MomentRow {
  int n = 0;
  CovMatrix gamma;
  MeanVector mean;
};
/// Header `n,a,b,c,mean_x,mean_p,trace,det`.
std::string moments_to_csv(const std::vector<MomentRow>& rows);

/// {delta, R, N_embed, norm_in, norm_out, ratio, bound}
std::string contraction_to_json(const ContractionReport& report);

void write_file(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace qmargulis

#endif  // QMARGULIS_IO_H_
