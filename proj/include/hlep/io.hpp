// Copyright 2026 The hlep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hlep/ep_atlas.hpp"
#include "hlep/evolution.hpp"

namespace hlep {

/// Twelve significant digits, "nan"/"inf" for non-finite values.
std::string format_number(double v);

struct AtlasRow {
  std::string branch;
  double alpha = 0.0;
  double theta = 0.0;
  double q = 0.0;
  cplx lambda;
  int order = 0;
  std::string classification;
};

/// Classifies the hybrid-Liouvillian at a closed-form point and reports its
/// highest-order degenerate cluster.
AtlasRow atlas_row(const AtlasPoint& p, double rank_tol = 1e-8);
AtlasRow atlas_row(const DegeneracyRecord& r, const std::string& branch);

/// Header plus one row per point; nothing at all when `rows` is empty.
void write_atlas_csv(std::ostream& os, const std::vector<AtlasRow>& rows);
void write_atlas_json(std::ostream& os, const std::vector<AtlasRow>& rows);

/// Rows carrying an error have the marker ERROR in F_normalized, F_raw, P.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_sweep_json(std::ostream& os, const std::vector<SweepRow>& rows);

struct EvolveSummary {
  SweepRow metrics;
  Mat2 final_state;
  StepDiagnostics diagnostics;
};

void write_evolve_csv(std::ostream& os, const EvolveSummary& s);
void write_evolve_json(std::ostream& os, const EvolveSummary& s);

void write_history_csv(std::ostream& os, const std::vector<HistoryRow>& rows);
void write_history_json(std::ostream& os, const std::vector<HistoryRow>& rows);

}  // namespace hlep
