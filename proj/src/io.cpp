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

#include "hlep/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace hlep {

namespace {

using nlohmann::ordered_json;

constexpr const char* kErrorMarker = "ERROR";

// JSON numbers carry the same digits as the CSV cell.
ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

void join(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

void emit(std::ostream& os, const ordered_json& j) { os << j.dump(2) << '\n'; }

const std::vector<std::string> kAtlasColumns = {
    "branch", "alpha",  "theta", "q", "re_lambda", "im_lambda",
    "order",  "classification"};

const std::vector<std::string> kSweepColumns = {
    "kind", "q0", "chi", "T", "F_normalized", "F_raw", "P"};

const std::vector<std::string> kEvolveColumns = {
    "kind",      "q0",        "chi",       "T",
    "F_normalized", "F_raw",  "P",         "rho_uu",
    "re_rho_ud", "im_rho_ud", "rho_dd",    "steps",
    "max_hermiticity_deviation", "min_state_eigenvalue", "max_local_error"};

const std::vector<std::string> kHistoryColumns = {
    "t", "trace", "rho_uu", "re_rho_ud", "im_rho_ud", "rho_dd"};

std::vector<std::string> sweep_cells(const SweepRow& r) {
  const bool failed = !r.error.empty();
  auto metric = [&](double v) {
    return failed ? std::string(kErrorMarker) : format_number(v);
  };
  return {to_string(r.kind),
          format_number(r.q0),
          std::to_string(static_cast<int>(r.chi)),
          format_number(r.total_time),
          metric(r.f_normalized),
          metric(r.f_raw),
          metric(r.probability)};
}

ordered_json sweep_object(const SweepRow& r) {
  const bool failed = !r.error.empty();
  auto metric = [&](double v) {
    return failed ? ordered_json(kErrorMarker) : number(v);
  };
  ordered_json j;
  j["kind"] = to_string(r.kind);
  j["q0"] = number(r.q0);
  j["chi"] = static_cast<int>(r.chi);
  j["T"] = number(r.total_time);
  j["F_normalized"] = metric(r.f_normalized);
  j["F_raw"] = metric(r.f_raw);
  j["P"] = metric(r.probability);
  return j;
}

std::vector<std::string> evolve_cells(const EvolveSummary& s) {
  auto cells = sweep_cells(s.metrics);
  const Mat2& m = s.final_state;
  for (double v : {m(0, 0).real(), m(0, 1).real(), m(0, 1).imag(), m(1, 1).real()}) {
    cells.push_back(format_number(v));
  }
  cells.push_back(std::to_string(s.diagnostics.steps));
  cells.push_back(format_number(s.diagnostics.max_hermiticity_deviation));
  cells.push_back(format_number(s.diagnostics.min_state_eigenvalue));
  cells.push_back(format_number(s.diagnostics.max_local_error));
  return cells;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

AtlasRow atlas_row(const AtlasPoint& p, double rank_tol) {
  AtlasRow row{to_string(p.branch), p.alpha, p.theta, p.q,
               cplx(std::numeric_limits<double>::quiet_NaN(), 0.0), 1, "none"};
  const auto records = classify_degeneracy(
      SystemParams::from_alpha(p.alpha, p.theta, p.q), 0.0, rank_tol);
  if (records.empty()) return row;
  const auto it = std::max_element(
      records.begin(), records.end(),
      [](const auto& a, const auto& b) { return a.order < b.order; });
  row.lambda = it->eigenvalue;
  row.order = it->order;
  row.classification = classification_label(*it);
  return row;
}

AtlasRow atlas_row(const DegeneracyRecord& r, const std::string& branch) {
  return AtlasRow{branch,      r.alpha,  r.theta, r.q, r.eigenvalue,
                  r.order,     classification_label(r)};
}

void write_atlas_csv(std::ostream& os, const std::vector<AtlasRow>& rows) {
  if (rows.empty()) return;
  join(os, kAtlasColumns);
  for (const auto& r : rows) {
    join(os, {r.branch, format_number(r.alpha), format_number(r.theta),
              format_number(r.q), format_number(r.lambda.real()),
              format_number(r.lambda.imag()), std::to_string(r.order),
              r.classification});
  }
}

void write_atlas_json(std::ostream& os, const std::vector<AtlasRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["branch"] = r.branch;
    j["alpha"] = number(r.alpha);
    j["theta"] = number(r.theta);
    j["q"] = number(r.q);
    j["re_lambda"] = number(r.lambda.real());
    j["im_lambda"] = number(r.lambda.imag());
    j["order"] = r.order;
    j["classification"] = r.classification;
    arr.push_back(std::move(j));
  }
  emit(os, arr);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  join(os, kSweepColumns);
  for (const auto& r : rows) join(os, sweep_cells(r));
}

void write_sweep_json(std::ostream& os, const std::vector<SweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back(sweep_object(r));
  emit(os, arr);
}

void write_evolve_csv(std::ostream& os, const EvolveSummary& s) {
  join(os, kEvolveColumns);
  join(os, evolve_cells(s));
}

void write_evolve_json(std::ostream& os, const EvolveSummary& s) {
  ordered_json j = sweep_object(s.metrics);
  const Mat2& m = s.final_state;
  j["rho_uu"] = number(m(0, 0).real());
  j["re_rho_ud"] = number(m(0, 1).real());
  j["im_rho_ud"] = number(m(0, 1).imag());
  j["rho_dd"] = number(m(1, 1).real());
  j["steps"] = s.diagnostics.steps;
  j["max_hermiticity_deviation"] = number(s.diagnostics.max_hermiticity_deviation);
  j["min_state_eigenvalue"] = number(s.diagnostics.min_state_eigenvalue);
  j["max_local_error"] = number(s.diagnostics.max_local_error);
  emit(os, ordered_json::array({j}));
}

void write_history_csv(std::ostream& os, const std::vector<HistoryRow>& rows) {
  join(os, kHistoryColumns);
  for (const auto& r : rows) {
    join(os, {format_number(r.t), format_number(r.trace), format_number(r.rho_uu),
              format_number(r.rho_ud.real()), format_number(r.rho_ud.imag()),
              format_number(r.rho_dd)});
  }
}

void write_history_json(std::ostream& os, const std::vector<HistoryRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["t"] = number(r.t);
    j["trace"] = number(r.trace);
    j["rho_uu"] = number(r.rho_uu);
    j["re_rho_ud"] = number(r.rho_ud.real());
    j["im_rho_ud"] = number(r.rho_ud.imag());
    j["rho_dd"] = number(r.rho_dd);
    arr.push_back(std::move(j));
  }
  emit(os, arr);
}

}  // namespace hlep
