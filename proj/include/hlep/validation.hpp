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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hlep/liouvillian.hpp"

namespace hlep {

using SuperoperatorBuilder = std::function<Superoperator(const SystemParams&)>;

struct ValidationOptions {
  /// Seed for the random-input checks only.
  std::uint64_t seed = 20260101;
  int random_samples = 1000;
  double rank_tol = 1e-8;
  int atlas_samples = 100;
  int steps_per_unit_time = 1000;
  bool include_evolution = true;
  /// Matrix-form generator under test; defaults to build_hybrid_liouvillian.
  SuperoperatorBuilder builder;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  const SuiteResult* find(const std::string& name) const;
};

/// Runs the invariant suites:
///   liouvillian-two-path   matrix form vs operator form, trace law
///   spectral-consistency   char_poly at eigenvalues, closed form, conjugation
///   atlas-cross-validation closed-form branches vs Jordan classification
///   evolution-conservation Hermiticity, positivity, trace, relaxation
ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace hlep
