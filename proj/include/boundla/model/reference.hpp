//  Copyright 2026 The boundla Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "boundla/model/simulate.hpp"

namespace boundla::model {

// Published success rates (percent) for n = 1000 and 1000 runs. They are
// reproduction targets: measured rates are reported next to them, never
// asserted against them.
struct ReferenceRate {
  const char* table;
  InitialKind initial;
  std::size_t f;
  double p_f;
  std::size_t k;
  double percent;
};

inline constexpr std::size_t kReferenceN = 1000;
inline constexpr std::size_t kReferenceRuns = 1000;
inline constexpr double kReferenceTolerancePoints = 5.0;

inline constexpr std::array<ReferenceRate, 22> kReferenceRates{{
    {"random-input", InitialKind::kRandomUniform, 200, 0.06, 2, 17.1},
    {"random-input", InitialKind::kRandomUniform, 200, 0.06, 3, 90.3},
    {"random-input", InitialKind::kRandomUniform, 200, 0.06, 4, 99.9},
    {"random-input", InitialKind::kRandomUniform, 800, 0.06, 2, 16.8},
    {"random-input", InitialKind::kRandomUniform, 800, 0.06, 3, 89.6},
    {"random-input", InitialKind::kRandomUniform, 800, 0.06, 4, 99.3},
    {"worst-case", InitialKind::kWorstCase, 200, 0.06, 2, 0.0},
    {"worst-case", InitialKind::kWorstCase, 200, 0.06, 3, 41.3},
    {"worst-case", InitialKind::kWorstCase, 200, 0.06, 4, 97.6},
    {"worst-case", InitialKind::kWorstCase, 200, 0.06, 5, 100.0},
    {"worst-case", InitialKind::kWorstCase, 800, 0.06, 2, 0.0},
    {"worst-case", InitialKind::kWorstCase, 800, 0.06, 3, 5.4},
    {"worst-case", InitialKind::kWorstCase, 800, 0.06, 4, 84.0},
    {"worst-case", InitialKind::kWorstCase, 800, 0.06, 5, 98.9},
    {"pf-sweep", InitialKind::kWorstCase, 800, 0.5, 2, 0.0},
    {"pf-sweep", InitialKind::kWorstCase, 800, 0.6, 2, 0.0},
    {"pf-sweep", InitialKind::kWorstCase, 800, 0.7, 2, 0.0},
    {"pf-sweep", InitialKind::kWorstCase, 800, 0.8, 2, 0.0},
    {"pf-sweep", InitialKind::kWorstCase, 800, 0.5, 3, 100.0},
    {"pf-sweep", InitialKind::kWorstCase, 800, 0.6, 3, 100.0},
    {"pf-sweep", InitialKind::kWorstCase, 800, 0.7, 3, 100.0},
    {"pf-sweep", InitialKind::kWorstCase, 800, 0.8, 3, 100.0},
}};

inline std::vector<ReferenceRate> reference_rates(const std::string& table = "") {
  std::vector<ReferenceRate> out;
  for (const auto& r : kReferenceRates) {
    if (table.empty() || table == r.table) out.push_back(r);
  }
  return out;
}

// The series needed to regenerate a reference table under one sampling
// variant: one series per (f, p_f, initial), each covering its k values.
inline std::vector<SweepSeries> reference_grid(const std::string& table, Sampling sampling,
                                               std::size_t runs, std::uint64_t seed) {
  std::vector<SweepSeries> grid;
  for (const auto& ref : reference_rates(table)) {
    auto it = std::find_if(grid.begin(), grid.end(), [&](const SweepSeries& s) {
      return s.config.f == ref.f && s.config.p_f == ref.p_f && s.config.initial == ref.initial;
    });
    if (it == grid.end()) {
      ModelConfig cfg;
      cfg.n = kReferenceN;
      cfg.f = ref.f;
      cfg.p_f = ref.p_f;
      cfg.initial = ref.initial;
      cfg.sampling = sampling;
      cfg.runs = runs;
      cfg.seed = seed;
      grid.push_back({cfg, {}});
      it = std::prev(grid.end());
    }
    it->ks.push_back(ref.k);
  }
  return grid;
}

struct Comparison {
  ReferenceRate reference;
  RateRow measured;

  double measured_percent() const { return 100.0 * measured.rate(); }
  double gap_points() const { return measured_percent() - reference.percent; }
  bool within_target() const { return std::abs(gap_points()) <= kReferenceTolerancePoints; }
};

// Pairs each reference rate with the matching measured row, if present.
inline std::vector<Comparison> compare_with_reference(const std::vector<RateRow>& rows,
                                                      const std::string& table = "") {
  std::vector<Comparison> out;
  for (const auto& ref : reference_rates(table)) {
    for (const auto& row : rows) {
      if (row.n == kReferenceN && row.f == ref.f && row.p_f == ref.p_f && row.k == ref.k &&
          row.initial == ref.initial) {
        out.push_back({ref, row});
      }
    }
  }
  return out;
}

}  // namespace boundla::model
