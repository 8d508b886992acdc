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

#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "boundla/model/reference.hpp"
#include "boundla/model/simulate.hpp"

#ifndef BOUNDLA_VERSION
#define BOUNDLA_VERSION "0.0.0"
#endif

namespace boundla::model {

enum class TableFormat { kText, kCsv };

namespace detail {

inline std::string printf_string(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace detail

inline std::string table_preamble(std::uint64_t seed) {
  return std::string("# boundla ") + BOUNDLA_VERSION + " seed=" + std::to_string(seed) + "\n";
}

// One line per row: n, f, p_f, k, initial, sampling, runs, successes, rate
// and the binomial 95% half-width.
inline std::string format_rows(const std::vector<RateRow>& rows, std::uint64_t seed,
                               TableFormat format) {
  std::ostringstream os;
  os << table_preamble(seed);
  if (format == TableFormat::kCsv) {
    os << "n,f,p_f,k,initial,sampling,runs,successes,rate,ci95\n";
    for (const auto& r : rows) {
      os << detail::printf_string("%zu,%zu,%.4g,%zu,%s,%s,%zu,%zu,%.6f,%.6f\n", r.n, r.f, r.p_f,
                                  r.k, initial_name(r.initial), sampling_name(r.sampling), r.runs,
                                  r.successes, r.rate(), r.ci95());
    }
    return os.str();
  }
  os << detail::printf_string("%-6s %-5s %-6s %-3s %-11s %-20s %-6s %-9s %-8s %s\n", "n", "f",
                              "p_f", "k", "initial", "sampling", "runs", "successes", "rate",
                              "ci95");
  for (const auto& r : rows) {
    os << detail::printf_string("%-6zu %-5zu %-6.4g %-3zu %-11s %-20s %-6zu %-9zu %-8.4f %.4f\n",
                                r.n, r.f, r.p_f, r.k, initial_name(r.initial),
                                sampling_name(r.sampling), r.runs, r.successes, r.rate(),
                                r.ci95());
  }
  return os.str();
}

// Rate matrix: one line per (f, p_f, initial, sampling), one column per k.
inline std::string format_pivot(const std::vector<RateRow>& rows) {
  using Key = std::tuple<std::size_t, double, int, int>;
  std::map<Key, std::map<std::size_t, double>> grid;
  std::map<std::size_t, bool> ks;
  for (const auto& r : rows) {
    grid[{r.f, r.p_f, static_cast<int>(r.initial), static_cast<int>(r.sampling)}][r.k] = r.rate();
    ks[r.k] = true;
  }
  std::ostringstream os;
  os << detail::printf_string("%-40s", "success rate (%)");
  for (const auto& [k, _] : ks) os << detail::printf_string(" %8s", ("k=" + std::to_string(k)).c_str());
  os << '\n';
  for (const auto& [key, cols] : grid) {
    const auto& [f, pf, init, samp] = key;
    const std::string label = detail::printf_string(
        "f=%zu p_f=%.4g %s %s", f, pf, initial_name(static_cast<InitialKind>(init)),
        samp == static_cast<int>(Sampling::kWithReplacement) ? "with" : "without");
    os << detail::printf_string("%-40s", label.c_str());
    for (const auto& [k, _] : ks) {
      auto it = cols.find(k);
      os << (it == cols.end() ? detail::printf_string(" %8s", "-")
                              : detail::printf_string(" %7.1f%%", 100.0 * it->second));
    }
    os << '\n';
  }
  return os.str();
}

// Measured-vs-reference lines followed by a discrepancy list of every point
// outside the +/- tolerance band.
inline std::string format_comparison(const std::vector<Comparison>& comparisons) {
  std::ostringstream os;
  os << detail::printf_string("%-13s %-11s %-5s %-5s %-3s %-20s %9s %9s %8s\n", "table", "initial",
                              "f", "p_f", "k", "sampling", "reference", "measured", "gap");
  std::vector<const Comparison*> misses;
  for (const auto& c : comparisons) {
    os << detail::printf_string("%-13s %-11s %-5zu %-5.2g %-3zu %-20s %8.1f%% %8.1f%% %+8.1f\n",
                                c.reference.table, initial_name(c.reference.initial),
                                c.reference.f, c.reference.p_f, c.reference.k,
                                sampling_name(c.measured.sampling), c.reference.percent,
                                c.measured_percent(), c.gap_points());
    if (!c.within_target()) misses.push_back(&c);
  }
  os << "discrepancies (outside +/-" << kReferenceTolerancePoints << " points): " << misses.size()
     << '\n';
  for (const auto* c : misses) {
    os << detail::printf_string("  %s %s f=%zu p_f=%.2g k=%zu [%s]: reference %.1f%%, measured %.1f%%\n",
                                c->reference.table, initial_name(c->reference.initial),
                                c->reference.f, c->reference.p_f, c->reference.k,
                                sampling_name(c->measured.sampling), c->reference.percent,
                                c->measured_percent());
  }
  return os.str();
}

}  // namespace boundla::model
