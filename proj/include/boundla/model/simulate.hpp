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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boundla/core/error.hpp"
#include "boundla/core/random.hpp"
#include "boundla/model/state.hpp"

namespace boundla::model {

enum class Sampling { kWithoutReplacement, kWithReplacement };
enum class InitialKind { kRandomUniform, kWorstCase, kExplicit };

// How a zero cell's n-f draws are realised. kLiteralDraws samples every value;
// kExactFlip draws one Bernoulli with the exact probability that the draws
// contain a 1, which has the same distribution given the round's snapshot.
enum class RoundEngine { kExactFlip, kLiteralDraws };

inline const char* sampling_name(Sampling s) {
  return s == Sampling::kWithReplacement ? "with_replacement" : "without_replacement";
}

inline const char* initial_name(InitialKind k) {
  switch (k) {
    case InitialKind::kRandomUniform:
      return "random";
    case InitialKind::kWorstCase:
      return "worst_case";
    case InitialKind::kExplicit:
      return "explicit";
  }
  return "?";
}

struct ModelConfig {
  std::size_t n = 1000;
  std::size_t f = 200;
  double p_f = 0.06;
  std::size_t k = 4;
  Sampling sampling = Sampling::kWithoutReplacement;
  InitialKind initial = InitialKind::kRandomUniform;
  std::vector<Cell> explicit_cells;  // used when initial == kExplicit
  std::size_t runs = 1000;
  std::uint64_t seed = 0;
  RoundEngine engine = RoundEngine::kExactFlip;

  void validate() const {
    if (n == 0) throw PreconditionError("model needs n >= 1");
    if (f >= n) throw BudgetError("model needs f < n");
    if (!(p_f >= 0.0 && p_f <= 1.0)) throw PreconditionError("p_f must lie in [0, 1]");
    if (k == 0) throw PreconditionError("model needs k >= 1");
    if (runs == 0) throw PreconditionError("model needs runs >= 1");
    if (initial == InitialKind::kExplicit) {
      if (explicit_cells.size() != n) throw PreconditionError("explicit state must have n cells");
      if (count(explicit_cells, Cell::kCrashed) > f) {
        throw BudgetError("explicit state has more than f crashed cells");
      }
    }
  }
};

// Probability that `draws` values taken from a state with `ones` ones among n
// cells contain no 1.
inline double miss_probability(std::size_t n, std::size_t ones, std::size_t draws,
                               Sampling sampling) {
  if (ones == 0 || draws == 0) return 1.0;
  if (sampling == Sampling::kWithReplacement) {
    return std::pow(1.0 - static_cast<double>(ones) / static_cast<double>(n),
                    static_cast<double>(draws));
  }
  if (draws > n - ones) return 0.0;
  double p = 1.0;
  for (std::size_t j = 0; j < draws; ++j) {
    p *= static_cast<double>(n - ones - j) / static_cast<double>(n - j);
  }
  return p;
}

namespace detail {

// Literal draw of n-f cells from the snapshot, returning their max.
class Drawer {
 public:
  explicit Drawer(std::size_t n) : order_(n) { std::iota(order_.begin(), order_.end(), 0); }

  Cell max_of_draws(std::span<const Cell> snapshot, std::size_t draws, Sampling sampling,
                    Rng& rng) {
    const std::size_t n = snapshot.size();
    Cell best = Cell::kCrashed;
    for (std::size_t t = 0; t < draws; ++t) {
      std::size_t pick;
      if (sampling == Sampling::kWithReplacement) {
        pick = uniform_index(rng, n);
      } else {
        const std::size_t j = t + uniform_index(rng, n - t);
        std::swap(order_[t], order_[j]);
        pick = order_[t];
      }
      best = std::max(best, snapshot[pick]);
    }
    return best;
  }

 private:
  std::vector<std::size_t> order_;
};

}  // namespace detail

// One outer-loop iteration: every cell, in index order, first gets a chance
// p_f to crash (while the budget lasts); surviving zeros take the max of n-f
// values drawn from the round's snapshot and their own value.
inline ModelState model_round(const ModelState& state, const ModelConfig& config, Rng& rng) {
  const std::span<const Cell> snapshot(state.cells);
  const std::size_t n = snapshot.size();
  if (state.crashed > config.f) throw BudgetError("state already exceeds the crash budget");
  const std::size_t draws = n - config.f;

  ModelState next = state;
  double flip = 0.0;
  std::optional<detail::Drawer> drawer;
  if (config.engine == RoundEngine::kExactFlip) {
    flip = 1.0 - miss_probability(n, count(snapshot, Cell::kOne), draws, config.sampling);
  } else {
    drawer.emplace(n);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (snapshot[i] != Cell::kCrashed && next.crashed < config.f && bernoulli(rng, config.p_f)) {
      next.cells[i] = Cell::kCrashed;
      ++next.crashed;
      continue;
    }
    if (snapshot[i] != Cell::kZero) continue;
    if (drawer) {
      next.cells[i] = std::max(snapshot[i], drawer->max_of_draws(snapshot, draws, config.sampling, rng));
    } else if (bernoulli(rng, flip)) {
      next.cells[i] = Cell::kOne;
    }
  }
  return next;
}

inline ModelState initial_state(const ModelConfig& config, Rng& rng) {
  ModelState s;
  switch (config.initial) {
    case InitialKind::kExplicit:
      s.cells = config.explicit_cells;
      s.crashed = count(s.cells, Cell::kCrashed);
      return s;
    case InitialKind::kWorstCase:
      s.cells.assign(config.n, Cell::kZero);
      s.cells[uniform_index(rng, config.n)] = Cell::kOne;
      return s;
    case InitialKind::kRandomUniform:
      s.cells.resize(config.n);
      do {
        for (auto& c : s.cells) c = bernoulli(rng, 0.5) ? Cell::kOne : Cell::kZero;
      } while (count(s.cells, Cell::kOne) == 0);
      return s;
  }
  return s;
}

// Invariant counters gathered while simulating; all should stay zero except
// left_state_space, which counts trajectories whose last 1 crashed.
struct ModelDiagnostics {
  std::size_t transitions = 0;
  std::size_t reachability_violations = 0;
  std::size_t budget_violations = 0;
  std::size_t monotonicity_violations = 0;
  std::size_t left_state_space = 0;

  void merge(const ModelDiagnostics& o) {
    transitions += o.transitions;
    reachability_violations += o.reachability_violations;
    budget_violations += o.budget_violations;
    monotonicity_violations += o.monotonicity_violations;
    left_state_space += o.left_state_space;
  }
  bool clean() const {
    return reachability_violations == 0 && budget_violations == 0 && monotonicity_violations == 0;
  }
};

// Runs one trajectory for `rounds` rounds and reports, per round count
// 1..rounds, whether the state after that many rounds is improved.
inline std::vector<bool> run_trajectory(const ModelConfig& config, std::size_t rounds, Rng& rng,
                                        ModelDiagnostics& diag) {
  ModelState state = initial_state(config, rng);
  std::vector<bool> improved;
  improved.reserve(rounds);
  bool left = false;
  for (std::size_t r = 1; r <= rounds; ++r) {
    ModelState next = model_round(state, config, rng);
    ++diag.transitions;
    if (!is_reachable(state.cells, next.cells)) ++diag.reachability_violations;
    const std::size_t bottoms = count(next.cells, Cell::kCrashed);
    if (bottoms > config.f || bottoms != next.crashed) ++diag.budget_violations;
    if (count(next.cells, Cell::kOne) == 0) left = true;
    state = std::move(next);
    improved.push_back(is_improved(state.cells));
    if (r >= 2 && improved[r - 2] && !improved[r - 1]) ++diag.monotonicity_violations;
  }
  if (left) ++diag.left_state_space;
  return improved;
}

struct RateRow {
  std::size_t n = 0;
  std::size_t f = 0;
  double p_f = 0.0;
  std::size_t k = 0;
  InitialKind initial = InitialKind::kRandomUniform;
  Sampling sampling = Sampling::kWithoutReplacement;
  std::size_t runs = 0;
  std::size_t successes = 0;

  double rate() const { return static_cast<double>(successes) / static_cast<double>(runs); }
  // Normal-approximation binomial 95% half-width.
  double ci95() const {
    const double p = rate();
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(runs));
  }
};

struct SweepResult {
  std::vector<RateRow> rows;
  ModelDiagnostics diagnostics;
};

// Simulates `config.runs` trajectories once up to max(ks) rounds and reads
// off the success rate at every requested k. Trajectory r uses the stream
// derived from (seed, r), so rates for different k share random numbers and
// are monotone per seed.
inline SweepResult run_model_rounds(const ModelConfig& config, std::vector<std::size_t> ks) {
  config.validate();
  if (ks.empty()) throw PreconditionError("need at least one k");
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() == 0) throw PreconditionError("k must be >= 1");
  const std::size_t rounds = ks.back();

  std::vector<std::size_t> successes(rounds, 0);
  SweepResult out;
  for (std::size_t run = 0; run < config.runs; ++run) {
    Rng rng = derive_rng(config.seed, run);
    const auto improved = run_trajectory(config, rounds, rng, out.diagnostics);
    for (std::size_t r = 0; r < rounds; ++r) successes[r] += improved[r] ? 1 : 0;
  }
  for (std::size_t k : ks) {
    out.rows.push_back({config.n, config.f, config.p_f, k, config.initial, config.sampling,
                        config.runs, successes[k - 1]});
  }
  return out;
}

inline RateRow run_model(const ModelConfig& config) {
  return run_model_rounds(config, {config.k}).rows.front();
}

// One series of a sweep: a base configuration evaluated at several k.
struct SweepSeries {
  ModelConfig config;
  std::vector<std::size_t> ks;
};

inline SweepResult sweep(const std::vector<SweepSeries>& grid) {
  if (grid.empty()) throw PreconditionError("sweep grid is empty");
  SweepResult out;
  for (const auto& series : grid) {
    SweepResult part = run_model_rounds(series.config, series.ks);
    out.rows.insert(out.rows.end(), part.rows.begin(), part.rows.end());
    out.diagnostics.merge(part.diagnostics);
  }
  return out;
}

}  // namespace boundla::model
