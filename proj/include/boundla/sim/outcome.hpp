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

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "boundla/sim/trace.hpp"

namespace boundla {

// Result of one simulated protocol run. history[i][r-1] is process i+1's value
// at the start of round r (DR only); the last entry of a correct process is
// its decision.
template <class E>
struct ProtocolOutcome {
  std::vector<std::optional<E>> decided;
  std::vector<std::optional<std::size_t>> crash_round;
  std::vector<std::vector<E>> history;
  Trace trace;

  std::size_t n() const { return decided.size(); }

  std::set<std::size_t> crashed() const {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < crash_round.size(); ++i) {
      if (crash_round[i]) out.insert(i + 1);
    }
    return out;
  }

  std::vector<E> correct_decisions() const {
    std::vector<E> out;
    for (const auto& d : decided) {
      if (d) out.push_back(*d);
    }
    return out;
  }

  // A_r: values held at the start of round r by processes that reached it.
  std::set<E> snapshot(std::size_t round) const {
    std::set<E> out;
    for (const auto& h : history) {
      if (round >= 1 && round <= h.size()) out.insert(h[round - 1]);
    }
    return out;
  }

  std::size_t snapshot_count() const {
    std::size_t most = 0;
    for (const auto& h : history) most = std::max(most, h.size());
    return most;
  }
};

}  // namespace boundla
