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
#include <span>
#include <string>
#include <vector>

#include "boundla/core/error.hpp"
#include "boundla/core/lattice.hpp"

namespace boundla {

// State of one process running DR(k): broadcast the current value each round,
// wait for n-f values of that round, keep the max.
template <class E>
struct DRState {
  E value;
  std::size_t round = 1;         // round currently being collected, 1-based
  std::size_t rounds = 1;        // k
  std::vector<E> history;        // value at the start of each round; last entry is current

  bool done() const { return round > rounds; }

  friend bool operator==(const DRState&, const DRState&) = default;
};

template <class E>
DRState<E> dr_begin(const E& initial, std::size_t k) {
  if (k == 0) throw PreconditionError("DR needs k >= 1");
  return DRState<E>{initial, 1, k, {initial}};
}

// Completes the current round with exactly `quorum` received values.
template <FiniteLattice L>
DRState<element_t<L>> dr_on_round(const L& lattice, DRState<element_t<L>> state,
                                  std::span<const element_t<L>> received, std::size_t quorum) {
  if (state.done()) throw PreconditionError("DR already finished all rounds");
  if (received.size() != quorum) {
    throw PreconditionError("DR round needs exactly " + std::to_string(quorum) +
                            " values, got " + std::to_string(received.size()));
  }
  std::vector<element_t<L>> pool(received.begin(), received.end());
  pool.push_back(state.value);
  state.value = chain_max(lattice, std::span<const element_t<L>>(pool));
  state.history.push_back(state.value);
  ++state.round;
  return state;
}

}  // namespace boundla
