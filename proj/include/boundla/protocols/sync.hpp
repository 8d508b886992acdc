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
#include <span>
#include <vector>

#include "boundla/core/error.hpp"
#include "boundla/core/lattice.hpp"

namespace boundla {

// Per-process state of the (f+1)-round synchronous reconciliation. values only
// grows; decided is set at the end of round f+1 to max(values).
template <class E>
struct SyncState {
  std::set<E> values;
  std::size_t round = 1;
  std::set<E> sent;
  std::optional<E> decided;

  friend bool operator==(const SyncState&, const SyncState&) = default;
};

template <class E>
struct SyncStep {
  SyncState<E> state;
  std::set<E> outgoing;  // empty once decided
};

namespace detail {

template <class E>
std::set<E> take_unsent(SyncState<E>& state) {
  std::set<E> out;
  for (const auto& v : state.values) {
    if (state.sent.insert(v).second) out.insert(v);
  }
  return out;
}

}  // namespace detail

// Initial state from the lattice agreement output plus the round-1 message.
template <class E>
SyncStep<E> sync_begin(const E& initial) {
  SyncStep<E> step;
  step.state.values.insert(initial);
  step.outgoing = detail::take_unsent(step.state);
  return step;
}

// Absorbs the sets received in the current round. After round f+1 the state
// decides max(values); otherwise it advances and returns the values it has
// not sent yet. Throws if the decision set is not a chain.
template <FiniteLattice L>
SyncStep<element_t<L>> sync_on_round(const L& lattice, SyncState<element_t<L>> state,
                                     std::span<const std::set<element_t<L>>> received,
                                     std::size_t f) {
  if (state.decided) throw PreconditionError("process already decided");
  if (state.round > f + 1) throw PreconditionError("round exceeds f+1");
  for (const auto& set : received) state.values.insert(set.begin(), set.end());

  SyncStep<element_t<L>> step;
  if (state.round == f + 1) {
    const std::vector<element_t<L>> values(state.values.begin(), state.values.end());
    state.decided = chain_max(lattice, std::span<const element_t<L>>(values));
  } else {
    ++state.round;
    step.outgoing = detail::take_unsent(state);
  }
  step.state = std::move(state);
  return step;
}

}  // namespace boundla
