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
#include <vector>

#include "boundla/core/error.hpp"
#include "boundla/core/instance.hpp"
#include "boundla/core/random.hpp"
#include "boundla/protocols/generate.hpp"
#include "boundla/sim/config.hpp"
#include "boundla/sim/world.hpp"

namespace boundla {

struct Reconciler {
  enum class Kind { kSync, kDR };

  Kind kind = Kind::kSync;
  std::size_t k = 1;  // DR rounds

  static Reconciler sync() { return {Kind::kSync, 0}; }
  static Reconciler dr(std::size_t rounds) { return {Kind::kDR, rounds}; }
};

template <class E>
struct ComposedRun {
  AgreementInstance<E> instance;
  ProtocolOutcome<E> outcome;
};

// Bounded lattice agreement as base agreement followed by reconciliation. The
// base step is the valid-output generator; the reconciler then runs in the
// simulated world (its mode is set to match the reconciler). Crashed
// processes keep their base output in `reconciled` and are listed in
// `crashed`.
template <QuasiMetricSpace S>
ComposedRun<element_t<S>> compose_bounded_la(const S& space, std::span<const element_t<S>> inputs,
                                             const Reconciler& reconciler, NetworkConfig world,
                                             const CrashSchedule& crash = {}) {
  using E = element_t<S>;
  if (inputs.size() != world.n) throw PreconditionError("need one input per process");
  ComposedRun<E> run;
  run.instance.inputs.assign(inputs.begin(), inputs.end());
  Rng rng = derive_rng(world.seed, 2);
  run.instance.outputs = assign_valid_outputs(space, inputs, rng);
  const std::span<const E> outputs(run.instance.outputs);
  if (reconciler.kind == Reconciler::Kind::kSync) {
    world.mode = Mode::kSyncRounds;
    run.outcome = run_sync(space, world, crash, outputs);
  } else {
    world.mode = Mode::kAsync;
    run.outcome = run_async_dr(space, world, crash, reconciler.k, outputs);
  }
  std::vector<E> reconciled = run.instance.outputs;
  for (std::size_t i = 0; i < world.n; ++i) {
    if (run.outcome.decided[i]) reconciled[i] = *run.outcome.decided[i];
  }
  run.instance.reconciled = std::move(reconciled);
  run.instance.crashed = run.outcome.crashed();
  return run;
}

}  // namespace boundla
