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
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "boundla/core/error.hpp"
#include "boundla/core/io.hpp"
#include "boundla/core/lattice.hpp"
#include "boundla/core/random.hpp"
#include "boundla/protocols/dr.hpp"
#include "boundla/protocols/sync.hpp"
#include "boundla/sim/config.hpp"
#include "boundla/sim/outcome.hpp"
#include "boundla/sim/trace.hpp"

namespace boundla {

template <QuasiMetricSpace S>
json trace_header(const S& space, const NetworkConfig& config, const CrashSchedule& crash,
                  std::span<const element_t<S>> initial, std::optional<std::size_t> k) {
  json h = {{"trace", "boundla"},
            {"version", kTraceVersion},
            {"mode", mode_name(config.mode)},
            {"n", config.n},
            {"f", config.f},
            {"seed", config.seed},
            {"scheduler", scheduler_document(config.scheduler)},
            {"lattice", lattice_document(space)},
            {"initial", encode_elements(space, initial)},
            {"crash", crash_document(crash)}};
  if (k) h["k"] = *k;
  return h;
}

// Lock-step synchronous reconciliation over f+1 rounds. A process crashing in
// round r sends its round-r set only to its `reached` recipients and takes no
// further steps. Deliveries within a round are in sender order.
template <QuasiMetricSpace S>
ProtocolOutcome<element_t<S>> run_sync(const S& space, const NetworkConfig& config,
                                       const CrashSchedule& crash,
                                       std::span<const element_t<S>> initial) {
  using E = element_t<S>;
  if (config.mode != Mode::kSyncRounds) throw PreconditionError("run_sync needs SYNC_ROUNDS mode");
  config.validate();
  if (initial.size() != config.n) throw PreconditionError("need one initial value per process");
  const std::size_t n = config.n;
  const std::size_t rounds = config.f + 1;
  crash.validate(config, rounds);

  ProtocolOutcome<E> out;
  out.decided.assign(n, std::nullopt);
  out.crash_round.assign(n, std::nullopt);
  out.history.assign(n, {});
  out.trace.header = trace_header(space, config, crash, initial, std::nullopt);

  std::vector<SyncState<E>> states(n);
  std::vector<std::set<E>> outgoing(n);
  std::vector<bool> alive(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    auto step = sync_begin(initial[i]);
    states[i] = std::move(step.state);
    outgoing[i] = std::move(step.outgoing);
  }
  const auto encode_set = [&](const std::set<E>& s) {
    const std::vector<E> v(s.begin(), s.end());
    return encode_elements(space, std::span<const E>(v));
  };

  std::vector<std::size_t> everyone(n);
  for (std::size_t i = 0; i < n; ++i) everyone[i] = i + 1;

  for (std::size_t r = 1; r <= rounds; ++r) {
    // reaches[i][j]: process i's round-r message gets to process j
    std::vector<std::vector<bool>> reaches(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      const CrashPoint* point = crash.find(i + 1);
      const bool crashes_now = point && point->round == r;
      std::vector<std::size_t> to = everyone;
      if (crashes_now && point->reached) to.assign(point->reached->begin(), point->reached->end());
      for (std::size_t q : to) reaches[i][q - 1] = true;
      out.trace.record({TraceEvent::Kind::kSend, 0, i + 1, 0, r, encode_set(outgoing[i]), to, true});
      if (crashes_now) {
        alive[i] = false;
        out.crash_round[i] = r;
        out.trace.record({TraceEvent::Kind::kCrash, 0, i + 1, 0, r, nullptr, {}, true});
      }
    }
    std::vector<std::set<E>> next(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      std::vector<std::set<E>> received;
      for (std::size_t i = 0; i < n; ++i) {
        if (!reaches[i][j]) continue;
        out.trace.record(
            {TraceEvent::Kind::kDeliver, 0, j + 1, i + 1, r, encode_set(outgoing[i]), {}, true});
        received.push_back(outgoing[i]);
      }
      auto step = sync_on_round(space, std::move(states[j]),
                                std::span<const std::set<E>>(received), config.f);
      states[j] = std::move(step.state);
      next[j] = std::move(step.outgoing);
    }
    outgoing = std::move(next);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    out.decided[i] = states[i].decided;
    out.history[i] = {initial[i], *states[i].decided};
    out.trace.record({TraceEvent::Kind::kDecide, 0, i + 1, 0, rounds,
                      encode_element(space, *states[i].decided), {}, true});
  }
  return out;
}

namespace detail {

template <class E>
struct Envelope {
  std::size_t sender = 0;    // 0-based slots
  std::size_t receiver = 0;
  std::size_t round = 0;
  E value;
  std::uint64_t seq = 0;
};

inline constexpr std::size_t kNoChoice = std::numeric_limits<std::size_t>::max();

// Picks the channel to deliver from next according to a SchedulerPolicy.
class PolicyChooser {
 public:
  PolicyChooser(const NetworkConfig& config)
      : policy_(config.scheduler), n_(config.n), rng_(derive_rng(config.seed, 1)) {}

  template <class E>
  std::size_t operator()(const std::vector<std::deque<Envelope<E>>>& channels,
                         const std::vector<std::size_t>& candidates) {
    switch (policy_.kind) {
      case SchedulerPolicy::Kind::kDeliverAll: {
        return *std::min_element(candidates.begin(), candidates.end(),
                                 [&](std::size_t a, std::size_t b) {
                                   return channels[a].front().seq < channels[b].front().seq;
                                 });
      }
      case SchedulerPolicy::Kind::kUniformRandom:
        return candidates[uniform_index(rng_, candidates.size())];
      case SchedulerPolicy::Kind::kDelaySet: {
        std::vector<std::size_t> open;
        for (std::size_t c : candidates) {
          if (!policy_.delayed.contains(c / n_ + 1)) open.push_back(c);
        }
        const auto& pool = open.empty() ? candidates : open;
        return pool[uniform_index(rng_, pool.size())];
      }
    }
    return candidates.front();
  }

 private:
  SchedulerPolicy policy_;
  std::size_t n_;
  Rng rng_;
};

// Drives the asynchronous DR(k) world. `choose` returns the channel
// (sender * n + receiver) to deliver from, or kNoChoice to stop early.
template <QuasiMetricSpace S, class Chooser>
ProtocolOutcome<element_t<S>> run_dr_world(const S& space, const NetworkConfig& config,
                                           const CrashSchedule& crash, std::size_t k,
                                           std::span<const element_t<S>> initial,
                                           Chooser&& choose) {
  using E = element_t<S>;
  if (config.mode != Mode::kAsync) throw PreconditionError("run_async_dr needs ASYNC mode");
  config.validate();
  if (k == 0) throw PreconditionError("DR needs k >= 1");
  if (initial.size() != config.n) throw PreconditionError("need one initial value per process");
  crash.validate(config, k);
  const std::size_t n = config.n;
  const std::size_t quorum = n - config.f;

  ProtocolOutcome<E> out;
  out.decided.assign(n, std::nullopt);
  out.crash_round.assign(n, std::nullopt);
  out.trace.header = trace_header(space, config, crash, initial, k);

  std::vector<DRState<E>> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) states.push_back(dr_begin(initial[i], k));
  std::vector<bool> alive(n, true);
  std::vector<std::vector<std::vector<E>>> buffers(n, std::vector<std::vector<E>>(k + 2));
  std::vector<std::deque<Envelope<E>>> channels(n * n);
  std::uint64_t seq = 0;

  std::vector<std::size_t> everyone(n);
  for (std::size_t i = 0; i < n; ++i) everyone[i] = i + 1;

  const auto crash_now = [&](std::size_t i, std::size_t r) {
    alive[i] = false;
    out.crash_round[i] = r;
    out.trace.record({TraceEvent::Kind::kCrash, 0, i + 1, 0, r, nullptr, {}, true});
  };

  const auto begin_round = [&](std::size_t i) {
    const std::size_t r = states[i].round;
    const CrashPoint* point = crash.find(i + 1);
    const bool crashes_now = point && point->round == r;
    if (crashes_now && point->reached) {  // stops before sending
      crash_now(i, r);
      return;
    }
    out.trace.record({TraceEvent::Kind::kSend, 0, i + 1, 0, r,
                      encode_element(space, states[i].value), everyone, true});
    for (std::size_t j = 0; j < n; ++j) {
      channels[i * n + j].push_back({i, j, r, states[i].value, seq++});
    }
    if (crashes_now) crash_now(i, r);
  };

  const auto finished = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i] && !states[i].done()) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < n; ++i) begin_round(i);

  std::vector<std::size_t> candidates;
  while (!finished()) {
    candidates.clear();
    for (std::size_t c = 0; c < channels.size(); ++c) {
      if (!channels[c].empty()) candidates.push_back(c);
    }
    if (candidates.empty()) {
      throw DeadlockError("no deliverable messages while some process waits for n-f");
    }
    const std::size_t pick = choose(channels, candidates);
    if (pick == kNoChoice) throw ReplayError("trace ended before every correct process decided");
    if (pick >= channels.size() || channels[pick].empty()) {
      throw ReplayError("scheduled channel has no pending message");
    }
    Envelope<E> msg = std::move(channels[pick].front());
    channels[pick].pop_front();

    const std::size_t j = msg.receiver;
    if (!alive[j] || states[j].done()) continue;
    auto& state = states[j];
    const bool accepted = msg.round >= state.round && msg.round <= k &&
                          buffers[j][msg.round].size() < quorum;
    out.trace.record({TraceEvent::Kind::kDeliver, 0, j + 1, msg.sender + 1, msg.round,
                      encode_element(space, msg.value), {}, accepted});
    if (!accepted) continue;
    buffers[j][msg.round].push_back(std::move(msg.value));

    while (alive[j] && !state.done() && buffers[j][state.round].size() == quorum) {
      const std::size_t r = state.round;
      state = dr_on_round(space, std::move(state), std::span<const E>(buffers[j][r]), quorum);
      buffers[j][r].clear();
      if (state.done()) {
        out.trace.record({TraceEvent::Kind::kDecide, 0, j + 1, 0, k,
                          encode_element(space, state.value), {}, true});
      } else {
        begin_round(j);
      }
    }
  }

  out.history.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i]) out.decided[i] = states[i].value;
    out.history.push_back(std::move(states[i].history));
  }
  return out;
}

}  // namespace detail

// Asynchronous DR(k): each correct process completes k rounds, each unblocked
// by n-f deliveries of that round chosen by the configured scheduler.
template <QuasiMetricSpace S>
ProtocolOutcome<element_t<S>> run_async_dr(const S& space, const NetworkConfig& config,
                                           const CrashSchedule& crash, std::size_t k,
                                           std::span<const element_t<S>> initial) {
  detail::PolicyChooser chooser(config);
  return detail::run_dr_world(space, config, crash, k, initial, chooser);
}

}  // namespace boundla
