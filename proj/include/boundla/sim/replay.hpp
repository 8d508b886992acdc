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
#include <string>
#include <vector>

#include "boundla/core/error.hpp"
#include "boundla/core/instance.hpp"
#include "boundla/core/io.hpp"
#include "boundla/sim/config.hpp"
#include "boundla/sim/trace.hpp"
#include "boundla/sim/world.hpp"

namespace boundla {

struct TraceSetup {
  NetworkConfig config;
  CrashSchedule crash;
  std::optional<std::size_t> k;
};

inline TraceSetup trace_setup(const Trace& trace) {
  const json& h = trace.header;
  TraceSetup s;
  const auto mode = detail::field<std::string>(h, "mode");
  if (mode != "sync" && mode != "async") throw FormatError("unknown trace mode \"" + mode + "\"");
  s.config.mode = mode == "async" ? Mode::kAsync : Mode::kSyncRounds;
  s.config.n = detail::field<std::size_t>(h, "n");
  s.config.f = detail::field<std::size_t>(h, "f");
  s.config.seed = detail::field<std::uint64_t>(h, "seed");
  s.config.scheduler = load_scheduler(detail::field<json>(h, "scheduler"));
  s.crash = load_crash_schedule(detail::field<json>(h, "crash"));
  if (h.contains("k")) s.k = detail::field<std::size_t>(h, "k");
  if (s.config.mode == Mode::kAsync && !s.k) throw FormatError("async trace header lacks k");
  return s;
}

namespace detail {

// Feeds the recorded DELIVER events back to the world as its scheduler.
class RecordedChooser {
 public:
  RecordedChooser(const Trace& trace, std::size_t n) : trace_(trace), n_(n) {}

  template <class E>
  std::size_t operator()(const std::vector<std::deque<Envelope<E>>>& channels,
                         const std::vector<std::size_t>&) {
    while (next_ < trace_.events.size() &&
           trace_.events[next_].kind != TraceEvent::Kind::kDeliver) {
      ++next_;
    }
    if (next_ == trace_.events.size()) return kNoChoice;
    const TraceEvent& e = trace_.events[next_++];
    if (e.peer == 0 || e.peer > n_ || e.process == 0 || e.process > n_) {
      throw ReplayError("trace delivery at t=" + std::to_string(e.time) + " names an unknown process");
    }
    const std::size_t channel = (e.peer - 1) * n_ + (e.process - 1);
    if (channels[channel].empty() || channels[channel].front().round != e.round) {
      throw ReplayError("trace delivery at t=" + std::to_string(e.time) +
                        " does not match any pending message");
    }
    return channel;
  }

 private:
  const Trace& trace_;
  std::size_t n_;
  std::size_t next_ = 0;
};

inline void require_same_events(const Trace& recorded, const Trace& replayed) {
  const std::size_t common = std::min(recorded.events.size(), replayed.events.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (!(recorded.events[i] == replayed.events[i])) {
      throw ReplayError("replay diverges from the trace at t=" + std::to_string(i));
    }
  }
  if (recorded.events.size() != replayed.events.size()) {
    throw ReplayError("replay produced " + std::to_string(replayed.events.size()) +
                      " events, trace has " + std::to_string(recorded.events.size()));
  }
}

}  // namespace detail

// Re-executes a recorded run. Asynchronous runs are driven by the recorded
// delivery order rather than the scheduler; synchronous runs have no
// scheduling freedom and are re-executed from the header. Either way the
// regenerated event stream must equal the recorded one.
template <QuasiMetricSpace S>
ProtocolOutcome<element_t<S>> replay(const S& space, const Trace& trace) {
  using E = element_t<S>;
  const TraceSetup setup = trace_setup(trace);
  if (detail::field<json>(trace.header, "lattice") != lattice_document(space)) {
    throw ReplayError("trace was recorded on a different lattice");
  }
  const std::vector<E> initial = decode_elements(space, detail::field<json>(trace.header, "initial"));
  ProtocolOutcome<E> out;
  if (setup.config.mode == Mode::kSyncRounds) {
    out = run_sync(space, setup.config, setup.crash, std::span<const E>(initial));
  } else {
    detail::RecordedChooser chooser(trace, setup.config.n);
    out = detail::run_dr_world(space, setup.config, setup.crash, *setup.k,
                               std::span<const E>(initial), chooser);
  }
  if (out.trace.header != trace.header) throw ReplayError("replayed header differs from the trace");
  detail::require_same_events(trace, out.trace);
  return out;
}

// Lattice-agnostic summary of a replayed trace.
struct ReplaySummary {
  json decisions;  // one entry per process, null for crashed ones
  std::vector<std::size_t> crashed;
  Distance gamma_initial;
  Distance gamma_final;
};

inline ReplaySummary replay_document(const std::string& text) {
  const Trace trace = parse_trace(text);
  const AnySpace space = load_lattice(detail::field<json>(trace.header, "lattice"));
  return std::visit(
      [&](const auto& s) {
        using E = element_t<std::decay_t<decltype(s)>>;
        const auto outcome = replay(s, trace);
        ReplaySummary summary;
        summary.decisions = json::array();
        for (const auto& d : outcome.decided) {
          summary.decisions.push_back(d ? encode_element(s, *d) : json(nullptr));
        }
        const auto crashed = outcome.crashed();
        summary.crashed.assign(crashed.begin(), crashed.end());
        const auto initial = decode_elements(s, trace.header.at("initial"));
        summary.gamma_initial = compute_gamma(s, std::span<const E>(initial));
        const auto finals = outcome.correct_decisions();
        summary.gamma_final = compute_gamma(s, std::span<const E>(finals));
        return summary;
      },
      space);
}

}  // namespace boundla
