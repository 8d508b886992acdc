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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "boundla/core/error.hpp"
#include "boundla/core/io.hpp"

namespace boundla {

enum class Mode { kSyncRounds, kAsync };

// Message scheduling for asynchronous runs.
//   kDeliverAll    oldest sent message first (global FIFO)
//   kUniformRandom uniform over the heads of all nonempty channels
//   kDelaySet      uniform over channels whose sender is not delayed; delayed
//                  senders are served only when nothing else is pending
struct SchedulerPolicy {
  enum class Kind { kDeliverAll, kUniformRandom, kDelaySet };

  Kind kind = Kind::kUniformRandom;
  std::set<std::size_t> delayed;  // 1-based process numbers

  static SchedulerPolicy deliver_all() { return {Kind::kDeliverAll, {}}; }
  static SchedulerPolicy uniform_random() { return {Kind::kUniformRandom, {}}; }
  static SchedulerPolicy delay_set(std::set<std::size_t> processes) {
    return {Kind::kDelaySet, std::move(processes)};
  }

  friend bool operator==(const SchedulerPolicy&, const SchedulerPolicy&) = default;
};

struct NetworkConfig {
  std::size_t n = 1;
  std::size_t f = 0;
  Mode mode = Mode::kSyncRounds;
  SchedulerPolicy scheduler;
  std::uint64_t seed = 0;

  void validate() const {
    if (n == 0) throw BudgetError("network needs at least one process");
    if (f >= n) {
      throw BudgetError("fault budget f=" + std::to_string(f) + " must be below n=" +
                        std::to_string(n));
    }
    for (std::size_t p : scheduler.delayed) {
      if (p == 0 || p > n) throw BudgetError("delayed process " + std::to_string(p) + " out of range");
    }
  }
};

// Where a process crashes. In synchronous mode `reached` lists the recipients
// of its crash-round message (absent = everyone). In asynchronous mode sends
// are atomic: absent means the round-`round` broadcast goes out and then the
// process stops, an empty set means it stops before sending that round.
struct CrashPoint {
  std::size_t round = 1;
  std::optional<std::set<std::size_t>> reached;

  friend bool operator==(const CrashPoint&, const CrashPoint&) = default;
};

struct CrashSchedule {
  std::map<std::size_t, CrashPoint> crashes;  // keyed by 1-based process number

  std::size_t count() const { return crashes.size(); }

  const CrashPoint* find(std::size_t process) const {
    auto it = crashes.find(process);
    return it == crashes.end() ? nullptr : &it->second;
  }

  // last_round is f+1 for synchronous runs and k for DR runs.
  void validate(const NetworkConfig& config, std::size_t last_round) const {
    if (count() > config.f) {
      throw BudgetError("crash schedule has " + std::to_string(count()) +
                        " crashes, budget is f=" + std::to_string(config.f));
    }
    for (const auto& [p, point] : crashes) {
      if (p == 0 || p > config.n) throw BudgetError("crashing process " + std::to_string(p) + " out of range");
      if (point.round == 0 || point.round > last_round) {
        throw BudgetError("crash round " + std::to_string(point.round) + " outside 1.." +
                          std::to_string(last_round));
      }
      if (!point.reached) continue;
      for (std::size_t q : *point.reached) {
        if (q == 0 || q > config.n) throw BudgetError("crash recipient " + std::to_string(q) + " out of range");
      }
      if (config.mode == Mode::kAsync && !point.reached->empty()) {
        throw BudgetError("asynchronous sends are atomic; crash recipients must be empty or absent");
      }
    }
  }

  friend bool operator==(const CrashSchedule&, const CrashSchedule&) = default;
};

inline std::string mode_name(Mode mode) { return mode == Mode::kAsync ? "async" : "sync"; }

inline json scheduler_document(const SchedulerPolicy& s) {
  switch (s.kind) {
    case SchedulerPolicy::Kind::kDeliverAll:
      return {{"kind", "deliver_all"}};
    case SchedulerPolicy::Kind::kUniformRandom:
      return {{"kind", "uniform_random"}};
    case SchedulerPolicy::Kind::kDelaySet:
      return {{"kind", "delay_set"}, {"delayed", s.delayed}};
  }
  return {};
}

inline SchedulerPolicy load_scheduler(const json& doc) {
  const auto kind = detail::field<std::string>(doc, "kind");
  if (kind == "deliver_all") return SchedulerPolicy::deliver_all();
  if (kind == "uniform_random") return SchedulerPolicy::uniform_random();
  if (kind == "delay_set") {
    return SchedulerPolicy::delay_set(detail::field<std::set<std::size_t>>(doc, "delayed"));
  }
  throw FormatError("unknown scheduler kind \"" + kind + "\"");
}

// Crash schedule documents
//
//   {"crashes": [{"process": 2, "round": 1, "reached": [1]},
//                {"process": 3, "round": 2}]}
inline json crash_document(const CrashSchedule& c) {
  json list = json::array();
  for (const auto& [p, point] : c.crashes) {
    json entry = {{"process", p}, {"round", point.round}};
    if (point.reached) entry["reached"] = *point.reached;
    list.push_back(std::move(entry));
  }
  return {{"crashes", std::move(list)}};
}

inline CrashSchedule load_crash_schedule(const json& doc) {
  CrashSchedule out;
  for (const auto& entry : detail::field<std::vector<json>>(doc, "crashes")) {
    const auto p = detail::field<std::size_t>(entry, "process");
    CrashPoint point{detail::field<std::size_t>(entry, "round"), std::nullopt};
    if (entry.contains("reached") && !entry.at("reached").is_null()) {
      point.reached = detail::field<std::set<std::size_t>>(entry, "reached");
    }
    if (!out.crashes.emplace(p, point).second) {
      throw FormatError("process " + std::to_string(p) + " crashes twice");
    }
  }
  return out;
}

}  // namespace boundla
