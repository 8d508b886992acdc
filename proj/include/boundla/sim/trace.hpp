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
#include <sstream>
#include <string>
#include <vector>

#include "boundla/core/error.hpp"
#include "boundla/core/io.hpp"

namespace boundla {

inline constexpr int kTraceVersion = 1;

struct TraceEvent {
  enum class Kind { kSend, kDeliver, kCrash, kDecide };

  Kind kind = Kind::kSend;
  std::uint64_t time = 0;       // logical timestamp, position in the trace
  std::size_t process = 0;      // actor: sender, receiver, crashing or deciding process
  std::size_t peer = 0;         // DELIVER: the sender
  std::size_t round = 0;
  json payload;                 // one element (DR) or an array of elements (sync)
  std::vector<std::size_t> recipients;  // SEND only
  bool accepted = true;         // DELIVER: false when discarded as late or surplus

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

inline const char* kind_name(TraceEvent::Kind k) {
  switch (k) {
    case TraceEvent::Kind::kSend:
      return "SEND";
    case TraceEvent::Kind::kDeliver:
      return "DELIVER";
    case TraceEvent::Kind::kCrash:
      return "CRASH";
    case TraceEvent::Kind::kDecide:
      return "DECIDE";
  }
  return "?";
}

inline json event_document(const TraceEvent& e) {
  json doc = {{"t", e.time}, {"kind", kind_name(e.kind)}, {"process", e.process},
              {"round", e.round}};
  switch (e.kind) {
    case TraceEvent::Kind::kSend:
      doc["payload"] = e.payload;
      doc["to"] = e.recipients;
      break;
    case TraceEvent::Kind::kDeliver:
      doc["from"] = e.peer;
      doc["payload"] = e.payload;
      doc["accepted"] = e.accepted;
      break;
    case TraceEvent::Kind::kDecide:
      doc["payload"] = e.payload;
      break;
    case TraceEvent::Kind::kCrash:
      break;
  }
  return doc;
}

inline TraceEvent load_event(const json& doc) {
  TraceEvent e;
  const auto kind = detail::field<std::string>(doc, "kind");
  if (kind == "SEND") {
    e.kind = TraceEvent::Kind::kSend;
    e.payload = detail::field<json>(doc, "payload");
    e.recipients = detail::field<std::vector<std::size_t>>(doc, "to");
  } else if (kind == "DELIVER") {
    e.kind = TraceEvent::Kind::kDeliver;
    e.peer = detail::field<std::size_t>(doc, "from");
    e.payload = detail::field<json>(doc, "payload");
    e.accepted = detail::field<bool>(doc, "accepted");
  } else if (kind == "CRASH") {
    e.kind = TraceEvent::Kind::kCrash;
  } else if (kind == "DECIDE") {
    e.kind = TraceEvent::Kind::kDecide;
    e.payload = detail::field<json>(doc, "payload");
  } else {
    throw FormatError("unknown trace event kind \"" + kind + "\"");
  }
  e.time = detail::field<std::uint64_t>(doc, "t");
  e.process = detail::field<std::size_t>(doc, "process");
  e.round = detail::field<std::size_t>(doc, "round");
  return e;
}

// A run's record: a header (config, seed, lattice, initial values, crash
// schedule) and one event per line, closed by an END record carrying the
// event count.
struct Trace {
  json header;
  std::vector<TraceEvent> events;

  TraceEvent& record(TraceEvent e) {
    e.time = events.size();
    events.push_back(std::move(e));
    return events.back();
  }

  std::string to_jsonl() const {
    std::ostringstream os;
    os << header.dump() << '\n';
    for (const auto& e : events) os << event_document(e).dump() << '\n';
    os << json{{"kind", "END"}, {"events", events.size()}}.dump() << '\n';
    return os.str();
  }

  friend bool operator==(const Trace&, const Trace&) = default;
};

inline Trace parse_trace(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Trace trace;
  bool have_header = false;
  bool closed = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (closed) throw FormatError("trace has records after END");
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError(std::string("trace line is not JSON: ") + e.what());
    }
    if (!have_header) {
      if (!doc.is_object() || doc.value("trace", "") != "boundla") {
        throw FormatError("trace header missing");
      }
      if (doc.value("version", -1) != kTraceVersion) {
        throw FormatError("trace version " + doc.value("version", json(-1)).dump() +
                          " not supported (expected " + std::to_string(kTraceVersion) + ")");
      }
      trace.header = std::move(doc);
      have_header = true;
      continue;
    }
    if (doc.value("kind", "") == "END") {
      if (detail::field<std::size_t>(doc, "events") != trace.events.size()) {
        throw FormatError("trace END count does not match the number of events");
      }
      closed = true;
      continue;
    }
    TraceEvent e = load_event(doc);
    if (e.time != trace.events.size()) throw FormatError("trace timestamps are not consecutive");
    trace.events.push_back(std::move(e));
  }
  if (!have_header) throw FormatError("empty trace");
  if (!closed) throw FormatError("trace is truncated (no END record)");
  return trace;
}

}  // namespace boundla
