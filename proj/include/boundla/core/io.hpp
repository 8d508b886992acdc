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

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "boundla/core/error.hpp"
#include "boundla/core/families.hpp"
#include "boundla/core/instance.hpp"

namespace boundla {

using json = nlohmann::json;

// Lattice documents
//
//   {"family": "chain", "top": 10}
//   {"family": "powerset", "weights": [1, 5]}
//   {"family": "vector_clock", "dimension": 2, "cap": 4}
//   {"family": "table_chain", "delta": [[0, 5, 4], [null, 0, 5], [null, null, 0]]}
//   {"family": "table", "leq": [[true, ..], ..], "join": [[0, ..], ..],
//    "delta": [[0, null, ..], ..], "bottom": 0}
//
// In distance tables null is undefined and "inf" is infinity. "bottom" may be
// null or absent.

namespace detail {

template <class T>
T field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw FormatError(std::string("missing field \"") + name + "\"");
  }
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad field \"") + name + "\": " + e.what());
  }
}

inline json encode_distance(const Distance& d) {
  if (d.is_undefined()) return nullptr;
  if (d.is_infinite()) return "inf";
  return d.value();
}

inline Distance decode_distance(const json& v) {
  if (v.is_null()) return Distance::undefined();
  if (v.is_string() && v.get<std::string>() == "inf") return Distance::infinity();
  if (!v.is_number()) throw FormatError("distance entries must be numbers, null or \"inf\"");
  try {
    return Distance::finite(v.get<double>());
  } catch (const PreconditionError& e) {
    throw FormatError(e.what());
  }
}

template <class T>
std::vector<std::vector<T>> square_table(const json& doc, const char* name) {
  auto rows = field<std::vector<json>>(doc, name);
  std::vector<std::vector<T>> out;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != rows.size()) {
      throw FormatError(std::string("\"") + name + "\" must be a square table");
    }
    std::vector<T> r;
    for (const auto& cell : row) {
      if constexpr (std::is_same_v<T, Distance>) {
        r.push_back(decode_distance(cell));
      } else {
        try {
          r.push_back(cell.get<T>());
        } catch (const json::exception& e) {
          throw FormatError(std::string("bad entry in \"") + name + "\": " + e.what());
        }
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline json distance_table(const std::vector<std::vector<Distance>>& t, bool upper_only) {
  json rows = json::array();
  for (std::size_t a = 0; a < t.size(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < t.size(); ++b) {
      row.push_back(upper_only && b < a ? json(nullptr) : encode_distance(t[a][b]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline json lattice_document(const IntegerChain& l) {
  return {{"family", "chain"}, {"top", l.top()}};
}

inline json lattice_document(const WeightedPowerset& l) {
  return {{"family", "powerset"}, {"weights", l.weights()}};
}

inline json lattice_document(const VectorClockLattice& l) {
  return {{"family", "vector_clock"}, {"dimension", l.dimension()}, {"cap", l.cap()}};
}

inline json lattice_document(const TableLattice& l) {
  if (l.is_chain()) {
    return {{"family", "table_chain"}, {"delta", detail::distance_table(l.distance_table(), true)}};
  }
  json leq = json::array();
  for (const auto& row : l.leq_table()) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    leq.push_back(std::move(r));
  }
  json doc = {{"family", "table"},
              {"leq", std::move(leq)},
              {"join", l.join_table()},
              {"delta", detail::distance_table(l.distance_table(), false)}};
  doc["bottom"] = l.bottom() ? json(*l.bottom()) : json(nullptr);
  return doc;
}

// Runtime-selected lattice family.
using AnySpace = std::variant<IntegerChain, WeightedPowerset, VectorClockLattice, TableLattice>;

inline AnySpace load_lattice(const json& doc) {
  const auto family = detail::field<std::string>(doc, "family");
  try {
    if (family == "chain") return IntegerChain(detail::field<int>(doc, "top"));
    if (family == "powerset") {
      return WeightedPowerset(detail::field<std::vector<double>>(doc, "weights"));
    }
    if (family == "vector_clock") {
      return VectorClockLattice(detail::field<std::size_t>(doc, "dimension"),
                                detail::field<std::uint32_t>(doc, "cap"));
    }
    if (family == "table_chain") {
      return TableLattice::chain(detail::square_table<Distance>(doc, "delta"));
    }
    if (family == "table") {
      std::optional<int> bottom;
      if (doc.contains("bottom") && !doc.at("bottom").is_null()) {
        bottom = detail::field<int>(doc, "bottom");
      }
      return TableLattice(detail::square_table<bool>(doc, "leq"),
                          detail::square_table<int>(doc, "join"),
                          detail::square_table<Distance>(doc, "delta"), bottom);
    }
  } catch (const PreconditionError& e) {
    throw FormatError(std::string("invalid ") + family + " lattice: " + e.what());
  } catch (const SizeLimitError& e) {
    throw FormatError(std::string("invalid ") + family + " lattice: " + e.what());
  }
  throw FormatError("unknown lattice family \"" + family + "\"");
}

inline json dump_lattice(const AnySpace& space) {
  return std::visit([](const auto& s) { return lattice_document(s); }, space);
}

inline std::string family_name(const AnySpace& space) {
  return dump_lattice(space).at("family").get<std::string>();
}

// Element encodings: integers for chains and tables, arrays of member
// indices for sets, arrays of counters for vector clocks.

inline json encode_element(const IntegerChain&, int v) { return v; }
inline json encode_element(const TableLattice&, int v) { return v; }

inline json encode_element(const WeightedPowerset& l, ItemSet s) {
  json out = json::array();
  for (std::size_t i = 0; i < l.universe(); ++i) {
    if (s.contains(i)) out.push_back(i);
  }
  return out;
}

inline json encode_element(const VectorClockLattice&, const ClockVector& c) { return c.counters; }

namespace detail {

template <class L>
void require_member(const L& lattice, const element_t<L>& e, const json& raw) {
  if (!lattice.contains(e)) throw FormatError("element " + raw.dump() + " is not in the lattice");
}

}  // namespace detail

inline int decode_element(const IntegerChain& l, const json& v) {
  if (!v.is_number_integer()) throw FormatError("chain elements are integers, got " + v.dump());
  const int e = v.get<int>();
  detail::require_member(l, e, v);
  return e;
}

inline int decode_element(const TableLattice& l, const json& v) {
  if (!v.is_number_integer()) throw FormatError("table elements are integers, got " + v.dump());
  const int e = v.get<int>();
  detail::require_member(l, e, v);
  return e;
}

inline ItemSet decode_element(const WeightedPowerset& l, const json& v) {
  if (!v.is_array()) throw FormatError("set elements are arrays of indices, got " + v.dump());
  ItemSet s;
  for (const auto& item : v) {
    if (!item.is_number_unsigned() || item.get<std::size_t>() >= l.universe()) {
      throw FormatError("set member " + item.dump() + " outside the universe");
    }
    s.bits |= std::uint32_t{1} << item.get<std::size_t>();
  }
  return s;
}

inline ClockVector decode_element(const VectorClockLattice& l, const json& v) {
  ClockVector c;
  try {
    c.counters = v.get<std::vector<std::uint32_t>>();
  } catch (const json::exception&) {
    throw FormatError("vector clock elements are arrays of counters, got " + v.dump());
  }
  detail::require_member(l, c, v);
  return c;
}

template <class L>
json encode_elements(const L& lattice, std::span<const element_t<L>> values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(encode_element(lattice, v));
  return out;
}

template <class L>
std::vector<element_t<L>> decode_elements(const L& lattice, const json& values) {
  if (!values.is_array()) throw FormatError("expected an array of elements");
  std::vector<element_t<L>> out;
  for (const auto& v : values) out.push_back(decode_element(lattice, v));
  return out;
}

// Instance documents
//
//   {"inputs": [..], "outputs": [..], "reconciled": [..], "crashed": [2]}
//
// "reconciled" is optional; "crashed" holds 1-based process numbers.
template <class L>
json instance_document(const L& lattice, const AgreementInstance<element_t<L>>& inst) {
  using E = element_t<L>;
  json doc = {{"inputs", encode_elements(lattice, std::span<const E>(inst.inputs))},
              {"outputs", encode_elements(lattice, std::span<const E>(inst.outputs))},
              {"crashed", inst.crashed}};
  if (inst.reconciled) {
    doc["reconciled"] = encode_elements(lattice, std::span<const E>(*inst.reconciled));
  }
  return doc;
}

template <class L>
AgreementInstance<element_t<L>> load_instance(const L& lattice, const json& doc) {
  if (!doc.is_object()) throw FormatError("instance document must be an object");
  AgreementInstance<element_t<L>> inst;
  inst.inputs = decode_elements(lattice, detail::field<json>(doc, "inputs"));
  inst.outputs = decode_elements(lattice, detail::field<json>(doc, "outputs"));
  if (doc.contains("reconciled") && !doc.at("reconciled").is_null()) {
    inst.reconciled = decode_elements(lattice, doc.at("reconciled"));
  }
  if (doc.contains("crashed")) inst.crashed = detail::field<std::set<std::size_t>>(doc, "crashed");
  try {
    detail::require_shape(inst);
  } catch (const PreconditionError& e) {
    throw FormatError(std::string("invalid instance: ") + e.what());
  }
  return inst;
}

}  // namespace boundla
