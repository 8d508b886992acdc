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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boundla/core/distance.hpp"
#include "boundla/core/error.hpp"

namespace boundla {

// A finite join-semilattice whose carrier can be enumerated by index.
// Elements must be totally ordered (by some arbitrary order) so they can live
// in ordered containers; that order is unrelated to leq().
template <class L>
concept FiniteLattice = requires(const L& lattice, const typename L::element_type& a,
                                 std::size_t i) {
  typename L::element_type;
  requires std::totally_ordered<typename L::element_type>;
  { lattice.size() } -> std::convertible_to<std::size_t>;
  { lattice.at(i) } -> std::convertible_to<typename L::element_type>;
  { lattice.leq(a, a) } -> std::convertible_to<bool>;
  { lattice.join(a, a) } -> std::convertible_to<typename L::element_type>;
  { lattice.bottom() } -> std::convertible_to<std::optional<typename L::element_type>>;
  { lattice.format(a) } -> std::convertible_to<std::string>;
};

// A finite lattice carrying a quasi-metric. is_normal() is the cached
// height-normality flag; check_normality() recomputes it exhaustively.
template <class S>
concept QuasiMetricSpace = FiniteLattice<S> && requires(const S& space,
                                                        const typename S::element_type& a) {
  { space.distance(a, a) } -> std::same_as<Distance>;
  { space.is_normal() } -> std::convertible_to<bool>;
};

template <class L>
using element_t = typename L::element_type;

struct EnumerationLimits {
  std::size_t max_elements = 4096;
  std::size_t max_violations = 256;
};

template <FiniteLattice L>
void require_enumerable(const L& lattice, const EnumerationLimits& limits) {
  if (lattice.size() > limits.max_elements) {
    throw SizeLimitError("lattice has " + std::to_string(lattice.size()) +
                         " elements, enumeration limit is " +
                         std::to_string(limits.max_elements));
  }
}

template <FiniteLattice L>
std::vector<element_t<L>> elements(const L& lattice) {
  std::vector<element_t<L>> out;
  out.reserve(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) out.push_back(lattice.at(i));
  return out;
}

template <FiniteLattice L>
bool strictly_less(const L& lattice, const element_t<L>& a, const element_t<L>& b) {
  return a != b && lattice.leq(a, b);
}

template <FiniteLattice L>
bool comparable(const L& lattice, const element_t<L>& a, const element_t<L>& b) {
  return lattice.leq(a, b) || lattice.leq(b, a);
}

// Join of a nonempty set of elements.
template <FiniteLattice L>
element_t<L> join_all(const L& lattice, std::span<const element_t<L>> values) {
  if (values.empty()) throw PreconditionError("join of an empty set is undefined");
  element_t<L> acc = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) acc = lattice.join(acc, values[i]);
  return acc;
}

// Maximum of a set that must form a chain. Throws on the first pair that is
// not comparable.
template <FiniteLattice L>
element_t<L> chain_max(const L& lattice, std::span<const element_t<L>> values) {
  if (values.empty()) throw PreconditionError("max of an empty set is undefined");
  element_t<L> best = values.front();
  for (const auto& v : values) {
    if (lattice.leq(best, v)) {
      best = v;
    } else if (!lattice.leq(v, best)) {
      throw PreconditionError("max undefined: " + lattice.format(best) + " and " +
                              lattice.format(v) + " are incomparable");
    }
  }
  return best;
}

template <FiniteLattice L>
element_t<L> chain_min(const L& lattice, std::span<const element_t<L>> values) {
  if (values.empty()) throw PreconditionError("min of an empty set is undefined");
  element_t<L> best = values.front();
  for (const auto& v : values) {
    if (lattice.leq(v, best)) {
      best = v;
    } else if (!lattice.leq(best, v)) {
      throw PreconditionError("min undefined: " + lattice.format(best) + " and " +
                              lattice.format(v) + " are incomparable");
    }
  }
  return best;
}

// Dense index tables of a lattice, built once for the exhaustive checkers.
// join holds -1 where the join escapes the carrier.
template <FiniteLattice L>
struct LatticeTable {
  std::vector<element_t<L>> elements;
  std::map<element_t<L>, std::size_t> index;
  std::vector<std::uint8_t> leq;
  std::vector<std::int64_t> join;
  std::vector<std::vector<std::size_t>> up;  // up[a] = { b : a <= b }

  std::size_t size() const { return elements.size(); }
  bool less_eq(std::size_t a, std::size_t b) const { return leq[a * size() + b] != 0; }
  std::int64_t join_of(std::size_t a, std::size_t b) const { return join[a * size() + b]; }
};

template <FiniteLattice L>
LatticeTable<L> tabulate(const L& lattice, const EnumerationLimits& limits = {}) {
  require_enumerable(lattice, limits);
  LatticeTable<L> table;
  table.elements = elements(lattice);
  const std::size_t n = table.elements.size();
  for (std::size_t i = 0; i < n; ++i) table.index.emplace(table.elements[i], i);
  table.leq.assign(n * n, 0);
  table.join.assign(n * n, -1);
  table.up.assign(n, {});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (lattice.leq(table.elements[a], table.elements[b])) {
        table.leq[a * n + b] = 1;
        table.up[a].push_back(b);
      }
      auto it = table.index.find(lattice.join(table.elements[a], table.elements[b]));
      if (it != table.index.end()) table.join[a * n + b] = static_cast<std::int64_t>(it->second);
    }
  }
  return table;
}

}  // namespace boundla
