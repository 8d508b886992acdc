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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boundla/core/distance.hpp"
#include "boundla/core/error.hpp"
#include "boundla/core/lattice.hpp"

namespace boundla {

// One failed axiom. description() reads like "antisymmetry (0,1)" or
// "(iii) at (0,1,2)".
struct Violation {
  std::string axiom;
  std::string witness;

  std::string description() const { return axiom + " " + witness; }
};

namespace detail {

class ViolationSink {
 public:
  explicit ViolationSink(std::size_t cap) : cap_(cap) {}

  void add(std::string axiom, std::string witness) {
    if (out_.size() < cap_) out_.push_back({std::move(axiom), std::move(witness)});
  }
  bool full() const { return out_.size() >= cap_; }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::size_t cap_;
  std::vector<Violation> out_;
};

template <FiniteLattice L>
std::string tuple_of(const L& lattice, std::initializer_list<element_t<L>> values) {
  std::string out = "(";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ',';
    out += lattice.format(v);
    first = false;
  }
  return out + ")";
}

}  // namespace detail

// Exhaustively checks the partial-order and join axioms. Returns an empty list
// iff every axiom holds; at most limits.max_violations entries are reported.
template <FiniteLattice L>
std::vector<Violation> verify_lattice(const L& lattice, const EnumerationLimits& limits = {}) {
  const LatticeTable<L> t = tabulate(lattice, limits);
  const std::size_t n = t.size();
  const auto& e = t.elements;
  detail::ViolationSink sink(limits.max_violations);
  const auto fmt = [&](std::initializer_list<element_t<L>> v) {
    return detail::tuple_of(lattice, v);
  };

  for (std::size_t a = 0; a < n; ++a) {
    if (!t.less_eq(a, a)) sink.add("reflexivity", fmt({e[a]}));
    for (std::size_t b = a + 1; b < n; ++b) {
      if (t.less_eq(a, b) && t.less_eq(b, a)) sink.add("antisymmetry", fmt({e[a], e[b]}));
    }
  }
  for (std::size_t a = 0; a < n && !sink.full(); ++a) {
    for (std::size_t b : t.up[a]) {
      for (std::size_t c : t.up[b]) {
        if (!t.less_eq(a, c)) sink.add("transitivity", fmt({e[a], e[b], e[c]}));
      }
    }
  }

  for (std::size_t a = 0; a < n && !sink.full(); ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::int64_t j = t.join_of(a, b);
      if (j < 0) {
        sink.add("join-closure", fmt({e[a], e[b]}));
        continue;
      }
      const auto js = static_cast<std::size_t>(j);
      if (a == b && js != a) sink.add("join-idempotence", fmt({e[a]}));
      if (t.join_of(b, a) != j) sink.add("join-commutativity", fmt({e[a], e[b]}));
      if (!t.less_eq(a, js) || !t.less_eq(b, js)) {
        sink.add("join-upper-bound", fmt({e[a], e[b]}));
      }
      for (std::size_t c : t.up[a]) {
        if (t.less_eq(b, c) && !t.less_eq(js, c)) {
          sink.add("join-least", fmt({e[a], e[b], e[c]}));
        }
      }
    }
  }

  for (std::size_t a = 0; a < n && !sink.full(); ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::int64_t ab = t.join_of(a, b);
      if (ab < 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const std::int64_t bc = t.join_of(b, c);
        if (bc < 0) continue;
        const std::int64_t left = t.join_of(static_cast<std::size_t>(ab), c);
        const std::int64_t right = t.join_of(a, static_cast<std::size_t>(bc));
        if (left != right) sink.add("join-associativity", fmt({e[a], e[b], e[c]}));
      }
    }
  }

  if (const auto bot = lattice.bottom()) {
    auto it = t.index.find(*bot);
    if (it == t.index.end()) {
      sink.add("bottom", fmt({*bot}) + " not in carrier");
    } else {
      for (std::size_t x = 0; x < n; ++x) {
        if (!t.less_eq(it->second, x)) sink.add("bottom", fmt({*bot, e[x]}));
      }
    }
  }
  return sink.take();
}

namespace detail {

template <QuasiMetricSpace S>
std::vector<Distance> distance_matrix(const S& space, const LatticeTable<S>& t) {
  const std::size_t n = t.size();
  std::vector<Distance> d(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) d[a * n + b] = space.distance(t.elements[a], t.elements[b]);
  }
  return d;
}

}  // namespace detail

// Exhaustively checks quasi-metric axioms (i)-(iii) over all pairs and all
// chains a <= b <= c.
template <QuasiMetricSpace S>
std::vector<Violation> verify_quasi_metric(const S& space, const EnumerationLimits& limits = {}) {
  const LatticeTable<S> t = tabulate(space, limits);
  const std::size_t n = t.size();
  const auto& e = t.elements;
  const std::vector<Distance> d = detail::distance_matrix(space, t);
  detail::ViolationSink sink(limits.max_violations);
  const auto fmt = [&](std::initializer_list<element_t<S>> v) {
    return detail::tuple_of(space, v);
  };

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Distance& ab = d[a * n + b];
      if ((a == b) != (ab == Distance::zero())) sink.add("(i)", "at " + fmt({e[a], e[b]}));
      if (t.less_eq(a, b) != ab.is_defined()) sink.add("(ii)", "at " + fmt({e[a], e[b]}));
    }
  }
  for (std::size_t a = 0; a < n && !sink.full(); ++a) {
    for (std::size_t b : t.up[a]) {
      for (std::size_t c : t.up[b]) {
        const Distance& ab = d[a * n + b];
        const Distance& bc = d[b * n + c];
        const Distance& ac = d[a * n + c];
        if (ab.is_undefined() || bc.is_undefined() || ac.is_undefined()) continue;  // (ii) reports
        if (!leq_within_tolerance(ac, ab + bc)) {
          sink.add("(iii)", "at " + fmt({e[a], e[b], e[c]}));
        }
      }
    }
  }
  return sink.take();
}

template <class E>
struct NormalityResult {
  bool normal = true;
  std::optional<std::array<E, 3>> witness;  // a <= b <= c breaking normality
};

// Height-normality: d(a,b) <= d(a,c) and d(b,c) <= d(a,c) for every chain
// a <= b <= c. Reports the first counterexample in carrier order.
template <QuasiMetricSpace S>
NormalityResult<element_t<S>> check_normality(const S& space, const EnumerationLimits& limits = {}) {
  const LatticeTable<S> t = tabulate(space, limits);
  const std::size_t n = t.size();
  const std::vector<Distance> d = detail::distance_matrix(space, t);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b : t.up[a]) {
      for (std::size_t c : t.up[b]) {
        const Distance& ab = d[a * n + b];
        const Distance& bc = d[b * n + c];
        const Distance& ac = d[a * n + c];
        const bool ok = ab.is_defined() && bc.is_defined() && ac.is_defined() &&
                        leq_within_tolerance(ab, ac) && leq_within_tolerance(bc, ac);
        if (!ok) {
          return {false, std::array<element_t<S>, 3>{t.elements[a], t.elements[b], t.elements[c]}};
        }
      }
    }
  }
  return {};
}

// y lies between some member of `set` and the join of `set`.
template <FiniteLattice L>
bool bowtie(const L& lattice, const element_t<L>& y, std::span<const element_t<L>> set) {
  if (set.empty()) throw PreconditionError("bowtie needs a nonempty set");
  if (!lattice.leq(y, join_all(lattice, set))) return false;
  for (const auto& s : set) {
    if (lattice.leq(s, y)) return true;
  }
  return false;
}

}  // namespace boundla
