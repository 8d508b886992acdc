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
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "boundla/core/distance.hpp"
#include "boundla/core/error.hpp"
#include "boundla/core/lattice.hpp"

namespace boundla {

// Integers 0..top under the usual order, join = max, distance b - a.
class IntegerChain {
 public:
  using element_type = int;

  explicit IntegerChain(int top) : top_(top) {
    if (top < 0) throw PreconditionError("chain top must be >= 0");
  }

  int top() const { return top_; }
  std::size_t size() const { return static_cast<std::size_t>(top_) + 1; }
  int at(std::size_t i) const { return static_cast<int>(i); }
  bool contains(int a) const { return a >= 0 && a <= top_; }
  bool leq(int a, int b) const { return a <= b; }
  int join(int a, int b) const { return std::max(a, b); }
  std::optional<int> bottom() const { return 0; }
  std::string format(int a) const { return std::to_string(a); }
  Distance distance(int a, int b) const {
    if (a > b) return Distance::undefined();
    return Distance::finite(static_cast<double>(b - a));
  }
  bool is_normal() const { return true; }

  friend bool operator==(const IntegerChain&, const IntegerChain&) = default;

 private:
  int top_;
};

// Subset of a small universe {0, .., u-1}, stored as a bitmask.
struct ItemSet {
  std::uint32_t bits = 0;

  bool contains(std::size_t item) const { return (bits >> item) & 1U; }
  friend auto operator<=>(const ItemSet&, const ItemSet&) = default;
};

// Powerset of a weighted universe, ordered by inclusion, join = union.
// distance(A, B) = sum of the weights of B \ A for A subset of B.
class WeightedPowerset {
 public:
  using element_type = ItemSet;

  static constexpr std::size_t kMaxUniverse = 24;

  explicit WeightedPowerset(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.size() > kMaxUniverse) {
      throw SizeLimitError("powerset universe limited to " + std::to_string(kMaxUniverse));
    }
    for (double w : weights_) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw PreconditionError("powerset weights must be finite and strictly positive");
      }
    }
  }

  const std::vector<double>& weights() const { return weights_; }
  std::size_t universe() const { return weights_.size(); }
  std::size_t size() const { return std::size_t{1} << weights_.size(); }
  ItemSet at(std::size_t i) const { return ItemSet{static_cast<std::uint32_t>(i)}; }
  bool contains(ItemSet a) const { return (a.bits >> weights_.size()) == 0; }
  bool leq(ItemSet a, ItemSet b) const { return (a.bits & ~b.bits) == 0; }
  ItemSet join(ItemSet a, ItemSet b) const { return ItemSet{a.bits | b.bits}; }
  std::optional<ItemSet> bottom() const { return ItemSet{}; }

  std::string format(ItemSet a) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (!a.contains(i)) continue;
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
    return out + "}";
  }

  Distance distance(ItemSet a, ItemSet b) const {
    if (!leq(a, b)) return Distance::undefined();
    double sum = 0.0;
    const std::uint32_t diff = b.bits & ~a.bits;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if ((diff >> i) & 1U) sum += weights_[i];
    }
    return Distance::finite(sum);
  }
  bool is_normal() const { return true; }

  friend bool operator==(const WeightedPowerset&, const WeightedPowerset&) = default;

 private:
  std::vector<double> weights_;
};

// Vector of per-process counters.
struct ClockVector {
  std::vector<std::uint32_t> counters;

  friend auto operator<=>(const ClockVector&, const ClockVector&) = default;
};

// Vector clocks of a fixed dimension with every coordinate in [0, cap].
// Order is componentwise, join is componentwise max, and
// distance(a, b) = sum(b) - sum(a) for a <= b.
class VectorClockLattice {
 public:
  using element_type = ClockVector;

  VectorClockLattice(std::size_t dimension, std::uint32_t cap)
      : dimension_(dimension), cap_(cap) {
    if (dimension == 0) throw PreconditionError("vector clock dimension must be >= 1");
    std::size_t size = 1;
    for (std::size_t d = 0; d < dimension; ++d) {
      if (size > (std::size_t{1} << 40) / (cap + 1)) {
        throw SizeLimitError("vector clock carrier too large to index");
      }
      size *= cap + 1;
    }
    size_ = size;
  }

  std::size_t dimension() const { return dimension_; }
  std::uint32_t cap() const { return cap_; }
  std::size_t size() const { return size_; }

  ClockVector at(std::size_t i) const {
    ClockVector v{std::vector<std::uint32_t>(dimension_, 0)};
    for (std::size_t d = 0; d < dimension_; ++d) {
      v.counters[d] = static_cast<std::uint32_t>(i % (cap_ + 1));
      i /= cap_ + 1;
    }
    return v;
  }

  bool contains(const ClockVector& a) const {
    return a.counters.size() == dimension_ &&
           std::all_of(a.counters.begin(), a.counters.end(),
                       [this](std::uint32_t c) { return c <= cap_; });
  }

  bool leq(const ClockVector& a, const ClockVector& b) const {
    for (std::size_t d = 0; d < dimension_; ++d) {
      if (a.counters[d] > b.counters[d]) return false;
    }
    return true;
  }

  ClockVector join(const ClockVector& a, const ClockVector& b) const {
    ClockVector out{a.counters};
    for (std::size_t d = 0; d < dimension_; ++d) {
      out.counters[d] = std::max(a.counters[d], b.counters[d]);
    }
    return out;
  }

  std::optional<ClockVector> bottom() const {
    return ClockVector{std::vector<std::uint32_t>(dimension_, 0)};
  }

  std::string format(const ClockVector& a) const {
    std::string out = "(";
    for (std::size_t d = 0; d < a.counters.size(); ++d) {
      if (d) out += ',';
      out += std::to_string(a.counters[d]);
    }
    return out + ")";
  }

  Distance distance(const ClockVector& a, const ClockVector& b) const {
    if (!leq(a, b)) return Distance::undefined();
    const auto sum = [](const ClockVector& v) {
      return std::accumulate(v.counters.begin(), v.counters.end(), std::uint64_t{0});
    };
    return Distance::finite(static_cast<double>(sum(b) - sum(a)));
  }
  bool is_normal() const { return true; }

  friend bool operator==(const VectorClockLattice&, const VectorClockLattice&) = default;

 private:
  std::size_t dimension_;
  std::uint32_t cap_;
  std::size_t size_ = 0;
};

// Fully explicit lattice over indices 0..N-1: order, join and distance are
// tables. Nothing is validated at construction, so malformed structures can be
// built and handed to the checkers.
class TableLattice {
 public:
  using element_type = int;

  TableLattice(std::vector<std::vector<bool>> leq, std::vector<std::vector<int>> join,
               std::vector<std::vector<Distance>> delta, std::optional<int> bottom)
      : leq_(std::move(leq)), join_(std::move(join)), delta_(std::move(delta)),
        bottom_(bottom) {
    const std::size_t n = leq_.size();
    const auto square = [n](const auto& m) {
      return m.size() == n &&
             std::all_of(m.begin(), m.end(), [n](const auto& row) { return row.size() == n; });
    };
    if (n == 0 || !square(leq_) || !square(join_) || !square(delta_)) {
      throw PreconditionError("table lattice needs nonempty square leq/join/delta tables");
    }
    normal_ = compute_normal();
  }

  // Chain 0 < 1 < .. < N-1 with an arbitrary distance table; entries below the
  // diagonal are ignored and stored as undefined.
  static TableLattice chain(const std::vector<std::vector<Distance>>& delta) {
    const std::size_t n = delta.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    std::vector<std::vector<int>> join(n, std::vector<int>(n));
    std::vector<std::vector<Distance>> d(n, std::vector<Distance>(n));
    for (std::size_t a = 0; a < n; ++a) {
      if (delta[a].size() != n) throw PreconditionError("chain distance table must be square");
      for (std::size_t b = 0; b < n; ++b) {
        leq[a][b] = a <= b;
        join[a][b] = static_cast<int>(std::max(a, b));
        d[a][b] = a <= b ? delta[a][b] : Distance::undefined();
      }
    }
    TableLattice out(std::move(leq), std::move(join), std::move(d), 0);
    out.is_chain_ = true;
    return out;
  }

  bool is_chain() const { return is_chain_; }
  std::size_t size() const { return leq_.size(); }
  int at(std::size_t i) const { return static_cast<int>(i); }
  bool contains(int a) const { return a >= 0 && static_cast<std::size_t>(a) < size(); }
  bool leq(int a, int b) const { return leq_[idx(a)][idx(b)]; }
  int join(int a, int b) const { return join_[idx(a)][idx(b)]; }
  std::optional<int> bottom() const { return bottom_; }
  std::string format(int a) const { return std::to_string(a); }
  Distance distance(int a, int b) const { return delta_[idx(a)][idx(b)]; }
  bool is_normal() const { return normal_; }

  const std::vector<std::vector<bool>>& leq_table() const { return leq_; }
  const std::vector<std::vector<int>>& join_table() const { return join_; }
  const std::vector<std::vector<Distance>>& distance_table() const { return delta_; }

  friend bool operator==(const TableLattice& a, const TableLattice& b) {
    return a.leq_ == b.leq_ && a.join_ == b.join_ && a.delta_ == b.delta_ &&
           a.bottom_ == b.bottom_ && a.is_chain_ == b.is_chain_;
  }

 private:
  std::size_t idx(int a) const {
    if (!contains(a)) throw PreconditionError("element " + std::to_string(a) + " not in table");
    return static_cast<std::size_t>(a);
  }

  bool compute_normal() const {
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!leq_[a][b]) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (!leq_[b][c]) continue;
          const Distance& ab = delta_[a][b];
          const Distance& bc = delta_[b][c];
          const Distance& ac = delta_[a][c];
          if (ab.is_undefined() || bc.is_undefined() || ac.is_undefined()) return false;
          if (!leq_within_tolerance(ab, ac) || !leq_within_tolerance(bc, ac)) return false;
        }
      }
    }
    return true;
  }

  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<int>> join_;
  std::vector<std::vector<Distance>> delta_;
  std::optional<int> bottom_;
  bool normal_ = false;
  bool is_chain_ = false;
};

static_assert(QuasiMetricSpace<IntegerChain>);
static_assert(QuasiMetricSpace<WeightedPowerset>);
static_assert(QuasiMetricSpace<VectorClockLattice>);
static_assert(QuasiMetricSpace<TableLattice>);

}  // namespace boundla
