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
#include <compare>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "boundla/core/error.hpp"

namespace boundla {

// Absolute tolerance for comparisons of non-integral distances.
inline constexpr double kDistanceTolerance = 1e-9;

// Value of a quasi-metric: a finite nonnegative real, +infinity, or
// undefined (the distance between incomparable elements).
class Distance {
 public:
  enum class Kind : std::uint8_t { kFinite, kInfinite, kUndefined };

  constexpr Distance() = default;

  static Distance finite(double value) {
    if (!std::isfinite(value) || value < 0.0) {
      std::ostringstream os;
      os << "finite distance must be a nonnegative real, got " << value;
      throw PreconditionError(os.str());
    }
    return Distance(Kind::kFinite, value);
  }
  static constexpr Distance infinity() { return Distance(Kind::kInfinite, 0.0); }
  static constexpr Distance undefined() { return Distance(); }
  static constexpr Distance zero() { return Distance(Kind::kFinite, 0.0); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_infinite() const { return kind_ == Kind::kInfinite; }
  constexpr bool is_undefined() const { return kind_ == Kind::kUndefined; }
  constexpr bool is_defined() const { return kind_ != Kind::kUndefined; }

  double value() const {
    if (!is_finite()) throw PreconditionError("distance is not finite: " + to_string());
    return value_;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::kInfinite:
        return "inf";
      case Kind::kUndefined:
        return "undefined";
      case Kind::kFinite:
        break;
    }
    std::ostringstream os;
    os.precision(std::numeric_limits<double>::max_digits10);
    os << value_;
    return os.str();
  }

  friend Distance operator+(const Distance& a, const Distance& b) {
    if (a.is_undefined() || b.is_undefined()) return undefined();
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Distance(Kind::kFinite, a.value_ + b.value_);
  }

  // Exact equality: same kind and, for finite values, bitwise-equal reals.
  friend constexpr bool operator==(const Distance& a, const Distance& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::kFinite || a.value_ == b.value_;
  }

  // Exact order on defined values; undefined is unordered against everything.
  friend constexpr std::partial_ordering operator<=>(const Distance& a, const Distance& b) {
    if (a.is_undefined() || b.is_undefined()) return std::partial_ordering::unordered;
    if (a.is_infinite() && b.is_infinite()) return std::partial_ordering::equivalent;
    if (a.is_infinite()) return std::partial_ordering::greater;
    if (b.is_infinite()) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  constexpr Distance(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_ = Kind::kUndefined;
  double value_ = 0.0;
};

// a <= b up to kDistanceTolerance. Undefined operands throw.
inline bool leq_within_tolerance(const Distance& a, const Distance& b,
                                 double tolerance = kDistanceTolerance) {
  if (a.is_undefined() || b.is_undefined()) {
    throw PreconditionError("cannot compare undefined distances");
  }
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.value() <= b.value() + tolerance;
}

// a < b by more than the tolerance.
inline bool less_beyond_tolerance(const Distance& a, const Distance& b,
                                  double tolerance = kDistanceTolerance) {
  return !leq_within_tolerance(b, a, tolerance);
}

// Maximum of two defined distances.
inline Distance max_distance(const Distance& a, const Distance& b) {
  if (a.is_undefined() || b.is_undefined()) {
    throw PreconditionError("cannot take max of undefined distances");
  }
  return (b > a) ? b : a;
}

}  // namespace boundla
