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
#include <span>
#include <string>
#include <vector>

#include "boundla/core/error.hpp"

namespace boundla::model {

// One process in the abstract model: crashed, still holding the minimum
// value, or holding something above it. Enumerator order is the value order
// used for max: crashed < zero < one.
enum class Cell : std::uint8_t { kCrashed = 0, kZero = 1, kOne = 2 };

struct ModelState {
  std::vector<Cell> cells;
  std::size_t crashed = 0;  // crashes charged against the budget so far

  std::size_t n() const { return cells.size(); }
  friend bool operator==(const ModelState&, const ModelState&) = default;
};

inline std::size_t count(std::span<const Cell> cells, Cell which) {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), which));
}

// At most f crashed cells and at least one cell holding 1.
inline bool is_in_state_space(std::span<const Cell> cells, std::size_t f) {
  return count(cells, Cell::kCrashed) <= f && count(cells, Cell::kOne) >= 1;
}

// One DR round can move `from` to `to`: crashed cells stay crashed and no 1
// falls back to 0.
inline bool is_reachable(std::span<const Cell> from, std::span<const Cell> to) {
  if (from.size() != to.size()) throw PreconditionError("states have different lengths");
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from[i] == Cell::kCrashed && to[i] != Cell::kCrashed) return false;
    if (from[i] == Cell::kOne && to[i] == Cell::kZero) return false;
  }
  return true;
}

// No zeros left, or no ones left.
inline bool is_improved(std::span<const Cell> cells) {
  return count(cells, Cell::kZero) == 0 || count(cells, Cell::kOne) == 0;
}

inline char cell_char(Cell c) {
  switch (c) {
    case Cell::kCrashed:
      return 'x';
    case Cell::kZero:
      return '0';
    case Cell::kOne:
      return '1';
  }
  return '?';
}

// Parses a state written as a string over {0, 1, x}.
inline std::vector<Cell> parse_cells(const std::string& text) {
  std::vector<Cell> out;
  for (char c : text) {
    switch (c) {
      case '0':
        out.push_back(Cell::kZero);
        break;
      case '1':
        out.push_back(Cell::kOne);
        break;
      case 'x':
      case 'X':
        out.push_back(Cell::kCrashed);
        break;
      case ',':
      case ' ':
        break;
      default:
        throw PreconditionError(std::string("state cells are 0, 1 or x, got '") + c + "'");
    }
  }
  return out;
}

inline std::string format_cells(std::span<const Cell> cells) {
  std::string out;
  out.reserve(cells.size());
  for (Cell c : cells) out.push_back(cell_char(c));
  return out;
}

}  // namespace boundla::model
