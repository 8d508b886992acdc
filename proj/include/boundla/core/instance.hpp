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
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "boundla/core/checks.hpp"
#include "boundla/core/distance.hpp"
#include "boundla/core/error.hpp"
#include "boundla/core/lattice.hpp"

namespace boundla {

// Inputs x_i, outputs y_i and optionally reconciled outputs y'_i of one
// agreement run. Process numbers are 1-based everywhere outside the vectors.
template <class E>
struct AgreementInstance {
  std::vector<E> inputs;
  std::vector<E> outputs;
  std::optional<std::vector<E>> reconciled;
  std::set<std::size_t> crashed;

  std::size_t n() const { return inputs.size(); }
  bool correct(std::size_t process) const { return !crashed.contains(process); }

  friend bool operator==(const AgreementInstance&, const AgreementInstance&) = default;
};

enum class OutputSet { kOutputs, kReconciled };

// Outcome of one condition. witness holds 1-based process numbers.
struct ConditionResult {
  bool holds = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

struct InstanceCheck {
  ConditionResult downward_validity;
  ConditionResult upward_validity;
  ConditionResult comparability;
  ConditionResult tightness;

  bool valid() const {
    return downward_validity.holds && upward_validity.holds && comparability.holds;
  }
  bool all() const { return valid() && tightness.holds; }
};

namespace detail {

template <class E>
const std::vector<E>& select(const AgreementInstance<E>& inst, OutputSet which) {
  if (which == OutputSet::kOutputs) return inst.outputs;
  if (!inst.reconciled) throw PreconditionError("instance has no reconciled outputs");
  return *inst.reconciled;
}

template <class E>
void require_shape(const AgreementInstance<E>& inst) {
  if (inst.inputs.empty()) throw PreconditionError("instance has no processes");
  if (inst.outputs.size() != inst.n() ||
      (inst.reconciled && inst.reconciled->size() != inst.n())) {
    throw PreconditionError("inputs and outputs must have one entry per process");
  }
  for (std::size_t p : inst.crashed) {
    if (p == 0 || p > inst.n()) {
      throw PreconditionError("crashed process " + std::to_string(p) + " out of range");
    }
  }
}

}  // namespace detail

// Values produced by the correct processes, in process order.
template <class E>
std::vector<E> correct_values(const AgreementInstance<E>& inst, OutputSet which) {
  const auto& values = detail::select(inst, which);
  std::vector<E> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (inst.correct(i + 1)) out.push_back(values[i]);
  }
  return out;
}

// Checks Downward-Validity, Upward-Validity, Comparability and
// epsilon-Tightness over the correct processes. Tightness ranges over ordered
// pairs y_i <= y_j.
template <QuasiMetricSpace S>
InstanceCheck check_instance(const S& space, const AgreementInstance<element_t<S>>& inst,
                             const Distance& epsilon, OutputSet which = OutputSet::kOutputs) {
  if (epsilon.is_undefined()) throw PreconditionError("epsilon must be defined");
  detail::require_shape(inst);
  const auto& y = detail::select(inst, which);
  const auto top = join_all(space, std::span<const element_t<S>>(inst.inputs));
  InstanceCheck report;
  const std::size_t n = inst.n();

  for (std::size_t i = 0; i < n; ++i) {
    if (!inst.correct(i + 1)) continue;
    if (report.downward_validity.holds && !space.leq(inst.inputs[i], y[i])) {
      report.downward_validity = {false, std::pair{i + 1, i + 1}};
    }
    if (report.upward_validity.holds && !space.leq(y[i], top)) {
      report.upward_validity = {false, std::pair{i + 1, i + 1}};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!inst.correct(i + 1)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !inst.correct(j + 1)) continue;
      if (space.leq(y[i], y[j])) {
        if (report.tightness.holds &&
            !leq_within_tolerance(space.distance(y[i], y[j]), epsilon)) {
          report.tightness = {false, std::pair{i + 1, j + 1}};
        }
      } else if (report.comparability.holds && !space.leq(y[j], y[i])) {
        report.comparability = {false, std::pair{i + 1, j + 1}};
      }
    }
  }
  return report;
}

// The unique compliance gamma: max distance over ordered pairs y_i <= y_j.
template <QuasiMetricSpace S>
Distance compute_gamma(const S& space, std::span<const element_t<S>> outputs) {
  Distance gamma = Distance::zero();
  for (const auto& a : outputs) {
    for (const auto& b : outputs) {
      if (space.leq(a, b)) {
        gamma = max_distance(gamma, space.distance(a, b));
      } else if (!space.leq(b, a)) {
        throw PreconditionError("gamma undefined: outputs " + space.format(a) + " and " +
                                space.format(b) + " are incomparable");
      }
    }
  }
  return gamma;
}

// gamma = d(min Y, max Y), valid only for height-normal metrics.
template <QuasiMetricSpace S>
Distance gamma_normal_fastpath(const S& space, std::span<const element_t<S>> outputs) {
  if (!space.is_normal()) throw PreconditionError("fast gamma path needs a normal quasi-metric");
  if (outputs.empty()) return Distance::zero();
  return space.distance(chain_min(space, outputs), chain_max(space, outputs));
}

template <QuasiMetricSpace S>
Distance instance_gamma(const S& space, const AgreementInstance<element_t<S>>& inst,
                        OutputSet which = OutputSet::kOutputs) {
  const auto values = correct_values(inst, which);
  return compute_gamma(space, std::span<const element_t<S>>(values));
}

// D: max distance over ordered pairs s1 <= s2 with both s bowtie inputs.
// Enumerates the carrier, refusing above the element limit.
template <QuasiMetricSpace S>
Distance compute_D(const S& space, std::span<const element_t<S>> inputs,
                   const EnumerationLimits& limits = {}) {
  if (inputs.empty()) throw PreconditionError("D needs at least one input");
  require_enumerable(space, limits);
  const auto top = join_all(space, inputs);
  std::vector<element_t<S>> between;
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto s = space.at(i);
    if (!space.leq(s, top)) continue;
    for (const auto& x : inputs) {
      if (space.leq(x, s)) {
        between.push_back(std::move(s));
        break;
      }
    }
  }
  Distance best = Distance::zero();
  for (const auto& a : between) {
    for (const auto& b : between) {
      if (space.leq(a, b)) best = max_distance(best, space.distance(a, b));
    }
  }
  return best;
}

// D': max over inputs of d(x_i, join of all inputs).
template <QuasiMetricSpace S>
Distance compute_Dprime(const S& space, std::span<const element_t<S>> inputs) {
  if (inputs.empty()) throw PreconditionError("D' needs at least one input");
  const auto top = join_all(space, inputs);
  Distance best = Distance::zero();
  for (const auto& x : inputs) best = max_distance(best, space.distance(x, top));
  return best;
}

// M: min distance over strictly comparable pairs x < y; infinity when the
// carrier has no such pair.
template <QuasiMetricSpace S>
Distance compute_M(const S& space, const EnumerationLimits& limits = {}) {
  require_enumerable(space, limits);
  const auto all = elements(space);
  Distance best = Distance::infinity();
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (a == b || !space.leq(a, b)) continue;
      const Distance d = space.distance(a, b);
      if (d < best) best = d;
    }
  }
  return best;
}

struct ComplianceReport {
  Distance gamma;
  Distance d;        // undefined when the carrier exceeds the enumeration limit
  Distance d_prime;
  Distance m;        // undefined when the carrier exceeds the enumeration limit
  std::optional<Distance> gamma_reconciled;
  bool improved = false;
};

template <QuasiMetricSpace S>
ComplianceReport compliance_report(const S& space, const AgreementInstance<element_t<S>>& inst,
                                   const EnumerationLimits& limits = {}) {
  detail::require_shape(inst);
  const std::span<const element_t<S>> inputs(inst.inputs);
  ComplianceReport report;
  // With reconciled outputs present, crashes belong to the reconciliation
  // phase and every process still contributed its output to Y.
  report.gamma = inst.reconciled ? compute_gamma(space, std::span<const element_t<S>>(inst.outputs))
                                 : instance_gamma(space, inst);
  report.d_prime = compute_Dprime(space, inputs);
  if (space.size() <= limits.max_elements) {
    report.d = compute_D(space, inputs, limits);
    report.m = compute_M(space, limits);
    if (!leq_within_tolerance(report.d_prime, report.d)) {
      throw Error("internal: D' exceeds D (" + report.d_prime.to_string() + " > " +
                  report.d.to_string() + ")");
    }
  }
  if (inst.reconciled) {
    report.gamma_reconciled = instance_gamma(space, inst, OutputSet::kReconciled);
    report.improved = *report.gamma_reconciled < report.gamma;
  }
  return report;
}

}  // namespace boundla
