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
#include <numeric>
#include <span>
#include <vector>

#include "boundla/core/error.hpp"
#include "boundla/core/instance.hpp"
#include "boundla/core/lattice.hpp"
#include "boundla/core/random.hpp"

namespace boundla {

template <FiniteLattice L>
element_t<L> random_element(const L& lattice, Rng& rng) {
  return lattice.at(static_cast<std::size_t>(uniform_index(rng, lattice.size())));
}

// Default input sampler: uniform over the carrier.
struct UniformSampler {
  template <FiniteLattice L>
  element_t<L> operator()(const L& lattice, Rng& rng) const {
    return random_element(lattice, rng);
  }
};

// Builds outputs from a permutation and per-position join depths. With
// J_t = join of x_{perm[0]} .. x_{perm[t-1]}, process perm[t-1] receives
// J_{depth[t-1]}. Every depth must satisfy t <= depth <= n. perm holds 0-based
// process slots.
template <FiniteLattice L>
std::vector<element_t<L>> outputs_from_prefix_joins(const L& lattice,
                                                    std::span<const element_t<L>> inputs,
                                                    std::span<const std::size_t> perm,
                                                    std::span<const std::size_t> depth) {
  const std::size_t n = inputs.size();
  if (perm.size() != n || depth.size() != n) {
    throw PreconditionError("permutation and depths must have one entry per process");
  }
  std::vector<element_t<L>> prefix;
  prefix.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (perm[t] >= n) throw PreconditionError("permutation entry out of range");
    prefix.push_back(t == 0 ? inputs[perm[0]] : lattice.join(prefix.back(), inputs[perm[t]]));
  }
  std::vector<element_t<L>> outputs(inputs.begin(), inputs.end());
  std::vector<bool> seen(n, false);
  for (std::size_t t = 1; t <= n; ++t) {
    const std::size_t d = depth[t - 1];
    if (d < t || d > n) throw PreconditionError("join depth out of range");
    if (seen[perm[t - 1]]) throw PreconditionError("permutation repeats a process");
    seen[perm[t - 1]] = true;
    outputs[perm[t - 1]] = prefix[d - 1];
  }
  return outputs;
}

// Assigns outputs that satisfy Downward-Validity, Upward-Validity and
// Comparability by construction: a uniform permutation orders the inputs and
// each process takes a prefix join at least as deep as its own position.
template <FiniteLattice L>
std::vector<element_t<L>> assign_valid_outputs(const L& lattice,
                                               std::span<const element_t<L>> inputs, Rng& rng) {
  const std::size_t n = inputs.size();
  if (n == 0) throw PreconditionError("need at least one process");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  shuffle(perm, rng);
  std::vector<std::size_t> depth(n);
  for (std::size_t t = 1; t <= n; ++t) depth[t - 1] = uniform_between(rng, t, n);
  return outputs_from_prefix_joins(lattice, inputs, std::span<const std::size_t>(perm),
                                   std::span<const std::size_t>(depth));
}

// Stand-in for a base lattice agreement run: samples n inputs and valid
// outputs for them.
template <FiniteLattice L, class Sampler = UniformSampler>
AgreementInstance<element_t<L>> generate_valid_instance(const L& lattice, std::size_t n, Rng& rng,
                                                        Sampler&& sampler = {}) {
  if (n == 0) throw PreconditionError("need at least one process");
  AgreementInstance<element_t<L>> inst;
  inst.inputs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) inst.inputs.push_back(sampler(lattice, rng));
  inst.outputs = assign_valid_outputs(lattice, std::span<const element_t<L>>(inst.inputs), rng);
  return inst;
}

template <FiniteLattice L, class Sampler = UniformSampler>
AgreementInstance<element_t<L>> generate_valid_instance(const L& lattice, std::size_t n,
                                                        std::uint64_t seed,
                                                        Sampler&& sampler = {}) {
  Rng rng = derive_rng(seed, 0);
  return generate_valid_instance(lattice, n, rng, std::forward<Sampler>(sampler));
}

}  // namespace boundla
