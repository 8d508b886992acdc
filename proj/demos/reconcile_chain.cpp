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

// Small walk-through: draw a valid instance on a chain, then reconcile it
// with both protocols and print how far apart the outputs end up.

#include <iostream>
#include <span>

#include "boundla/boundla.hpp"

int main() {
  using namespace boundla;
  const IntegerChain chain(20);
  const auto inputs = std::vector<int>{3, 7, 7, 12, 15};

  NetworkConfig world;
  world.n = inputs.size();
  world.f = 1;
  world.seed = 11;

  for (const auto& rec : {Reconciler::sync(), Reconciler::dr(1), Reconciler::dr(3)}) {
    const auto run = compose_bounded_la(chain, std::span<const int>(inputs), rec, world);
    const auto report = compliance_report(chain, run.instance);
    std::cout << (rec.kind == Reconciler::Kind::kSync ? "sync  " : "dr(" + std::to_string(rec.k) + ")")
              << "  gamma=" << report.gamma.to_string()
              << "  gamma'=" << report.gamma_reconciled->to_string()
              << "  D'=" << report.d_prime.to_string() << '\n';
  }
  return 0;
}
