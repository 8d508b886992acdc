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

// Success rate of the approximate model against the number of rounds.

#include <iostream>

#include "boundla/boundla.hpp"

int main() {
  using namespace boundla::model;
  ModelConfig cfg;
  cfg.n = 1000;
  cfg.f = 200;
  cfg.initial = InitialKind::kWorstCase;
  cfg.runs = 200;
  cfg.seed = 5;
  const auto result = run_model_rounds(cfg, {1, 2, 3, 4, 5});
  std::cout << format_pivot(result.rows);
  return 0;
}
