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

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace clitest {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

inline Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "boundla");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = boundla::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline std::string data(const std::string& rel) { return std::string(BOUNDLA_DATA_DIR) + "/" + rel; }

}  // namespace clitest
