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

#include <stdexcept>
#include <string>

namespace boundla {

// Base of every exception thrown by the library. The CLI maps each subclass
// to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violated a documented precondition (incomparable outputs fed to a
// max, empty bowtie set, mismatched lengths, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration refused because the carrier is larger than the
// configured limit.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Fault budget or crash schedule is inconsistent with the network config.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A lattice, instance, crash-schedule or trace document could not be parsed.
class FormatError : public Error {
 public:
  using Error::Error;
};

// The asynchronous scheduler ran out of deliverable messages while some
// correct process was still waiting.
class DeadlockError : public Error {
 public:
  using Error::Error;
};

// Replay found a trace that does not match what the world produces.
class ReplayError : public Error {
 public:
  using Error::Error;
};

}  // namespace boundla
