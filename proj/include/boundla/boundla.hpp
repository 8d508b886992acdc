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

#include "boundla/core/checks.hpp"
#include "boundla/core/distance.hpp"
#include "boundla/core/error.hpp"
#include "boundla/core/families.hpp"
#include "boundla/core/instance.hpp"
#include "boundla/core/io.hpp"
#include "boundla/core/lattice.hpp"
#include "boundla/core/random.hpp"
#include "boundla/model/reference.hpp"
#include "boundla/model/report.hpp"
#include "boundla/model/simulate.hpp"
#include "boundla/model/state.hpp"
#include "boundla/protocols/compose.hpp"
#include "boundla/protocols/dr.hpp"
#include "boundla/protocols/generate.hpp"
#include "boundla/protocols/sync.hpp"
#include "boundla/sim/config.hpp"
#include "boundla/sim/outcome.hpp"
#include "boundla/sim/replay.hpp"
#include "boundla/sim/trace.hpp"
#include "boundla/sim/world.hpp"
