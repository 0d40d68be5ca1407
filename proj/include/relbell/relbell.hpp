// Copyright 2026 The relbell Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "errors.hpp"
#include "linalg.hpp"
#include "random.hpp"
#include "spin_observable.hpp"
#include "bell_operators.hpp"
#include "state_correlators.hpp"
#include "scenarios.hpp"
#include "violation_search.hpp"
#include "measurement.hpp"
#include "verify.hpp"

namespace relbell {
inline constexpr const char *kVersion = "0.1.0";
}
