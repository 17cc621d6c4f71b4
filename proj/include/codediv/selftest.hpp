// SPDX-License-Identifier: Apache-2.0
//
// codediv: code diversity simulation library for space-time block codes
// Copyright (C) 2026 The codediv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Invariant checks over the code, feedback and decoder modules. Shared by
// `cdiv selftest` and the acceptance runner.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace codediv {

struct PropertyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<PropertyCheck> run_property_suites(std::uint64_t seed = 1);

}  // namespace codediv
