// Copyright 2026 The ggdkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

namespace ggdkit {

/// Minimum-cost perfect assignment on a square cost matrix (Kuhn-Munkres with
/// potentials, O(n^3)). Returns the column assigned to each row. Deterministic
/// for a fixed input. Throws std::invalid_argument on non-square input.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace ggdkit
