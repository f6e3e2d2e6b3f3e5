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

#include "ggdkit/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace ggdkit {

std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    for (const auto& row : cost) {
        if (row.size() != n) throw std::invalid_argument("min_cost_assignment: matrix is not square");
    }
    if (n == 0) return {};

    constexpr double kInf = std::numeric_limits<double>::infinity();

    // Potentials and column ownership, 1-indexed with a virtual column 0.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        owner[0] = i;
        std::size_t j0 = 0;
        std::vector<double> min_slack(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = owner[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < min_slack[j]) {
                    min_slack[j] = cur;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (owner[j0] != 0);
        // Augment along the alternating path back to the virtual column.
        do {
            const std::size_t j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> row_to_col(n, 0);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[owner[j] - 1] = j - 1;
    return row_to_col;
}

}  // namespace ggdkit
