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

#include <cstdint>
#include <optional>

#include "ggdkit/geometry.hpp"
#include "ggdkit/matching.hpp"

namespace ggdkit {

/// Limits for the exact search. With no limits the search is exhaustive.
struct SolveBudget {
    std::optional<std::uint64_t> max_nodes;
    std::optional<double> time_limit_seconds;
};

struct SolveOptions {
    SolveBudget budget;
    /// Worker count for the search; 1 runs the serial reference path. The
    /// returned value is identical for any worker count on completed solves.
    int threads = 1;
    /// Disabling pruning explores the full tree; kept for soundness testing.
    bool use_pruning = true;
};

struct GgdResult {
    double value = 0.0;
    Matching witness;
    std::uint64_t nodes_explored = 0;
    /// False only when a budget was exhausted; the value is then the best
    /// incumbent found, still a sound upper bound.
    bool proven_optimal = true;
};

struct DecisionResult {
    /// True iff a matching of cost <= tau was found; never falsely true.
    bool satisfied = false;
    /// True iff the answer is definitive (witness found, or the full search
    /// space was exhausted without one).
    bool completed = false;
    std::optional<Matching> witness;
    std::uint64_t nodes_explored = 0;
};

/// Volume-gap lower bound: c_e * |Vol(G) - Vol(H)|.
double ggd_lower_bound(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs);

/// Cost of deleting everything: c_e * (Vol(G) + Vol(H)).
double ggd_upper_bound_trivial(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs);

struct AssignmentUpperBound {
    double value = 0.0;
    Matching witness;
};

/// Feasible upper bound from a min-cost vertex assignment: pairing a vertex
/// pair costs c_v times their distance, deleting a vertex costs half of c_e
/// times its incident edge length. The returned value is the exact price of
/// the witness matching; when the assignment's witness prices above the
/// all-deleting matching, the latter is returned instead, so the bound never
/// exceeds the trivial one.
AssignmentUpperBound ggd_upper_bound_assignment(const GeometricGraph& g, const GeometricGraph& h,
                                                const CostCoefficients& coeffs);

/// Exact geometric graph distance by branch and bound over vertex
/// assignments. Branches on g-vertices in decreasing-degree order, trying
/// unmatched h-vertices by increasing pairing cost before deletion. Partial
/// states are bounded by their decided exact cost plus the volume gap of the
/// undecided remainder; complete matchings are re-priced through
/// matching_cost so the value follows the same arithmetic path as exhaustive
/// enumeration. Throws on dimension mismatch.
GgdResult ggd_exact(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs,
                    const SolveOptions& options = {});

/// Decision variant: is there a matching of cost <= tau? Exits as soon as a
/// witness is priced at or below tau; the supplied hint (when given) and the
/// assignment/trivial incumbents are tried before any search.
DecisionResult ggd_decision(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs,
                            double tau, const SolveOptions& options = {},
                            const std::optional<Matching>& hint = std::nullopt);

}  // namespace ggdkit
