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

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "ggdkit/geometry.hpp"
#include "ggdkit/matching.hpp"
#include "ggdkit/solver.hpp"

namespace ggdkit {

// The five edit operations. Vertex insertion and deletion are free; edge
// insertion and deletion cost c_e times the edge length; translating a vertex
// costs c_v times the displacement plus c_e times the length change of every
// incident edge. Only isolated vertices may be deleted.
struct InsertVertexOp {
    VertexId id;
    Point at;
};
struct DeleteVertexOp {
    VertexId id;
};
struct InsertEdgeOp {
    VertexId a, b;
};
struct DeleteEdgeOp {
    VertexId a, b;
};
struct TranslateVertexOp {
    VertexId id;
    Point to;
};

using EditOp = std::variant<InsertVertexOp, DeleteVertexOp, InsertEdgeOp, DeleteEdgeOp, TranslateVertexOp>;

/// A finite op sequence applied to a source graph. Each op must be legal on
/// the state left by its predecessors; intermediate states need not satisfy
/// the non-crossing embedding condition.
struct EditPath {
    GeometricGraph source;
    std::vector<EditOp> ops;
};

struct AppliedOp {
    GeometricGraph state;
    double cost;
};

/// Applies one op, returning the new state and the op cost. Throws
/// std::invalid_argument naming the violated legality rule.
AppliedOp apply_op(const GeometricGraph& state, const EditOp& op, const CostCoefficients& coeffs);

struct PathCostResult {
    double total;
    GeometricGraph final_state;
};

/// Total of the op costs (summed in ascending value order, so a path and its
/// inverse price bit-identically); the final state is returned so callers can
/// verify the path ends where intended. An illegal op raises an error
/// carrying its index.
PathCostResult path_cost(const EditPath& p, const CostCoefficients& coeffs);

/// Reversed sequence of inverse ops, from the path's final state back to its
/// source. Costs the same as the original, summand for summand.
EditPath invert_path(const EditPath& p);

/// Per-op trajectory of one source vertex: its location after each op, with
/// nullopt once deleted (deletion is permanent for the orbit even if the id
/// is reused later).
struct VertexOrbit {
    std::vector<std::optional<Point>> states;  // length ops + 1
};

/// Per-op trajectory of one source edge: its endpoint locations after each
/// op, nullopt once deleted.
struct EdgeOrbit {
    std::vector<std::optional<std::array<Point, 2>>> states;
};

VertexOrbit vertex_orbit(const EditPath& p, const VertexId& u);
EdgeOrbit edge_orbit(const EditPath& p, const EdgeKey& e);

/// c_v times the total displacement along the orbit; steps into or out of the
/// deleted state contribute nothing.
double vertex_orbit_cost(const EditPath& p, const VertexId& u, const CostCoefficients& coeffs);

/// c_e times the total absolute length change along the orbit, with deleted
/// edges carrying length zero.
double edge_orbit_cost(const EditPath& p, const EdgeKey& e, const CostCoefficients& coeffs);

/// End-state lower bound on the path cost: translation of surviving vertices,
/// length change of surviving edges, and deletion charges for source edges
/// the path removed and final edges it inserted. Never exceeds path_cost.
double path_cost_lower_bound(const EditPath& p, const CostCoefficients& coeffs);

/// The matching induced by a path: surviving source vertices pair with their
/// final incarnation, everything else is deleted. Its cost never exceeds the
/// path cost.
Matching path_to_matching(const EditPath& p);

/// Canonical path realizing a matching: delete unmatched g-edges, delete
/// unmatched g-vertices, translate matched vertices onto their images, insert
/// unmatched h-vertices, insert unmatched h-edges, each phase in id order.
/// Costs at most (1 + max_degree * c_e / c_v) times the matching cost.
EditPath matching_to_path(const GeometricGraph& g, const GeometricGraph& h, const Matching& m);

struct GedBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t delta = 0;
    EditPath witness_path;
    /// When false the exact solve hit its budget and `lower` fell back to the
    /// volume-gap bound.
    bool ggd_proven_optimal = true;
};

/// Certified sandwich for the edit distance: the graph distance bounds it
/// from below, and from above both the degree-factor blowup and the concrete
/// witness path apply; the smaller of the two is reported.
GedBounds ged_bounds(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs,
                     const SolveBudget& budget = {});

}  // namespace ggdkit
