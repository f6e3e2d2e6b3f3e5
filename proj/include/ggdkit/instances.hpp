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
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ggdkit/editpath.hpp"
#include "ggdkit/geometry.hpp"
#include "ggdkit/matching.hpp"

namespace ggdkit {

/// Two parallel unit segments at vertical distance 1: G from (0,0) to (1,0),
/// H from (0,1) to (1,1).
std::pair<GeometricGraph, GeometricGraph> wiggle_pair();

/// The k-step staircase between the wiggle graphs: 2k translations that
/// alternately raise the left and right vertex by 1/k. Its cost is
/// 2*c_v + c_e * (2/k) / (sqrt(1/k^2 + 1) + 1) and tends to 2*c_v.
EditPath wiggle_edit_path(unsigned k);

/// One-dimensional pair whose graph distance is exactly d_target while every
/// edit path costs at least (1 + c_e/c_v) * d_target: two length-L segments
/// shifted by x, with x = d_target / (2 c_v) and L = (1 + 2 c_v/c_e) x.
std::pair<GeometricGraph, GeometricGraph> tight_pair(double d_target, const CostCoefficients& coeffs);

/// Two-row connected gadget of size k: upper vertices u_1..u_k at height l,
/// lower vertices l_1..l_k offset one spacing to the right at height 0.
/// Edges: slanted (u_j, l_j) for every j and vertical (u_j, l_{j-1}) for
/// j >= 2, so 2k vertices and 2k-1 edges. All vertical edges are congruent,
/// as are all slanted ones.
GeometricGraph blob(unsigned k, double l, double spacing, const Point& origin,
                    const std::string& id_prefix = "");

/// An instance (N, B, S) of the 3-partition problem: 3N positive integers,
/// each strictly between B/4 and B/2, summing to N*B.
struct ThreePartitionInstance {
    std::size_t n = 0;
    long long b = 0;
    std::vector<long long> s;
};

ValidationReport validate_3partition(const ThreePartitionInstance& inst);

struct ReductionLayout {
    double tau = 0.0;
    double x = 0.0;  // bounding-box width
    double l = 0.0;  // row separation / box height
    double vertex_spacing = 0.0;
    double blob_gap = 0.0;
};

struct ReductionEncoding {
    GeometricGraph g;
    GeometricGraph h;
    ReductionLayout layout;
};

/// Encodes a 3-partition instance as a graph-distance decision instance at
/// threshold tau: G holds 3N blobs of sizes a_1..a_3N, H holds N blobs of
/// size B, side by side in a box of width x = tau / (2 c_v (N+1) N B) and
/// height L = tau / (2 c_e (N+1)), all blobs sharing one vertex spacing.
/// Throws ValidationError for invalid instances.
ReductionEncoding encode_reduction(const ThreePartitionInstance& inst, double tau, const CostCoefficients& coeffs);

/// The bijective matching a partition certificate induces: the blobs of each
/// triple land consecutively in their target blob. Its cost is at most
/// 2 c_e N L + 2 c_v N B x = tau. Throws ValidationError when the certificate
/// is not a valid partition.
Matching partition_to_matching(const ThreePartitionInstance& inst,
                               const std::vector<std::array<std::size_t, 3>>& partition,
                               const ReductionLayout& layout, const GeometricGraph& g, const GeometricGraph& h);

/// Exhaustive certificate search; practical only for small N.
std::optional<std::vector<std::array<std::size_t, 3>>> brute_force_3partition(const ThreePartitionInstance& inst);

struct Box {
    std::vector<double> lo, hi;
    static Box cube(std::size_t dim, double lo, double hi);
};

/// Seeded random geometric graph: vertices uniform in the box, edges sampled
/// without replacement. When require_valid_embedding is set, resamples until
/// the embedding check passes (bounded retries).
GeometricGraph random_graph(std::size_t n_vertices, std::size_t n_edges, const Box& box, std::uint64_t seed,
                            bool require_valid_embedding = true);

}  // namespace ggdkit
