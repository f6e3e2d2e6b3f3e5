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

#include <map>
#include <optional>
#include <vector>

#include "ggdkit/geometry.hpp"

namespace ggdkit {

/// One row of an inexact matching. A missing side marks a deletion; pairs with
/// both sides missing are never stored.
struct MatchingPair {
    std::optional<VertexId> left;
    std::optional<VertexId> right;

    friend bool operator==(const MatchingPair&, const MatchingPair&) = default;
};

/// An inexact matching between two vertex sets: every vertex of either side
/// appears in exactly one pair, either matched across or paired with a
/// deletion marker. The structural rules are checked by validate_matching,
/// not at construction, so that malformed inputs can be diagnosed.
class Matching {
public:
    Matching() = default;
    static Matching from_pairs(std::vector<MatchingPair> pairs);

    const std::vector<MatchingPair>& pairs() const { return pairs_; }

    /// Left ids that are matched (right side present), as a forward map.
    std::map<VertexId, VertexId> forward() const;
    /// Right ids that are matched, as a backward map.
    std::map<VertexId, VertexId> backward() const;

    std::size_t matched_count() const;

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<MatchingPair> pairs_;  // canonically sorted
};

/// Every vertex matched to nothing on both sides.
Matching trivial_matching(const GeometricGraph& g, const GeometricGraph& h);

/// Each vertex of g matched to itself.
Matching identity_matching(const GeometricGraph& g);

/// Checks exact-once coverage of both vertex sets and forward/backward
/// consistency of the pair relation.
ValidationReport validate_matching(const GeometricGraph& g, const GeometricGraph& h, const Matching& m);

/// Image of a g-edge: the h-edge its endpoints map onto, or nullopt when the
/// edge is deleted (an endpoint is deleted, or the image pair is not an edge
/// of h). Throws for edges not in g.
std::optional<EdgeKey> edge_image(const GeometricGraph& g, const GeometricGraph& h, const Matching& m,
                                  const EdgeKey& e);

struct MatchingCostBreakdown {
    double vertex_translation = 0.0;
    double edge_translation = 0.0;
    double edge_deletions_g = 0.0;
    double edge_deletions_h = 0.0;
    double total = 0.0;
};

/// Prices a matching: translation of matched vertices, length change of
/// matched edges, and deletion of unmatched edges on either side.
///
/// Each component accumulates its summands in ascending value order and the
/// total is evaluated as (vertex + edge_translation) + (deletions_g +
/// deletions_h), which makes the result bit-identical under inversion of the
/// matching. Throws ValidationError when the matching is invalid.
MatchingCostBreakdown matching_cost(const GeometricGraph& g, const GeometricGraph& h, const Matching& m,
                                    const CostCoefficients& coeffs);

/// Swaps the two sides. Pricing the inverse against (h, g) reproduces the
/// original cost exactly.
Matching invert_matching(const Matching& m);

/// Relational composition over a shared middle vertex set; vertices whose
/// image is deleted midway end up deleted. Throws std::invalid_argument when
/// the middle universes differ.
Matching compose_matchings(const Matching& m1, const Matching& m2);

/// Streams every matching between the vertex sets of g and h exactly once, in
/// a fixed order: matched-subset size ascending, then g-subset, h-subset and
/// assignment permutation each lexicographic over id-sorted vertices.
class MatchingEnumerator {
public:
    MatchingEnumerator(const GeometricGraph& g, const GeometricGraph& h);

    /// Next matching, or nullopt once exhausted.
    std::optional<Matching> next();

private:
    bool advance();
    Matching current() const;

    std::vector<VertexId> gs_, hs_;
    std::size_t k_ = 0;
    std::vector<std::size_t> comb_g_, comb_h_, perm_;
    bool fresh_ = true;
    bool done_ = false;
};

}  // namespace ggdkit
