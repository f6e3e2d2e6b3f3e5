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

#include <string>

#include <json.hpp>

#include "ggdkit/editpath.hpp"
#include "ggdkit/geometry.hpp"
#include "ggdkit/instances.hpp"
#include "ggdkit/matching.hpp"

namespace ggdkit {

/// Raised for malformed files: bad JSON, missing or unknown fields, duplicate
/// edges, type errors.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Graph format:
//   {"dim": 2,
//    "vertices": [{"id": "u1", "coords": [0.0, 1.0]}, ...],
//    "edges": [["u1", "u2"], ...]}
// Unknown fields are rejected; edge pairs are order-insensitive and
// duplicates are errors. Integer ids are accepted and normalized to strings.
nlohmann::json graph_to_json(const GeometricGraph& g);
GeometricGraph graph_from_json(const nlohmann::json& j);

// Matching format: {"pairs": [["u1", "v1"], ["u2", null], [null, "v3"]]}
// with null marking a deletion.
nlohmann::json matching_to_json(const Matching& m);
Matching matching_from_json(const nlohmann::json& j);

// Edit-op list format:
//   {"ops": [{"op": "translate", "id": "u1", "to": [0.0, 1.0]},
//            {"op": "delete_edge", "ids": ["u1", "u2"]}, ...]}
// with tags insert_vertex (id, at), delete_vertex (id), insert_edge /
// delete_edge (ids), translate (id, to). The source graph travels separately.
nlohmann::json ops_to_json(const std::vector<EditOp>& ops);
std::vector<EditOp> ops_from_json(const nlohmann::json& j);

// 3-partition instance: {"n": 2, "b": 6, "s": [2, 2, 2, 2, 2, 2]}
nlohmann::json instance_to_json(const ThreePartitionInstance& inst);
ThreePartitionInstance instance_from_json(const nlohmann::json& j);

// Reduction layout sidecar.
nlohmann::json layout_to_json(const ReductionLayout& layout);
ReductionLayout layout_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

GeometricGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const GeometricGraph& g);
Matching load_matching(const std::string& path);
void save_matching(const std::string& path, const Matching& m);
std::vector<EditOp> load_ops(const std::string& path);
void save_ops(const std::string& path, const std::vector<EditOp>& ops);
ThreePartitionInstance load_instance(const std::string& path);
void save_instance(const std::string& path, const ThreePartitionInstance& inst);
ReductionLayout load_layout(const std::string& path);
void save_layout(const std::string& path, const ReductionLayout& layout);

}  // namespace ggdkit
