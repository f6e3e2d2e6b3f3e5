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

#include "ggdkit/io.hpp"

#include <fstream>

namespace ggdkit {

namespace {

using nlohmann::json;

void require_object_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
    for (const char* key : keys) {
        if (!j.contains(key)) throw ParseError(what + ": missing field '" + key + "'");
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : keys) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ParseError(what + ": unknown field '" + key + "'");
    }
}

VertexId id_from_json(const json& j, const std::string& what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError(what + ": vertex id must be a string or integer token");
}

Point point_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a nonempty coordinate array");
    Point p;
    p.coords.reserve(j.size());
    for (const json& c : j) {
        if (!c.is_number()) throw ParseError(what + ": coordinates must be numbers");
        p.coords.push_back(c.get<double>());
    }
    return p;
}

}  // namespace

json graph_to_json(const GeometricGraph& g) {
    json vertices = json::array();
    for (const auto& [id, p] : g.vertices()) {
        vertices.push_back({{"id", id}, {"coords", p.coords}});
    }
    json edges = json::array();
    for (const EdgeKey& e : g.edges()) {
        edges.push_back({e.first, e.second});
    }
    return {{"dim", g.dim()}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

GeometricGraph graph_from_json(const json& j) {
    require_object_keys(j, {"dim", "vertices", "edges"}, "graph");
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
        throw ParseError("graph: 'dim' must be a positive integer");
    }
    if (!j["vertices"].is_array() || !j["edges"].is_array()) {
        throw ParseError("graph: 'vertices' and 'edges' must be arrays");
    }
    try {
        GeometricGraph g(j["dim"].get<std::size_t>());
        for (const json& v : j["vertices"]) {
            require_object_keys(v, {"id", "coords"}, "graph vertex");
            g.add_vertex(id_from_json(v["id"], "graph vertex"), point_from_json(v["coords"], "graph vertex"));
        }
        for (const json& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ParseError("graph edge: expected a pair of vertex ids");
            g.add_edge(id_from_json(e[0], "graph edge"), id_from_json(e[1], "graph edge"));
        }
        return g;
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("graph: ") + e.what());
    }
}

json matching_to_json(const Matching& m) {
    json pairs = json::array();
    for (const MatchingPair& p : m.pairs()) {
        json left = p.left ? json(*p.left) : json(nullptr);
        json right = p.right ? json(*p.right) : json(nullptr);
        pairs.push_back({std::move(left), std::move(right)});
    }
    return {{"pairs", std::move(pairs)}};
}

Matching matching_from_json(const json& j) {
    require_object_keys(j, {"pairs"}, "matching");
    if (!j["pairs"].is_array()) throw ParseError("matching: 'pairs' must be an array");
    std::vector<MatchingPair> pairs;
    for (const json& p : j["pairs"]) {
        if (!p.is_array() || p.size() != 2) throw ParseError("matching: each pair must be a 2-element array");
        MatchingPair pair;
        if (!p[0].is_null()) pair.left = id_from_json(p[0], "matching pair");
        if (!p[1].is_null()) pair.right = id_from_json(p[1], "matching pair");
        if (!pair.left && !pair.right) throw ParseError("matching: a pair cannot have both sides null");
        pairs.push_back(std::move(pair));
    }
    return Matching::from_pairs(std::move(pairs));
}

json ops_to_json(const std::vector<EditOp>& ops) {
    json arr = json::array();
    for (const EditOp& op : ops) {
        if (const auto* iv = std::get_if<InsertVertexOp>(&op)) {
            arr.push_back({{"op", "insert_vertex"}, {"id", iv->id}, {"at", iv->at.coords}});
        } else if (const auto* dv = std::get_if<DeleteVertexOp>(&op)) {
            arr.push_back({{"op", "delete_vertex"}, {"id", dv->id}});
        } else if (const auto* ie = std::get_if<InsertEdgeOp>(&op)) {
            arr.push_back({{"op", "insert_edge"}, {"ids", {ie->a, ie->b}}});
        } else if (const auto* de = std::get_if<DeleteEdgeOp>(&op)) {
            arr.push_back({{"op", "delete_edge"}, {"ids", {de->a, de->b}}});
        } else if (const auto* tr = std::get_if<TranslateVertexOp>(&op)) {
            arr.push_back({{"op", "translate"}, {"id", tr->id}, {"to", tr->to.coords}});
        }
    }
    return {{"ops", std::move(arr)}};
}

std::vector<EditOp> ops_from_json(const json& j) {
    require_object_keys(j, {"ops"}, "edit path");
    if (!j["ops"].is_array()) throw ParseError("edit path: 'ops' must be an array");
    std::vector<EditOp> ops;
    for (const json& o : j["ops"]) {
        if (!o.is_object() || !o.contains("op") || !o["op"].is_string()) {
            throw ParseError("edit op: expected an object with an 'op' tag");
        }
        const std::string tag = o["op"].get<std::string>();
        auto ids_field = [&]() -> std::pair<VertexId, VertexId> {
            if (!o.contains("ids") || !o["ids"].is_array() || o["ids"].size() != 2) {
                throw ParseError("edit op '" + tag + "': expected 'ids' with two vertex ids");
            }
            return {id_from_json(o["ids"][0], tag), id_from_json(o["ids"][1], tag)};
        };
        if (tag == "insert_vertex") {
            require_object_keys(o, {"op", "id", "at"}, "insert_vertex");
            ops.push_back(InsertVertexOp{id_from_json(o["id"], tag), point_from_json(o["at"], tag)});
        } else if (tag == "delete_vertex") {
            require_object_keys(o, {"op", "id"}, "delete_vertex");
            ops.push_back(DeleteVertexOp{id_from_json(o["id"], tag)});
        } else if (tag == "insert_edge") {
            require_object_keys(o, {"op", "ids"}, "insert_edge");
            auto [a, b] = ids_field();
            ops.push_back(InsertEdgeOp{a, b});
        } else if (tag == "delete_edge") {
            require_object_keys(o, {"op", "ids"}, "delete_edge");
            auto [a, b] = ids_field();
            ops.push_back(DeleteEdgeOp{a, b});
        } else if (tag == "translate") {
            require_object_keys(o, {"op", "id", "to"}, "translate");
            ops.push_back(TranslateVertexOp{id_from_json(o["id"], tag), point_from_json(o["to"], tag)});
        } else {
            throw ParseError("edit op: unknown tag '" + tag + "'");
        }
    }
    return ops;
}

json instance_to_json(const ThreePartitionInstance& inst) {
    return {{"n", inst.n}, {"b", inst.b}, {"s", inst.s}};
}

ThreePartitionInstance instance_from_json(const json& j) {
    require_object_keys(j, {"n", "b", "s"}, "3-partition instance");
    if (!j["n"].is_number_integer() || !j["b"].is_number_integer() || !j["s"].is_array()) {
        throw ParseError("3-partition instance: 'n' and 'b' must be integers, 's' an array");
    }
    ThreePartitionInstance inst;
    inst.n = j["n"].get<std::size_t>();
    inst.b = j["b"].get<long long>();
    for (const json& a : j["s"]) {
        if (!a.is_number_integer()) throw ParseError("3-partition instance: items must be integers");
        inst.s.push_back(a.get<long long>());
    }
    return inst;
}

json layout_to_json(const ReductionLayout& layout) {
    return {{"tau", layout.tau},
            {"x", layout.x},
            {"l", layout.l},
            {"vertex_spacing", layout.vertex_spacing},
            {"blob_gap", layout.blob_gap}};
}

ReductionLayout layout_from_json(const json& j) {
    require_object_keys(j, {"tau", "x", "l", "vertex_spacing", "blob_gap"}, "reduction layout");
    ReductionLayout layout;
    layout.tau = j["tau"].get<double>();
    layout.x = j["x"].get<double>();
    layout.l = j["l"].get<double>();
    layout.vertex_spacing = j["vertex_spacing"].get<double>();
    layout.blob_gap = j["blob_gap"].get<double>();
    return layout;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

GeometricGraph load_graph(const std::string& path) {
    try {
        return graph_from_json(load_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void save_graph(const std::string& path, const GeometricGraph& g) { save_json_file(path, graph_to_json(g)); }

Matching load_matching(const std::string& path) {
    try {
        return matching_from_json(load_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void save_matching(const std::string& path, const Matching& m) { save_json_file(path, matching_to_json(m)); }

std::vector<EditOp> load_ops(const std::string& path) {
    try {
        return ops_from_json(load_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void save_ops(const std::string& path, const std::vector<EditOp>& ops) { save_json_file(path, ops_to_json(ops)); }

ThreePartitionInstance load_instance(const std::string& path) {
    try {
        return instance_from_json(load_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void save_instance(const std::string& path, const ThreePartitionInstance& inst) {
    save_json_file(path, instance_to_json(inst));
}

ReductionLayout load_layout(const std::string& path) {
    try {
        return layout_from_json(load_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void save_layout(const std::string& path, const ReductionLayout& layout) {
    save_json_file(path, layout_to_json(layout));
}

}  // namespace ggdkit
