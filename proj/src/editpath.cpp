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

#include "ggdkit/editpath.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace ggdkit {

namespace {

GeometricGraph rebuild(std::size_t dim, const std::map<VertexId, Point>& vertices, const std::set<EdgeKey>& edges) {
    GeometricGraph g(dim);
    for (const auto& [id, p] : vertices) g.add_vertex(id, p);
    for (const EdgeKey& e : edges) g.add_edge(e.first, e.second);
    return g;
}

// Incident-edge length-change sum for a translation, neighbors in id order.
double translate_edge_cost(const GeometricGraph& state, const VertexId& id, const Point& from, const Point& to,
                           double c_e) {
    double sum = 0.0;
    for (const EdgeKey& e : state.edges()) {
        const VertexId* other = nullptr;
        if (e.first == id) other = &e.second;
        else if (e.second == id) other = &e.first;
        else continue;
        const Point& s = state.vertex(*other);
        sum += c_e * std::fabs(distance(s, from) - distance(s, to));
    }
    return sum;
}

struct OpApplier {
    const GeometricGraph& state;
    const CostCoefficients& coeffs;

    AppliedOp operator()(const InsertVertexOp& op) const {
        if (state.has_vertex(op.id)) {
            throw std::invalid_argument("insert_vertex: id '" + op.id + "' already exists");
        }
        auto vertices = state.vertices();
        vertices.emplace(op.id, op.at);
        return {rebuild(state.dim(), vertices, state.edges()), 0.0};
    }

    AppliedOp operator()(const DeleteVertexOp& op) const {
        if (!state.has_vertex(op.id)) {
            throw std::invalid_argument("delete_vertex: unknown vertex '" + op.id + "'");
        }
        if (state.degree(op.id) != 0) {
            throw std::invalid_argument("delete_vertex: vertex '" + op.id + "' is not isolated");
        }
        auto vertices = state.vertices();
        vertices.erase(op.id);
        return {rebuild(state.dim(), vertices, state.edges()), 0.0};
    }

    AppliedOp operator()(const InsertEdgeOp& op) const {
        const EdgeKey e = make_edge(op.a, op.b);
        if (!state.has_vertex(e.first) || !state.has_vertex(e.second)) {
            throw std::invalid_argument("insert_edge: both endpoints must exist ('" + e.first + "', '" +
                                        e.second + "')");
        }
        if (state.has_edge(e.first, e.second)) {
            throw std::invalid_argument("insert_edge: edge (" + e.first + ", " + e.second + ") already exists");
        }
        auto edges = state.edges();
        edges.insert(e);
        const double len = distance(state.vertex(e.first), state.vertex(e.second));
        return {rebuild(state.dim(), state.vertices(), edges), coeffs.c_e * len};
    }

    AppliedOp operator()(const DeleteEdgeOp& op) const {
        const EdgeKey e = make_edge(op.a, op.b);
        if (!state.has_edge(e.first, e.second)) {
            throw std::invalid_argument("delete_edge: edge (" + e.first + ", " + e.second + ") does not exist");
        }
        auto edges = state.edges();
        edges.erase(e);
        const double len = distance(state.vertex(e.first), state.vertex(e.second));
        return {rebuild(state.dim(), state.vertices(), edges), coeffs.c_e * len};
    }

    AppliedOp operator()(const TranslateVertexOp& op) const {
        if (!state.has_vertex(op.id)) {
            throw std::invalid_argument("translate: unknown vertex '" + op.id + "'");
        }
        if (op.to.dim() != state.dim()) {
            throw std::invalid_argument("translate: target point has wrong dimension");
        }
        const Point from = state.vertex(op.id);
        const double cost =
            coeffs.c_v * distance(from, op.to) + translate_edge_cost(state, op.id, from, op.to, coeffs.c_e);
        auto vertices = state.vertices();
        vertices.at(op.id) = op.to;
        return {rebuild(state.dim(), vertices, state.edges()), cost};
    }
};

}  // namespace

AppliedOp apply_op(const GeometricGraph& state, const EditOp& op, const CostCoefficients& coeffs) {
    coeffs.validate();
    return std::visit(OpApplier{state, coeffs}, op);
}

PathCostResult path_cost(const EditPath& p, const CostCoefficients& coeffs) {
    coeffs.validate();
    GeometricGraph state = p.source;
    std::vector<double> op_costs;
    op_costs.reserve(p.ops.size());
    for (std::size_t i = 0; i < p.ops.size(); ++i) {
        try {
            AppliedOp applied = apply_op(state, p.ops[i], coeffs);
            op_costs.push_back(applied.cost);
            state = std::move(applied.state);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("op " + std::to_string(i) + ": " + e.what());
        }
    }
    // Ascending-order summation: a path and its inverse share the same
    // multiset of op costs, so their totals come out bit-identical.
    std::sort(op_costs.begin(), op_costs.end());
    double total = 0.0;
    for (double c : op_costs) total += c;
    return {total, std::move(state)};
}

EditPath invert_path(const EditPath& p) {
    const CostCoefficients unit{1.0, 1.0};
    GeometricGraph state = p.source;
    std::vector<EditOp> inverses;
    inverses.reserve(p.ops.size());
    for (std::size_t i = 0; i < p.ops.size(); ++i) {
        const EditOp& op = p.ops[i];
        if (const auto* iv = std::get_if<InsertVertexOp>(&op)) {
            inverses.push_back(DeleteVertexOp{iv->id});
        } else if (const auto* dv = std::get_if<DeleteVertexOp>(&op)) {
            if (!state.has_vertex(dv->id)) {
                throw std::invalid_argument("op " + std::to_string(i) + ": delete_vertex: unknown vertex '" +
                                            dv->id + "'");
            }
            inverses.push_back(InsertVertexOp{dv->id, state.vertex(dv->id)});
        } else if (const auto* ie = std::get_if<InsertEdgeOp>(&op)) {
            inverses.push_back(DeleteEdgeOp{ie->a, ie->b});
        } else if (const auto* de = std::get_if<DeleteEdgeOp>(&op)) {
            inverses.push_back(InsertEdgeOp{de->a, de->b});
        } else if (const auto* tr = std::get_if<TranslateVertexOp>(&op)) {
            if (!state.has_vertex(tr->id)) {
                throw std::invalid_argument("op " + std::to_string(i) + ": translate: unknown vertex '" + tr->id +
                                            "'");
            }
            inverses.push_back(TranslateVertexOp{tr->id, state.vertex(tr->id)});
        }
        state = apply_op(state, op, unit).state;
    }
    std::reverse(inverses.begin(), inverses.end());
    return {std::move(state), std::move(inverses)};
}

namespace {

// Tracks one subject through the op sequence. Deletion sticks: a later
// insert reusing the id belongs to a different orbit.
template <typename IsSubjectDeletion, typename Snapshot>
auto trace_orbit(const EditPath& p, IsSubjectDeletion is_deletion, Snapshot snapshot) {
    using OptState = std::invoke_result_t<Snapshot, const GeometricGraph&>;
    const CostCoefficients unit{1.0, 1.0};
    std::vector<OptState> states;
    states.reserve(p.ops.size() + 1);
    GeometricGraph state = p.source;
    bool alive = true;
    states.push_back(snapshot(state));
    for (const EditOp& op : p.ops) {
        if (alive && is_deletion(op)) alive = false;
        state = apply_op(state, op, unit).state;
        states.push_back(alive ? snapshot(state) : OptState{});
    }
    return states;
}

}  // namespace

VertexOrbit vertex_orbit(const EditPath& p, const VertexId& u) {
    if (!p.source.has_vertex(u)) {
        throw std::invalid_argument("vertex_orbit: '" + u + "' is not a vertex of the source graph");
    }
    auto states = trace_orbit(
        p,
        [&](const EditOp& op) {
            const auto* dv = std::get_if<DeleteVertexOp>(&op);
            return dv && dv->id == u;
        },
        [&](const GeometricGraph& s) { return std::optional<Point>(s.vertex(u)); });
    VertexOrbit orbit;
    orbit.states.assign(states.begin(), states.end());
    return orbit;
}

EdgeOrbit edge_orbit(const EditPath& p, const EdgeKey& e) {
    const EdgeKey key = make_edge(e.first, e.second);
    if (!p.source.edges().count(key)) {
        throw std::invalid_argument("edge_orbit: (" + key.first + ", " + key.second +
                                    ") is not an edge of the source graph");
    }
    auto states = trace_orbit(
        p,
        [&](const EditOp& op) {
            const auto* de = std::get_if<DeleteEdgeOp>(&op);
            return de && make_edge(de->a, de->b) == key;
        },
        [&](const GeometricGraph& s) {
            return std::optional<std::array<Point, 2>>({s.vertex(key.first), s.vertex(key.second)});
        });
    EdgeOrbit orbit;
    orbit.states.assign(states.begin(), states.end());
    return orbit;
}

double vertex_orbit_cost(const EditPath& p, const VertexId& u, const CostCoefficients& coeffs) {
    coeffs.validate();
    const VertexOrbit orbit = vertex_orbit(p, u);
    double sum = 0.0;
    for (std::size_t i = 1; i < orbit.states.size(); ++i) {
        if (orbit.states[i] && orbit.states[i - 1]) {
            sum += coeffs.c_v * distance(*orbit.states[i], *orbit.states[i - 1]);
        }
    }
    return sum;
}

double edge_orbit_cost(const EditPath& p, const EdgeKey& e, const CostCoefficients& coeffs) {
    coeffs.validate();
    const EdgeOrbit orbit = edge_orbit(p, e);
    auto length = [](const std::optional<std::array<Point, 2>>& s) {
        return s ? distance((*s)[0], (*s)[1]) : 0.0;  // deleted edges have length zero
    };
    double sum = 0.0;
    for (std::size_t i = 1; i < orbit.states.size(); ++i) {
        sum += coeffs.c_e * std::fabs(length(orbit.states[i]) - length(orbit.states[i - 1]));
    }
    return sum;
}

namespace {

struct PathSurvival {
    GeometricGraph final_state;
    std::set<VertexId> dead_vertices;  // source vertices the path deleted
    std::set<EdgeKey> dead_edges;      // source edges the path deleted
};

PathSurvival simulate_survival(const EditPath& p) {
    const CostCoefficients unit{1.0, 1.0};
    PathSurvival out{p.source, {}, {}};
    GeometricGraph state = p.source;
    for (const EditOp& op : p.ops) {
        if (const auto* dv = std::get_if<DeleteVertexOp>(&op)) {
            if (p.source.has_vertex(dv->id) && !out.dead_vertices.count(dv->id)) out.dead_vertices.insert(dv->id);
        } else if (const auto* de = std::get_if<DeleteEdgeOp>(&op)) {
            const EdgeKey key = make_edge(de->a, de->b);
            if (p.source.edges().count(key) && !out.dead_edges.count(key)) out.dead_edges.insert(key);
        }
        state = apply_op(state, op, unit).state;
    }
    out.final_state = std::move(state);
    return out;
}

}  // namespace

double path_cost_lower_bound(const EditPath& p, const CostCoefficients& coeffs) {
    coeffs.validate();
    const PathSurvival sv = simulate_survival(p);
    const GeometricGraph& fin = sv.final_state;

    double vt = 0.0, et = 0.0, dg = 0.0, dh = 0.0;
    for (const auto& [id, pos] : p.source.vertices()) {
        if (!sv.dead_vertices.count(id)) vt += coeffs.c_v * distance(pos, fin.vertex(id));
    }
    for (const EdgeKey& e : p.source.edges()) {
        if (sv.dead_edges.count(e)) {
            dg += coeffs.c_e * edge_length(p.source, e);
        } else {
            et += coeffs.c_e * std::fabs(edge_length(p.source, e) - edge_length(fin, e));
        }
    }
    for (const EdgeKey& f : fin.edges()) {
        const bool from_source = p.source.edges().count(f) && !sv.dead_edges.count(f);
        if (!from_source) dh += coeffs.c_e * edge_length(fin, f);
    }
    return vt + et + dg + dh;
}

Matching path_to_matching(const EditPath& p) {
    const PathSurvival sv = simulate_survival(p);
    std::vector<MatchingPair> pairs;
    for (const auto& [id, pos] : p.source.vertices()) {
        if (sv.dead_vertices.count(id)) {
            pairs.push_back({id, std::nullopt});
        } else {
            pairs.push_back({id, id});
        }
    }
    for (const auto& [id, pos] : sv.final_state.vertices()) {
        const bool from_source = p.source.has_vertex(id) && !sv.dead_vertices.count(id);
        if (!from_source) pairs.push_back({std::nullopt, id});
    }
    return Matching::from_pairs(std::move(pairs));
}

EditPath matching_to_path(const GeometricGraph& g, const GeometricGraph& h, const Matching& m) {
    ValidationReport report = validate_matching(g, h, m);
    if (!report.ok()) throw ValidationError("matching_to_path: invalid matching", std::move(report));

    const auto fwd = m.forward();
    const auto bwd = m.backward();

    std::vector<EditOp> ops;
    std::set<EdgeKey> covered;
    for (const EdgeKey& e : g.edges()) {
        auto ia = fwd.find(e.first);
        auto ib = fwd.find(e.second);
        if (ia != fwd.end() && ib != fwd.end() && h.has_edge(ia->second, ib->second)) {
            covered.insert(make_edge(ia->second, ib->second));
        } else {
            ops.push_back(DeleteEdgeOp{e.first, e.second});
        }
    }
    for (const auto& [id, pos] : g.vertices()) {
        if (!fwd.count(id)) ops.push_back(DeleteVertexOp{id});
    }
    for (const auto& [id, target] : fwd) {
        if (!(g.vertex(id) == h.vertex(target))) ops.push_back(TranslateVertexOp{id, h.vertex(target)});
    }

    // Unmatched h-vertices get a free id in the evolving state; matched ones
    // are realized by their g preimage.
    std::set<VertexId> state_ids;
    for (const auto& [id, target] : fwd) state_ids.insert(id);
    std::map<VertexId, VertexId> h_to_state;
    for (const auto& [v, u] : bwd) h_to_state[v] = u;
    for (const auto& [v, pos] : h.vertices()) {
        if (bwd.count(v)) continue;
        VertexId fresh = v;
        while (state_ids.count(fresh)) fresh += "+";
        state_ids.insert(fresh);
        h_to_state[v] = fresh;
        ops.push_back(InsertVertexOp{fresh, pos});
    }
    for (const EdgeKey& f : h.edges()) {
        if (!covered.count(f)) ops.push_back(InsertEdgeOp{h_to_state.at(f.first), h_to_state.at(f.second)});
    }
    return {g, std::move(ops)};
}

GedBounds ged_bounds(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs,
                     const SolveBudget& budget) {
    SolveOptions options;
    options.budget = budget;
    const GgdResult ggd = ggd_exact(g, h, coeffs, options);

    GedBounds out;
    out.delta = std::max(max_degree(g), max_degree(h));
    out.ggd_proven_optimal = ggd.proven_optimal;
    out.lower = ggd.proven_optimal ? ggd.value : ggd_lower_bound(g, h, coeffs);
    out.witness_path = matching_to_path(g, h, ggd.witness);
    const double path_upper = path_cost(out.witness_path, coeffs).total;
    const double factor_upper = (1.0 + static_cast<double>(out.delta) * coeffs.c_e / coeffs.c_v) * ggd.value;
    out.upper = std::min(path_upper, factor_upper);
    return out;
}

}  // namespace ggdkit
