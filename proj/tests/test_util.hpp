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

// Shared helpers and independent oracles for the test suites. The oracles
// stay deliberately naive so they cannot share a bug with the library code
// they check.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ggdkit/editpath.hpp"
#include "ggdkit/geometry.hpp"
#include "ggdkit/instances.hpp"
#include "ggdkit/matching.hpp"

namespace testutil {

inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit_double(rng);
}

inline ggdkit::GeometricGraph make_graph(std::size_t dim,
                                         const std::vector<std::pair<std::string, std::vector<double>>>& vertices,
                                         const std::vector<std::pair<std::string, std::string>>& edges) {
    ggdkit::GeometricGraph g(dim);
    for (const auto& [id, coords] : vertices) g.add_vertex(id, ggdkit::Point{coords});
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

inline ggdkit::GeometricGraph relabel(const ggdkit::GeometricGraph& g, const std::string& prefix) {
    ggdkit::GeometricGraph out(g.dim());
    for (const auto& [id, p] : g.vertices()) out.add_vertex(prefix + id, p);
    for (const auto& e : g.edges()) out.add_edge(prefix + e.first, prefix + e.second);
    return out;
}

/// Rotation by theta in the first two coordinates plus a translation.
inline ggdkit::GeometricGraph rigid_motion_2d(const ggdkit::GeometricGraph& g, double theta, double dx, double dy) {
    ggdkit::GeometricGraph out(g.dim());
    const double c = std::cos(theta), s = std::sin(theta);
    for (const auto& [id, p] : g.vertices()) {
        ggdkit::Point q = p;
        q.coords[0] = c * p[0] - s * p[1] + dx;
        q.coords[1] = s * p[0] + c * p[1] + dy;
        out.add_vertex(id, q);
    }
    for (const auto& e : g.edges()) out.add_edge(e.first, e.second);
    return out;
}

inline std::map<std::string, std::size_t> brute_force_degrees(const ggdkit::GeometricGraph& g) {
    std::map<std::string, std::size_t> deg;
    for (const auto& [id, p] : g.vertices()) deg[id] = 0;
    for (const auto& [id, p] : g.vertices()) {
        for (const auto& [other, q] : g.vertices()) {
            if (g.has_edge(id, other)) ++deg[id];
        }
    }
    return deg;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Closed-form matching count: sum over k of C(n,k) C(m,k) k!.
inline std::uint64_t matching_count_formula(std::uint64_t n, std::uint64_t m) {
    std::uint64_t total = 0;
    const std::uint64_t kmax = n < m ? n : m;
    for (std::uint64_t k = 0; k <= kmax; ++k) {
        std::uint64_t fact = 1;
        for (std::uint64_t i = 2; i <= k; ++i) fact *= i;
        total += binomial(n, k) * binomial(m, k) * fact;
    }
    return total;
}

struct OracleResult {
    double value;
    ggdkit::Matching witness;
    std::uint64_t count;
};

/// Exhaustive minimum over every matching; the reference for the exact solver.
inline OracleResult brute_force_ggd(const ggdkit::GeometricGraph& g, const ggdkit::GeometricGraph& h,
                                    const ggdkit::CostCoefficients& coeffs) {
    ggdkit::MatchingEnumerator it(g, h);
    OracleResult out{std::numeric_limits<double>::infinity(), {}, 0};
    while (auto m = it.next()) {
        ++out.count;
        const double c = ggdkit::matching_cost(g, h, *m, coeffs).total;
        if (c < out.value) {
            out.value = c;
            out.witness = *m;
        }
    }
    return out;
}

/// Seeded random graph with at most `max_vertices`/`max_edges`, coordinates in
/// [0, 10]^2.
inline ggdkit::GeometricGraph small_random_graph(std::mt19937_64& rng, std::size_t max_vertices,
                                                 std::size_t max_edges, bool forbid_isolated = false) {
    for (;;) {
        const std::size_t n = forbid_isolated ? 2 + rng() % (max_vertices - 1) : rng() % (max_vertices + 1);
        const std::size_t pairs = n >= 2 ? n * (n - 1) / 2 : 0;
        std::size_t e_cap = pairs < max_edges ? pairs : max_edges;
        const std::size_t min_edges = forbid_isolated ? (n + 1) / 2 : 0;
        if (e_cap < min_edges) continue;
        const std::size_t e = min_edges + (e_cap > min_edges ? rng() % (e_cap - min_edges + 1) : 0);
        ggdkit::GeometricGraph g =
            ggdkit::random_graph(n, e, ggdkit::Box::cube(2, 0.0, 10.0), rng(), /*require_valid_embedding=*/false);
        if (forbid_isolated && ggdkit::has_isolated_vertices(g)) continue;
        return g;
    }
}

/// Picks the index-th matching (modulo the total count) from the enumeration.
inline ggdkit::Matching pick_matching(const ggdkit::GeometricGraph& g, const ggdkit::GeometricGraph& h,
                                      std::uint64_t index) {
    ggdkit::MatchingEnumerator counter(g, h);
    std::uint64_t total = 0;
    while (counter.next()) ++total;
    ggdkit::MatchingEnumerator it(g, h);
    ggdkit::Matching result;
    std::uint64_t want = total ? index % total : 0;
    for (std::uint64_t i = 0; i <= want; ++i) result = *it.next();
    return result;
}

/// Random legal edit path of `steps` ops starting from `source`.
inline ggdkit::EditPath random_legal_path(const ggdkit::GeometricGraph& source, std::mt19937_64& rng,
                                          std::size_t steps) {
    ggdkit::EditPath path{source, {}};
    ggdkit::GeometricGraph state = source;
    const ggdkit::CostCoefficients unit{1.0, 1.0};
    std::size_t next_fresh = 0;
    for (std::size_t step = 0; step < steps; ++step) {
        std::vector<ggdkit::EditOp> options;

        std::vector<std::string> ids;
        for (const auto& [id, p] : state.vertices()) ids.push_back(id);

        {
            ggdkit::Point p{std::vector<double>(state.dim())};
            for (auto& c : p.coords) c = uniform(rng, 0.0, 10.0);
            options.push_back(ggdkit::InsertVertexOp{"fresh" + std::to_string(next_fresh), p});
        }
        for (const auto& id : ids) {
            if (state.degree(id) == 0) {
                options.push_back(ggdkit::DeleteVertexOp{id});
                break;
            }
        }
        for (std::size_t i = 0; i < ids.size() && options.size() < 8; ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                if (!state.has_edge(ids[i], ids[j])) {
                    options.push_back(ggdkit::InsertEdgeOp{ids[i], ids[j]});
                    break;
                }
            }
        }
        if (!state.edges().empty()) {
            auto it = state.edges().begin();
            std::advance(it, rng() % state.edges().size());
            options.push_back(ggdkit::DeleteEdgeOp{it->first, it->second});
        }
        if (!ids.empty()) {
            const std::string& id = ids[rng() % ids.size()];
            ggdkit::Point p{std::vector<double>(state.dim())};
            for (auto& c : p.coords) c = uniform(rng, 0.0, 10.0);
            options.push_back(ggdkit::TranslateVertexOp{id, p});
        }

        const ggdkit::EditOp& op = options[rng() % options.size()];
        if (std::holds_alternative<ggdkit::InsertVertexOp>(op)) ++next_fresh;
        state = ggdkit::apply_op(state, op, unit).state;
        path.ops.push_back(op);
    }
    return path;
}

}  // namespace testutil
