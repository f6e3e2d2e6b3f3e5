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

#include "ggdkit/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace ggdkit {

namespace {

std::string zero_padded(const char* stem, std::size_t value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", stem, width, value);
    return buf;
}

std::string blob_vertex_id(const std::string& prefix, char row, std::size_t j) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%c%04zu", row, j);
    return prefix + buf;
}

// Uniform double in [0, 1) from the raw generator; avoids the
// distribution-object portability trap.
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::pair<GeometricGraph, GeometricGraph> wiggle_pair() {
    GeometricGraph g(2), h(2);
    g.add_vertex("u1", Point{{0.0, 0.0}});
    g.add_vertex("u2", Point{{1.0, 0.0}});
    g.add_edge("u1", "u2");
    h.add_vertex("v1", Point{{0.0, 1.0}});
    h.add_vertex("v2", Point{{1.0, 1.0}});
    h.add_edge("v1", "v2");
    return {std::move(g), std::move(h)};
}

EditPath wiggle_edit_path(unsigned k) {
    if (k == 0) throw std::invalid_argument("wiggle_edit_path: k must be >= 1");
    auto [g, h] = wiggle_pair();
    (void)h;
    std::vector<EditOp> ops;
    ops.reserve(2 * static_cast<std::size_t>(k));
    for (unsigned i = 1; i <= k; ++i) {
        const double y = static_cast<double>(i) / static_cast<double>(k);
        ops.push_back(TranslateVertexOp{"u1", Point{{0.0, y}}});
        ops.push_back(TranslateVertexOp{"u2", Point{{1.0, y}}});
    }
    return {std::move(g), std::move(ops)};
}

std::pair<GeometricGraph, GeometricGraph> tight_pair(double d_target, const CostCoefficients& coeffs) {
    coeffs.validate();
    if (!(d_target > 0.0)) throw std::invalid_argument("tight_pair: d_target must be positive");
    const double x = d_target / (2.0 * coeffs.c_v);
    const double l = (1.0 + 2.0 * coeffs.c_v / coeffs.c_e) * x;
    GeometricGraph g(1), h(1);
    g.add_vertex("u1", Point{{0.0}});
    g.add_vertex("u2", Point{{l}});
    g.add_edge("u1", "u2");
    h.add_vertex("v1", Point{{x}});
    h.add_vertex("v2", Point{{l + x}});
    h.add_edge("v1", "v2");
    return {std::move(g), std::move(h)};
}

GeometricGraph blob(unsigned k, double l, double spacing, const Point& origin, const std::string& id_prefix) {
    if (k == 0) throw std::invalid_argument("blob: k must be >= 1");
    if (!(l > 0.0) || !(spacing > 0.0)) throw std::invalid_argument("blob: l and spacing must be positive");
    if (origin.dim() != 2) throw std::invalid_argument("blob: origin must be a point of R^2");

    GeometricGraph g(2);
    const double ox = origin[0], oy = origin[1];
    for (std::size_t j = 1; j <= k; ++j) {
        g.add_vertex(blob_vertex_id(id_prefix, 'u', j),
                     Point{{ox + static_cast<double>(j - 1) * spacing, oy + l}});
        g.add_vertex(blob_vertex_id(id_prefix, 'l', j), Point{{ox + static_cast<double>(j) * spacing, oy}});
    }
    for (std::size_t j = 1; j <= k; ++j) {
        g.add_edge(blob_vertex_id(id_prefix, 'u', j), blob_vertex_id(id_prefix, 'l', j));
        if (j >= 2) g.add_edge(blob_vertex_id(id_prefix, 'u', j), blob_vertex_id(id_prefix, 'l', j - 1));
    }
    return g;
}

ValidationReport validate_3partition(const ThreePartitionInstance& inst) {
    ValidationReport report;
    if (inst.n <= 1) {
        report.violations.push_back({"invalid_n", "N must be > 1, got " + std::to_string(inst.n)});
    }
    if (inst.b <= 0) {
        report.violations.push_back({"invalid_b", "B must be positive, got " + std::to_string(inst.b)});
    }
    if (inst.s.size() != 3 * inst.n) {
        report.violations.push_back({"wrong_size", "expected " + std::to_string(3 * inst.n) + " items, got " +
                                                       std::to_string(inst.s.size())});
    }
    long long sum = 0;
    for (std::size_t i = 0; i < inst.s.size(); ++i) {
        const long long a = inst.s[i];
        sum += a;
        // strict bounds: 4a > B and 2a < B
        if (a <= 0 || 4 * a <= inst.b || 2 * a >= inst.b) {
            report.violations.push_back({"item_out_of_range", "item " + std::to_string(i) + " = " +
                                                                  std::to_string(a) + " is outside (B/4, B/2)"});
        }
    }
    if (!inst.s.empty() && sum != static_cast<long long>(inst.n) * inst.b) {
        report.violations.push_back(
            {"wrong_sum", "items sum to " + std::to_string(sum) + ", expected N*B = " +
                              std::to_string(static_cast<long long>(inst.n) * inst.b)});
    }
    return report;
}

ReductionEncoding encode_reduction(const ThreePartitionInstance& inst, double tau, const CostCoefficients& coeffs) {
    coeffs.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("encode_reduction: tau must be positive");
    ValidationReport report = validate_3partition(inst);
    if (!report.ok()) throw ValidationError("encode_reduction: invalid 3-partition instance", std::move(report));

    const double n = static_cast<double>(inst.n);
    const double b = static_cast<double>(inst.b);
    ReductionLayout layout;
    layout.tau = tau;
    layout.x = tau / (2.0 * coeffs.c_v * (n + 1.0) * n * b);
    layout.l = tau / (2.0 * coeffs.c_e * (n + 1.0));
    // 2NB columns of blobs plus 4N gaps fit the width exactly.
    layout.vertex_spacing = layout.x / (2.0 * n * b + 4.0 * n);
    layout.blob_gap = layout.vertex_spacing;

    GeometricGraph g(2), h(2);
    double cursor = 0.0;
    for (std::size_t i = 0; i < inst.s.size(); ++i) {
        const GeometricGraph piece = blob(static_cast<unsigned>(inst.s[i]), layout.l, layout.vertex_spacing,
                                          Point{{cursor, 0.0}}, zero_padded("g", i, 3) + ".");
        for (const auto& [id, p] : piece.vertices()) g.add_vertex(id, p);
        for (const EdgeKey& e : piece.edges()) g.add_edge(e.first, e.second);
        cursor += static_cast<double>(inst.s[i]) * layout.vertex_spacing + layout.blob_gap;
    }
    for (std::size_t i = 0; i < inst.n; ++i) {
        const GeometricGraph piece = blob(static_cast<unsigned>(inst.b), layout.l, layout.vertex_spacing,
                                          Point{{cursor, 0.0}}, zero_padded("h", i, 3) + ".");
        for (const auto& [id, p] : piece.vertices()) h.add_vertex(id, p);
        for (const EdgeKey& e : piece.edges()) h.add_edge(e.first, e.second);
        cursor += b * layout.vertex_spacing + layout.blob_gap;
    }

    const double used_width = cursor - layout.blob_gap;
    if (used_width > layout.x * (1.0 + 1e-12)) {
        throw std::runtime_error("encode_reduction: construction exceeds the bounding-box width");
    }
    return {std::move(g), std::move(h), layout};
}

Matching partition_to_matching(const ThreePartitionInstance& inst,
                               const std::vector<std::array<std::size_t, 3>>& partition,
                               const ReductionLayout& layout, const GeometricGraph& g, const GeometricGraph& h) {
    (void)layout;
    ValidationReport report;
    if (partition.size() != inst.n) {
        report.violations.push_back({"wrong_triple_count", "expected " + std::to_string(inst.n) + " triples, got " +
                                                               std::to_string(partition.size())});
    }
    std::vector<int> used(inst.s.size(), 0);
    for (std::size_t i = 0; i < partition.size(); ++i) {
        long long sum = 0;
        for (std::size_t idx : partition[i]) {
            if (idx >= inst.s.size()) {
                report.violations.push_back({"bad_index", "triple " + std::to_string(i) + " references item " +
                                                              std::to_string(idx)});
                continue;
            }
            ++used[idx];
            sum += inst.s[idx];
        }
        if (sum != inst.b) {
            report.violations.push_back({"bad_triple_sum", "triple " + std::to_string(i) + " sums to " +
                                                               std::to_string(sum) + ", expected " +
                                                               std::to_string(inst.b)});
        }
    }
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (used[i] != 1) {
            report.violations.push_back(
                {"item_coverage", "item " + std::to_string(i) + " used " + std::to_string(used[i]) + " times"});
        }
    }
    if (!report.ok()) throw ValidationError("partition_to_matching: invalid certificate", std::move(report));

    std::vector<MatchingPair> pairs;
    for (std::size_t hi = 0; hi < partition.size(); ++hi) {
        const std::string h_prefix = zero_padded("h", hi, 3) + ".";
        std::size_t column = 0;
        for (std::size_t gi : partition[hi]) {
            const std::string g_prefix = zero_padded("g", gi, 3) + ".";
            const std::size_t size = static_cast<std::size_t>(inst.s[gi]);
            for (std::size_t j = 1; j <= size; ++j) {
                for (char row : {'u', 'l'}) {
                    const VertexId from = g_prefix + blob_vertex_id("", row, j);
                    const VertexId to = h_prefix + blob_vertex_id("", row, column + j);
                    if (!g.has_vertex(from) || !h.has_vertex(to)) {
                        throw std::invalid_argument("partition_to_matching: graphs do not follow the reduction naming");
                    }
                    pairs.push_back({from, to});
                }
            }
            column += size;
        }
    }
    return Matching::from_pairs(std::move(pairs));
}

namespace {

bool partition_search(const ThreePartitionInstance& inst, std::vector<char>& taken,
                      std::vector<std::array<std::size_t, 3>>& acc) {
    std::size_t first = taken.size();
    for (std::size_t i = 0; i < taken.size(); ++i) {
        if (!taken[i]) {
            first = i;
            break;
        }
    }
    if (first == taken.size()) return true;

    taken[first] = 1;
    for (std::size_t i = first + 1; i < taken.size(); ++i) {
        if (taken[i]) continue;
        taken[i] = 1;
        for (std::size_t j = i + 1; j < taken.size(); ++j) {
            if (taken[j]) continue;
            if (inst.s[first] + inst.s[i] + inst.s[j] != inst.b) continue;
            taken[j] = 1;
            acc.push_back({first, i, j});
            if (partition_search(inst, taken, acc)) return true;
            acc.pop_back();
            taken[j] = 0;
        }
        taken[i] = 0;
    }
    taken[first] = 0;
    return false;
}

}  // namespace

std::optional<std::vector<std::array<std::size_t, 3>>> brute_force_3partition(const ThreePartitionInstance& inst) {
    ValidationReport report = validate_3partition(inst);
    if (!report.ok()) throw ValidationError("brute_force_3partition: invalid instance", std::move(report));

    std::vector<char> taken(inst.s.size(), 0);
    std::vector<std::array<std::size_t, 3>> acc;
    if (partition_search(inst, taken, acc)) return acc;
    return std::nullopt;
}

Box Box::cube(std::size_t dim, double lo, double hi) {
    Box b;
    b.lo.assign(dim, lo);
    b.hi.assign(dim, hi);
    return b;
}

GeometricGraph random_graph(std::size_t n_vertices, std::size_t n_edges, const Box& box, std::uint64_t seed,
                            bool require_valid_embedding) {
    if (box.lo.size() != box.hi.size() || box.lo.empty()) {
        throw std::invalid_argument("random_graph: malformed box");
    }
    for (std::size_t i = 0; i < box.lo.size(); ++i) {
        if (!(box.lo[i] < box.hi[i])) throw std::invalid_argument("random_graph: box must have positive extent");
    }
    const std::size_t max_edges = n_vertices >= 2 ? n_vertices * (n_vertices - 1) / 2 : 0;
    if (n_edges > max_edges) {
        throw std::invalid_argument("random_graph: " + std::to_string(n_edges) + " edges requested, at most " +
                                    std::to_string(max_edges) + " possible");
    }

    std::mt19937_64 rng(seed);
    const std::size_t dim = box.lo.size();
    constexpr int kMaxAttempts = 200;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        GeometricGraph g(dim);
        std::vector<VertexId> ids;
        for (std::size_t i = 0; i < n_vertices; ++i) {
            Point p{std::vector<double>(dim)};
            for (std::size_t d = 0; d < dim; ++d) {
                p.coords[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * unit_double(rng);
            }
            const VertexId id = zero_padded("v", i, 3);
            g.add_vertex(id, p);
            ids.push_back(id);
        }
        std::vector<EdgeKey> pool;
        pool.reserve(max_edges);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) pool.emplace_back(ids[i], ids[j]);
        }
        for (std::size_t i = pool.size(); i > 1; --i) {
            std::swap(pool[i - 1], pool[rng() % i]);
        }
        for (std::size_t i = 0; i < n_edges; ++i) g.add_edge(pool[i].first, pool[i].second);

        if (!require_valid_embedding || validate_embedding(g).ok()) return g;
    }
    throw std::runtime_error("random_graph: no valid embedding found after " + std::to_string(kMaxAttempts) +
                             " attempts");
}

}  // namespace ggdkit
