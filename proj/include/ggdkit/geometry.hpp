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

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ggdkit {

/// Stable vertex label. Geometry, not the label, defines graph identity.
using VertexId = std::string;

/// Undirected edge, stored with endpoints in sorted order.
using EdgeKey = std::pair<VertexId, VertexId>;

/// A point of R^d. All coordinates must be finite.
struct Point {
    std::vector<double> coords;

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
    friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean distance. Throws std::invalid_argument on dimension mismatch.
double distance(const Point& a, const Point& b);

/// Positive cost coefficients shared by every cost formula: c_v per unit of
/// vertex displacement, c_e per unit of edge-length change.
struct CostCoefficients {
    double c_v = 1.0;
    double c_e = 1.0;

    /// Throws std::invalid_argument unless both coefficients are positive and finite.
    void validate() const;
};

/// Normalizes an endpoint pair. Throws on self-loops.
EdgeKey make_edge(const VertexId& a, const VertexId& b);

struct Violation {
    std::string kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Carries the offending report when an operation requires a valid input.
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// A straight-line graph embedded in R^d: vertices are points, edges are the
/// closed segments between them. Simple and undirected. Construction enforces
/// the structural invariants (existing endpoints, no self-loops or duplicate
/// edges, dimension-consistent finite coordinates); the geometric non-crossing
/// condition is a separate on-demand check, see validate_embedding.
class GeometricGraph {
public:
    /// An empty graph of R^1.
    GeometricGraph() : dim_(1) {}
    explicit GeometricGraph(std::size_t dim);

    void add_vertex(const VertexId& id, Point p);
    void add_edge(const VertexId& a, const VertexId& b);

    std::size_t dim() const { return dim_; }
    const std::map<VertexId, Point>& vertices() const { return vertices_; }
    const std::set<EdgeKey>& edges() const { return edges_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_vertex(const VertexId& id) const;
    bool has_edge(const VertexId& a, const VertexId& b) const;

    /// Throws std::invalid_argument for unknown ids.
    const Point& vertex(const VertexId& id) const;

    std::size_t degree(const VertexId& id) const;

private:
    std::size_t dim_;
    std::map<VertexId, Point> vertices_;
    std::set<EdgeKey> edges_;
};

/// Euclidean length of an edge. Throws if the edge is not in the graph.
double edge_length(const GeometricGraph& g, const EdgeKey& e);
double edge_length(const GeometricGraph& g, const VertexId& a, const VertexId& b);

/// Total edge length; 0 for edgeless graphs.
double volume(const GeometricGraph& g);

std::size_t max_degree(const GeometricGraph& g);

bool has_isolated_vertices(const GeometricGraph& g);

/// Set-of-points equality: true iff the vertex point sets can be put in
/// correspondence within tol and the edge sets then coincide. Labels are
/// ignored. Throws on dimension mismatch.
bool graphs_equal(const GeometricGraph& g, const GeometricGraph& h, double tol = 0.0);

/// Reports every pair of edges whose closed segments meet away from a shared
/// endpoint (within tol), every pair of coincident vertices, and every edge of
/// length <= tol. An empty report means the embedding satisfies the
/// straight-line non-crossing condition.
ValidationReport validate_embedding(const GeometricGraph& g, double tol = 1e-9);

/// Single-threaded reference for validate_embedding; produces the same report.
ValidationReport validate_embedding_serial(const GeometricGraph& g, double tol = 1e-9);

// Segment helpers used by the embedding check, exposed for direct testing.
double point_segment_distance(const Point& p, const Point& a, const Point& b);
double segment_distance(const Point& a0, const Point& a1, const Point& b0, const Point& b1);

}  // namespace ggdkit
