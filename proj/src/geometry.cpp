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

#include "ggdkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ggdkit {

namespace {

std::string point_to_string(const Point& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i > 0) os << ", ";
        os << p[i];
    }
    os << ")";
    return os.str();
}

bool all_finite(const Point& p) {
    for (double c : p.coords) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> sub(const Point& a, const Point& b) {
    std::vector<double> d(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) d[i] = a[i] - b[i];
    return d;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("distance: dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

void CostCoefficients::validate() const {
    if (!(c_v > 0.0) || !std::isfinite(c_v) || !(c_e > 0.0) || !std::isfinite(c_e)) {
        throw std::invalid_argument("cost coefficients must be positive finite reals");
    }
}

EdgeKey make_edge(const VertexId& a, const VertexId& b) {
    if (a == b) throw std::invalid_argument("self-loop edge (" + a + ", " + a + ")");
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const Violation& v : violations) {
        os << v.kind << ": " << v.detail << "\n";
    }
    return os.str();
}

ValidationError::ValidationError(const std::string& what, ValidationReport report)
    : std::runtime_error(what + "\n" + report.to_string()), report_(std::move(report)) {}

GeometricGraph::GeometricGraph(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("graph dimension must be >= 1");
}

void GeometricGraph::add_vertex(const VertexId& id, Point p) {
    if (id.empty()) throw std::invalid_argument("empty vertex id");
    if (vertices_.count(id)) throw std::invalid_argument("duplicate vertex id '" + id + "'");
    if (p.dim() != dim_) {
        throw std::invalid_argument("vertex '" + id + "' has " + std::to_string(p.dim()) +
                                    " coordinates, expected " + std::to_string(dim_));
    }
    if (!all_finite(p)) throw std::invalid_argument("vertex '" + id + "' has non-finite coordinates");
    vertices_.emplace(id, std::move(p));
}

void GeometricGraph::add_edge(const VertexId& a, const VertexId& b) {
    const EdgeKey e = make_edge(a, b);
    if (!vertices_.count(e.first)) throw std::invalid_argument("edge endpoint '" + e.first + "' is not a vertex");
    if (!vertices_.count(e.second)) throw std::invalid_argument("edge endpoint '" + e.second + "' is not a vertex");
    if (edges_.count(e)) throw std::invalid_argument("duplicate edge (" + e.first + ", " + e.second + ")");
    edges_.insert(e);
}

bool GeometricGraph::has_vertex(const VertexId& id) const { return vertices_.count(id) > 0; }

bool GeometricGraph::has_edge(const VertexId& a, const VertexId& b) const {
    if (a == b) return false;
    return edges_.count(a < b ? EdgeKey{a, b} : EdgeKey{b, a}) > 0;
}

const Point& GeometricGraph::vertex(const VertexId& id) const {
    auto it = vertices_.find(id);
    if (it == vertices_.end()) throw std::invalid_argument("unknown vertex '" + id + "'");
    return it->second;
}

std::size_t GeometricGraph::degree(const VertexId& id) const {
    if (!vertices_.count(id)) throw std::invalid_argument("unknown vertex '" + id + "'");
    std::size_t d = 0;
    for (const EdgeKey& e : edges_) {
        if (e.first == id || e.second == id) ++d;
    }
    return d;
}

double edge_length(const GeometricGraph& g, const EdgeKey& e) {
    const EdgeKey key = make_edge(e.first, e.second);
    if (!g.edges().count(key)) {
        throw std::invalid_argument("unknown edge (" + key.first + ", " + key.second + ")");
    }
    return distance(g.vertex(key.first), g.vertex(key.second));
}

double edge_length(const GeometricGraph& g, const VertexId& a, const VertexId& b) {
    return edge_length(g, EdgeKey{a, b});
}

double volume(const GeometricGraph& g) {
    double total = 0.0;
    for (const EdgeKey& e : g.edges()) {
        total += distance(g.vertex(e.first), g.vertex(e.second));
    }
    return total;
}

std::size_t max_degree(const GeometricGraph& g) {
    std::map<VertexId, std::size_t> deg;
    for (const EdgeKey& e : g.edges()) {
        ++deg[e.first];
        ++deg[e.second];
    }
    std::size_t best = 0;
    for (const auto& [id, d] : deg) best = std::max(best, d);
    return best;
}

bool has_isolated_vertices(const GeometricGraph& g) {
    std::set<VertexId> touched;
    for (const EdgeKey& e : g.edges()) {
        touched.insert(e.first);
        touched.insert(e.second);
    }
    return touched.size() < g.vertex_count();
}

bool graphs_equal(const GeometricGraph& g, const GeometricGraph& h, double tol) {
    if (g.dim() != h.dim()) {
        throw std::invalid_argument("graphs_equal: dimension mismatch (" + std::to_string(g.dim()) +
                                    " vs " + std::to_string(h.dim()) + ")");
    }
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;

    // Pair vertices by lexicographically sorted coordinates. Adequate whenever
    // distinct vertices are separated by more than tol.
    std::vector<std::pair<std::vector<double>, VertexId>> gv, hv;
    for (const auto& [id, p] : g.vertices()) gv.emplace_back(p.coords, id);
    for (const auto& [id, p] : h.vertices()) hv.emplace_back(p.coords, id);
    std::sort(gv.begin(), gv.end());
    std::sort(hv.begin(), hv.end());

    std::map<VertexId, VertexId> to_h;
    for (std::size_t i = 0; i < gv.size(); ++i) {
        if (distance(Point{gv[i].first}, Point{hv[i].first}) > tol) return false;
        to_h[gv[i].second] = hv[i].second;
    }
    for (const EdgeKey& e : g.edges()) {
        if (!h.has_edge(to_h.at(e.first), to_h.at(e.second))) return false;
    }
    return true;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const auto ab = sub(b, a);
    const auto ap = sub(p, a);
    const double denom = dot(ab, ab);
    double t = denom > 0.0 ? clamp01(dot(ap, ab) / denom) : 0.0;
    Point closest = a;
    for (std::size_t i = 0; i < a.dim(); ++i) closest.coords[i] = a[i] + t * ab[i];
    return distance(p, closest);
}

namespace {

struct SegmentContact {
    double dist;
    Point midpoint;  // halfway between the two closest points
};

SegmentContact segment_contact(const Point& a0, const Point& a1, const Point& b0, const Point& b1) {
    const auto d1 = sub(a1, a0);
    const auto d2 = sub(b1, b0);
    const auto r = sub(a0, b0);
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);

    double s = 0.0, t = 0.0;
    if (a == 0.0 && e == 0.0) {
        // both segments degenerate to points
    } else if (a == 0.0) {
        t = clamp01(f / e);
    } else {
        const double c = dot(d1, r);
        if (e == 0.0) {
            s = clamp01(-c / a);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom != 0.0 ? clamp01((b * f - c * e) / denom) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = clamp01(-c / a);
            } else if (t > 1.0) {
                t = 1.0;
                s = clamp01((b - c) / a);
            }
        }
    }
    Point pa{std::vector<double>(a0.dim())}, pb{std::vector<double>(a0.dim())};
    Point mid{std::vector<double>(a0.dim())};
    for (std::size_t i = 0; i < a0.dim(); ++i) {
        pa.coords[i] = a0[i] + s * d1[i];
        pb.coords[i] = b0[i] + t * d2[i];
        mid.coords[i] = 0.5 * (pa.coords[i] + pb.coords[i]);
    }
    return {distance(pa, pb), std::move(mid)};
}

}  // namespace

double segment_distance(const Point& a0, const Point& a1, const Point& b0, const Point& b1) {
    return segment_contact(a0, a1, b0, b1).dist;
}

namespace {

// Classifies one edge pair; appends a violation when the segments meet away
// from a shared endpoint.
void check_edge_pair(const GeometricGraph& g, const EdgeKey& e1, const EdgeKey& e2, double tol,
                     std::vector<Violation>& out) {
    const Point& p1 = g.vertex(e1.first);
    const Point& q1 = g.vertex(e1.second);
    const Point& p2 = g.vertex(e2.first);
    const Point& q2 = g.vertex(e2.second);

    VertexId shared;
    if (e1.first == e2.first || e1.first == e2.second) shared = e1.first;
    else if (e1.second == e2.first || e1.second == e2.second) shared = e1.second;

    std::ostringstream detail;
    if (!shared.empty()) {
        // Edges that meet at their common vertex are fine; collinear overlap
        // through it is not. Overlap implies one free endpoint lies on the
        // other segment.
        const Point& free1 = (e1.first == shared) ? q1 : p1;
        const Point& free2 = (e2.first == shared) ? q2 : p2;
        const Point& anchor = g.vertex(shared);
        if (point_segment_distance(free1, anchor, free2) <= tol ||
            point_segment_distance(free2, anchor, free1) <= tol) {
            detail << "edges (" << e1.first << ", " << e1.second << ") and (" << e2.first << ", "
                   << e2.second << ") overlap beyond their shared endpoint '" << shared << "'";
            out.push_back({"edge_crossing", detail.str()});
        }
        return;
    }
    const SegmentContact contact = segment_contact(p1, q1, p2, q2);
    if (contact.dist <= tol) {
        detail << "edges (" << e1.first << ", " << e1.second << ") and (" << e2.first << ", " << e2.second
               << ") intersect away from a shared endpoint, near " << point_to_string(contact.midpoint);
        out.push_back({"edge_crossing", detail.str()});
    }
}

bool violation_less(const Violation& a, const Violation& b) {
    return std::tie(a.kind, a.detail) < std::tie(b.kind, b.detail);
}

ValidationReport validate_embedding_impl(const GeometricGraph& g, double tol, bool parallel) {
    ValidationReport report;

    std::vector<std::pair<VertexId, Point>> verts(g.vertices().begin(), g.vertices().end());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            if (distance(verts[i].second, verts[j].second) <= tol) {
                report.violations.push_back(
                    {"coincident_vertices", "vertices '" + verts[i].first + "' and '" + verts[j].first +
                                                "' occupy the same location " + point_to_string(verts[i].second)});
            }
        }
    }

    std::vector<EdgeKey> edges(g.edges().begin(), g.edges().end());
    for (const EdgeKey& e : edges) {
        if (edge_length(g, e) <= tol) {
            report.violations.push_back(
                {"zero_length_edge", "edge (" + e.first + ", " + e.second + ") has zero length"});
        }
    }

    const std::size_t n = edges.size();
    if (n >= 2) {
        // All-pairs segment test, flattened so the iterations are independent.
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        pairs.reserve(n * (n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        }
        std::vector<std::vector<Violation>> found(pairs.size());
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
            for (long k = 0; k < static_cast<long>(pairs.size()); ++k) {
                check_edge_pair(g, edges[pairs[k].first], edges[pairs[k].second], tol, found[k]);
            }
        } else {
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                check_edge_pair(g, edges[pairs[k].first], edges[pairs[k].second], tol, found[k]);
            }
        }
        for (const auto& chunk : found) {
            report.violations.insert(report.violations.end(), chunk.begin(), chunk.end());
        }
    }

    std::sort(report.violations.begin(), report.violations.end(), violation_less);
    return report;
}

}  // namespace

ValidationReport validate_embedding(const GeometricGraph& g, double tol) {
#ifdef _OPENMP
    return validate_embedding_impl(g, tol, true);
#else
    return validate_embedding_impl(g, tol, false);
#endif
}

ValidationReport validate_embedding_serial(const GeometricGraph& g, double tol) {
    return validate_embedding_impl(g, tol, false);
}

}  // namespace ggdkit
