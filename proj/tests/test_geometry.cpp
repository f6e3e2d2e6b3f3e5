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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ggdkit/geometry.hpp"
#include "ggdkit/instances.hpp"
#include "test_util.hpp"

using namespace ggdkit;
using testutil::make_graph;

TEST_CASE("edge_length on simple segments") {
    auto g = make_graph(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {3, 4}}, {"d", {0, 1}}, {"e", {1, 0.0}}},
                        {{"a", "b"}, {"a", "c"}, {"d", "e"}});
    CHECK(edge_length(g, "a", "b") == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(edge_length(g, "a", "c") == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(edge_length(g, "d", "e") == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // endpoint order does not matter
    CHECK(edge_length(g, "b", "a") == edge_length(g, "a", "b"));
    CHECK_THROWS_WITH_AS(edge_length(g, "a", "d"), doctest::Contains("unknown edge"), std::invalid_argument);
}

TEST_CASE("distance is symmetric bit-for-bit") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        Point a{{testutil::uniform(rng, -5, 5), testutil::uniform(rng, -5, 5)}};
        Point b{{testutil::uniform(rng, -5, 5), testutil::uniform(rng, -5, 5)}};
        CHECK(distance(a, b) == distance(b, a));
    }
    CHECK_THROWS_AS(distance(Point{{0.0}}, Point{{0.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("volume basics") {
    auto single = make_graph(2, {{"a", {0, 0}}, {"b", {1, 0}}}, {{"a", "b"}});
    CHECK(volume(single) == 1.0);

    GeometricGraph edgeless(3);
    for (int i = 0; i < 5; ++i) edgeless.add_vertex("v" + std::to_string(i), Point{{1.0 * i, 0.0, 0.0}});
    CHECK(volume(edgeless) == 0.0);
}

TEST_CASE("volume of a blob matches per-edge recomputation") {
    const GeometricGraph b = blob(2, 3.0, 1.0, Point{{0.0, 0.0}});
    double expected = 0.0;
    for (const EdgeKey& e : b.edges()) {
        double s = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
            const double d = b.vertex(e.first)[i] - b.vertex(e.second)[i];
            s += d * d;
        }
        expected += std::sqrt(s);
    }
    CHECK(volume(b) == expected);
    // one vertical edge of length 3, two slanted of length sqrt(10)
    CHECK(volume(b) == doctest::Approx(3.0 + 2.0 * std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("volume is invariant under rigid motions") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const GeometricGraph g = testutil::small_random_graph(rng, 5, 6);
        const double theta = testutil::uniform(rng, 0, 6.28);
        const GeometricGraph moved =
            testutil::rigid_motion_2d(g, theta, testutil::uniform(rng, -3, 3), testutil::uniform(rng, -3, 3));
        CHECK(volume(moved) == doctest::Approx(volume(g)).epsilon(1e-9));
    }
}

TEST_CASE("construction invariants") {
    GeometricGraph g(2);
    g.add_vertex("a", Point{{0, 0}});
    CHECK_THROWS_AS(g.add_vertex("a", Point{{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(g.add_vertex("b", Point{{1}}), std::invalid_argument);
    CHECK_THROWS_AS(g.add_vertex("c", Point{{std::nan(""), 0}}), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge("a", "a"), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge("a", "zzz"), std::invalid_argument);
    g.add_vertex("b", Point{{1, 1}});
    g.add_edge("a", "b");
    CHECK_THROWS_AS(g.add_edge("b", "a"), std::invalid_argument);  // duplicate, order-insensitive
    CHECK_THROWS_AS(GeometricGraph(0), std::invalid_argument);
}

TEST_CASE("max_degree and isolation") {
    auto single = make_graph(2, {{"a", {0, 0}}, {"b", {1, 0}}}, {{"a", "b"}});
    CHECK(max_degree(single) == 1);
    CHECK_FALSE(has_isolated_vertices(single));

    auto path3 = make_graph(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {2, 0}}}, {{"a", "b"}, {"b", "c"}});
    CHECK(max_degree(path3) == 2);

    GeometricGraph lone(2);
    lone.add_vertex("x", Point{{0, 0}});
    CHECK(has_isolated_vertices(lone));
    CHECK(max_degree(lone) == 0);

    for (unsigned k = 1; k <= 5; ++k) {
        const GeometricGraph b = blob(k, 2.0, 0.5, Point{{0, 0}});
        CHECK_FALSE(has_isolated_vertices(b));
        auto deg = testutil::brute_force_degrees(b);
        std::size_t expect = 0;
        for (const auto& [id, d] : deg) expect = std::max(expect, d);
        CHECK(max_degree(b) == expect);
        // the blob is the path u1-l1-u2-l2-...-uk-lk
        if (k >= 2) CHECK(max_degree(b) == 2);
    }
}

TEST_CASE("max_degree and isolation agree with brute force on random graphs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const GeometricGraph g = testutil::small_random_graph(rng, 6, 8);
        const auto deg = testutil::brute_force_degrees(g);
        std::size_t expect_max = 0;
        bool expect_isolated = false;
        for (const auto& [id, d] : deg) {
            expect_max = std::max(expect_max, d);
            if (d == 0) expect_isolated = true;
        }
        CHECK(max_degree(g) == expect_max);
        CHECK(has_isolated_vertices(g) == expect_isolated);
    }
}

TEST_CASE("graphs_equal uses geometry, not labels") {
    auto g = make_graph(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}}, {{"a", "b"}, {"a", "c"}});
    CHECK(graphs_equal(g, g, 0.0));
    CHECK(graphs_equal(g, testutil::relabel(g, "x_"), 0.0));

    auto shifted = testutil::rigid_motion_2d(g, 0.0, 1.0, 0.0);
    CHECK_FALSE(graphs_equal(g, shifted, 0.0));

    // same points, different edge set
    auto other = make_graph(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}}, {{"a", "b"}, {"b", "c"}});
    CHECK_FALSE(graphs_equal(g, other, 0.0));

    CHECK_THROWS_AS(graphs_equal(g, GeometricGraph(3), 0.0), std::invalid_argument);
}

TEST_CASE("validate_embedding accepts shared endpoints and catches crossings") {
    auto fan = make_graph(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}}, {{"a", "b"}, {"a", "c"}});
    CHECK(validate_embedding(fan).ok());

    auto crossing =
        make_graph(2, {{"a", {0, 0}}, {"b", {2, 2}}, {"c", {0, 2}}, {"d", {2, 0}}}, {{"a", "b"}, {"c", "d"}});
    const ValidationReport report = validate_embedding(crossing);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.size() == 1);
    CHECK(report.violations[0].kind == "edge_crossing");
    CHECK(report.violations[0].detail.find("a") != std::string::npos);
    CHECK(report.violations[0].detail.find("c") != std::string::npos);
    // the diagonals meet at (1, 1)
    CHECK(report.violations[0].detail.find("(1, 1)") != std::string::npos);
}

TEST_CASE("validate_embedding reports coincident vertices and zero-length edges") {
    GeometricGraph g(2);
    g.add_vertex("p", Point{{0, 0}});
    g.add_vertex("q", Point{{0, 0}});
    g.add_vertex("r", Point{{1, 1}});
    g.add_edge("p", "q");  // zero length
    g.add_edge("q", "r");
    const ValidationReport report = validate_embedding(g);
    bool coincident = false, zero_len = false;
    for (const Violation& v : report.violations) {
        if (v.kind == "coincident_vertices") coincident = true;
        if (v.kind == "zero_length_edge") zero_len = true;
    }
    CHECK(coincident);
    CHECK(zero_len);
}

TEST_CASE("validate_embedding catches collinear overlap through a shared endpoint") {
    auto overlap = make_graph(1, {{"a", {0}}, {"b", {2}}, {"c", {1}}}, {{"a", "b"}, {"a", "c"}});
    // segment a-c lies inside segment a-b
    CHECK_FALSE(validate_embedding(overlap).ok());

    auto touching = make_graph(1, {{"a", {0}}, {"b", {2}}, {"c", {-1}}}, {{"a", "b"}, {"a", "c"}});
    // opposite directions from the shared endpoint: fine
    CHECK(validate_embedding(touching).ok());

    // T-junction: an endpoint in the interior of an unrelated edge
    auto tee = make_graph(2, {{"a", {0, 0}}, {"b", {2, 0}}, {"c", {1, 0}}, {"d", {1, 1}}},
                          {{"a", "b"}, {"c", "d"}});
    CHECK_FALSE(validate_embedding(tee).ok());
}

TEST_CASE("validate_embedding is label-invariant and matches the serial path") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const GeometricGraph g = testutil::small_random_graph(rng, 6, 9);
        const ValidationReport parallel = validate_embedding(g);
        const ValidationReport serial = validate_embedding_serial(g);
        REQUIRE(parallel.violations.size() == serial.violations.size());
        for (std::size_t i = 0; i < serial.violations.size(); ++i) {
            CHECK(parallel.violations[i].kind == serial.violations[i].kind);
            CHECK(parallel.violations[i].detail == serial.violations[i].detail);
        }

        std::map<std::string, int> kinds, relabeled_kinds;
        for (const Violation& v : validate_embedding(g).violations) ++kinds[v.kind];
        for (const Violation& v : validate_embedding(testutil::relabel(g, "zz")).violations) {
            ++relabeled_kinds[v.kind];
        }
        CHECK(kinds == relabeled_kinds);
    }
}

TEST_CASE("segment_distance spot checks") {
    // parallel unit segments at height 1
    CHECK(segment_distance(Point{{0, 0}}, Point{{1, 0}}, Point{{0, 1}}, Point{{1, 1}}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // crossing segments
    CHECK(segment_distance(Point{{0, 0}}, Point{{2, 2}}, Point{{0, 2}}, Point{{2, 0}}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // disjoint collinear
    CHECK(segment_distance(Point{{0, 0}}, Point{{1, 0}}, Point{{3, 0}}, Point{{4, 0}}) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // degenerate: both are points
    CHECK(segment_distance(Point{{1, 1}}, Point{{1, 1}}, Point{{4, 5}}, Point{{4, 5}}) ==
          doctest::Approx(5.0).epsilon(1e-12));
}
