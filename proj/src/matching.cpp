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

#include "ggdkit/matching.hpp"

#include <algorithm>
#include <cmath>

namespace ggdkit {

namespace {

bool pair_less(const MatchingPair& a, const MatchingPair& b) {
    // Matched and left-only pairs sort by left id; right-only pairs follow,
    // sorted by right id.
    const bool a_has_left = a.left.has_value();
    const bool b_has_left = b.left.has_value();
    if (a_has_left != b_has_left) return a_has_left;
    if (a_has_left) {
        if (*a.left != *b.left) return *a.left < *b.left;
        if (a.right.has_value() != b.right.has_value()) return a.right.has_value();
        if (a.right && b.right) return *a.right < *b.right;
        return false;
    }
    return *a.right < *b.right;
}

double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

}  // namespace

Matching Matching::from_pairs(std::vector<MatchingPair> pairs) {
    Matching m;
    for (MatchingPair& p : pairs) {
        if (!p.left && !p.right) continue;  // the all-deleted pair carries no information
        m.pairs_.push_back(std::move(p));
    }
    std::sort(m.pairs_.begin(), m.pairs_.end(), pair_less);
    return m;
}

std::map<VertexId, VertexId> Matching::forward() const {
    std::map<VertexId, VertexId> f;
    for (const MatchingPair& p : pairs_) {
        if (p.left && p.right) f.emplace(*p.left, *p.right);
    }
    return f;
}

std::map<VertexId, VertexId> Matching::backward() const {
    std::map<VertexId, VertexId> b;
    for (const MatchingPair& p : pairs_) {
        if (p.left && p.right) b.emplace(*p.right, *p.left);
    }
    return b;
}

std::size_t Matching::matched_count() const {
    std::size_t n = 0;
    for (const MatchingPair& p : pairs_) {
        if (p.left && p.right) ++n;
    }
    return n;
}

Matching trivial_matching(const GeometricGraph& g, const GeometricGraph& h) {
    std::vector<MatchingPair> pairs;
    for (const auto& [id, p] : g.vertices()) pairs.push_back({id, std::nullopt});
    for (const auto& [id, p] : h.vertices()) pairs.push_back({std::nullopt, id});
    return Matching::from_pairs(std::move(pairs));
}

Matching identity_matching(const GeometricGraph& g) {
    std::vector<MatchingPair> pairs;
    for (const auto& [id, p] : g.vertices()) pairs.push_back({id, id});
    return Matching::from_pairs(std::move(pairs));
}

ValidationReport validate_matching(const GeometricGraph& g, const GeometricGraph& h, const Matching& m) {
    ValidationReport report;
    std::map<VertexId, int> left_seen, right_seen;
    for (const MatchingPair& p : m.pairs()) {
        if (p.left) {
            if (!g.has_vertex(*p.left)) {
                report.violations.push_back({"unknown_left_vertex", "'" + *p.left + "' is not a vertex of G"});
            }
            ++left_seen[*p.left];
        }
        if (p.right) {
            if (!h.has_vertex(*p.right)) {
                report.violations.push_back({"unknown_right_vertex", "'" + *p.right + "' is not a vertex of H"});
            }
            ++right_seen[*p.right];
        }
    }
    for (const auto& [id, pt] : g.vertices()) {
        auto it = left_seen.find(id);
        if (it == left_seen.end()) {
            report.violations.push_back({"left_uncovered", "G vertex '" + id + "' appears in no pair"});
        } else if (it->second > 1) {
            report.violations.push_back(
                {"left_duplicated", "G vertex '" + id + "' appears in " + std::to_string(it->second) + " pairs"});
        }
    }
    for (const auto& [id, pt] : h.vertices()) {
        auto it = right_seen.find(id);
        if (it == right_seen.end()) {
            report.violations.push_back({"right_uncovered", "H vertex '" + id + "' appears in no pair"});
        } else if (it->second > 1) {
            report.violations.push_back(
                {"right_duplicated", "H vertex '" + id + "' appears in " + std::to_string(it->second) + " pairs"});
        }
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) { return std::tie(a.kind, a.detail) < std::tie(b.kind, b.detail); });
    return report;
}

std::optional<EdgeKey> edge_image(const GeometricGraph& g, const GeometricGraph& h, const Matching& m,
                                  const EdgeKey& e) {
    const EdgeKey key = make_edge(e.first, e.second);
    if (!g.edges().count(key)) {
        throw std::invalid_argument("unknown edge (" + key.first + ", " + key.second + ")");
    }
    const auto fwd = m.forward();
    auto ia = fwd.find(key.first);
    auto ib = fwd.find(key.second);
    if (ia == fwd.end() || ib == fwd.end()) return std::nullopt;
    if (!h.has_edge(ia->second, ib->second)) return std::nullopt;
    return make_edge(ia->second, ib->second);
}

MatchingCostBreakdown matching_cost(const GeometricGraph& g, const GeometricGraph& h, const Matching& m,
                                    const CostCoefficients& coeffs) {
    coeffs.validate();
    if (g.dim() != h.dim()) {
        throw std::invalid_argument("matching_cost: graphs have different dimensions");
    }
    ValidationReport report = validate_matching(g, h, m);
    if (!report.ok()) throw ValidationError("matching_cost: invalid matching", std::move(report));

    const auto fwd = m.forward();

    std::vector<double> vt, et, dg, dh;
    for (const auto& [u, v] : fwd) {
        vt.push_back(coeffs.c_v * distance(g.vertex(u), h.vertex(v)));
    }

    std::set<EdgeKey> covered;
    for (const EdgeKey& e : g.edges()) {
        auto ia = fwd.find(e.first);
        auto ib = fwd.find(e.second);
        if (ia != fwd.end() && ib != fwd.end() && h.has_edge(ia->second, ib->second)) {
            const EdgeKey f = make_edge(ia->second, ib->second);
            et.push_back(coeffs.c_e * std::fabs(edge_length(g, e) - edge_length(h, f)));
            covered.insert(f);
        } else {
            dg.push_back(coeffs.c_e * edge_length(g, e));
        }
    }
    for (const EdgeKey& f : h.edges()) {
        if (!covered.count(f)) dh.push_back(coeffs.c_e * edge_length(h, f));
    }

    MatchingCostBreakdown out;
    out.vertex_translation = sorted_sum(vt);
    out.edge_translation = sorted_sum(et);
    out.edge_deletions_g = sorted_sum(dg);
    out.edge_deletions_h = sorted_sum(dh);
    out.total = (out.vertex_translation + out.edge_translation) + (out.edge_deletions_g + out.edge_deletions_h);
    return out;
}

Matching invert_matching(const Matching& m) {
    std::vector<MatchingPair> pairs;
    pairs.reserve(m.pairs().size());
    for (const MatchingPair& p : m.pairs()) pairs.push_back({p.right, p.left});
    return Matching::from_pairs(std::move(pairs));
}

Matching compose_matchings(const Matching& m1, const Matching& m2) {
    std::set<VertexId> mid_right, mid_left;
    for (const MatchingPair& p : m1.pairs()) {
        if (p.right) mid_right.insert(*p.right);
    }
    for (const MatchingPair& p : m2.pairs()) {
        if (p.left) mid_left.insert(*p.left);
    }
    if (mid_right != mid_left) {
        throw std::invalid_argument("compose_matchings: middle vertex sets differ");
    }

    const auto f2 = m2.forward();
    std::set<VertexId> reached;  // right-side vertices of m2 hit by the composite
    std::vector<MatchingPair> pairs;
    for (const MatchingPair& p : m1.pairs()) {
        if (!p.left) continue;
        std::optional<VertexId> image;
        if (p.right) {
            auto it = f2.find(*p.right);
            if (it != f2.end()) {
                image = it->second;
                reached.insert(it->second);
            }
        }
        pairs.push_back({p.left, image});
    }
    for (const MatchingPair& p : m2.pairs()) {
        if (p.right && !reached.count(*p.right)) pairs.push_back({std::nullopt, p.right});
    }
    return Matching::from_pairs(std::move(pairs));
}

MatchingEnumerator::MatchingEnumerator(const GeometricGraph& g, const GeometricGraph& h) {
    for (const auto& [id, p] : g.vertices()) gs_.push_back(id);
    for (const auto& [id, p] : h.vertices()) hs_.push_back(id);
    // std::map iteration is id-sorted already
}

std::optional<Matching> MatchingEnumerator::next() {
    if (done_) return std::nullopt;
    if (fresh_) {
        fresh_ = false;
        // k = 0: the all-deleting matching
        return current();
    }
    if (!advance()) {
        done_ = true;
        return std::nullopt;
    }
    return current();
}

bool MatchingEnumerator::advance() {
    const std::size_t kmax = std::min(gs_.size(), hs_.size());

    if (k_ > 0 && std::next_permutation(perm_.begin(), perm_.end())) return true;

    auto next_combination = [](std::vector<std::size_t>& comb, std::size_t n) {
        const std::size_t k = comb.size();
        if (k == 0) return false;
        std::size_t i = k;
        while (i-- > 0) {
            if (comb[i] + 1 <= n - (k - i)) {
                ++comb[i];
                for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    if (k_ > 0) {
        perm_.resize(k_);
        for (std::size_t i = 0; i < k_; ++i) perm_[i] = i;
        if (next_combination(comb_h_, hs_.size())) return true;
        for (std::size_t i = 0; i < k_; ++i) comb_h_[i] = i;
        if (next_combination(comb_g_, gs_.size())) return true;
    }

    // move to the next matched-subset size
    ++k_;
    if (k_ > kmax) return false;
    comb_g_.resize(k_);
    comb_h_.resize(k_);
    perm_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        comb_g_[i] = i;
        comb_h_[i] = i;
        perm_[i] = i;
    }
    return true;
}

Matching MatchingEnumerator::current() const {
    std::vector<MatchingPair> pairs;
    std::vector<char> g_used(gs_.size(), 0), h_used(hs_.size(), 0);
    for (std::size_t i = 0; i < k_; ++i) {
        pairs.push_back({gs_[comb_g_[i]], hs_[comb_h_[perm_[i]]]});
        g_used[comb_g_[i]] = 1;
        h_used[comb_h_[perm_[i]]] = 1;
    }
    for (std::size_t i = 0; i < gs_.size(); ++i) {
        if (!g_used[i]) pairs.push_back({gs_[i], std::nullopt});
    }
    for (std::size_t i = 0; i < hs_.size(); ++i) {
        if (!h_used[i]) pairs.push_back({std::nullopt, hs_[i]});
    }
    return Matching::from_pairs(std::move(pairs));
}

}  // namespace ggdkit
