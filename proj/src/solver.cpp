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

#include "ggdkit/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>

#include "ggdkit/assignment.hpp"

namespace ggdkit {

namespace {

// Incumbent comparisons carry an absolute slack so that rounding in the
// partial-state bound can never prune the true optimum.
constexpr double kPruneSlack = 1e-12;

using Clock = std::chrono::steady_clock;

struct SearchContext {
    const GeometricGraph& g;
    const GeometricGraph& h;
    CostCoefficients coeffs;

    std::vector<VertexId> g_ids;  // branch order: decreasing degree, then id
    std::vector<VertexId> h_ids;  // id order
    std::vector<Point> g_pos, h_pos;
    std::vector<std::vector<std::pair<std::size_t, double>>> g_adj;  // index, edge length
    std::vector<std::vector<std::pair<std::size_t, double>>> h_adj;
    std::vector<double> h_len;  // m*m, negative when absent
    std::vector<char> g_edge;   // n*n adjacency

    double vol_g = 0.0, vol_h = 0.0;

    bool g_has(std::size_t a, std::size_t b) const { return g_edge[a * g_ids.size() + b] != 0; }
    double h_length(std::size_t a, std::size_t b) const { return h_len[a * h_ids.size() + b]; }
};

SearchContext build_context(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs) {
    SearchContext ctx{g, h, coeffs, {}, {}, {}, {}, {}, {}, {}, {}, 0.0, 0.0};

    std::map<VertexId, std::size_t> deg;
    for (const EdgeKey& e : g.edges()) {
        ++deg[e.first];
        ++deg[e.second];
    }
    for (const auto& [id, p] : g.vertices()) ctx.g_ids.push_back(id);
    std::sort(ctx.g_ids.begin(), ctx.g_ids.end(), [&](const VertexId& a, const VertexId& b) {
        const std::size_t da = deg.count(a) ? deg.at(a) : 0;
        const std::size_t db = deg.count(b) ? deg.at(b) : 0;
        if (da != db) return da > db;
        return a < b;
    });
    for (const auto& [id, p] : h.vertices()) ctx.h_ids.push_back(id);

    const std::size_t n = ctx.g_ids.size();
    const std::size_t m = ctx.h_ids.size();
    std::map<VertexId, std::size_t> g_index, h_index;
    for (std::size_t i = 0; i < n; ++i) {
        g_index[ctx.g_ids[i]] = i;
        ctx.g_pos.push_back(g.vertex(ctx.g_ids[i]));
    }
    for (std::size_t j = 0; j < m; ++j) {
        h_index[ctx.h_ids[j]] = j;
        ctx.h_pos.push_back(h.vertex(ctx.h_ids[j]));
    }

    ctx.g_adj.assign(n, {});
    ctx.g_edge.assign(n * n, 0);
    for (const EdgeKey& e : g.edges()) {
        const std::size_t a = g_index.at(e.first), b = g_index.at(e.second);
        const double len = distance(ctx.g_pos[a], ctx.g_pos[b]);
        ctx.g_adj[a].emplace_back(b, len);
        ctx.g_adj[b].emplace_back(a, len);
        ctx.g_edge[a * n + b] = ctx.g_edge[b * n + a] = 1;
        ctx.vol_g += len;
    }
    ctx.h_adj.assign(m, {});
    ctx.h_len.assign(m * m, -1.0);
    for (const EdgeKey& e : h.edges()) {
        const std::size_t a = h_index.at(e.first), b = h_index.at(e.second);
        const double len = distance(ctx.h_pos[a], ctx.h_pos[b]);
        ctx.h_adj[a].emplace_back(b, len);
        ctx.h_adj[b].emplace_back(a, len);
        ctx.h_len[a * m + b] = ctx.h_len[b * m + a] = len;
        ctx.vol_h += len;
    }
    return ctx;
}

constexpr int kUndecided = -2;
constexpr int kDeleted = -1;

struct SearchState {
    std::vector<int> assign;   // g index -> h index, kDeleted, or kUndecided
    std::vector<int> h_owner;  // h index -> g index or -1
    double acc = 0.0;          // exact cost of everything already decided
    double undecided_vol_g = 0.0;
    double undecided_vol_h = 0.0;
};

SearchState initial_state(const SearchContext& ctx) {
    SearchState st;
    st.assign.assign(ctx.g_ids.size(), kUndecided);
    st.h_owner.assign(ctx.h_ids.size(), -1);
    st.undecided_vol_g = ctx.vol_g;
    st.undecided_vol_h = ctx.vol_h;
    return st;
}

struct StateDelta {
    double acc = 0.0, vol_g = 0.0, vol_h = 0.0;
};

// Decides vertex `ui` (matched to `choice` >= 0, or deleted). Newly decided
// g-edges contribute their exact cost; h-edges whose endpoints both became
// owned are classified as covered or provably deleted.
StateDelta apply_decision(const SearchContext& ctx, SearchState& st, std::size_t ui, int choice) {
    StateDelta d;
    if (choice >= 0) {
        d.acc += ctx.coeffs.c_v * distance(ctx.g_pos[ui], ctx.h_pos[static_cast<std::size_t>(choice)]);
    }
    for (const auto& [w, len] : ctx.g_adj[ui]) {
        if (st.assign[w] == kUndecided) continue;
        d.vol_g += len;
        const int wv = st.assign[w];
        if (choice >= 0 && wv >= 0) {
            const double hl = ctx.h_length(static_cast<std::size_t>(choice), static_cast<std::size_t>(wv));
            if (hl >= 0.0) {
                d.acc += ctx.coeffs.c_e * std::fabs(len - hl);
                d.vol_h += hl;
                continue;
            }
        }
        d.acc += ctx.coeffs.c_e * len;
    }
    if (choice >= 0) {
        for (const auto& [y, hl] : ctx.h_adj[static_cast<std::size_t>(choice)]) {
            const int owner = st.h_owner[y];
            if (owner < 0) continue;
            if (ctx.g_has(ui, static_cast<std::size_t>(owner))) continue;  // covered above
            d.acc += ctx.coeffs.c_e * hl;
            d.vol_h += hl;
        }
    }
    st.acc += d.acc;
    st.undecided_vol_g -= d.vol_g;
    st.undecided_vol_h -= d.vol_h;
    st.assign[ui] = choice;
    if (choice >= 0) st.h_owner[static_cast<std::size_t>(choice)] = static_cast<int>(ui);
    return d;
}

void undo_decision(const SearchContext& ctx, SearchState& st, std::size_t ui, int choice, const StateDelta& d) {
    (void)ctx;
    st.acc -= d.acc;
    st.undecided_vol_g += d.vol_g;
    st.undecided_vol_h += d.vol_h;
    st.assign[ui] = kUndecided;
    if (choice >= 0) st.h_owner[static_cast<std::size_t>(choice)] = -1;
}

double partial_lower_bound(const SearchContext& ctx, const SearchState& st) {
    return st.acc + ctx.coeffs.c_e * std::fabs(st.undecided_vol_g - st.undecided_vol_h);
}

Matching state_to_matching(const SearchContext& ctx, const std::vector<int>& assign) {
    std::vector<MatchingPair> pairs;
    std::vector<char> h_used(ctx.h_ids.size(), 0);
    for (std::size_t i = 0; i < assign.size(); ++i) {
        if (assign[i] >= 0) {
            pairs.push_back({ctx.g_ids[i], ctx.h_ids[static_cast<std::size_t>(assign[i])]});
            h_used[static_cast<std::size_t>(assign[i])] = 1;
        } else {
            pairs.push_back({ctx.g_ids[i], std::nullopt});
        }
    }
    for (std::size_t j = 0; j < ctx.h_ids.size(); ++j) {
        if (!h_used[j]) pairs.push_back({std::nullopt, ctx.h_ids[j]});
    }
    return Matching::from_pairs(std::move(pairs));
}

struct SharedSearch {
    std::atomic<double> incumbent{std::numeric_limits<double>::infinity()};
    std::mutex mu;
    double best_value = std::numeric_limits<double>::infinity();
    Matching best_witness;

    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exhausted{false};
    std::atomic<bool> found{false};

    bool decision = false;
    double tau = std::numeric_limits<double>::infinity();
    bool use_pruning = true;
    std::optional<std::uint64_t> max_nodes;
    std::optional<Clock::time_point> deadline;
};

void offer_incumbent(SharedSearch& shared, double value, const Matching& witness) {
    std::lock_guard<std::mutex> lock(shared.mu);
    if (value < shared.best_value) {
        shared.best_value = value;
        shared.best_witness = witness;
        shared.incumbent.store(value, std::memory_order_relaxed);
    }
}

bool over_budget(SharedSearch& shared) {
    const std::uint64_t n = shared.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared.max_nodes && n > *shared.max_nodes) return true;
    if (shared.deadline && (n & 0xFF) == 0 && Clock::now() > *shared.deadline) return true;
    return false;
}

void expand(const SearchContext& ctx, SearchState& st, std::size_t depth, SharedSearch& shared) {
    if (shared.found.load(std::memory_order_relaxed) || shared.exhausted.load(std::memory_order_relaxed)) return;
    if (over_budget(shared)) {
        shared.exhausted.store(true, std::memory_order_relaxed);
        return;
    }

    const std::size_t n = ctx.g_ids.size();
    if (depth == n) {
        const Matching m = state_to_matching(ctx, st.assign);
        const double priced = matching_cost(ctx.g, ctx.h, m, ctx.coeffs).total;
        if (shared.decision) {
            if (priced <= shared.tau) {
                std::lock_guard<std::mutex> lock(shared.mu);
                if (!shared.found.load()) {
                    shared.best_value = priced;
                    shared.best_witness = m;
                }
                shared.found.store(true, std::memory_order_relaxed);
            }
        } else {
            offer_incumbent(shared, priced, m);
        }
        return;
    }

    // Unmatched h-vertices by increasing pairing cost, deletion last.
    std::vector<std::pair<double, int>> choices;
    choices.reserve(ctx.h_ids.size() + 1);
    for (std::size_t j = 0; j < ctx.h_ids.size(); ++j) {
        if (st.h_owner[j] >= 0) continue;
        choices.emplace_back(ctx.coeffs.c_v * distance(ctx.g_pos[depth], ctx.h_pos[j]), static_cast<int>(j));
    }
    std::sort(choices.begin(), choices.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return ctx.h_ids[static_cast<std::size_t>(a.second)] < ctx.h_ids[static_cast<std::size_t>(b.second)];
    });
    choices.emplace_back(0.0, kDeleted);

    for (const auto& [pairing_cost, choice] : choices) {
        const StateDelta d = apply_decision(ctx, st, depth, choice);
        const double bound = partial_lower_bound(ctx, st);
        const double limit =
            shared.decision ? shared.tau : shared.incumbent.load(std::memory_order_relaxed);
        if (!shared.use_pruning || bound <= limit + kPruneSlack) {
            expand(ctx, st, depth + 1, shared);
        }
        undo_decision(ctx, st, depth, choice, d);
        if (shared.found.load(std::memory_order_relaxed)) return;
    }
}

void run_search(const SearchContext& ctx, SharedSearch& shared, int threads) {
    SearchState root = initial_state(ctx);
    const std::size_t n = ctx.g_ids.size();

#ifdef _OPENMP
    if (threads > 1 && n > 0) {
        // First-level branches become tasks; deeper levels stay serial within
        // each task. Workers share the incumbent.
        std::vector<std::pair<double, int>> choices;
        for (std::size_t j = 0; j < ctx.h_ids.size(); ++j) {
            choices.emplace_back(ctx.coeffs.c_v * distance(ctx.g_pos[0], ctx.h_pos[j]), static_cast<int>(j));
        }
        std::sort(choices.begin(), choices.end(), [&](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return ctx.h_ids[static_cast<std::size_t>(a.second)] < ctx.h_ids[static_cast<std::size_t>(b.second)];
        });
        choices.emplace_back(0.0, kDeleted);

#pragma omp parallel num_threads(threads)
#pragma omp single nowait
        {
            for (const auto& [pairing_cost, choice] : choices) {
                const int branch = choice;
#pragma omp task firstprivate(branch) shared(ctx, shared, root)
                {
                    if (!shared.found.load(std::memory_order_relaxed)) {
                        SearchState st = root;
                        if (!over_budget(shared)) {
                            const StateDelta d = apply_decision(ctx, st, 0, branch);
                            (void)d;
                            const double bound = partial_lower_bound(ctx, st);
                            const double limit = shared.decision
                                                     ? shared.tau
                                                     : shared.incumbent.load(std::memory_order_relaxed);
                            if (!shared.use_pruning || bound <= limit + kPruneSlack) {
                                expand(ctx, st, 1, shared);
                            }
                        } else {
                            shared.exhausted.store(true, std::memory_order_relaxed);
                        }
                    }
                }
            }
        }
        return;
    }
#else
    (void)threads;
#endif
    expand(ctx, root, 0, shared);
}

void check_inputs(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs) {
    coeffs.validate();
    if (g.dim() != h.dim()) {
        throw std::invalid_argument("solver: graphs have different dimensions (" + std::to_string(g.dim()) +
                                    " vs " + std::to_string(h.dim()) + ")");
    }
}

}  // namespace

double ggd_lower_bound(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs) {
    coeffs.validate();
    return coeffs.c_e * std::fabs(volume(g) - volume(h));
}

double ggd_upper_bound_trivial(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs) {
    coeffs.validate();
    return coeffs.c_e * (volume(g) + volume(h));
}

AssignmentUpperBound ggd_upper_bound_assignment(const GeometricGraph& g, const GeometricGraph& h,
                                                const CostCoefficients& coeffs) {
    check_inputs(g, h, coeffs);

    std::vector<VertexId> gs, hs;
    for (const auto& [id, p] : g.vertices()) gs.push_back(id);
    for (const auto& [id, p] : h.vertices()) hs.push_back(id);
    const std::size_t n = gs.size(), m = hs.size();

    auto deletion_cost = [&](const GeometricGraph& gr, const VertexId& id) {
        double s = 0.0;
        for (const EdgeKey& e : gr.edges()) {
            if (e.first == id || e.second == id) s += edge_length(gr, e);
        }
        return 0.5 * coeffs.c_e * s;
    };

    std::vector<MatchingPair> pairs;
    if (n + m > 0) {
        // Square padding: top-left holds pairing costs, the diagonal blocks
        // hold per-vertex deletion costs, the bottom-right is free.
        const std::size_t size = n + m;
        double max_entry = 0.0;
        std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                cost[i][j] = coeffs.c_v * distance(g.vertex(gs[i]), h.vertex(hs[j]));
                max_entry = std::max(max_entry, cost[i][j]);
            }
        }
        std::vector<double> del_g(n), del_h(m);
        for (std::size_t i = 0; i < n; ++i) {
            del_g[i] = deletion_cost(g, gs[i]);
            max_entry = std::max(max_entry, del_g[i]);
        }
        for (std::size_t j = 0; j < m; ++j) {
            del_h[j] = deletion_cost(h, hs[j]);
            max_entry = std::max(max_entry, del_h[j]);
        }
        const double blocked = (max_entry + 1.0) * static_cast<double>(size + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) cost[i][m + k] = (k == i) ? del_g[i] : blocked;
        }
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t j = 0; j < m; ++j) cost[n + k][j] = (j == k) ? del_h[k] : blocked;
        }

        const std::vector<std::size_t> row_to_col = min_cost_assignment(cost);
        std::vector<char> h_matched(m, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (row_to_col[i] < m) {
                pairs.push_back({gs[i], hs[row_to_col[i]]});
                h_matched[row_to_col[i]] = 1;
            } else {
                pairs.push_back({gs[i], std::nullopt});
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (!h_matched[j]) pairs.push_back({std::nullopt, hs[j]});
        }
    }

    AssignmentUpperBound out;
    out.witness = Matching::from_pairs(std::move(pairs));
    out.value = matching_cost(g, h, out.witness, coeffs).total;

    // The assignment objective ignores matched-edge length changes, so its
    // witness can price above the all-deleting matching; keep the better one.
    const Matching trivial = trivial_matching(g, h);
    const double trivial_priced = matching_cost(g, h, trivial, coeffs).total;
    if (trivial_priced < out.value) {
        out.witness = trivial;
        out.value = trivial_priced;
    }
    return out;
}

GgdResult ggd_exact(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs,
                    const SolveOptions& options) {
    check_inputs(g, h, coeffs);

    SearchContext ctx = build_context(g, h, coeffs);
    SharedSearch shared;
    shared.use_pruning = options.use_pruning;
    shared.max_nodes = options.budget.max_nodes;
    if (options.budget.time_limit_seconds) {
        shared.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(*options.budget.time_limit_seconds));
    }

    const AssignmentUpperBound assignment = ggd_upper_bound_assignment(g, h, coeffs);
    offer_incumbent(shared, assignment.value, assignment.witness);
    const Matching trivial = trivial_matching(g, h);
    offer_incumbent(shared, matching_cost(g, h, trivial, coeffs).total, trivial);

    run_search(ctx, shared, options.threads);

    GgdResult result;
    result.value = shared.best_value;
    result.witness = shared.best_witness;
    result.nodes_explored = shared.nodes.load();
    result.proven_optimal = !shared.exhausted.load();
    return result;
}

DecisionResult ggd_decision(const GeometricGraph& g, const GeometricGraph& h, const CostCoefficients& coeffs,
                            double tau, const SolveOptions& options, const std::optional<Matching>& hint) {
    check_inputs(g, h, coeffs);
    if (tau < 0.0) throw std::invalid_argument("ggd_decision: tau must be nonnegative");

    DecisionResult result;

    auto accept = [&](const Matching& m) {
        const double priced = matching_cost(g, h, m, coeffs).total;
        if (priced <= tau) {
            result.satisfied = true;
            result.completed = true;
            result.witness = m;
            return true;
        }
        return false;
    };

    if (hint && accept(*hint)) return result;
    const AssignmentUpperBound assignment = ggd_upper_bound_assignment(g, h, coeffs);
    if (accept(assignment.witness)) return result;
    if (accept(trivial_matching(g, h))) return result;

    SearchContext ctx = build_context(g, h, coeffs);
    SharedSearch shared;
    shared.decision = true;
    shared.tau = tau;
    shared.use_pruning = options.use_pruning;
    shared.max_nodes = options.budget.max_nodes;
    if (options.budget.time_limit_seconds) {
        shared.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(*options.budget.time_limit_seconds));
    }

    run_search(ctx, shared, options.threads);

    result.nodes_explored = shared.nodes.load();
    if (shared.found.load()) {
        result.satisfied = true;
        result.completed = true;
        result.witness = shared.best_witness;
    } else {
        result.satisfied = false;
        result.completed = !shared.exhausted.load();
    }
    return result;
}

}  // namespace ggdkit
