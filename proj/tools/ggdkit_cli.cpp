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

// Command-line front end: compute distances and bounds, price matchings and
// edit paths, generate instance families, validate files.
//
// Exit codes: 0 success / valid; 1 validation failures; 2 parse or flag
// errors; 3 budget exhausted without proof under --require-optimal; 4 invalid
// matching or path handed to `price`.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ggdkit/editpath.hpp"
#include "ggdkit/geometry.hpp"
#include "ggdkit/instances.hpp"
#include "ggdkit/io.hpp"
#include "ggdkit/matching.hpp"
#include "ggdkit/solver.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotProven = 3;
constexpr int kExitBadInput = 4;

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "unreadable";
    std::uint64_t hash = 1469598103934665603ull;  // FNV-1a
    char c;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string g_command_line;  // set once in main

struct Report {
    json body = json::object();
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    explicit Report(const std::string& command) {
        body["command"] = command;
        body["command_line"] = g_command_line;
    }

    void input(const std::string& role, const std::string& path) {
        body["inputs"][role] = {{"path", path}, {"digest", file_digest(path)}};
    }
    json& results() { return body["results"]; }
    void witness_file(const std::string& path) { body["witness_files"].push_back(path); }

    void emit(bool json_mode) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        body["timing_seconds"] = elapsed.count();
        if (json_mode) {
            std::cout << body.dump(2) << "\n";
            return;
        }
        print_human("", body);
    }

private:
    static void print_human(const std::string& prefix, const json& j) {
        if (j.is_object()) {
            for (const auto& [key, value] : j.items()) {
                print_human(prefix.empty() ? key : prefix + "." + key, value);
            }
            return;
        }
        if (j.is_number_float()) {
            std::printf("%s = %.6g\n", prefix.c_str(), j.get<double>());
        } else {
            std::printf("%s = %s\n", prefix.c_str(), j.dump().c_str());
        }
    }
};

int solver_threads() {
    const char* env = std::getenv("GGDKIT_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

struct GgdArgs {
    std::string g_file, h_file;
    double cv = 1.0, ce = 1.0;
    std::uint64_t budget_nodes = 0;
    double time_limit = 0.0;
    std::string emit_witness;
    std::string incumbent_file;
    bool require_optimal = false;
    bool json_mode = false;
    bool oracle = false;
    double decision_tau = -1.0;
    bool decision_set = false;
};

ggdkit::SolveOptions solve_options(const GgdArgs& args) {
    ggdkit::SolveOptions options;
    if (args.budget_nodes > 0) options.budget.max_nodes = args.budget_nodes;
    if (args.time_limit > 0) options.budget.time_limit_seconds = args.time_limit;
    options.threads = solver_threads();
    return options;
}

int run_ggd(const GgdArgs& args) {
    Report report("ggd");
    report.input("g", args.g_file);
    report.input("h", args.h_file);
    const ggdkit::GeometricGraph g = ggdkit::load_graph(args.g_file);
    const ggdkit::GeometricGraph h = ggdkit::load_graph(args.h_file);
    const ggdkit::CostCoefficients coeffs{args.cv, args.ce};
    const ggdkit::SolveOptions options = solve_options(args);
    report.body["solver"]["threads"] = options.threads;

    if (args.decision_set) {
        std::optional<ggdkit::Matching> hint;
        if (!args.incumbent_file.empty()) {
            report.input("incumbent", args.incumbent_file);
            hint = ggdkit::load_matching(args.incumbent_file);
        }
        const ggdkit::DecisionResult r = ggdkit::ggd_decision(g, h, coeffs, args.decision_tau, options, hint);
        report.results()["tau"] = args.decision_tau;
        report.results()["satisfied"] = r.satisfied;
        report.results()["completed"] = r.completed;
        report.body["solver"]["nodes_explored"] = r.nodes_explored;
        if (r.witness && !args.emit_witness.empty()) {
            ggdkit::save_matching(args.emit_witness, *r.witness);
            report.witness_file(args.emit_witness);
        }
        report.emit(args.json_mode);
        return kExitOk;
    }

    const ggdkit::GgdResult r = ggdkit::ggd_exact(g, h, coeffs, options);
    report.results()["value"] = r.value;
    report.results()["proven_optimal"] = r.proven_optimal;
    report.results()["lower_bound"] = ggdkit::ggd_lower_bound(g, h, coeffs);
    report.results()["upper_bound_trivial"] = ggdkit::ggd_upper_bound_trivial(g, h, coeffs);
    report.results()["upper_bound_assignment"] = ggdkit::ggd_upper_bound_assignment(g, h, coeffs).value;
    report.body["solver"]["nodes_explored"] = r.nodes_explored;

    if (args.oracle) {
        // exhaustive enumeration cross-check, guarded against blowup
        double count = 1.0;
        const double n = static_cast<double>(g.vertex_count()), m = static_cast<double>(h.vertex_count());
        for (double k = 0; k < std::min(n, m); ++k) count *= (n - k) * (m - k) / (k + 1);
        if (count > 1e7) {
            std::cerr << "ggd: --oracle refused, enumeration too large\n";
            return kExitParse;
        }
        ggdkit::MatchingEnumerator it(g, h);
        double best = std::numeric_limits<double>::infinity();
        while (auto mm = it.next()) {
            best = std::min(best, ggdkit::matching_cost(g, h, *mm, coeffs).total);
        }
        report.results()["oracle_value"] = best;
        report.results()["oracle_agrees"] = (best == r.value);
    }

    if (!args.emit_witness.empty()) {
        ggdkit::save_matching(args.emit_witness, r.witness);
        report.witness_file(args.emit_witness);
    }
    report.emit(args.json_mode);
    if (args.require_optimal && !r.proven_optimal) return kExitNotProven;
    return kExitOk;
}

struct BoundsArgs {
    std::string g_file, h_file;
    double cv = 1.0, ce = 1.0;
    std::string emit_witness;
    bool json_mode = false;
};

int run_bounds(const BoundsArgs& args) {
    Report report("bounds");
    report.input("g", args.g_file);
    report.input("h", args.h_file);
    const ggdkit::GeometricGraph g = ggdkit::load_graph(args.g_file);
    const ggdkit::GeometricGraph h = ggdkit::load_graph(args.h_file);
    const ggdkit::CostCoefficients coeffs{args.cv, args.ce};

    const ggdkit::AssignmentUpperBound assignment = ggdkit::ggd_upper_bound_assignment(g, h, coeffs);
    report.results()["lower_bound"] = ggdkit::ggd_lower_bound(g, h, coeffs);
    report.results()["upper_bound_trivial"] = ggdkit::ggd_upper_bound_trivial(g, h, coeffs);
    report.results()["upper_bound_assignment"] = assignment.value;
    if (!args.emit_witness.empty()) {
        ggdkit::save_matching(args.emit_witness, assignment.witness);
        report.witness_file(args.emit_witness);
    }
    report.emit(args.json_mode);
    return kExitOk;
}

struct PriceArgs {
    std::string g_file, h_file;
    std::string matching_file, path_file;
    double cv = 1.0, ce = 1.0;
    double tol = 1e-9;
    bool json_mode = false;
};

int run_price(const PriceArgs& args) {
    if (args.matching_file.empty() == args.path_file.empty()) {
        std::cerr << "price: exactly one of --matching or --path is required\n";
        return kExitParse;
    }
    Report report("price");
    report.input("g", args.g_file);
    report.input("h", args.h_file);
    const ggdkit::GeometricGraph g = ggdkit::load_graph(args.g_file);
    const ggdkit::GeometricGraph h = ggdkit::load_graph(args.h_file);
    const ggdkit::CostCoefficients coeffs{args.cv, args.ce};

    if (!args.matching_file.empty()) {
        report.input("matching", args.matching_file);
        const ggdkit::Matching m = ggdkit::load_matching(args.matching_file);
        try {
            const ggdkit::MatchingCostBreakdown b = ggdkit::matching_cost(g, h, m, coeffs);
            report.results()["vertex_translation"] = b.vertex_translation;
            report.results()["edge_translation"] = b.edge_translation;
            report.results()["edge_deletions_g"] = b.edge_deletions_g;
            report.results()["edge_deletions_h"] = b.edge_deletions_h;
            report.results()["total"] = b.total;
        } catch (const ggdkit::ValidationError& e) {
            std::cerr << "price: invalid matching\n" << e.report().to_string();
            return kExitBadInput;
        }
        report.emit(args.json_mode);
        return kExitOk;
    }

    report.input("path", args.path_file);
    const std::vector<ggdkit::EditOp> ops = ggdkit::load_ops(args.path_file);
    const ggdkit::EditPath path{g, ops};
    try {
        const ggdkit::PathCostResult r = ggdkit::path_cost(path, coeffs);
        if (!ggdkit::graphs_equal(r.final_state, h, args.tol)) {
            std::cerr << "price: path does not end at H (tolerance " << args.tol << ")\n";
            return kExitBadInput;
        }
        report.results()["total"] = r.total;
        report.results()["end_state_lower_bound"] = ggdkit::path_cost_lower_bound(path, coeffs);
        const ggdkit::Matching induced = ggdkit::path_to_matching(path);
        report.results()["induced_matching_cost"] =
            ggdkit::matching_cost(g, r.final_state, induced, coeffs).total;
    } catch (const std::invalid_argument& e) {
        std::cerr << "price: illegal path: " << e.what() << "\n";
        return kExitBadInput;
    }
    report.emit(args.json_mode);
    return kExitOk;
}

struct GenArgs {
    std::string family;
    std::string out_dir;
    double d = 1.0;
    double cv = 1.0, ce = 1.0;
    unsigned k = 3;
    double l = 1.0, spacing = 0.1;
    std::string instance_file;
    double tau = 100.0;
    std::size_t vertices = 4, edges = 3;
    std::uint64_t seed = 0;
    std::size_t dim = 2;
    double box_lo = 0.0, box_hi = 10.0;
    bool json_mode = false;
};

int run_gen(const GenArgs& args) {
    Report report("gen " + args.family);
    report.results()["family"] = args.family;
    std::vector<std::pair<std::string, json>> files;

    if (args.family == "wiggle") {
        auto [g, h] = ggdkit::wiggle_pair();
        files.emplace_back("wiggle_g.json", ggdkit::graph_to_json(g));
        files.emplace_back("wiggle_h.json", ggdkit::graph_to_json(h));
    } else if (args.family == "tight") {
        const ggdkit::CostCoefficients coeffs{args.cv, args.ce};
        auto [g, h] = ggdkit::tight_pair(args.d, coeffs);
        files.emplace_back("tight_g.json", ggdkit::graph_to_json(g));
        files.emplace_back("tight_h.json", ggdkit::graph_to_json(h));
    } else if (args.family == "blob") {
        const ggdkit::GeometricGraph b = ggdkit::blob(args.k, args.l, args.spacing, ggdkit::Point{{0.0, 0.0}});
        files.emplace_back("blob.json", ggdkit::graph_to_json(b));
    } else if (args.family == "reduction") {
        if (args.instance_file.empty()) {
            std::cerr << "gen reduction: --instance is required\n";
            return kExitParse;
        }
        report.input("instance", args.instance_file);
        const ggdkit::ThreePartitionInstance inst = ggdkit::load_instance(args.instance_file);
        const ggdkit::CostCoefficients coeffs{args.cv, args.ce};
        const ggdkit::ReductionEncoding enc = ggdkit::encode_reduction(inst, args.tau, coeffs);
        files.emplace_back("reduction_g.json", ggdkit::graph_to_json(enc.g));
        files.emplace_back("reduction_h.json", ggdkit::graph_to_json(enc.h));
        files.emplace_back("reduction_layout.json", ggdkit::layout_to_json(enc.layout));
    } else if (args.family == "random") {
        const ggdkit::GeometricGraph g = ggdkit::random_graph(
            args.vertices, args.edges, ggdkit::Box::cube(args.dim, args.box_lo, args.box_hi), args.seed);
        files.emplace_back("random.json", ggdkit::graph_to_json(g));
    } else {
        std::cerr << "gen: unknown family '" << args.family << "'\n";
        return kExitParse;
    }

    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    for (const auto& [name, content] : files) {
        const std::string path = args.out_dir + "/" + name;
        ggdkit::save_json_file(path, content);
        report.results()["files"].push_back(path);
    }
    report.emit(args.json_mode);
    return kExitOk;
}

struct ValidateArgs {
    std::string file;
    std::string kind;
    std::string g_file, h_file;
    double tol = 1e-9;
};

int print_report_and_exit_code(const ggdkit::ValidationReport& report) {
    if (report.ok()) return kExitOk;
    std::cout << report.to_string();
    return kExitInvalid;
}

int run_validate(const ValidateArgs& args) {
    if (args.kind == "graph") {
        const ggdkit::GeometricGraph g = ggdkit::load_graph(args.file);
        return print_report_and_exit_code(ggdkit::validate_embedding(g, args.tol));
    }
    if (args.kind == "matching") {
        if (args.g_file.empty() || args.h_file.empty()) {
            std::cerr << "validate --kind matching requires --graph-g and --graph-h\n";
            return kExitParse;
        }
        const ggdkit::GeometricGraph g = ggdkit::load_graph(args.g_file);
        const ggdkit::GeometricGraph h = ggdkit::load_graph(args.h_file);
        const ggdkit::Matching m = ggdkit::load_matching(args.file);
        return print_report_and_exit_code(ggdkit::validate_matching(g, h, m));
    }
    if (args.kind == "path") {
        if (args.g_file.empty()) {
            std::cerr << "validate --kind path requires --graph-g\n";
            return kExitParse;
        }
        const ggdkit::GeometricGraph g = ggdkit::load_graph(args.g_file);
        const std::vector<ggdkit::EditOp> ops = ggdkit::load_ops(args.file);
        try {
            const ggdkit::PathCostResult r = ggdkit::path_cost({g, ops}, ggdkit::CostCoefficients{1.0, 1.0});
            if (!args.h_file.empty()) {
                const ggdkit::GeometricGraph h = ggdkit::load_graph(args.h_file);
                if (!ggdkit::graphs_equal(r.final_state, h, args.tol)) {
                    std::cout << "path_end_mismatch: final state differs from the target graph\n";
                    return kExitInvalid;
                }
            }
        } catch (const std::invalid_argument& e) {
            std::cout << "illegal_op: " << e.what() << "\n";
            return kExitInvalid;
        }
        return kExitOk;
    }
    std::cerr << "validate: unknown kind '" << args.kind << "'\n";
    return kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) {
        if (i) g_command_line += " ";
        g_command_line += argv[i];
    }

    CLI::App app{"geometric graph distance toolkit"};
    app.require_subcommand(1);

    GgdArgs ggd_args;
    CLI::App* ggd = app.add_subcommand("ggd", "exact geometric graph distance between two graphs");
    ggd->add_option("g_file", ggd_args.g_file, "graph JSON file")->required();
    ggd->add_option("h_file", ggd_args.h_file, "graph JSON file")->required();
    ggd->add_option("--cv", ggd_args.cv, "vertex translation coefficient");
    ggd->add_option("--ce", ggd_args.ce, "edge length coefficient");
    ggd->add_option("--budget-nodes", ggd_args.budget_nodes, "search node budget");
    ggd->add_option("--time-limit", ggd_args.time_limit, "search time limit in seconds");
    ggd->add_option("--emit-witness", ggd_args.emit_witness, "write the witness matching here");
    ggd->add_option("--incumbent", ggd_args.incumbent_file, "matching checked before searching (decision mode)");
    ggd->add_flag("--require-optimal", ggd_args.require_optimal, "exit 3 when the budget ran out without proof");
    ggd->add_flag("--json", ggd_args.json_mode, "machine-readable output");
    ggd->add_flag("--oracle", ggd_args.oracle, "cross-check against exhaustive enumeration (small inputs)");
    ggd->add_option("--decision", ggd_args.decision_tau, "decide cost <= tau instead of minimizing")
        ->check(CLI::NonNegativeNumber);

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand("bounds", "polynomial-time distance bounds");
    bounds->add_option("g_file", bounds_args.g_file)->required();
    bounds->add_option("h_file", bounds_args.h_file)->required();
    bounds->add_option("--cv", bounds_args.cv);
    bounds->add_option("--ce", bounds_args.ce);
    bounds->add_option("--emit-witness", bounds_args.emit_witness, "write the assignment witness here");
    bounds->add_flag("--json", bounds_args.json_mode);

    PriceArgs price_args;
    CLI::App* price = app.add_subcommand("price", "price a matching or an edit path");
    price->add_option("g_file", price_args.g_file)->required();
    price->add_option("h_file", price_args.h_file)->required();
    CLI::Option* m_opt = price->add_option("--matching", price_args.matching_file, "matching JSON file");
    CLI::Option* p_opt = price->add_option("--path", price_args.path_file, "edit path JSON file");
    m_opt->excludes(p_opt);
    price->add_option("--cv", price_args.cv);
    price->add_option("--ce", price_args.ce);
    price->add_option("--tol", price_args.tol, "tolerance for the path-end check");
    price->add_flag("--json", price_args.json_mode);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate instance families");
    gen->add_option("family", gen_args.family, "wiggle | tight | blob | reduction | random")->required();
    gen->add_option("--out-dir", gen_args.out_dir, "output directory")->required();
    gen->add_option("--d", gen_args.d, "target distance (tight)");
    gen->add_option("--cv", gen_args.cv);
    gen->add_option("--ce", gen_args.ce);
    gen->add_option("--k", gen_args.k, "blob size");
    gen->add_option("--l", gen_args.l, "blob row separation");
    gen->add_option("--spacing", gen_args.spacing, "blob vertex spacing");
    gen->add_option("--instance", gen_args.instance_file, "3-partition instance JSON (reduction)");
    gen->add_option("--tau", gen_args.tau, "decision threshold (reduction)");
    gen->add_option("--vertices", gen_args.vertices, "vertex count (random)");
    gen->add_option("--edges", gen_args.edges, "edge count (random)");
    gen->add_option("--seed", gen_args.seed, "random seed");
    gen->add_option("--dim", gen_args.dim, "ambient dimension (random)");
    gen->add_option("--box-lo", gen_args.box_lo, "box lower corner (random)");
    gen->add_option("--box-hi", gen_args.box_hi, "box upper corner (random)");
    gen->add_flag("--json", gen_args.json_mode);

    ValidateArgs validate_args;
    CLI::App* validate = app.add_subcommand("validate", "validate a graph, matching, or path file");
    validate->add_option("file", validate_args.file)->required();
    validate->add_option("--kind", validate_args.kind, "graph | matching | path")->required();
    validate->add_option("--graph-g", validate_args.g_file, "companion graph G");
    validate->add_option("--graph-h", validate_args.h_file, "companion graph H");
    validate->add_option("--tol", validate_args.tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }

    ggd_args.decision_set = ggd->count("--decision") > 0;

    try {
        if (ggd->parsed()) return run_ggd(ggd_args);
        if (bounds->parsed()) return run_bounds(bounds_args);
        if (price->parsed()) return run_price(price_args);
        if (gen->parsed()) return run_gen(gen_args);
        if (validate->parsed()) return run_validate(validate_args);
    } catch (const ggdkit::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
