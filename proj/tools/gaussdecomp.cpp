// Copyright 2026 The gaussdecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gaussdecomp: command-line front end.
//
// Exit codes: 0 success or passing verdict, 1 failing verdict, 2 usage or
// input error.

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaussdecomp.hpp"

namespace gd = gaussdecomp;
using gd::Json;

namespace {

struct Globals {
    int threads = 0;
    bool timing = false;
    std::string output;
};

struct Outcome {
    Json body;
    int code = 0;
};

std::optional<std::uint64_t> g_seed;

std::uint64_t need_seed(const char* command) {
    if (!g_seed) throw std::invalid_argument(std::string(command) + " needs an explicit --seed");
    return *g_seed;
}

gd::EvenParityState named_target(const std::string& name, double alpha) {
    // <kind> or <kind><copies>, e.g. M, Mtilde2, Malpha3
    std::string kind = name;
    int copies = 1;
    while (!kind.empty() && std::isdigit(static_cast<unsigned char>(kind.back()))) kind.pop_back();
    if (kind.size() != name.size()) copies = std::stoi(name.substr(kind.size()));
    if (kind == "M") return gd::magic_power(gd::MagicKind::kM, copies);
    if (kind == "Mtilde") return gd::magic_power(gd::MagicKind::kMtilde, copies);
    if (kind == "Malpha") return gd::magic_power(gd::MagicKind::kMalpha, copies, alpha);
    throw std::invalid_argument("unknown target '" + name + "' (expected M, Mtilde or Malpha with optional copy count)");
}

Json decomposition_report(const gd::RankSearchResult& r) {
    Json j = gd::to_json(r.best);
    j["best_restart"] = r.best_restart;
    j["restart_losses"] = r.restart_losses;
    j["terms_count"] = r.best.terms.size();
    return j;
}

void write_log(const std::string& path, const std::vector<gd::SearchLogRow>& rows) {
    if (path.empty()) return;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    gd::write_log_csv(os, rows);
}

gd::RankSearchConfig rank_config(int terms, int iterations, double t0, double cooling, int restarts, int polish,
                                 int threads, std::uint64_t seed) {
    gd::RankSearchConfig c;
    c.terms = terms;
    c.iterations = iterations;
    c.initial_temperature = t0;
    c.cooling_rate = cooling;
    c.restarts = restarts;
    c.polish_iterations = polish;
    c.threads = threads;
    c.seed = seed;
    return c;
}

Json rank_config_json(const gd::RankSearchConfig& c) {
    return {{"terms", c.terms},
            {"iterations", c.iterations},
            {"initial_temperature", c.initial_temperature},
            {"cooling_rate", c.cooling_rate},
            {"restarts", c.restarts},
            {"polish_iterations", c.polish_iterations},
            {"symmetry_restricted", c.symmetry_restricted}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fermionic Gaussian state decompositions, fidelities and extents"};
    app.require_subcommand(1);
    Globals g;
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Master seed for randomized commands");
    app.add_option("--threads", g.threads, "Worker threads for restarts (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_flag("--timing", g.timing, "Record wall time in the output");
    app.add_option("-o,--output", g.output, "Write JSON here instead of stdout");

    std::string config_command;
    Json config = Json::object();
    std::function<Outcome()> run;

    // gaussian
    auto* gaussian = app.add_subcommand("gaussian", "Gaussianity checks, completion and sampling");
    gaussian->require_subcommand(1);
    std::string state_path;
    double tol = gd::kGaussianTol;
    auto* g_check = gaussian->add_subcommand("check", "Exit 0 iff the state is Gaussian");
    g_check->add_option("state", state_path, "State JSON")->required();
    g_check->add_option("--tol", tol, "Residual tolerance");
    g_check->callback([&] {
        config_command = "gaussian check";
        config = {{"state", state_path}, {"tol", tol}};
        run = [&] {
            const auto s = gd::read_state_file(state_path);
            const double lam = gd::lambda_residual_norm(s);
            Json j = {{"n", s.qubits()}, {"lambda_residual", lam}, {"gaussian", lam <= tol}};
            if (s.qubits() >= 4) {
                const auto rep = gd::max_constraint_residual(s);
                const auto f = gd::constraint_f(s, rep.worst);
                j["max_constraint_residual"] = {{"value", rep.max_abs},
                                                {"u", rep.worst.u},
                                                {"v", rep.worst.v},
                                                {"f", {f.real(), f.imag()}},
                                                {"constraints", rep.count}};
            }
            return Outcome{j, lam <= tol ? 0 : 1};
        };
    });
    std::string chart_path;
    auto* g_complete = gaussian->add_subcommand("complete", "Complete a free chart to a Gaussian state");
    g_complete->add_option("chart", chart_path, "Chart JSON")->required();
    g_complete->callback([&] {
        config_command = "gaussian complete";
        config = {{"chart", chart_path}};
        run = [&] {
            const auto c = gd::chart_from_json(gd::read_json_file(chart_path));
            return Outcome{{{"state", gd::to_json(gd::complete_amplitudes(c))}}, 0};
        };
    });
    int n_qubits = 4;
    std::string method = "circuit";
    auto* g_random = gaussian->add_subcommand("random", "Sample a Gaussian state");
    g_random->add_option("--n", n_qubits, "Qubits")->required()->check(CLI::Range(2, gd::kMaxQubits));
    g_random->add_option("--method", method, "circuit or chart")->check(CLI::IsMember({"circuit", "chart"}));
    g_random->callback([&] {
        config_command = "gaussian random";
        config = {{"n", n_qubits}, {"method", method}};
        run = [&] {
            const auto m = method == "chart" ? gd::GaussianMethod::kChart : gd::GaussianMethod::kCircuit;
            return Outcome{{{"state", gd::to_json(gd::random_gaussian(n_qubits, need_seed("gaussian random"), m))}}, 0};
        };
    });

    // fidelity
    int restarts = 50;
    auto* fidelity = app.add_subcommand("fidelity", "Estimate the Gaussian fidelity of a state");
    fidelity->add_option("state", state_path, "State JSON")->required();
    fidelity->add_option("--restarts", restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    fidelity->callback([&] {
        config_command = "fidelity";
        config = {{"state", state_path}, {"restarts", restarts}};
        run = [&] {
            const auto s = gd::read_state_file(state_path);
            const auto r = gd::gaussian_fidelity(s, restarts, need_seed("fidelity"), g.threads);
            return Outcome{gd::to_json(r), 0};
        };
    });

    // extent
    auto* extent = app.add_subcommand("extent", "Gaussian extent bounds and certificates");
    extent->require_subcommand(1);
    auto* e_lower = extent->add_subcommand("lower", "Lower bound 1 / F_G");
    e_lower->add_option("state", state_path, "State JSON")->required();
    e_lower->add_option("--restarts", restarts, "Fidelity restarts")->check(CLI::PositiveNumber);
    e_lower->callback([&] {
        config_command = "extent lower";
        config = {{"state", state_path}, {"restarts", restarts}};
        run = [&] {
            const auto s = gd::read_state_file(state_path).normalized();
            const auto r = gd::extent_lower_via_fidelity(s, {restarts, need_seed("extent lower"), g.threads});
            return Outcome{{{"lower_bound", r.value}, {"fidelity", gd::to_json(r.fidelity)}}, 0};
        };
    });
    int circuit_restarts = 20;
    auto* e_four = extent->add_subcommand("four", "Extent of a 4-qubit state via extreme witnesses");
    e_four->add_option("state", state_path, "State JSON")->required();
    e_four->add_option("--restarts", circuit_restarts, "Circuit optimizer restarts")->check(CLI::PositiveNumber);
    e_four->callback([&] {
        config_command = "extent four";
        config = {{"state", state_path}, {"restarts", circuit_restarts}};
        run = [&] {
            const auto s = gd::read_state_file(state_path);
            gd::CircuitOptions o;
            o.restarts = circuit_restarts;
            o.seed = need_seed("extent four");
            o.threads = g.threads;
            const auto r = gd::extent4_via_extreme_points(s, o, {10, o.seed, g.threads});
            Json j = {{"value", r.value},
                      {"witness", gd::to_json(r.witness)},
                      {"primal", gd::to_json(r.primal)},
                      {"gap", r.gap}};
            return Outcome{j, 0};
        };
    });
    std::vector<std::string> state_paths;
    auto* e_mult = extent->add_subcommand("mult", "Multiplicativity check on 4-qubit factors");
    e_mult->add_option("states", state_paths, "State JSON files, one per factor")->required();
    e_mult->add_option("--restarts", circuit_restarts, "Circuit optimizer restarts")->check(CLI::PositiveNumber);
    e_mult->callback([&] {
        config_command = "extent mult";
        config = {{"states", state_paths}, {"restarts", circuit_restarts}};
        run = [&] {
            std::vector<gd::EvenParityState> targets;
            for (const auto& p : state_paths) targets.push_back(gd::read_state_file(p));
            gd::CircuitOptions o;
            o.restarts = circuit_restarts;
            o.seed = need_seed("extent mult");
            o.threads = g.threads;
            const auto r = gd::multiplicativity_check(targets, o, {10, o.seed, g.threads});
            Json j = {{"single_values", r.single_values},
                      {"product_of_singles", r.product_of_singles},
                      {"dual_value", r.dual_value},
                      {"primal_value", r.primal_value},
                      {"gap", r.gap},
                      {"tensor_fidelity_estimate", r.tensor_witness.fidelity_estimate},
                      {"feasible", r.feasible},
                      {"agrees", r.agrees}};
            return Outcome{j, r.feasible && r.agrees ? 0 : 1};
        };
    });
    int copies = 1;
    auto* e_cert = extent->add_subcommand("certificate", "PSD certificate for copies of |0>+|15>");
    e_cert->add_option("--k", copies, "Copies (1..3)")->required();
    e_cert->callback([&] {
        config_command = "extent certificate";
        config = {{"k", copies}};
        run = [&] {
            const auto c = gd::build_m4_certificate(copies);
            return Outcome{gd::to_json(c), c.min_eigenvalue >= -1e-9 ? 0 : 1};
        };
    });
    int overlap_restarts = 8;
    auto* e_overlap = extent->add_subcommand("overlap", "Maximum Gaussian overlap of (|0>+|15>)^k");
    e_overlap->add_option("--k", copies, "Copies (1..3)")->required();
    e_overlap->add_option("--restarts", overlap_restarts, "Fidelity restarts")->check(CLI::PositiveNumber);
    e_overlap->callback([&] {
        config_command = "extent overlap";
        config = {{"k", copies}, {"restarts", overlap_restarts}};
        run = [&] {
            const auto r = gd::m4_overlap_bound_check(copies, {overlap_restarts, need_seed("extent overlap"), g.threads});
            Json j = {{"k", r.k}, {"max_overlap", r.max_overlap}, {"within_bound", r.within_bound},
                      {"witness", gd::to_json(r.witness)}};
            return Outcome{j, r.within_bound ? 0 : 1};
        };
    });

    // rank
    auto* rank = app.add_subcommand("rank", "Gaussian rank searches");
    rank->require_subcommand(1);
    std::string target = "Mtilde2";
    double alpha = 0.9;
    int terms = 2, iterations = 100000, polish = 2000, rank_restarts = 20;
    double t0 = 1.0, cooling = 0.9995;
    std::string log_path;
    auto add_anneal = [&](CLI::App* sub) {
        sub->add_option("--terms", terms, "Number of Gaussian terms")->check(CLI::PositiveNumber);
        sub->add_option("--iterations", iterations, "Annealing iterations per restart")->check(CLI::NonNegativeNumber);
        sub->add_option("--restarts", rank_restarts, "Restarts")->check(CLI::PositiveNumber);
        sub->add_option("--temperature", t0, "Initial temperature");
        sub->add_option("--cooling", cooling, "Geometric cooling rate in (0, 1)");
        sub->add_option("--polish", polish, "BFGS polish iterations")->check(CLI::NonNegativeNumber);
        sub->add_option("--log", log_path, "Write the best restart's trajectory as CSV");
    };
    auto* r_search = rank->add_subcommand("search", "Anneal a k-term decomposition");
    r_search->add_option("--target", target, "M, Mtilde, Malpha with optional copies, e.g. Mtilde2");
    r_search->add_option("--alpha", alpha, "alpha for Malpha");
    r_search->add_option("--state", state_path, "State JSON (overrides --target)");
    add_anneal(r_search);
    r_search->callback([&] {
        config_command = "rank search";
        run = [&] {
            const auto psi = state_path.empty() ? named_target(target, alpha) : gd::read_state_file(state_path);
            const auto cfg = rank_config(terms, iterations, t0, cooling, rank_restarts, polish, g.threads,
                                         need_seed("rank search"));
            config = rank_config_json(cfg);
            config["target"] = state_path.empty() ? Json(target) : Json(state_path);
            const auto r = gd::anneal_decomposition(psi, cfg);
            write_log(log_path, r.log);
            return Outcome{decomposition_report(r), 0};
        };
    });
    auto* r_sym = rank->add_subcommand("symmetric", "Symmetry-restricted search for |M>|M>");
    add_anneal(r_sym);
    r_sym->callback([&] {
        config_command = "rank symmetric";
        run = [&] {
            const auto cfg = rank_config(terms, iterations, t0, cooling, rank_restarts, polish, g.threads,
                                         need_seed("rank symmetric"));
            config = rank_config_json(cfg);
            const auto r = gd::symmetric_rank_search(terms, cfg);
            write_log(log_path, r.log);
            Json j = decomposition_report(r);
            if (terms == 3) {
                Json certs = Json::array();
                for (const auto& d : r.restart_decompositions) {
                    const auto c = gd::rank3_infeasibility_certificate(d);
                    certs.push_back({{"applicable", c.applicable},
                                     {"reason", c.reason},
                                     {"sigma3_required", c.sigma3_required},
                                     {"sigma3_product", c.product_singular_values[2]},
                                     {"residual_norm", c.residual_norm},
                                     {"bound", c.bound},
                                     {"obstruction", c.obstruction}});
                }
                j["rank3_certificates"] = certs;
            }
            return Outcome{j, 0};
        };
    });
    int pivot_row = 0, pivot_col = 0;
    auto* r_grid = rank->add_subcommand("grid", "Constraint-grid residuals of an 8-qubit state");
    r_grid->add_option("state", state_path, "State JSON")->required();
    r_grid->add_option("--pivot-row", pivot_row, "Pivot row index 0..7");
    r_grid->add_option("--pivot-col", pivot_col, "Pivot column index 0..7");
    r_grid->callback([&] {
        config_command = "rank grid";
        config = {{"state", state_path}, {"pivot_row", pivot_row}, {"pivot_col", pivot_col}};
        run = [&] {
            const auto s = gd::read_state_file(state_path);
            const auto r = gd::symmetry_grid_residuals(s, pivot_row, pivot_col);
            Json cells = Json::array();
            for (const auto& c : r.body)
                cells.push_back({{"row", c.row}, {"col", c.col}, {"label", c.label}, {"residual", {c.residual.real(), c.residual.imag()}}});
            Json j = {{"pivot", r.pivot},
                      {"cells", cells},
                      {"four_term_195", {r.four_term_195.real(), r.four_term_195.imag()}},
                      {"four_term_60", {r.four_term_60.real(), r.four_term_60.imag()}},
                      {"max_abs", r.max_abs},
                      {"asymmetry", gd::asymmetry(s, gd::grid_symmetry_masks())}};
            return Outcome{j, 0};
        };
    });

    // triples
    auto* triples = app.add_subcommand("triples", "Linearly dependent Gaussian triples");
    triples->require_subcommand(1);
    auto* t_build = triples->add_subcommand("build", "Build a triple from a weight-2 chart");
    t_build->add_option("chart", chart_path, "Triple chart JSON {n, anchor, values}")->required();
    t_build->callback([&] {
        config_command = "triples build";
        config = {{"chart", chart_path}};
        run = [&] {
            const auto c = gd::triple_chart_from_json(gd::read_json_file(chart_path));
            return Outcome{gd::to_json(gd::build_triple(c.n, gd::MatchgateCircuit{c.n, {}}, c.values, c.anchor)), 0};
        };
    });
    auto* t_dim = triples->add_subcommand("dimension", "Numerical dimension of the triple solution set");
    t_dim->add_option("--n", n_qubits, "Qubits")->required()->check(CLI::Range(4, 10));
    t_dim->callback([&] {
        config_command = "triples dimension";
        config = {{"n", n_qubits}};
        run = [&] { return Outcome{gd::to_json(gd::triple_manifold_dimension(n_qubits, need_seed("triples dimension"))), 0}; };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (*seed_opt) g_seed = seed_value;

    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    Json doc = {{"tool", "gaussdecomp"}, {"version", gd::kVersion}, {"command", config_command}, {"config", config}};
    doc["seed"] = g_seed ? Json(*g_seed) : Json(nullptr);
    if (g.timing) {
        doc["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    doc["result"] = out.body;
    if (g.output.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        try {
            gd::write_json_file(g.output, doc);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return out.code;
}
