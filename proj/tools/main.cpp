// xorgames: classical (Bell) and single-ebit quantum (Tsirelson) values of
// two-player XOR games, plus a Monte Carlo round simulator.
//
// Subcommands: catalog, solve-classical, solve-quantum, simulate,
// kernel-check, report, verify-paper. Machine output goes to stdout (JSON by
// default, CSV with --format csv); diagnostics and timings go to stderr.
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "xorgames/xorgames.hpp"

namespace {

using namespace xorgames;

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 0;           // 0: one per hardware thread
    std::string format;        // "", "json" or "csv"; "" = subcommand default
    bool quick = false;
};

bool want_csv(const GlobalOpts& g) { return g.format == "csv"; }

void emit(const std::string& text) {
    std::fputs(text.c_str(), stdout);
    if (text.empty() || text.back() != '\n') std::fputc('\n', stdout);
}

SolverConfig solver_config(const GlobalOpts& g, int starts, double tol,
                           const std::string& bell_flag) {
    SolverConfig cfg;
    cfg.starts = starts;
    cfg.seed = g.seed;
    cfg.grad_tol = tol;
    cfg.threads = g.threads;
    if (!bell_flag.empty() && bell_flag != "all") cfg.bell = bell_from_label(bell_flag);
    return cfg;
}

int cmd_catalog(const GlobalOpts&, const std::string& which, int n) {
    XorGame game;
    if (which == "chsh") {
        game = make_chsh();
    } else if (which == "odd-cycle") {
        game = make_odd_cycle(n);
        std::fprintf(stderr, "# vertices are 0-indexed: 1-indexed vertex v is question v-1\n");
    } else {
        game = make_eaos();
        std::fprintf(stderr, "# paths are 0-indexed: 1-indexed path p is question p-1\n");
    }
    emit(game_to_json(game));
    return 0;
}

int cmd_solve_classical(const GlobalOpts& g, const std::string& path) {
    const XorGame game = load_game_file(path);
    const ClassicalResult result = classical_value(game, g.threads);
    emit(want_csv(g) ? classical_result_to_csv(result) : classical_result_to_json(result));
    return 0;
}

int cmd_solve_quantum(const GlobalOpts& g, const std::string& path, int starts, double tol,
                      const std::string& bell_flag) {
    const XorGame game = load_game_file(path);
    const OptimizationResult result = quantum_value(game, solver_config(g, starts, tol, bell_flag));
    emit(want_csv(g) ? optimization_result_to_csv(result) : optimization_result_to_json(result));
    return 0;
}

int cmd_simulate(const GlobalOpts& g, const std::string& path, const std::string& strategy_path,
                 std::uint64_t rounds) {
    const XorGame game = load_game_file(path);
    const StrategyFile strat = load_strategy_file(strategy_path);
    SimulationReport report;
    if (strat.kind == StrategyFile::Kind::classical) {
        report = simulate_classical(game, strat.det, rounds, g.seed, g.threads);
    } else {
        report = simulate_quantum(game, strat.quantum, rounds, g.seed, g.threads);
    }
    emit(want_csv(g) ? simulation_report_to_csv(report) : simulation_report_to_json(report));
    return 0;
}

int cmd_kernel_check(const GlobalOpts& g, int samples) {
    constexpr double kThreshold = 1e-12;
    const double max_dev = kernel_agreement_max_deviation(samples, g.seed);
    const bool pass = max_dev < kThreshold;
    if (want_csv(g)) {
        emit("samples,seed,max_deviation,threshold,status\n" + std::to_string(samples) + ',' +
             std::to_string(g.seed) + ',' + format_double(max_dev) + ',' +
             format_double(kThreshold) + ',' + (pass ? "PASS" : "FAIL"));
    } else {
        JsonWriter w;
        w.begin_object();
        w.key("samples").value(samples);
        w.key("seed").value(g.seed);
        w.key("max_deviation").value(max_dev);
        w.key("threshold").value(kThreshold);
        w.key("pass").value(pass);
        w.end_object();
        emit(w.str());
    }
    return pass ? 0 : 1;
}

int cmd_report(const GlobalOpts& g, const std::string& path, int starts, double tol,
               const std::string& bell_flag) {
    const XorGame game = load_game_file(path);
    const RunReport report = build_run_report(game, solver_config(g, starts, tol, bell_flag));
    std::fprintf(stderr, "# timing: classical %.3f ms, quantum %.3f ms\n", report.classical_ms,
                 report.quantum_ms);
    emit(want_csv(g) ? run_report_to_csv(report) : run_report_to_json(report));
    return 0;
}

int cmd_verify_paper(const GlobalOpts& g, int starts) {
    const SolverConfig cfg = solver_config(g, starts, 1e-12, "");
    const std::vector<VerifyRow> rows = verification_rows(cfg, g.quick);
    if (g.format == "json") {
        emit(verification_rows_to_json(rows));
    } else if (want_csv(g)) {
        emit(verification_rows_to_csv(rows));
    } else {
        emit(verification_table(rows));
    }
    std::string failures;
    for (const VerifyRow& r : rows) {
        if (!r.pass) failures += (failures.empty() ? "" : "; ") + r.name;
    }
    if (!failures.empty()) {
        std::fprintf(stderr, "FAILED: %s\n", failures.c_str());
        return 1;
    }
    std::fprintf(stderr, "all %zu checks passed\n", rows.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Classical (Bell) and single-ebit quantum (Tsirelson) values of two-player XOR games"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed for optimizer starts and simulation rounds")
        ->envname("XORGAMES_SEED");
    app.add_option("--threads", g.threads, "worker threads (0 = one per hardware thread)")
        ->envname("XORGAMES_THREADS");
    app.add_option("--format", g.format, "output format for machine results")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--quick", g.quick, "skip Monte Carlo rows in verify-paper");

    int exit_code = 0;

    // catalog
    std::string catalog_which;
    int catalog_n = 3;
    CLI::App* catalog = app.add_subcommand("catalog", "emit a built-in game spec as JSON");
    catalog->add_option("game", catalog_which, "one of: chsh, odd-cycle, eaos")
        ->required()
        ->check(CLI::IsMember({"chsh", "odd-cycle", "eaos"}));
    catalog->add_option("--n", catalog_n, "cycle length for odd-cycle (odd, >= 3)");
    catalog->callback([&] { exit_code = cmd_catalog(g, catalog_which, catalog_n); });

    // solve-classical
    std::string classical_path;
    CLI::App* solve_c = app.add_subcommand("solve-classical",
                                           "exact classical value by strategy enumeration");
    solve_c->add_option("spec", classical_path, "game spec JSON file")->required();
    solve_c->callback([&] { exit_code = cmd_solve_classical(g, classical_path); });

    // solve-quantum
    std::string quantum_path, quantum_bell = "all";
    int quantum_starts = 64;
    double quantum_tol = 1e-12;
    CLI::App* solve_q = app.add_subcommand(
        "solve-quantum",
        "single-ebit quantum value by multi-start phase alignment + gradient ascent");
    solve_q->add_option("spec", quantum_path, "game spec JSON file")->required();
    solve_q->add_option("--starts", quantum_starts, "random starts per Bell state");
    solve_q->add_option("--bell", quantum_bell, "pin the Bell state: φ+|φ-|ψ+|ψ-|all");
    solve_q->add_option("--tol", quantum_tol, "gradient-norm convergence tolerance");
    solve_q->callback(
        [&] { exit_code = cmd_solve_quantum(g, quantum_path, quantum_starts, quantum_tol, quantum_bell); });

    // simulate
    std::string sim_path, sim_strategy;
    std::uint64_t sim_rounds = 1000000;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo rounds under a strategy file");
    simulate->add_option("spec", sim_path, "game spec JSON file")->required();
    simulate->add_option("--strategy", sim_strategy, "strategy JSON file")->required();
    simulate->add_option("--rounds", sim_rounds, "number of rounds");
    simulate->callback([&] { exit_code = cmd_simulate(g, sim_path, sim_strategy, sim_rounds); });

    // kernel-check
    int kernel_samples = 1000;
    CLI::App* kernel = app.add_subcommand(
        "kernel-check", "compare state-vector parity probabilities to the closed form");
    kernel->add_option("--samples", kernel_samples, "random angle pairs per Bell state");
    kernel->callback([&] { exit_code = cmd_kernel_check(g, kernel_samples); });

    // report
    std::string report_path, report_bell = "all";
    int report_starts = 64;
    double report_tol = 1e-12;
    CLI::App* report = app.add_subcommand("report", "classical + quantum values in one report");
    report->add_option("spec", report_path, "game spec JSON file")->required();
    report->add_option("--starts", report_starts, "random starts per Bell state");
    report->add_option("--bell", report_bell, "pin the Bell state: φ+|φ-|ψ+|ψ-|all");
    report->add_option("--tol", report_tol, "gradient-norm convergence tolerance");
    report->callback(
        [&] { exit_code = cmd_report(g, report_path, report_starts, report_tol, report_bell); });

    // verify-paper
    int verify_starts = 64;
    CLI::App* verify = app.add_subcommand(
        "verify-paper", "recompute all published reference values and report pass/fail");
    verify->add_option("--starts", verify_starts, "random starts per Bell state");
    verify->callback([&] { exit_code = cmd_verify_paper(g, verify_starts); });

    for (CLI::App* sub : {catalog, solve_c, solve_q, simulate, kernel, report, verify}) {
        sub->fallthrough();  // global flags may follow the subcommand
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage diagnostic
        return 2;
    } catch (const GameTooLargeForEnumeration& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}
