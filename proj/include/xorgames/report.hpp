#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "xorgames/catalog.hpp"
#include "xorgames/classical.hpp"
#include "xorgames/io.hpp"
#include "xorgames/simulate.hpp"
#include "xorgames/solver.hpp"

namespace xorgames {

// ---------------------------------------------------------------------------
// Reference strategies from the literature (plus one constructed here)
// ---------------------------------------------------------------------------

/// Published optimal CHSH witness: phi- with alpha(s) = (pi/4)s - pi/16 and
/// the same table for beta. Its objective is cos^2(pi/8).
inline QuantumStrategy chsh_reference_witness() {
    return {kPhiMinus,
            {-kPi / 16, 3 * kPi / 16},
            {-kPi / 16, 3 * kPi / 16}};
}

/// Published optimal EAOS witness: phi+ with alpha(s) = (pi/3)s - pi/3 =
/// beta(s). Its objective is 5/6.
inline QuantumStrategy eaos_reference_witness() {
    return {kPhiPlus,
            {-kPi / 3, 0.0, kPi / 3},
            {-kPi / 3, 0.0, kPi / 3}};
}

/// The shared answer tables f = g = (0,1,1) winning EAOS with probability 7/9.
inline DeterministicStrategy eaos_reference_tables() {
    return {{0, 1, 1}, {0, 1, 1}};
}

/// Odd-cycle witness attaining cos^2(pi/4n): phi+ with
///   alpha(s) = pi/(4n) - (pi/2)(1 - 1/n) s,   beta(t) = -(pi/2)(1 - 1/n) t.
/// Same-vertex pairs get theta = -pi/4n (win probability cos^2(pi/4n)) and
/// adjacent pairs theta = -(pi/2 - pi/4n) mod pi (win probability
/// sin^2(pi/2 - pi/4n) = cos^2(pi/4n)), so every pair contributes equally.
inline QuantumStrategy odd_cycle_reference_witness(int n) {
    if (n < 3 || n % 2 == 0) {
        throw EvenOrTooSmallN("cycle length must be odd and >= 3, got " + std::to_string(n));
    }
    const double slope = (kPi / 2) * (1.0 - 1.0 / n);
    QuantumStrategy strat{kPhiPlus, std::vector<double>(n), std::vector<double>(n)};
    for (int s = 0; s < n; ++s) strat.alpha[s] = kPi / (4.0 * n) - slope * s;
    for (int t = 0; t < n; ++t) strat.beta[t] = -slope * t;
    return strat;
}

// ---------------------------------------------------------------------------
// Combined solve report
// ---------------------------------------------------------------------------

struct RunReport {
    std::string game_name;
    ClassicalResult classical;
    OptimizationResult quantum;
    double quantum_advantage = 0.0;  // quantum minus classical; >= -1e-9 always
    // Wall-clock phase timings. Deliberately kept out of the JSON/CSV
    // renderings so identical inputs give byte-identical reports; the CLI
    // prints them to stderr.
    double classical_ms = 0.0;
    double quantum_ms = 0.0;
};

inline RunReport build_run_report(const XorGame& game, const SolverConfig& config) {
    using clock = std::chrono::steady_clock;
    RunReport rep;
    rep.game_name = game.name;
    const auto t0 = clock::now();
    rep.classical = classical_value(game, config.threads);
    const auto t1 = clock::now();
    rep.quantum = quantum_value(game, config);
    const auto t2 = clock::now();
    rep.classical_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.quantum_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    rep.quantum_advantage = rep.quantum.value - rep.classical.value;
    return rep;
}

inline std::string run_report_to_json(const RunReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("game").value(std::string_view(rep.game_name));
    w.key("classical").begin_object();
    w.key("value").value(rep.classical.value);
    w.key("witness_f").begin_array();
    for (std::uint8_t b : rep.classical.witness.f) w.value(static_cast<int>(b));
    w.end_array();
    w.key("witness_g").begin_array();
    for (std::uint8_t b : rep.classical.witness.g) w.value(static_cast<int>(b));
    w.end_array();
    w.key("strategies_enumerated").value(rep.classical.strategies_enumerated);
    w.end_object();
    w.key("quantum").begin_object();
    write_optimization_fields(w, rep.quantum);
    w.end_object();
    w.key("quantum_advantage").value(rep.quantum_advantage);
    w.end_object();
    return w.str();
}

namespace detail {

inline std::string join_bits(const std::vector<std::uint8_t>& bits) {
    std::string s;
    for (std::uint8_t b : bits) {
        if (!s.empty()) s += ';';
        s += std::to_string(static_cast<int>(b));
    }
    return s;
}

inline std::string join_doubles(const std::vector<double>& vals) {
    std::string s;
    for (double v : vals) {
        if (!s.empty()) s += ';';
        s += format_double(v);
    }
    return s;
}

}  // namespace detail

inline std::string run_report_to_csv(const RunReport& rep) {
    std::string s =
        "game,classical_value,witness_f,witness_g,quantum_value,bell,alpha,beta,"
        "starts_run,gradient_norm,converged,quantum_advantage\n";
    s += rep.game_name + ',' + format_double(rep.classical.value) + ',' +
         detail::join_bits(rep.classical.witness.f) + ',' +
         detail::join_bits(rep.classical.witness.g) + ',' +
         format_double(rep.quantum.value) + ',' + bell_label(rep.quantum.witness.bell) + ',' +
         detail::join_doubles(rep.quantum.witness.alpha) + ',' +
         detail::join_doubles(rep.quantum.witness.beta) + ',' +
         std::to_string(rep.quantum.starts_run) + ',' +
         format_double(rep.quantum.best_gradient_norm) + ',' +
         (rep.quantum.converged ? "true" : "false") + ',' +
         format_double(rep.quantum_advantage) + '\n';
    return s;
}

inline std::string classical_result_to_csv(const ClassicalResult& r) {
    return "value,witness_f,witness_g,strategies_enumerated\n" + format_double(r.value) + ',' +
           detail::join_bits(r.witness.f) + ',' + detail::join_bits(r.witness.g) + ',' +
           std::to_string(r.strategies_enumerated) + '\n';
}

inline std::string optimization_result_to_csv(const OptimizationResult& r) {
    return "label,value,bell,alpha,beta,starts_run,gradient_norm,converged\n" +
           std::string(kQuantumValueLabel) + ',' + format_double(r.value) + ',' +
           bell_label(r.witness.bell) + ',' + detail::join_doubles(r.witness.alpha) + ',' +
           detail::join_doubles(r.witness.beta) + ',' + std::to_string(r.starts_run) + ',' +
           format_double(r.best_gradient_norm) + ',' + (r.converged ? "true" : "false") + '\n';
}

inline std::string simulation_report_to_csv(const SimulationReport& r) {
    return "rounds,wins,win_rate,stderr,seed\n" + std::to_string(r.rounds) + ',' +
           std::to_string(r.wins) + ',' + format_double(r.win_rate) + ',' +
           format_double(r.std_error) + ',' + std::to_string(r.seed) + '\n';
}

// ---------------------------------------------------------------------------
// Reference-value verification suite (backs the verify-paper subcommand)
// ---------------------------------------------------------------------------

struct VerifyRow {
    std::string name;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// One ulp above the values in play (all in (0.5, 1]): the bound on
/// |double-model value - exact closed form| for results like 7/9 that have
/// no exact double representation. Dyadic results (3/4) get tolerance 0.
inline constexpr double kClosedFormTol = 2.23e-16;

namespace detail {

inline VerifyRow make_row(std::string name, double expected, double computed, double tol) {
    VerifyRow row{std::move(name), expected, computed, tol, false};
    row.pass = std::abs(computed - expected) <= tol;
    return row;
}

}  // namespace detail

/// Recomputes every published value the acceptance gate cares about and
/// returns one row per check. `config` tunes the optimizer (starts/seed/
/// threads); with too few starts the quantum rows can legitimately fail.
/// `quick` skips the two Monte Carlo rows.
inline std::vector<VerifyRow> verification_rows(const SolverConfig& config, bool quick) {
    std::vector<VerifyRow> rows;
    const double chsh_q = std::cos(kPi / 8) * std::cos(kPi / 8);

    const XorGame chsh = make_chsh();
    const XorGame eaos = make_eaos();

    rows.push_back(detail::make_row("omega_c(CHSH)", 0.75,
                                    classical_value(chsh, config.threads).value, 0.0));
    const OptimizationResult chsh_opt = quantum_value(chsh, config);
    rows.push_back(detail::make_row("omega_q(CHSH)", chsh_q, chsh_opt.value, 1e-9));

    for (int n : {3, 5, 7, 9}) {
        const XorGame cycle = make_odd_cycle(n);
        rows.push_back(detail::make_row("omega_c(odd-cycle-" + std::to_string(n) + ")",
                                        1.0 - 1.0 / (2.0 * n),
                                        classical_value(cycle, config.threads).value,
                                        kClosedFormTol));
    }
    for (int n : {3, 5, 7, 9}) {
        const XorGame cycle = make_odd_cycle(n);
        rows.push_back(detail::make_row("omega_q(odd-cycle-" + std::to_string(n) + ")",
                                        odd_cycle_closed_form(n),
                                        quantum_value(cycle, config).value, 1e-6));
    }

    rows.push_back(detail::make_row("omega_c(EAOS)", 7.0 / 9.0,
                                    classical_value(eaos, config.threads).value,
                                    kClosedFormTol));
    const OptimizationResult eaos_opt = quantum_value(eaos, config);
    rows.push_back(detail::make_row("omega_q(EAOS)", 5.0 / 6.0, eaos_opt.value, 1e-9));

    rows.push_back(detail::make_row("random-answer baseline CHSH", 0.75,
                                    random_answer_value(chsh), 0.0));
    rows.push_back(detail::make_row("random-answer baseline EAOS", 2.0 / 3.0,
                                    random_answer_value(eaos), kClosedFormTol));

    rows.push_back(detail::make_row("CHSH reference witness objective", chsh_q,
                                    objective(chsh, chsh_reference_witness()), 1e-9));
    rows.push_back(detail::make_row("EAOS reference witness objective", 5.0 / 6.0,
                                    objective(eaos, eaos_reference_witness()), 1e-9));
    rows.push_back(detail::make_row("EAOS reference tables value", 7.0 / 9.0,
                                    evaluate_deterministic(eaos, eaos_reference_tables()),
                                    kClosedFormTol));
    rows.push_back(detail::make_row("odd-cycle-5 constructed witness objective",
                                    odd_cycle_closed_form(5),
                                    objective(make_odd_cycle(5), odd_cycle_reference_witness(5)),
                                    1e-12));

    rows.push_back(detail::make_row("kernel parity agreement (4 states x 1000 angles)", 0.0,
                                    kernel_agreement_max_deviation(1000, config.seed), 1e-12));

    if (!quick) {
        const std::uint64_t rounds = 1000000;
        const SimulationReport mc_chsh =
            simulate_quantum(chsh, chsh_opt.witness, rounds, config.seed, config.threads);
        rows.push_back(detail::make_row("monte-carlo CHSH optimal witness (1e6 rounds)", chsh_q,
                                        mc_chsh.win_rate, 4.0 * mc_chsh.std_error));
        const SimulationReport mc_eaos =
            simulate_quantum(eaos, eaos_opt.witness, rounds, config.seed, config.threads);
        rows.push_back(detail::make_row("monte-carlo EAOS optimal witness (1e6 rounds)",
                                        5.0 / 6.0, mc_eaos.win_rate, 4.0 * mc_eaos.std_error));
    }
    return rows;
}

/// Human-readable fixed-width table of check rows.
inline std::string verification_table(const std::vector<VerifyRow>& rows) {
    std::size_t name_w = 5;
    for (const VerifyRow& r : rows) name_w = std::max(name_w, r.name.size());
    std::string out = "CHECK";
    out += std::string(name_w - 5 + 2, ' ');
    out += "EXPECTED                 COMPUTED                 TOLERANCE     STATUS\n";
    for (const VerifyRow& r : rows) {
        std::string line = r.name;
        line += std::string(name_w - r.name.size() + 2, ' ');
        auto pad = [&line](const std::string& s, std::size_t w) {
            line += s;
            line += std::string(s.size() < w ? w - s.size() : 1, ' ');
        };
        pad(format_double(r.expected), 25);
        pad(format_double(r.computed), 25);
        pad(format_double(r.tolerance), 14);
        line += r.pass ? "PASS" : "FAIL";
        out += line + '\n';
    }
    return out;
}

inline std::string verification_rows_to_json(const std::vector<VerifyRow>& rows) {
    bool all_pass = true;
    JsonWriter w;
    w.begin_object();
    w.key("checks").begin_array();
    for (const VerifyRow& r : rows) {
        all_pass = all_pass && r.pass;
        w.begin_object();
        w.key("name").value(std::string_view(r.name));
        w.key("expected").value(r.expected);
        w.key("computed").value(r.computed);
        w.key("tolerance").value(r.tolerance);
        w.key("status").value(r.pass ? "PASS" : "FAIL");
        w.end_object();
    }
    w.end_array();
    w.key("all_pass").value(all_pass);
    w.end_object();
    return w.str();
}

inline std::string verification_rows_to_csv(const std::vector<VerifyRow>& rows) {
    std::string out = "check,expected,computed,tolerance,status\n";
    for (const VerifyRow& r : rows) {
        out += r.name + ',' + format_double(r.expected) + ',' + format_double(r.computed) + ',' +
               format_double(r.tolerance) + ',' + (r.pass ? "PASS" : "FAIL") + '\n';
    }
    return out;
}

}  // namespace xorgames
