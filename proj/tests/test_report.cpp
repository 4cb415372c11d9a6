#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "helpers.hpp"
#include "xorgames/catalog.hpp"
#include "xorgames/report.hpp"

using namespace xorgames;

namespace {

SolverConfig quick_config(int starts = 8) {
    SolverConfig cfg;
    cfg.starts = starts;
    return cfg;
}

}  // namespace

TEST_CASE("reference witnesses attain the known optima", "[report]") {
    const double chsh_q = std::cos(kPi / 8) * std::cos(kPi / 8);
    REQUIRE(std::abs(objective(make_chsh(), chsh_reference_witness()) - chsh_q) < 1e-12);
    REQUIRE(std::abs(objective(make_eaos(), eaos_reference_witness()) - 5.0 / 6.0) < 1e-12);
    REQUIRE(evaluate_deterministic(make_eaos(), eaos_reference_tables()) ==
            testutil::exact_uniform_sum(7, 1.0 / 9.0));
    for (int n : {3, 5, 7, 9}) {
        REQUIRE(std::abs(objective(make_odd_cycle(n), odd_cycle_reference_witness(n)) -
                         odd_cycle_closed_form(n)) < 1e-12);
    }
    REQUIRE_THROWS_AS(odd_cycle_reference_witness(4), EvenOrTooSmallN);
}

TEST_CASE("build_run_report solves both models", "[report]") {
    const RunReport rep = build_run_report(make_chsh(), quick_config());
    REQUIRE(rep.game_name == "CHSH");
    REQUIRE(rep.classical.value == 0.75);
    REQUIRE(std::abs(rep.quantum.value - std::cos(kPi / 8) * std::cos(kPi / 8)) < 1e-9);
    REQUIRE(rep.quantum_advantage == rep.quantum.value - rep.classical.value);
    REQUIRE(rep.quantum_advantage >= -1e-9);
    REQUIRE(rep.classical_ms >= 0.0);
    REQUIRE(rep.quantum_ms >= 0.0);
}

TEST_CASE("run report rendering is byte stable", "[report]") {
    const RunReport a = build_run_report(make_chsh(), quick_config());
    const RunReport b = build_run_report(make_chsh(), quick_config());
    REQUIRE(run_report_to_json(a) == run_report_to_json(b));
    REQUIRE(run_report_to_csv(a) == run_report_to_csv(b));

    const nlohmann::json j = nlohmann::json::parse(run_report_to_json(a));
    REQUIRE(j["game"] == "CHSH");
    REQUIRE(j["classical"]["value"] == 0.75);
    REQUIRE(j["quantum"]["label"] == "quantum value (single-ebit ansatz)");
    REQUIRE(j["quantum"]["alpha"].size() == 2);
    REQUIRE(j.contains("quantum_advantage"));

    const std::string csv = run_report_to_csv(a);
    REQUIRE(csv.rfind("game,classical_value,witness_f,witness_g,quantum_value,", 0) == 0);
    REQUIRE(csv.find("CHSH,0.75,0;0,0;0,") != std::string::npos);
}

TEST_CASE("single-result CSV renderings are frozen", "[report]") {
    ClassicalResult cr;
    cr.value = 0.75;
    cr.witness = {{0, 1}, {1}};
    cr.strategies_enumerated = 8;
    REQUIRE(classical_result_to_csv(cr) ==
            "value,witness_f,witness_g,strategies_enumerated\n0.75,0;1,1,8\n");

    SimulationReport sr;
    sr.rounds = 10;
    sr.wins = 5;
    sr.win_rate = 0.5;
    sr.std_error = 0.125;
    sr.seed = 3;
    REQUIRE(simulation_report_to_csv(sr) ==
            "rounds,wins,win_rate,stderr,seed\n10,5,0.5,0.125,3\n");

    OptimizationResult opt;
    opt.value = 0.5;
    opt.witness = {kPsiMinus, {0.0}, {0.25}};
    opt.starts_run = 4;
    opt.best_gradient_norm = 0.0;
    opt.converged = true;
    REQUIRE(optimization_result_to_csv(opt) ==
            "label,value,bell,alpha,beta,starts_run,gradient_norm,converged\n"
            "quantum value (single-ebit ansatz),0.5,ψ-,0,0.25,4,0,true\n");
}

TEST_CASE("verification rows all pass and render in every format", "[report]") {
    const std::vector<VerifyRow> rows = verification_rows(quick_config(16), /*quick=*/true);
    REQUIRE(rows.size() == 19);
    for (const VerifyRow& r : rows) {
        INFO(r.name << ": computed " << r.computed << " expected " << r.expected << " +- "
                    << r.tolerance);
        CHECK(r.pass);
    }

    const std::string table = verification_table(rows);
    REQUIRE(table.rfind("CHECK", 0) == 0);
    REQUIRE(table.find("PASS") != std::string::npos);
    REQUIRE(table.find("FAIL") == std::string::npos);
    REQUIRE(table.find("omega_q(odd-cycle-9)") != std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(verification_rows_to_json(rows));
    REQUIRE(j["checks"].size() == rows.size());
    REQUIRE(j["all_pass"] == true);

    const std::string csv = verification_rows_to_csv(rows);
    REQUIRE(csv.rfind("check,expected,computed,tolerance,status\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    REQUIRE(lines == rows.size() + 1);
}

TEST_CASE("verification rows flag a failure honestly", "[report]") {
    // A lobotomized optimizer (one start, no alignment, zero iterations)
    // reports its random starting point; the rows must say FAIL rather than
    // pass vacuously.
    SolverConfig crippled;
    crippled.starts = 1;
    crippled.max_iters = 0;
    crippled.align_sweeps = 0;
    const std::vector<VerifyRow> rows = verification_rows(crippled, /*quick=*/true);
    bool any_fail = false;
    for (const VerifyRow& r : rows) any_fail = any_fail || !r.pass;
    REQUIRE(any_fail);
    const nlohmann::json j = nlohmann::json::parse(verification_rows_to_json(rows));
    REQUIRE(j["all_pass"] == false);
    REQUIRE(verification_table(rows).find("FAIL") != std::string::npos);
}
