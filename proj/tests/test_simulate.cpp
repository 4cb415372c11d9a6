#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "xorgames/catalog.hpp"
#include "xorgames/report.hpp"
#include "xorgames/simulate.hpp"

using namespace xorgames;

namespace {

const double kChshQuantum = std::cos(kPi / 8) * std::cos(kPi / 8);

/// How far the sample mean may sit from `truth` at z sigmas.
double z_band(double truth, std::uint64_t rounds, double z) {
    return z * std::sqrt(truth * (1.0 - truth) / static_cast<double>(rounds));
}

}  // namespace

TEST_CASE("degenerate strategies win or lose every round", "[simulate]") {
    const XorGame g{"one", 1, 1, {{0, 0, 1.0, 0}}};
    SECTION("classical, matching answers on an even target") {
        const SimulationReport rep = simulate_classical(g, {{0}, {0}}, 5000, 7);
        REQUIRE(rep.wins == 5000);
        REQUIRE(rep.win_rate == 1.0);
        REQUIRE(rep.std_error == 0.0);
    }
    SECTION("classical, mismatched answers on an even target") {
        const SimulationReport rep = simulate_classical(g, {{1}, {0}}, 5000, 7);
        REQUIRE(rep.wins == 0);
        REQUIRE(rep.win_rate == 0.0);
    }
    SECTION("quantum, unrotated phi+ always answers with even parity") {
        const SimulationReport rep = simulate_quantum(g, {kPhiPlus, {0.0}, {0.0}}, 5000, 7);
        REQUIRE(rep.wins == 5000);
        REQUIRE(rep.win_rate == 1.0);
    }
}

TEST_CASE("report bookkeeping", "[simulate]") {
    const SimulationReport rep =
        simulate_quantum(make_chsh(), chsh_reference_witness(), 12345, 42);
    REQUIRE(rep.rounds == 12345);
    REQUIRE(rep.seed == 42);
    REQUIRE(rep.wins <= rep.rounds);
    REQUIRE(rep.win_rate == static_cast<double>(rep.wins) / 12345.0);
    REQUIRE(rep.std_error == std::sqrt(rep.win_rate * (1.0 - rep.win_rate) / 12345.0));
}

TEST_CASE("simulation input errors", "[simulate]") {
    REQUIRE_THROWS_AS(simulate_classical(make_chsh(), {{0}, {0, 0}}, 10, 0), SizeMismatch);
    REQUIRE_THROWS_AS(simulate_quantum(make_chsh(), {kPhiPlus, {0.0}, {0.0, 0.0}}, 10, 0),
                      SizeMismatch);
    REQUIRE_THROWS_AS(simulate_classical(make_chsh(), {{0, 0}, {0, 0}}, 0, 0), Error);
    REQUIRE_THROWS_AS(
        simulate_quantum(make_chsh(), {kPhiPlus, {0.0, 0.0}, {0.0, 0.0}}, 0, 0), Error);
}

TEST_CASE("classical estimator concentrates on the strategy value", "[simulate]") {
    const XorGame g = make_chsh();
    const DeterministicStrategy best{{0, 0}, {0, 0}};  // value 3/4
    const std::uint64_t rounds = 50000;
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SimulationReport rep = simulate_classical(g, best, rounds, seed);
        inside += std::abs(rep.win_rate - 0.75) <= z_band(0.75, rounds, 4.0);
    }
    REQUIRE(inside >= 99);
}

TEST_CASE("quantum estimator concentrates on the Born value", "[simulate]") {
    const XorGame g = make_chsh();
    const QuantumStrategy strat = chsh_reference_witness();
    const std::uint64_t rounds = 50000;
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SimulationReport rep = simulate_quantum(g, strat, rounds, seed);
        inside += std::abs(rep.win_rate - kChshQuantum) <= z_band(kChshQuantum, rounds, 4.0);
    }
    REQUIRE(inside >= 99);
}

TEST_CASE("estimator tracks the objective on a random instance", "[simulate]") {
    CounterRng rng(41, 0);
    const XorGame g = testutil::random_game(rng);
    const QuantumStrategy strat = testutil::random_strategy(rng, g);
    const double truth = objective(g, strat);
    const std::uint64_t rounds = 200000;
    const SimulationReport rep = simulate_quantum(g, strat, rounds, 5);
    REQUIRE(std::abs(rep.win_rate - truth) <= z_band(truth, rounds, 5.0));
}

TEST_CASE("outcome tally is consistent and non-signaling", "[simulate]") {
    const XorGame g = make_chsh();
    const std::uint64_t rounds = 200000;
    const QuantumSimulation sim =
        simulate_quantum_detailed(g, chsh_reference_witness(), rounds, 11);
    const OutcomeTally& tally = sim.tally;

    SECTION("counts add up to the round and win totals") {
        std::uint64_t total = 0, wins = 0;
        for (const PairEntry& p : g.pairs) {
            total += tally.pair_total(p.s, p.t);
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    if (((a ^ b) & 1) == p.target) wins += tally.count(p.s, p.t, a, b);
                }
            }
        }
        REQUIRE(total == rounds);
        REQUIRE(wins == sim.report.wins);
    }

    SECTION("each player's answer marginal ignores the other's question") {
        // Worst-case binomial deviation bound: stderr <= 0.5 / sqrt(N).
        auto band = [&](std::uint64_t n0, std::uint64_t n1) {
            return 5.0 * 0.5 *
                   std::sqrt(1.0 / static_cast<double>(n0) + 1.0 / static_cast<double>(n1));
        };
        for (int s = 0; s < 2; ++s) {
            const std::uint64_t n0 = tally.pair_total(s, 0), n1 = tally.pair_total(s, 1);
            const double alice0_given_t0 =
                static_cast<double>(tally.count(s, 0, 0, 0) + tally.count(s, 0, 0, 1)) / n0;
            const double alice0_given_t1 =
                static_cast<double>(tally.count(s, 1, 0, 0) + tally.count(s, 1, 0, 1)) / n1;
            REQUIRE(std::abs(alice0_given_t0 - alice0_given_t1) <= band(n0, n1));
        }
        for (int t = 0; t < 2; ++t) {
            const std::uint64_t n0 = tally.pair_total(0, t), n1 = tally.pair_total(1, t);
            const double bob0_given_s0 =
                static_cast<double>(tally.count(0, t, 0, 0) + tally.count(0, t, 1, 0)) / n0;
            const double bob0_given_s1 =
                static_cast<double>(tally.count(1, t, 0, 0) + tally.count(1, t, 1, 0)) / n1;
            REQUIRE(std::abs(bob0_given_s0 - bob0_given_s1) <= band(n0, n1));
        }
    }
}

TEST_CASE("simulation is reproducible and schedule independent", "[simulate]") {
    const XorGame g = make_eaos();
    const QuantumStrategy strat = eaos_reference_witness();
    const QuantumSimulation serial = simulate_quantum_detailed(g, strat, 30000, 3, 1);
    const QuantumSimulation threaded = simulate_quantum_detailed(g, strat, 30000, 3, 3);
    REQUIRE(serial.report.wins == threaded.report.wins);
    REQUIRE(serial.tally.counts == threaded.tally.counts);

    const SimulationReport again = simulate_quantum(g, strat, 30000, 3);
    REQUIRE(again.wins == serial.report.wins);

    const SimulationReport classical_a =
        simulate_classical(g, {{0, 1, 1}, {0, 1, 1}}, 30000, 3, 1);
    const SimulationReport classical_b =
        simulate_classical(g, {{0, 1, 1}, {0, 1, 1}}, 30000, 3, 4);
    REQUIRE(classical_a.wins == classical_b.wins);

    const SimulationReport reseeded = simulate_quantum(g, strat, 30000, 4);
    REQUIRE(reseeded.wins != serial.report.wins);  // seed actually feeds the draws
}
