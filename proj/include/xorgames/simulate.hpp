#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "xorgames/classical.hpp"
#include "xorgames/game.hpp"
#include "xorgames/kernel.hpp"
#include "xorgames/rng.hpp"
#include "xorgames/solver.hpp"

namespace xorgames {

struct SimulationReport {
    std::uint64_t rounds = 0;
    std::uint64_t wins = 0;
    double win_rate = 0.0;
    double std_error = 0.0;  // sqrt(win_rate * (1 - win_rate) / rounds)
    std::uint64_t seed = 0;
};

/// Per-question-pair answer counts from a quantum run; lets tests check the
/// empirical marginals (no-signaling) rather than just the win rate.
struct OutcomeTally {
    int n_alice = 0;
    int n_bob = 0;
    std::vector<std::uint64_t> counts;  // [(s * n_bob + t) * 4 + ((a << 1) | b)]

    std::uint64_t count(int s, int t, int a, int b) const {
        return counts[(static_cast<std::size_t>(s) * n_bob + t) * 4 + ((a << 1) | b)];
    }
    std::uint64_t pair_total(int s, int t) const {
        std::uint64_t sum = 0;
        for (int o = 0; o < 4; ++o) {
            sum += counts[(static_cast<std::size_t>(s) * n_bob + t) * 4 + o];
        }
        return sum;
    }
};

struct QuantumSimulation {
    SimulationReport report;
    OutcomeTally tally;
};

namespace detail {

/// Cumulative pair probabilities in file order, for inverse-CDF sampling.
inline std::vector<double> pair_cdf(const XorGame& game) {
    std::vector<double> cdf;
    cdf.reserve(game.pairs.size());
    NeumaierSum acc;
    for (const PairEntry& p : game.pairs) {
        acc.add(p.prob);
        cdf.push_back(acc.value());
    }
    return cdf;
}

inline std::size_t sample_index(const std::vector<double>& cdf, double u) {
    const std::size_t i = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    return i < cdf.size() ? i : cdf.size() - 1;  // guard the ~1e-16 tail gap
}

inline SimulationReport make_report(std::uint64_t rounds, std::uint64_t wins,
                                    std::uint64_t seed) {
    SimulationReport rep;
    rep.rounds = rounds;
    rep.wins = wins;
    rep.seed = seed;
    rep.win_rate = static_cast<double>(wins) / static_cast<double>(rounds);
    rep.std_error = std::sqrt(rep.win_rate * (1.0 - rep.win_rate) / static_cast<double>(rounds));
    return rep;
}

}  // namespace detail

/// Plays `rounds` independent rounds under a deterministic strategy. Round r
/// draws only from stream r of the seed, so any partitioning of rounds across
/// threads reproduces the same report.
inline SimulationReport simulate_classical(const XorGame& game, const DeterministicStrategy& strat,
                                           std::uint64_t rounds, std::uint64_t seed,
                                           int threads = 0) {
    if (strat.f.size() != static_cast<std::size_t>(game.n_alice) ||
        strat.g.size() != static_cast<std::size_t>(game.n_bob)) {
        throw SizeMismatch("strategy tables do not match the game");
    }
    if (rounds == 0) throw Error("simulation needs at least one round");
    const std::vector<double> cdf = detail::pair_cdf(game);

    auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t wins = 0;
        for (std::uint64_t r = lo; r < hi; ++r) {
            CounterRng rng(seed, r);
            const PairEntry& p = game.pairs[detail::sample_index(cdf, rng.next_unit())];
            const int parity = (strat.f[p.s] ^ strat.g[p.t]) & 1;
            wins += parity == p.target;
        }
        return wins;
    };

    const int workers = detail::resolve_thread_count(threads, rounds);
    std::uint64_t wins = 0;
    if (workers == 1) {
        wins = count_range(0, rounds);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (rounds + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t lo = std::min(rounds, chunk * w);
            const std::uint64_t hi = std::min(rounds, lo + chunk);
            pool.emplace_back([&, w, lo, hi] { partial[w] = count_range(lo, hi); });
        }
        for (std::thread& th : pool) th.join();
        for (std::uint64_t v : partial) wins += v;
    }
    return detail::make_report(rounds, wins, seed);
}

/// Plays rounds under a single-ebit strategy and keeps the full per-pair
/// outcome tally. Each round samples the question pair, then samples the
/// joint answers (a,b) from the Born-rule distribution produced by the state
/// kernel (bell_vector -> apply_rotations -> joint_outcome_probs); the
/// Table 1 closed form is deliberately not consulted, so simulation results
/// cross-check it. Outcome distributions per pair are precomputed once --
/// they depend only on (s,t) -- which is pure memoization of kernel outputs.
inline QuantumSimulation simulate_quantum_detailed(const XorGame& game,
                                                   const QuantumStrategy& strat,
                                                   std::uint64_t rounds, std::uint64_t seed,
                                                   int threads = 0) {
    detail::check_strategy_sizes(game, strat);
    if (rounds == 0) throw Error("simulation needs at least one round");
    const std::vector<double> cdf = detail::pair_cdf(game);

    // Born-rule CDF over (a,b) outcomes, one per supported pair.
    std::vector<std::array<double, 4>> outcome_cdf(game.pairs.size());
    for (std::size_t k = 0; k < game.pairs.size(); ++k) {
        const PairEntry& p = game.pairs[k];
        const TwoQubitState rotated =
            apply_rotations(bell_vector(strat.bell), strat.alpha[p.s], strat.beta[p.t]);
        const std::array<double, 4> probs = joint_outcome_probs(rotated);
        double acc = 0.0;
        for (int o = 0; o < 4; ++o) {
            acc += probs[o];
            outcome_cdf[k][o] = acc;
        }
    }

    struct Partial {
        std::uint64_t wins = 0;
        std::vector<std::uint64_t> counts;
    };
    const std::size_t cells = static_cast<std::size_t>(game.n_alice) * game.n_bob * 4;

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        Partial part;
        part.counts.assign(cells, 0);
        for (std::uint64_t r = lo; r < hi; ++r) {
            CounterRng rng(seed, r);
            const std::size_t k = detail::sample_index(cdf, rng.next_unit());
            const PairEntry& p = game.pairs[k];
            const double u = rng.next_unit();
            int outcome = 0;
            while (outcome < 3 && u >= outcome_cdf[k][outcome]) ++outcome;
            part.counts[(static_cast<std::size_t>(p.s) * game.n_bob + p.t) * 4 + outcome] += 1;
            const int parity = ((outcome >> 1) ^ outcome) & 1;  // a XOR b
            part.wins += parity == p.target;
        }
        return part;
    };

    const int workers = detail::resolve_thread_count(threads, rounds);
    Partial total;
    total.counts.assign(cells, 0);
    if (workers == 1) {
        total = run_range(0, rounds);
    } else {
        std::vector<Partial> partial(workers);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (rounds + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t lo = std::min(rounds, chunk * w);
            const std::uint64_t hi = std::min(rounds, lo + chunk);
            pool.emplace_back([&, w, lo, hi] { partial[w] = run_range(lo, hi); });
        }
        for (std::thread& th : pool) th.join();
        for (const Partial& part : partial) {
            total.wins += part.wins;
            for (std::size_t i = 0; i < cells; ++i) total.counts[i] += part.counts[i];
        }
    }

    QuantumSimulation sim;
    sim.report = detail::make_report(rounds, total.wins, seed);
    sim.tally = {game.n_alice, game.n_bob, std::move(total.counts)};
    return sim;
}

inline SimulationReport simulate_quantum(const XorGame& game, const QuantumStrategy& strat,
                                         std::uint64_t rounds, std::uint64_t seed,
                                         int threads = 0) {
    return simulate_quantum_detailed(game, strat, rounds, seed, threads).report;
}

}  // namespace xorgames
