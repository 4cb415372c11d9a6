#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "xorgames/game.hpp"

namespace xorgames {

/// Deterministic classical strategy: answer tables f (Alice) and g (Bob),
/// one bit per question.
struct DeterministicStrategy {
    std::vector<std::uint8_t> f;
    std::vector<std::uint8_t> g;
};

struct ClassicalResult {
    double value = 0.0;
    DeterministicStrategy witness;   // smallest-index maximizer (see encoding below)
    std::uint64_t strategies_enumerated = 0;
};

/// Exhaustive enumeration walks 2^(n_alice + n_bob) strategies; refuse
/// anything beyond this many table bits.
inline constexpr int kEnumerationCapBits = 30;

/// Winning probability of a deterministic strategy: the total probability of
/// pairs whose target parity equals f[s] XOR g[t].
inline double evaluate_deterministic(const XorGame& game, const DeterministicStrategy& strat) {
    if (strat.f.size() != static_cast<std::size_t>(game.n_alice) ||
        strat.g.size() != static_cast<std::size_t>(game.n_bob)) {
        throw SizeMismatch("strategy tables are " + std::to_string(strat.f.size()) + "+" +
                           std::to_string(strat.g.size()) + " bits, game wants " +
                           std::to_string(game.n_alice) + "+" + std::to_string(game.n_bob));
    }
    NeumaierSum won;
    for (const PairEntry& p : game.pairs) {
        if (((strat.f[p.s] ^ strat.g[p.t]) & 1) == p.target) won.add(p.prob);
    }
    return won.value();
}

namespace detail {

/// Strategy index encoding: bit i of the index is f[i], bit (n_alice + j)
/// is g[j]. Enumeration order is index 0, 1, 2, ...
inline DeterministicStrategy strategy_from_index(const XorGame& game, std::uint64_t index) {
    DeterministicStrategy strat;
    strat.f.resize(game.n_alice);
    strat.g.resize(game.n_bob);
    for (int i = 0; i < game.n_alice; ++i) strat.f[i] = (index >> i) & 1;
    for (int j = 0; j < game.n_bob; ++j) strat.g[j] = (index >> (game.n_alice + j)) & 1;
    return strat;
}

struct EnumerationBest {
    double value = -1.0;
    std::uint64_t index = 0;
};

/// Scans strategy indices [lo, hi) and keeps the best value, first index on
/// ties (strict improvement required, so the smallest index in the range wins).
inline EnumerationBest enumerate_range(const XorGame& game, std::uint64_t lo, std::uint64_t hi) {
    const std::size_t m = game.pairs.size();
    std::vector<int> shift_s(m), shift_t(m), target(m);
    std::vector<double> prob(m);
    for (std::size_t k = 0; k < m; ++k) {
        shift_s[k] = game.pairs[k].s;
        shift_t[k] = game.n_alice + game.pairs[k].t;
        target[k] = game.pairs[k].target;
        prob[k] = game.pairs[k].prob;
    }
    EnumerationBest best;
    for (std::uint64_t index = lo; index < hi; ++index) {
        NeumaierSum won;
        for (std::size_t k = 0; k < m; ++k) {
            const int parity = static_cast<int>((index >> shift_s[k]) ^ (index >> shift_t[k])) & 1;
            if (parity == target[k]) won.add(prob[k]);
        }
        const double v = won.value();
        if (v > best.value) best = {v, index};
    }
    return best;
}

}  // namespace detail

/// Exact classical value by exhaustive enumeration of all deterministic
/// strategies (mixing never helps: the best pure strategy dominates every
/// average). The witness is the maximizer with the smallest strategy index,
/// independent of thread count. threads <= 0 means one per hardware thread.
inline ClassicalResult classical_value(const XorGame& game, int threads = 0) {
    validate(game);
    const int bits = game.n_alice + game.n_bob;
    if (bits > kEnumerationCapBits) {
        throw GameTooLargeForEnumeration("enumeration needs 2^" + std::to_string(bits) +
                                         " strategies; cap is 2^" +
                                         std::to_string(kEnumerationCapBits));
    }
    const std::uint64_t total = std::uint64_t{1} << bits;

    int workers = detail::resolve_thread_count(threads, total);
    if (total < (std::uint64_t{1} << 16)) workers = 1;  // not worth spawning

    detail::EnumerationBest best;
    if (workers == 1) {
        best = detail::enumerate_range(game, 0, total);
    } else {
        std::vector<detail::EnumerationBest> partial(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t lo = chunk * w;
            const std::uint64_t hi = std::min(total, lo + chunk);
            pool.emplace_back([&game, &partial, w, lo, hi] {
                partial[w] = detail::enumerate_range(game, lo, hi);
            });
        }
        for (std::thread& th : pool) th.join();
        // Ranges are ascending, so folding in slot order with strict
        // improvement keeps the smallest maximizing index.
        best = partial[0];
        for (int w = 1; w < workers; ++w) {
            if (partial[w].value > best.value) best = partial[w];
        }
    }

    ClassicalResult result;
    result.witness = detail::strategy_from_index(game, best.index);
    result.value = evaluate_deterministic(game, result.witness);
    result.strategies_enumerated = total;
    return result;
}

/// Average winning probability of a mixture of deterministic strategies.
/// Never exceeds classical_value: an average cannot beat its best term.
inline double mixed_strategy_value(const XorGame& game,
                                   const std::vector<DeterministicStrategy>& strategies,
                                   const std::vector<double>& weights) {
    if (strategies.size() != weights.size()) {
        throw SizeMismatch("got " + std::to_string(strategies.size()) + " strategies but " +
                           std::to_string(weights.size()) + " weights");
    }
    if (strategies.empty()) {
        throw SizeMismatch("mixture needs at least one strategy");
    }
    NeumaierSum wsum;
    for (double w : weights) {
        if (w < 0.0) throw WeightsNotNormalized("mixture weights must be non-negative");
        wsum.add(w);
    }
    if (std::abs(wsum.value() - 1.0) > kProbSumTol) {
        throw WeightsNotNormalized("mixture weights sum to " + std::to_string(wsum.value()));
    }
    NeumaierSum avg;
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        avg.add(weights[i] * evaluate_deterministic(game, strategies[i]));
    }
    return avg.value();
}

}  // namespace xorgames
