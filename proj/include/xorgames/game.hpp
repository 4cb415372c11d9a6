#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "xorgames/errors.hpp"
#include "xorgames/numeric.hpp"

namespace xorgames {

/// One supported question pair (s, t): its probability of being asked and the
/// answer parity a XOR b the players must produce to win.
struct PairEntry {
    int s = 0;
    int t = 0;
    double prob = 0.0;
    int target = 0;
};

/// A two-player XOR game. Alice's questions are 0..n_alice-1, Bob's are
/// 0..n_bob-1; `pairs` lists the support of the question distribution (pairs
/// not listed are never asked and carry no winning condition). Instances are
/// treated as immutable once validated.
struct XorGame {
    std::string name;
    int n_alice = 0;
    int n_bob = 0;
    std::vector<PairEntry> pairs;
};

/// Tolerance on |sum of pair probabilities - 1|.
inline constexpr double kProbSumTol = 1e-12;

/// Checks all XorGame invariants; throws a specific Error subclass naming the
/// offending pair/field on the first violation.
inline void validate(const XorGame& game) {
    if (game.n_alice < 1 || game.n_bob < 1) {
        throw EmptyGame("game '" + game.name + "': both players need at least one question");
    }
    if (game.pairs.empty()) {
        throw EmptyGame("game '" + game.name + "': no question pairs");
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(game.pairs.size());
    NeumaierSum total;
    for (const PairEntry& p : game.pairs) {
        const std::string where =
            "pair (" + std::to_string(p.s) + "," + std::to_string(p.t) + ")";
        if (p.s < 0 || p.s >= game.n_alice || p.t < 0 || p.t >= game.n_bob) {
            throw IndexOutOfRange(where + ": question index outside " +
                                  std::to_string(game.n_alice) + "x" +
                                  std::to_string(game.n_bob) + " grid");
        }
        if (!(p.prob > 0.0) || p.prob > 1.0) {
            throw ProbabilityNotNormalized(where + ": probability must lie in (0, 1]");
        }
        if (p.target != 0 && p.target != 1) {
            throw Error(where + ": target parity must be 0 or 1");
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.s)) << 32) |
            static_cast<std::uint32_t>(p.t);
        if (!seen.insert(key).second) {
            throw DuplicatePair(where + ": listed twice");
        }
        total.add(p.prob);
    }
    if (std::abs(total.value() - 1.0) > kProbSumTol) {
        throw ProbabilityNotNormalized("game '" + game.name + "': pair probabilities sum to " +
                                       std::to_string(total.value()));
    }
}

/// Best winning probability achievable while ignoring the questions: the
/// players commit to a fixed answer parity up front, and the better of the
/// two parities wins max(w0, 1 - w0), where w0 is the total probability of
/// pairs whose target parity is even. A sanity floor for every solver here.
inline double random_answer_value(const XorGame& game) {
    NeumaierSum even;
    for (const PairEntry& p : game.pairs) {
        if (p.target == 0) even.add(p.prob);
    }
    // Input probabilities may carry up to kProbSumTol of normalization slop,
    // which could push the sum a hair past 1; a probability never exceeds 1.
    const double w0 = std::min(1.0, even.value());
    return std::max(w0, 1.0 - w0);
}

}  // namespace xorgames
