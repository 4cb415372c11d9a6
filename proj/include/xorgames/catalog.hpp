#pragma once

#include <string>

#include "xorgames/game.hpp"

namespace xorgames {

/// CHSH: two questions per player, uniform pairs, players must produce
/// a XOR b = s AND t.
inline XorGame make_chsh() {
    XorGame game{"CHSH", 2, 2, {}};
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            game.pairs.push_back({s, t, 0.25, s & t});
        }
    }
    return game;
}

/// Odd-cycle game on n vertices (n odd, >= 3): the referee asks either the
/// same vertex (answers must agree) or adjacent vertices s and s+1 mod n
/// (answers must differ), each of the 2n pairs with probability 1/(2n).
/// Vertices are 0-indexed here; add 1 for the usual 1-indexed labels.
inline XorGame make_odd_cycle(int n) {
    if (n < 3 || n % 2 == 0) {
        throw EvenOrTooSmallN("cycle length must be odd and >= 3, got " + std::to_string(n));
    }
    XorGame game{"odd-cycle-" + std::to_string(n), n, n, {}};
    const double p = 1.0 / (2 * n);
    for (int s = 0; s < n; ++s) {
        game.pairs.push_back({s, s, p, 0});
        game.pairs.push_back({s, (s + 1) % n, p, 1});
    }
    return game;
}

/// Three-question game where every one of the 9 pairs is asked with
/// probability 1/9; answers must agree exactly when s == t. Contains the
/// odd-cycle game on 3 vertices as a sub-support, plus the three "reversed"
/// adjacent pairs (s, s-1 mod 3). Questions are 0-indexed (paths 1..3 in the
/// usual telling map to 0..2).
inline XorGame make_eaos() {
    XorGame game{"EAOS", 3, 3, {}};
    const double p = 1.0 / 9.0;
    for (int s = 0; s < 3; ++s) {
        for (int t = 0; t < 3; ++t) {
            game.pairs.push_back({s, t, p, s == t ? 0 : 1});
        }
    }
    return game;
}

}  // namespace xorgames
