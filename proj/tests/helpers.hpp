#pragma once

// Shared test utilities: deterministic random instances and independent
// oracles (finite differences, sequential local rotations, product-grid
// search) that deliberately avoid the code paths they are checking.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "xorgames/xorgames.hpp"

namespace testutil {

using namespace xorgames;

inline std::uint64_t uniform_below(CounterRng& rng, std::uint64_t k) {
    return rng.next_u64() % k;
}

/// Random validated game with 1..max_questions questions per side. Every
/// (s,t) cell joins the support with probability ~3/4 (at least one always
/// does); probabilities are normalized random weights, targets random bits.
inline XorGame random_game(CounterRng& rng, int max_questions = 4) {
    XorGame game;
    game.name = "random";
    game.n_alice = 1 + static_cast<int>(uniform_below(rng, max_questions));
    game.n_bob = 1 + static_cast<int>(uniform_below(rng, max_questions));
    std::vector<double> weights;
    for (int s = 0; s < game.n_alice; ++s) {
        for (int t = 0; t < game.n_bob; ++t) {
            if (uniform_below(rng, 4) == 0 && !(s == game.n_alice - 1 && t == game.n_bob - 1 &&
                                                game.pairs.empty())) {
                continue;
            }
            game.pairs.push_back({s, t, 0.0, static_cast<int>(uniform_below(rng, 2))});
            weights.push_back(0.05 + rng.next_unit());
        }
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (std::size_t i = 0; i < weights.size(); ++i) game.pairs[i].prob = weights[i] / total;
    validate(game);
    return game;
}

inline QuantumStrategy random_strategy(CounterRng& rng, const XorGame& game) {
    QuantumStrategy strat;
    strat.bell = kAllBellStates[uniform_below(rng, 4)];
    strat.alpha.resize(game.n_alice);
    strat.beta.resize(game.n_bob);
    for (double& a : strat.alpha) a = rng.next_unit() * kPi;
    for (double& b : strat.beta) b = rng.next_unit() * kPi;
    return strat;
}

inline DeterministicStrategy random_tables(CounterRng& rng, const XorGame& game) {
    DeterministicStrategy strat;
    strat.f.resize(game.n_alice);
    strat.g.resize(game.n_bob);
    for (auto& b : strat.f) b = static_cast<std::uint8_t>(uniform_below(rng, 2));
    for (auto& b : strat.g) b = static_cast<std::uint8_t>(uniform_below(rng, 2));
    return strat;
}

/// Central finite-difference gradient of the solver objective.
inline AngleGradient fd_gradient(const XorGame& game, const QuantumStrategy& strat,
                                 double h = 1e-6) {
    AngleGradient grad{std::vector<double>(strat.alpha.size()),
                       std::vector<double>(strat.beta.size())};
    QuantumStrategy probe = strat;
    for (std::size_t i = 0; i < strat.alpha.size(); ++i) {
        probe.alpha[i] = strat.alpha[i] + h;
        const double plus = objective(game, probe);
        probe.alpha[i] = strat.alpha[i] - h;
        const double minus = objective(game, probe);
        probe.alpha[i] = strat.alpha[i];
        grad.d_alpha[i] = (plus - minus) / (2 * h);
    }
    for (std::size_t i = 0; i < strat.beta.size(); ++i) {
        probe.beta[i] = strat.beta[i] + h;
        const double plus = objective(game, probe);
        probe.beta[i] = strat.beta[i] - h;
        const double minus = objective(game, probe);
        probe.beta[i] = strat.beta[i];
        grad.d_beta[i] = (plus - minus) / (2 * h);
    }
    return grad;
}

/// Rotation oracle that applies the two local 2x2 rotations sequentially
/// (Alice's qubit, then Bob's) instead of building the 4x4 Kronecker product.
inline TwoQubitState rotate_sequential(const TwoQubitState& in, double alpha, double beta) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    TwoQubitState mid, out;
    for (int b = 0; b < 2; ++b) {  // R(alpha) on the first qubit
        mid.amp[(0 << 1) | b] = ca * in.amp[(0 << 1) | b] - sa * in.amp[(1 << 1) | b];
        mid.amp[(1 << 1) | b] = sa * in.amp[(0 << 1) | b] + ca * in.amp[(1 << 1) | b];
    }
    for (int a = 0; a < 2; ++a) {  // R(beta) on the second qubit
        out.amp[(a << 1) | 0] = cb * mid.amp[(a << 1) | 0] - sb * mid.amp[(a << 1) | 1];
        out.amp[(a << 1) | 1] = sb * mid.amp[(a << 1) | 0] + cb * mid.amp[(a << 1) | 1];
    }
    return out;
}

/// Exact maximum of the single-ebit objective over the product grid
/// (alpha_0, alpha_1, beta_0, beta_1) in {0, pi/res, 2pi/res, ...}^4 for a
/// 2x2 game, per Bell state. A literal 4-deep loop is res^4 evaluations; for
/// fixed (beta_0, beta_1) the alpha_0 and alpha_1 sums are independent, so
/// the same maximum costs res^2 * (2 res) table operations instead. Returns
/// the best value and the grid argmax.
struct GridSearchResult {
    double value = -1.0;
    QuantumStrategy witness;
};

inline GridSearchResult grid_search_2x2(const XorGame& game, BellState bell, int res = 200) {
    if (game.n_alice > 2 || game.n_bob > 2) throw Error("grid oracle only handles 2x2 games");
    const double step = kPi / res;
    // win[s][t][i][j]: probability contribution of pair (s,t) with
    // alpha_s = i*step, beta_t = j*step; zero row for absent pairs.
    std::vector<std::vector<double>> win(4);
    std::vector<bool> present(4, false);
    for (const PairEntry& p : game.pairs) {
        const int cell = p.s * 2 + p.t;
        present[cell] = true;
        win[cell].resize(static_cast<std::size_t>(res) * res);
        for (int i = 0; i < res; ++i) {
            for (int j = 0; j < res; ++j) {
                const double theta = theta_argument(bell, i * step, j * step);
                const double sign = p.target == 0 ? 1.0 : -1.0;
                win[cell][static_cast<std::size_t>(i) * res + j] =
                    p.prob * 0.5 * (1.0 + sign * std::cos(2.0 * theta));
            }
        }
    }
    const int n_alice = game.n_alice, n_bob = game.n_bob;
    GridSearchResult best;
    const int j1_max = n_bob > 1 ? res : 1;
    const int i1_max = n_alice > 1 ? res : 1;
    for (int j0 = 0; j0 < res; ++j0) {
        for (int j1 = 0; j1 < j1_max; ++j1) {
            double best_a0 = -1.0, best_a1 = n_alice > 1 ? -1.0 : 0.0;
            int arg_a0 = 0, arg_a1 = 0;
            for (int i = 0; i < res; ++i) {
                double v0 = 0.0;
                if (present[0]) v0 += win[0][static_cast<std::size_t>(i) * res + j0];
                if (present[1]) v0 += win[1][static_cast<std::size_t>(i) * res + j1];
                if (v0 > best_a0) {
                    best_a0 = v0;
                    arg_a0 = i;
                }
                if (n_alice > 1) {
                    double v1 = 0.0;
                    if (present[2]) v1 += win[2][static_cast<std::size_t>(i) * res + j0];
                    if (present[3]) v1 += win[3][static_cast<std::size_t>(i) * res + j1];
                    if (v1 > best_a1) {
                        best_a1 = v1;
                        arg_a1 = i;
                    }
                }
            }
            const double total = best_a0 + best_a1;
            if (total > best.value) {
                best.value = total;
                best.witness.bell = bell;
                best.witness.alpha = {arg_a0 * step};
                if (n_alice > 1) best.witness.alpha.push_back(arg_a1 * step);
                best.witness.beta = {j0 * step};
                if (n_bob > 1) best.witness.beta.push_back(j1 * step);
            }
        }
    }
    return best;
}

/// Derivative-free local polish: exact coordinate-wise maximization. Along
/// any single angle the objective is exactly C + A cos(2x + phi), so three
/// probes at x = 0, pi/4, pi/2 recover (C, A, phi) and the coordinate's true
/// maximizer in closed form. Sweeps until a full pass gains < 1e-15.
inline double refine_coordinatewise(const XorGame& game, QuantumStrategy& strat,
                                    int max_sweeps = 200) {
    auto maximize_coordinate = [&](double* x) {
        const double saved = *x;
        *x = 0.0;
        const double f0 = objective(game, strat);
        *x = kPi / 4;
        const double f1 = objective(game, strat);
        *x = kPi / 2;
        const double f2 = objective(game, strat);
        const double c = 0.5 * (f0 + f2);
        const double a_cos = f0 - c;   // A cos(phi)
        const double a_sin = c - f1;   // A sin(phi)
        if (a_cos == 0.0 && a_sin == 0.0) {
            *x = saved;  // coordinate is flat
            return;
        }
        *x = -0.5 * std::atan2(a_sin, a_cos);
        if (objective(game, strat) < c) *x += kPi / 2;  // picked the minimum branch
    };
    double best = objective(game, strat);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (double& a : strat.alpha) maximize_coordinate(&a);
        for (double& b : strat.beta) maximize_coordinate(&b);
        const double now = objective(game, strat);
        if (now - best < 1e-15) {
            best = std::max(best, now);
            break;
        }
        best = now;
    }
    return best;
}

/// Full independent estimate of the single-ebit value of a 2x2 game:
/// product-grid search over every Bell state, then coordinate-wise polish of
/// each grid argmax.
inline double grid_plus_refine_2x2(const XorGame& game, int res = 200) {
    double best = -1.0;
    for (BellState bell : kAllBellStates) {
        GridSearchResult grid = grid_search_2x2(game, bell, res);
        QuantumStrategy strat = grid.witness;
        best = std::max(best, refine_coordinatewise(game, strat));
    }
    return best;
}

/// k*p computed exactly in 80-bit precision and rounded once to double: the
/// correctly-rounded model value of summing k equal probabilities p. Bitwise
/// oracle for "exact" classical values whose real closed forms (7/9, 5/6, ...)
/// have no double representation.
inline double exact_uniform_sum(int k, double p) {
    return static_cast<double>(static_cast<long double>(k) * static_cast<long double>(p));
}

}  // namespace testutil
