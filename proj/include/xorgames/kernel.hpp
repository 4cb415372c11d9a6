#pragma once

#include <array>
#include <cmath>

#include "xorgames/numeric.hpp"
#include "xorgames/rng.hpp"

namespace xorgames {

/// Label of a maximally entangled two-qubit state:
///   |B_xy> = (|0 y> + (-1)^x |1 y̅>) / sqrt(2)
/// so (x,y) = (0,0),(1,0),(0,1),(1,1) are phi+, phi-, psi+, psi-.
struct BellState {
    int x = 0;
    int y = 0;
};

inline constexpr BellState kPhiPlus{0, 0};
inline constexpr BellState kPhiMinus{1, 0};
inline constexpr BellState kPsiPlus{0, 1};
inline constexpr BellState kPsiMinus{1, 1};
inline constexpr BellState kAllBellStates[4] = {kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus};

inline constexpr bool operator==(BellState a, BellState b) { return a.x == b.x && a.y == b.y; }
inline constexpr bool operator!=(BellState a, BellState b) { return !(a == b); }

/// Canonical ordering phi+ < phi- < psi+ < psi-, used for tie-breaking and
/// for keying random streams.
inline constexpr int bell_order(BellState b) { return b.x + 2 * b.y; }

/// Real-amplitude two-qubit state over the computational basis
/// |00>, |01>, |10>, |11>; amp[(a << 1) | b] is the amplitude of |a b>.
/// Real entries suffice: Bell states and the rotations below never leave
/// the real span.
struct TwoQubitState {
    std::array<double, 4> amp{};
};

struct ParityDistribution {
    double p_even = 0.0;
    double p_odd = 0.0;
};

inline TwoQubitState bell_vector(BellState b) {
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    TwoQubitState v;
    v.amp[(0 << 1) | b.y] = kInvSqrt2;
    v.amp[(1 << 1) | (1 - b.y)] = b.x == 0 ? kInvSqrt2 : -kInvSqrt2;
    return v;
}

/// Applies the players' local rotations R(alpha) (x) R(beta), where
/// R(theta)|y> = cos(theta)|y> + (-1)^y sin(theta)|y̅>, i.e. the standard
/// real rotation matrix [[cos, -sin], [sin, cos]]. Direct 4x4 product of the
/// Kronecker factors against the state vector.
inline TwoQubitState apply_rotations(const TwoQubitState& state, double alpha, double beta) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double ra[2][2] = {{ca, -sa}, {sa, ca}};
    const double rb[2][2] = {{cb, -sb}, {sb, cb}};
    TwoQubitState out;
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int b1 = 0; b1 < 2; ++b1) {
            double acc = 0.0;
            for (int a0 = 0; a0 < 2; ++a0) {
                for (int b0 = 0; b0 < 2; ++b0) {
                    acc += ra[a1][a0] * rb[b1][b0] * state.amp[(a0 << 1) | b0];
                }
            }
            out.amp[(a1 << 1) | b1] = acc;
        }
    }
    return out;
}

/// Born-rule outcome probabilities of a joint computational-basis
/// measurement; entry (a << 1) | b is P(Alice sees a, Bob sees b).
inline std::array<double, 4> joint_outcome_probs(const TwoQubitState& state) {
    std::array<double, 4> p;
    for (int i = 0; i < 4; ++i) p[i] = state.amp[i] * state.amp[i];
    return p;
}

/// Collapses the joint outcomes onto answer parity a XOR b.
inline ParityDistribution parity_distribution(const TwoQubitState& state) {
    const std::array<double, 4> p = joint_outcome_probs(state);
    return {p[0] + p[3], p[1] + p[2]};
}

/// Closed-form shortcut for the same experiment: after rotating |B_xy> by
/// (alpha, beta), P(even parity) = cos^2(theta) with
///   phi+ : theta = beta - alpha           phi- : theta = beta + alpha
///   psi+ : theta = pi/2 + (alpha + beta)  psi- : theta = pi/2 - (alpha - beta)
/// (The rotated state is cos(A)|B_xy> - (-1)^x sin(A)|B_x̄ȳ> with
/// A = alpha + (-1)^(x XOR NOT y) beta; reading off the even/odd parity
/// subspace gives the table. kernel_agreement_max_deviation pins this
/// shortcut to the explicit vector route.)
inline double theta_argument(BellState b, double alpha, double beta) {
    if (b.y == 0) {
        return b.x == 0 ? beta - alpha : beta + alpha;
    }
    return b.x == 0 ? kPi / 2 + (alpha + beta) : kPi / 2 - (alpha - beta);
}

/// d(theta)/d(alpha): -1 for phi+ and psi-, +1 for phi- and psi+.
/// d(theta)/d(beta) is +1 for all four states.
inline constexpr double theta_alpha_slope(BellState b) { return b.x == b.y ? -1.0 : 1.0; }

/// Debug/cross-check surface: the largest deviation between the explicit
/// state-vector route (bell_vector -> apply_rotations -> parity_distribution)
/// and cos^2(theta_argument), over all four Bell states and `samples` random
/// angle pairs drawn from [-pi, pi). Should sit at rounding noise (~1e-16).
inline double kernel_agreement_max_deviation(int samples, std::uint64_t seed) {
    double worst = 0.0;
    for (BellState b : kAllBellStates) {
        for (int i = 0; i < samples; ++i) {
            CounterRng rng(seed, static_cast<std::uint64_t>(bell_order(b)) * samples + i);
            const double alpha = (rng.next_unit() * 2.0 - 1.0) * kPi;
            const double beta = (rng.next_unit() * 2.0 - 1.0) * kPi;
            const ParityDistribution dist =
                parity_distribution(apply_rotations(bell_vector(b), alpha, beta));
            const double c = std::cos(theta_argument(b, alpha, beta));
            const double dev = std::abs(dist.p_even - c * c);
            if (dev > worst) worst = dev;
        }
    }
    return worst;
}

}  // namespace xorgames
