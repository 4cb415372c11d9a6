#pragma once

#include <stdexcept>
#include <string>

namespace xorgames {

/// Base class for all toolkit errors. Everything thrown on purpose derives
/// from this, so callers can catch one type at the boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Game has no questions or no supported pairs.
struct EmptyGame : Error {
    using Error::Error;
};

/// Pair probabilities do not sum to 1 (beyond tolerance), or an entry is
/// outside (0, 1].
struct ProbabilityNotNormalized : Error {
    using Error::Error;
};

/// The same question pair (s, t) appears twice in the support.
struct DuplicatePair : Error {
    using Error::Error;
};

/// A question index lies outside [0, n_alice) x [0, n_bob).
struct IndexOutOfRange : Error {
    using Error::Error;
};

/// Strategy tables do not match the game's question counts.
struct SizeMismatch : Error {
    using Error::Error;
};

/// Mixture weights are negative or do not sum to 1.
struct WeightsNotNormalized : Error {
    using Error::Error;
};

/// Cycle games need an odd length >= 3.
struct EvenOrTooSmallN : Error {
    using Error::Error;
};

/// Exhaustive strategy enumeration refused: n_alice + n_bob exceeds the cap.
struct GameTooLargeForEnumeration : Error {
    using Error::Error;
};

/// Malformed input file or angle/fraction expression.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace xorgames
