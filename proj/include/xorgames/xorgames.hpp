#pragma once

// Umbrella header: the whole toolkit.
//
//   game.hpp      XOR game model, validation, random-answer baseline
//   catalog.hpp   CHSH, odd-cycle and EAOS constructors
//   classical.hpp deterministic strategies, exhaustive classical value
//   kernel.hpp    Bell states, local rotations, parity measurement
//   solver.hpp    single-ebit objective/gradient and multi-start ascent
//   simulate.hpp  Monte Carlo round simulator
//   io.hpp        JSON input/output for games, strategies and results
//   report.hpp    combined reports and the reference-value check suite

#include "xorgames/catalog.hpp"
#include "xorgames/classical.hpp"
#include "xorgames/errors.hpp"
#include "xorgames/game.hpp"
#include "xorgames/io.hpp"
#include "xorgames/kernel.hpp"
#include "xorgames/numeric.hpp"
#include "xorgames/report.hpp"
#include "xorgames/rng.hpp"
#include "xorgames/simulate.hpp"
#include "xorgames/solver.hpp"
