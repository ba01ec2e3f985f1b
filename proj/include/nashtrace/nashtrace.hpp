#pragma once

// Umbrella header for the nashtrace library: regret-driven equilibrium
// approximation for finite n-person games, with trace diagnostics.

#include "nashtrace/builtin.hpp"
#include "nashtrace/engine.hpp"
#include "nashtrace/experiments.hpp"
#include "nashtrace/game.hpp"
#include "nashtrace/io.hpp"
#include "nashtrace/metrics.hpp"
#include "nashtrace/oracle.hpp"
#include "nashtrace/projection.hpp"
#include "nashtrace/rng.hpp"
#include "nashtrace/strategy.hpp"
#include "nashtrace/update.hpp"
