#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashtrace/engine.hpp"
#include "nashtrace/game.hpp"
#include "nashtrace/oracle.hpp"
#include "nashtrace/rng.hpp"

namespace nashtrace {

/// Game with every payoff of player i mapped to scale[i] * x + offset[i].
/// Positive scales leave the zero-regret profile set unchanged.
inline Game affine_transform(const Game& game, const std::vector<double>& scale,
                             const std::vector<double>& offset) {
  if (scale.size() != game.num_players() ||
      offset.size() != game.num_players()) {
    throw std::invalid_argument(
        "affine_transform: need one scale and offset per player");
  }
  std::vector<std::vector<double>> payoffs = game.payoffs();
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    if (!(scale[i] > 0.0)) {
      throw std::invalid_argument("affine_transform: scale must be > 0");
    }
    for (double& v : payoffs[i]) v = scale[i] * v + offset[i];
  }
  return Game(game.shape(), std::move(payoffs));
}

inline Game affine_transform(const Game& game, double scale, double offset) {
  return affine_transform(game,
                          std::vector<double>(game.num_players(), scale),
                          std::vector<double>(game.num_players(), offset));
}

struct SweepRow {
  double parameter = 0.0;
  std::vector<double> best_regret_sums;
  double best_total = 0.0;
  std::size_t best_step = 0;
};

/// One row per requested parameter value, in input order.
struct SweepResult {
  std::string parameter_name;
  std::vector<SweepRow> rows;
};

/// Runs the game once per adjustment rate (the same rate for every player),
/// holding the initial profile fixed to isolate the rate's effect.
inline SweepResult sweep_rates(const Game& game, const StrategyProfile& initial,
                               const std::vector<double>& rates,
                               std::size_t iterations) {
  if (rates.empty()) {
    throw std::invalid_argument("sweep_rates: empty rate list");
  }
  SweepResult result;
  result.parameter_name = "rate";
  for (double rate : rates) {
    RunConfig config = RunConfig::standard(game.num_players(), rate, iterations);
    config.record_every = iterations;  // best is tracked every step regardless
    const IterationTrace trace = run(game, initial, config);
    result.rows.push_back({rate, trace.best_regret_sums, trace.best_total,
                           trace.best_step});
  }
  return result;
}

/// Runs scale * game once per scale factor (offsets zero, the same scale for
/// every player). Stored regret sums are multiplied by 1/scale so rows are
/// comparable in the original game's payoff units.
inline SweepResult sweep_scales(const Game& game,
                                const StrategyProfile& initial,
                                const std::vector<double>& scales,
                                std::size_t iterations, double rate) {
  if (scales.empty()) {
    throw std::invalid_argument("sweep_scales: empty scale list");
  }
  SweepResult result;
  result.parameter_name = "scale";
  for (double scale : scales) {
    if (!(scale > 0.0)) {
      throw std::invalid_argument("sweep_scales: scale must be > 0");
    }
    const Game scaled = affine_transform(game, scale, 0.0);
    RunConfig config = RunConfig::standard(game.num_players(), rate, iterations);
    config.record_every = iterations;
    const IterationTrace trace = run(scaled, initial, config);
    const double inv = 1.0 / scale;
    SweepRow row{scale, trace.best_regret_sums, 0.0, trace.best_step};
    for (double& rs : row.best_regret_sums) rs *= inv;
    row.best_total = trace.best_total * inv;
    result.rows.push_back(std::move(row));
  }
  return result;
}

struct BasinStart {
  BasinStart(std::uint64_t stream, StrategyProfile initial)
      : stream(stream), initial(std::move(initial)) {}

  std::uint64_t stream;  // substream index fed to the seeded generator
  StrategyProfile initial;
  bool converged = false;
  std::vector<double> best_regret_sums;
  double best_total = 0.0;
  std::size_t best_step = 0;
  // nearest equilibrium of the final profile, when an oracle is available
  std::optional<std::size_t> equilibrium_index;
  double initial_distance = 0.0;
  double final_distance = 0.0;
};

struct BasinReport {
  std::vector<BasinStart> starts;
  double epsilon_conv = 1e-3;
  std::optional<EquilibriumSet> equilibria;
};

/// Runs the iteration from num_starts seeded random profiles and classifies
/// each start as converged when its best overall regret sum drops below
/// epsilon_conv. Substream k of the seed generates start k, so results are
/// reproducible and independent of execution order. For two-player games
/// small enough for the oracle, each final profile is labeled with its
/// nearest equilibrium and the distances from start and finish to it.
inline BasinReport basin_sample(const Game& game, std::size_t num_starts,
                                std::uint64_t seed, const RunConfig& config,
                                double epsilon_conv = 1e-3) {
  if (num_starts < 1) {
    throw std::invalid_argument("basin_sample: need at least one start");
  }
  config.validate(game);

  BasinReport report;
  report.epsilon_conv = epsilon_conv;
  if (game.num_players() == 2 && game.shape()[0] <= 10 &&
      game.shape()[1] <= 10) {
    report.equilibria = support_enumeration(game);
  }

  for (std::size_t k = 0; k < num_starts; ++k) {
    Rng rng = Rng::substream(seed, k);
    BasinStart start{.stream = k, .initial = random_profile(game, rng)};
    const IterationTrace trace = run(game, start.initial, config);
    start.converged = trace.best_total < epsilon_conv;
    start.best_regret_sums = trace.best_regret_sums;
    start.best_total = trace.best_total;
    start.best_step = trace.best_step;
    if (report.equilibria && !report.equilibria->equilibria.empty()) {
      const StrategyProfile& final_profile = trace.profiles.back();
      auto [index, distance] =
          nearest_equilibrium(final_profile, *report.equilibria);
      start.equilibrium_index = index;
      start.final_distance = distance;
      start.initial_distance = profile_distance_sum(
          start.initial, report.equilibria->equilibria[index]);
    }
    report.starts.push_back(std::move(start));
  }
  return report;
}

}  // namespace nashtrace
