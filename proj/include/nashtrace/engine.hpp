#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nashtrace/game.hpp"
#include "nashtrace/metrics_fwd.hpp"
#include "nashtrace/strategy.hpp"
#include "nashtrace/update.hpp"

namespace nashtrace {

struct RunConfig {
  std::vector<UpdateRule> rules;  // one per player
  std::size_t iterations = 10000;
  std::optional<double> epsilon;  // early stop on overall regret sum
  std::size_t record_every = 1;

  static RunConfig standard(std::size_t num_players, double rate,
                            std::size_t iterations) {
    RunConfig c;
    c.rules.assign(num_players, UpdateRule::standard(rate));
    c.iterations = iterations;
    return c;
  }

  void validate(const Game& game) const {
    if (rules.size() != game.num_players()) {
      throw std::invalid_argument("RunConfig: need one rule per player");
    }
    if (iterations < 1) {
      throw std::invalid_argument("RunConfig: iterations must be >= 1");
    }
    if (record_every < 1) {
      throw std::invalid_argument("RunConfig: record_every must be >= 1");
    }
    if (epsilon && !(*epsilon > 0.0)) {
      throw std::invalid_argument("RunConfig: epsilon must be > 0");
    }
  }
};

/// Recorded output of a run. The best profile is tracked at every step even
/// when recording is thinned, and "best" means the first strict minimum of
/// the overall regret sum.
struct IterationTrace {
  explicit IterationTrace(StrategyProfile initial)
      : best_profile(std::move(initial)) {}

  std::vector<std::size_t> steps;             // t of each recorded row
  std::vector<StrategyProfile> profiles;      // same length as steps
  std::vector<std::vector<double>> regret_sums;

  StrategyProfile best_profile;
  std::vector<double> best_regret_sums;
  double best_total = std::numeric_limits<double>::infinity();
  std::size_t best_step = 0;
  bool stopped_early = false;
  std::size_t last_step = 0;  // t of the final evaluated profile
};

namespace detail {

inline StrategyProfile apply_rules(const Game& game,
                                   const StrategyProfile& profile,
                                   const RegretReport& report,
                                   const std::vector<UpdateRule>& rules) {
  std::vector<MixedStrategy> next;
  next.reserve(game.num_players());
  const double total = report.total_regret_sum();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const UpdateRule& rule = rules[i];
    const PlayerRegret& pr = report.players[i];
    switch (rule.variant) {
      case UpdateVariant::standard:
        next.push_back(
            psi_update(profile[i], pr.regret_vector, rule.rate.value(total)));
        break;
      case UpdateVariant::generalized:
        next.push_back(
            psi_update_general(profile[i], pr.regret_vector, rule, total));
        break;
      case UpdateVariant::convex_target:
        next.push_back(convex_update(profile[i],
                                     rule.target.resolve(pr.vertex_payoffs),
                                     rule.rate.value(total)));
        break;
    }
  }
  return StrategyProfile(std::move(next));
}

}  // namespace detail

/// One simultaneous adjustment: every player updates from the same input
/// profile, so no player sees another's step-t move before making its own.
inline StrategyProfile step(const Game& game, const StrategyProfile& profile,
                            const std::vector<UpdateRule>& rules) {
  if (rules.size() != game.num_players()) {
    throw std::invalid_argument("step: need one rule per player");
  }
  game.check_profile(profile);
  return detail::apply_rules(game, profile, regret_report(game, profile),
                             rules);
}

inline StrategyProfile step(const Game& game, const StrategyProfile& profile,
                            double rate) {
  return step(game, profile,
              std::vector<UpdateRule>(game.num_players(),
                                      UpdateRule::standard(rate)));
}

/// Iterates the simultaneous update for config.iterations steps, evaluating
/// regrets of the initial profile as step 0. Stops early when the overall
/// regret sum drops to config.epsilon, if set. Deterministic given inputs.
inline IterationTrace run(const Game& game, const StrategyProfile& initial,
                          const RunConfig& config) {
  config.validate(game);
  game.check_profile(initial);

  IterationTrace trace(initial);
  StrategyProfile profile = initial;

  for (std::size_t t = 0;; ++t) {
    const RegretReport report = regret_report(game, profile);
    const double total = report.total_regret_sum();

    if (total < trace.best_total) {
      trace.best_total = total;
      trace.best_profile = profile;
      trace.best_regret_sums = report.regret_sums();
      trace.best_step = t;
    }

    const bool early = config.epsilon && total <= *config.epsilon;
    const bool last = early || t == config.iterations;
    if (t % config.record_every == 0 || last) {
      trace.steps.push_back(t);
      trace.profiles.push_back(profile);
      trace.regret_sums.push_back(report.regret_sums());
    }
    if (last) {
      trace.stopped_early = early;
      trace.last_step = t;
      break;
    }
    profile = detail::apply_rules(game, profile, report, config.rules);
  }
  return trace;
}

/// Distance of each recorded profile to a reference profile, using the
/// summed per-player L2 metric.
inline std::vector<double> trajectory_distances(
    const IterationTrace& trace, const StrategyProfile& reference) {
  std::vector<double> out;
  out.reserve(trace.profiles.size());
  for (const StrategyProfile& p : trace.profiles) {
    out.push_back(profile_distance_sum(p, reference));
  }
  return out;
}

}  // namespace nashtrace
