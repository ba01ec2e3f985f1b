#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nashtrace/game.hpp"
#include "nashtrace/metrics_fwd.hpp"
#include "nashtrace/strategy.hpp"

namespace nashtrace {

/// Ground-truth equilibria of a small two-player game.
struct EquilibriumSet {
  std::vector<StrategyProfile> equilibria;
  std::string method = "support-enumeration";
  double tolerance = 1e-7;
  /// Set when some equilibrium has a weakly best reply outside its support,
  /// a sign of an equilibrium component rather than an isolated point. The
  /// reported points are then representatives.
  bool degenerate = false;
};

namespace detail {

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_linear(
    std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-12) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t row = n; row-- > 0;) {
    double acc = rhs[row];
    for (std::size_t c = row + 1; c < n; ++c) acc -= m[row][c] * x[c];
    x[row] = acc / m[row][row];
  }
  return x;
}

inline void next_combination(std::vector<std::size_t>& combo, std::size_t n,
                             bool& done) {
  const std::size_t k = combo.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (combo[i] + 1 <= n - k + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return;
    }
  }
  done = true;
}

// Mixed strategy on `support` making the opponent indifferent across
// `opponent_support`, solved from payoff(opp_strategy, own_weight) rows.
// payoff_at(i, j) = opponent's payoff at (opponent pure i, own pure j).
template <typename PayoffAt>
inline std::optional<std::vector<double>> indifference_weights(
    const std::vector<std::size_t>& support,
    const std::vector<std::size_t>& opponent_support, PayoffAt&& payoff_at,
    std::size_t full_size) {
  const std::size_t k = support.size();
  // unknowns: k weights + the common payoff value v
  std::vector<std::vector<double>> m(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> rhs(k + 1, 0.0);
  for (std::size_t row = 0; row < k; ++row) {
    for (std::size_t col = 0; col < k; ++col) {
      m[row][col] = payoff_at(opponent_support[row], support[col]);
    }
    m[row][k] = -1.0;
  }
  for (std::size_t col = 0; col < k; ++col) m[k][col] = 1.0;
  rhs[k] = 1.0;

  auto sol = solve_linear(std::move(m), std::move(rhs));
  if (!sol) return std::nullopt;
  std::vector<double> weights(full_size, 0.0);
  for (std::size_t col = 0; col < k; ++col) weights[support[col]] = (*sol)[col];
  return weights;
}

}  // namespace detail

/// Exhaustive support enumeration for two-player games with at most 10 pure
/// strategies per side. For every equal-size support pair the linear
/// indifference system is solved; solutions with negative weights, or with a
/// profitable deviation (max regret sum above `tolerance`), are discarded.
/// Results are deduplicated within 1e-7 and ordered by support
/// (size first, then lexicographic row and column supports).
inline EquilibriumSet support_enumeration(const Game& game,
                                          double tolerance = 1e-7) {
  if (game.num_players() != 2) {
    throw std::invalid_argument("support_enumeration: two-player games only");
  }
  const std::size_t rows = game.shape()[0], cols = game.shape()[1];
  if (rows > 10 || cols > 10) {
    throw std::invalid_argument(
        "support_enumeration: game larger than 10x10");
  }

  const auto row_payoff = [&](std::size_t i, std::size_t j) {
    return game.payoffs()[0][i * cols + j];
  };
  const auto col_payoff = [&](std::size_t i, std::size_t j) {
    return game.payoffs()[1][i * cols + j];
  };

  EquilibriumSet result;
  result.tolerance = tolerance;

  for (std::size_t size = 1; size <= std::min(rows, cols); ++size) {
    std::vector<std::size_t> row_support(size);
    for (std::size_t i = 0; i < size; ++i) row_support[i] = i;
    bool rows_done = false;
    while (!rows_done) {
      std::vector<std::size_t> col_support(size);
      for (std::size_t i = 0; i < size; ++i) col_support[i] = i;
      bool cols_done = false;
      while (!cols_done) {
        // y on col_support makes the row player's supported rows indifferent;
        // x on row_support does the same for the column player.
        auto y = detail::indifference_weights(
            col_support, row_support,
            [&](std::size_t r, std::size_t c) { return row_payoff(r, c); },
            cols);
        auto x = detail::indifference_weights(
            row_support, col_support,
            [&](std::size_t c, std::size_t r) { return col_payoff(r, c); },
            rows);
        if (x && y) {
          bool feasible = true;
          for (double w : *x) feasible = feasible && w >= -tolerance;
          for (double w : *y) feasible = feasible && w >= -tolerance;
          if (feasible) {
            for (double& w : *x) w = std::max(0.0, w);
            for (double& w : *y) w = std::max(0.0, w);
            StrategyProfile candidate({MixedStrategy::normalized(*x),
                                       MixedStrategy::normalized(*y)});
            const RegretReport report = regret_report(game, candidate);
            if (report.max_regret_sum() <= tolerance) {
              bool duplicate = false;
              for (const StrategyProfile& eq : result.equilibria) {
                if (profile_distance_sum(eq, candidate) < 1e-7) {
                  duplicate = true;
                  break;
                }
              }
              if (!duplicate) {
                // weakly best replies outside the support indicate a
                // potential equilibrium component
                for (std::size_t player = 0; player < 2 && !result.degenerate;
                     ++player) {
                  const auto& pr = report.players[player];
                  for (std::size_t j = 0; j < pr.vertex_payoffs.size(); ++j) {
                    if (candidate[player][j] <= tolerance &&
                        pr.vertex_payoffs[j] >= pr.payoff - tolerance) {
                      result.degenerate = true;
                      break;
                    }
                  }
                }
                result.equilibria.push_back(std::move(candidate));
              }
            }
          }
        }
        detail::next_combination(col_support, cols, cols_done);
      }
      detail::next_combination(row_support, rows, rows_done);
    }
  }
  return result;
}

/// Index and summed-L2 distance of the closest equilibrium; ties go to the
/// lowest index.
inline std::pair<std::size_t, double> nearest_equilibrium(
    const StrategyProfile& profile, const EquilibriumSet& eqset) {
  if (eqset.equilibria.empty()) {
    throw std::invalid_argument("nearest_equilibrium: empty equilibrium set");
  }
  std::size_t best = 0;
  double best_d = profile_distance_sum(profile, eqset.equilibria[0]);
  for (std::size_t i = 1; i < eqset.equilibria.size(); ++i) {
    const double d = profile_distance_sum(profile, eqset.equilibria[i]);
    if (d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return {best, best_d};
}

}  // namespace nashtrace
