#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashtrace/strategy.hpp"

namespace nashtrace {

/// Finite n-person game in normal form.
///
/// Each player i has shape()[i] >= 2 pure strategies and a dense payoff
/// tensor with one entry per joint pure profile (j1..jn). Tensors are stored
/// flattened in row-major order: the last player's index varies fastest.
class Game {
 public:
  Game(std::vector<std::size_t> shape,
       std::vector<std::vector<double>> payoffs)
      : shape_(std::move(shape)), payoffs_(std::move(payoffs)) {
    if (shape_.empty()) {
      throw std::invalid_argument("Game: need at least one player");
    }
    std::size_t total = 1;
    for (std::size_t g : shape_) {
      if (g < 2) {
        throw std::invalid_argument(
            "Game: every player needs at least 2 pure strategies");
      }
      total *= g;
    }
    if (payoffs_.size() != shape_.size()) {
      throw std::invalid_argument(
          "Game: expected one payoff tensor per player, got " +
          std::to_string(payoffs_.size()));
    }
    for (std::size_t i = 0; i < payoffs_.size(); ++i) {
      if (payoffs_[i].size() != total) {
        throw std::invalid_argument(
            "Game: payoff tensor for player " + std::to_string(i + 1) +
            " has " + std::to_string(payoffs_[i].size()) + " entries, expected " +
            std::to_string(total));
      }
      for (double v : payoffs_[i]) {
        if (!std::isfinite(v)) {
          throw std::invalid_argument("Game: non-finite payoff for player " +
                                      std::to_string(i + 1));
        }
      }
    }
    strides_.assign(shape_.size(), 1);
    for (std::size_t i = shape_.size(); i-- > 1;) {
      strides_[i - 1] = strides_[i] * shape_[i];
    }
    num_profiles_ = total;
  }

  /// Two-player shortcut from row-player matrix A and column-player matrix B,
  /// both indexed [row][col].
  static Game bimatrix(const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b) {
    if (a.empty() || a[0].empty()) {
      throw std::invalid_argument("bimatrix: matrix A is empty");
    }
    std::size_t rows = a.size(), cols = a[0].size();
    if (b.size() != rows || (b.size() > 0 && b[0].size() != cols)) {
      throw std::invalid_argument("bimatrix: A and B shapes differ");
    }
    std::vector<double> ta, tb;
    ta.reserve(rows * cols);
    tb.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (a[i].size() != cols || b[i].size() != cols) {
        throw std::invalid_argument("bimatrix: ragged matrix rows");
      }
      for (std::size_t j = 0; j < cols; ++j) {
        ta.push_back(a[i][j]);
        tb.push_back(b[i][j]);
      }
    }
    return Game({rows, cols}, {std::move(ta), std::move(tb)});
  }

  std::size_t num_players() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t num_profiles() const { return num_profiles_; }
  const std::vector<std::vector<double>>& payoffs() const { return payoffs_; }

  double payoff(std::size_t player, const std::vector<std::size_t>& pure) const {
    if (player >= num_players()) {
      throw std::invalid_argument("payoff: player index out of range");
    }
    if (pure.size() != num_players()) {
      throw std::invalid_argument("payoff: pure profile length mismatch");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < pure.size(); ++i) {
      if (pure[i] >= shape_[i]) {
        throw std::invalid_argument("payoff: pure strategy index out of range");
      }
      flat += pure[i] * strides_[i];
    }
    return payoffs_[player][flat];
  }

  void check_profile(const StrategyProfile& profile) const {
    if (profile.num_players() != num_players()) {
      throw std::invalid_argument(
          "profile has " + std::to_string(profile.num_players()) +
          " players, game has " + std::to_string(num_players()));
    }
    for (std::size_t i = 0; i < num_players(); ++i) {
      if (profile[i].size() != shape_[i]) {
        throw std::invalid_argument(
            "player " + std::to_string(i + 1) + " strategy has " +
            std::to_string(profile[i].size()) + " weights, expected " +
            std::to_string(shape_[i]));
      }
    }
  }

  StrategyProfile uniform_profile() const {
    std::vector<MixedStrategy> s;
    s.reserve(num_players());
    for (std::size_t g : shape_) s.push_back(MixedStrategy::uniform(g));
    return StrategyProfile(std::move(s));
  }

 private:
  std::vector<std::size_t> shape_;
  std::vector<std::vector<double>> payoffs_;
  std::vector<std::size_t> strides_;
  std::size_t num_profiles_ = 0;
};

/// Player i's expected payoff at each of its pure strategies, holding the
/// opponents at their mixed strategies. Costs one pass over the full tensor.
inline std::vector<double> vertex_payoffs(const Game& game,
                                          const StrategyProfile& profile,
                                          std::size_t player) {
  if (player >= game.num_players()) {
    throw std::invalid_argument("vertex_payoffs: player index out of range");
  }
  game.check_profile(profile);

  const std::size_t n = game.num_players();
  const auto& shape = game.shape();
  const auto& tensor = game.payoffs()[player];
  std::vector<double> out(shape[player], 0.0);

  std::vector<std::size_t> idx(n, 0);
  for (std::size_t flat = 0; flat < game.num_profiles(); ++flat) {
    double weight = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != player) weight *= profile[k][idx[k]];
    }
    out[idx[player]] += weight * tensor[flat];
    // odometer increment, last index fastest (row-major)
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < shape[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

/// Inner product of a mixed strategy with a vertex-payoff vector.
inline double expected_payoff(const MixedStrategy& strategy,
                              const std::vector<double>& vertex_payoffs) {
  if (strategy.size() != vertex_payoffs.size()) {
    throw std::invalid_argument("expected_payoff: length mismatch");
  }
  double p = 0.0;
  for (std::size_t j = 0; j < strategy.size(); ++j) {
    p += strategy[j] * vertex_payoffs[j];
  }
  return p;
}

/// Componentwise positive part of (vertex payoff - average payoff).
///
/// The average is clamped up to min(vertex_payoffs) before subtracting, so
/// the least profitable vertex carries exactly zero regret even when the
/// inner product rounds a hair below the true minimum.
inline std::vector<double> regret_vector(
    const std::vector<double>& vertex_payoffs, double payoff) {
  if (vertex_payoffs.empty()) {
    throw std::invalid_argument("regret_vector: empty payoff vector");
  }
  double lo = vertex_payoffs[0];
  for (double v : vertex_payoffs) lo = std::min(lo, v);
  const double base = std::max(payoff, lo);
  std::vector<double> out(vertex_payoffs.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = std::max(0.0, vertex_payoffs[j] - base);
  }
  return out;
}

inline double l1_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

struct PlayerRegret {
  std::vector<double> vertex_payoffs;
  double payoff = 0.0;
  std::vector<double> regret_vector;
  double regret_sum = 0.0;
};

/// Per-player regret quantities for one profile. The profile is an
/// epsilon-equilibrium iff max_regret_sum() <= epsilon.
struct RegretReport {
  std::vector<PlayerRegret> players;

  double total_regret_sum() const {
    double s = 0.0;
    for (const auto& p : players) s += p.regret_sum;
    return s;
  }
  double max_regret_sum() const {
    double m = 0.0;
    for (const auto& p : players) m = std::max(m, p.regret_sum);
    return m;
  }
  std::vector<double> regret_sums() const {
    std::vector<double> out;
    out.reserve(players.size());
    for (const auto& p : players) out.push_back(p.regret_sum);
    return out;
  }
};

inline RegretReport regret_report(const Game& game,
                                  const StrategyProfile& profile) {
  game.check_profile(profile);
  RegretReport report;
  report.players.resize(game.num_players());
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    PlayerRegret& pr = report.players[i];
    pr.vertex_payoffs = vertex_payoffs(game, profile, i);
    pr.payoff = expected_payoff(profile[i], pr.vertex_payoffs);
    pr.regret_vector = regret_vector(pr.vertex_payoffs, pr.payoff);
    pr.regret_sum = l1_sum(pr.regret_vector);
  }
  return report;
}

}  // namespace nashtrace
