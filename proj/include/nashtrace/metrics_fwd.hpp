#pragma once

#include <algorithm>
#include <stdexcept>

#include "nashtrace/strategy.hpp"

namespace nashtrace {

/// Sum over players of the L2 distance between their strategies.
inline double profile_distance_sum(const StrategyProfile& x,
                                   const StrategyProfile& y) {
  if (x.num_players() != y.num_players()) {
    throw std::invalid_argument("profile distance: player count mismatch");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < x.num_players(); ++i) {
    d += l2_distance(x[i], y[i]);
  }
  return d;
}

/// Max over players of the L2 distance between their strategies.
inline double profile_distance_max(const StrategyProfile& x,
                                   const StrategyProfile& y) {
  if (x.num_players() != y.num_players()) {
    throw std::invalid_argument("profile distance: player count mismatch");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < x.num_players(); ++i) {
    d = std::max(d, l2_distance(x[i], y[i]));
  }
  return d;
}

}  // namespace nashtrace
