#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashtrace/game.hpp"
#include "nashtrace/rng.hpp"

namespace nashtrace {

struct BuiltinGameInfo {
  std::string name;
  std::string summary;
};

// Canonical desk-scale games. Equilibrium structure of each entry is
// verified by the support-enumeration oracle in the test suite.
//
//   MP           2x2 matching pennies; unique mixed equilibrium (.5,.5).
//   3X3-1eq1sp   one equilibrium on a single pure strategy: (e1,e1).
//   3X3-1eq2sp   matching pennies plus a strictly dominated third strategy
//                per player ("MP3"); unique equilibrium ((.5,.5,0),(.5,.5,0)).
//   3X3-1eq3sp   rock-paper-scissors ("RPS"); unique interior equilibrium
//                (uniform, uniform).
//   3X3-2eq2sp   two overlapping matching-pennies blocks; two 2-support
//                equilibria ((.5,.5,0),(.5,.5,0)) and ((0,.5,.5),(0,.5,.5)),
//                plus the interior equilibrium every odd-count game carries.
inline Game builtin_game(const std::string& name) {
  if (name == "MP") {
    return Game::bimatrix({{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}});
  }
  if (name == "3X3-1eq1sp") {
    return Game::bimatrix({{3, 3, 3}, {2, 2, 2}, {1, 1, 1}},
                          {{3, 2, 1}, {3, 2, 1}, {3, 2, 1}});
  }
  if (name == "3X3-1eq2sp" || name == "MP3") {
    return Game::bimatrix({{1, -1, 0}, {-1, 1, 0}, {-2, -2, -2}},
                          {{-1, 1, -2}, {1, -1, -2}, {0, 0, -2}});
  }
  if (name == "3X3-1eq3sp" || name == "RPS") {
    return Game::bimatrix({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}},
                          {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
  }
  if (name == "3X3-2eq2sp") {
    return Game::bimatrix({{1, -1, -1}, {-1, 1, -1}, {-2, -1, 1}},
                          {{-1, 1, -2}, {1, -1, 1}, {-2, 1, -1}});
  }
  throw std::invalid_argument("unknown builtin game \"" + name + "\"");
}

inline const std::vector<BuiltinGameInfo>& builtin_game_list() {
  static const std::vector<BuiltinGameInfo> games = {
      {"MP", "2x2 matching pennies; unique equilibrium ((.5,.5),(.5,.5))"},
      {"3X3-1eq1sp", "unique pure-strategy equilibrium (e1,e1)"},
      {"3X3-1eq2sp",
       "matching pennies with dominated third strategy (alias MP3); unique "
       "equilibrium ((.5,.5,0),(.5,.5,0))"},
      {"3X3-1eq3sp",
       "rock-paper-scissors (alias RPS); unique interior equilibrium "
       "(uniform,uniform)"},
      {"3X3-2eq2sp",
       "two 2-support equilibria ((.5,.5,0),(.5,.5,0)) and "
       "((0,.5,.5),(0,.5,.5)) plus one interior equilibrium"},
  };
  return games;
}

/// Seeded game with payoffs uniform on [-1, 1), any shape.
inline Game random_game(const std::vector<std::size_t>& shape,
                        std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x9a3eULL));
  std::size_t total = 1;
  for (std::size_t g : shape) total *= g;
  std::vector<std::vector<double>> payoffs(shape.size());
  for (auto& tensor : payoffs) {
    tensor.resize(total);
    for (double& v : tensor) v = rng.uniform(-1.0, 1.0);
  }
  return Game(shape, std::move(payoffs));
}

}  // namespace nashtrace
