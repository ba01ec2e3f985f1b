#include <catch2/catch_amalgamated.hpp>

#include "nashtrace/builtin.hpp"
#include "nashtrace/experiments.hpp"
#include "nashtrace/oracle.hpp"
#include "support/test_util.hpp"

using namespace nashtrace;
using testutil::near;

namespace {

StrategyProfile both(const MixedStrategy& s) { return StrategyProfile({s, s}); }

double set_distance(const EquilibriumSet& a, const EquilibriumSet& b) {
  if (a.equilibria.size() != b.equilibria.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (const StrategyProfile& ea : a.equilibria) {
    double best = std::numeric_limits<double>::infinity();
    for (const StrategyProfile& eb : b.equilibria) {
      best = std::min(best, profile_distance_sum(ea, eb));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("support enumeration pins the builtin game structures", "[oracle]") {
  // matching pennies: exactly the mixed coin flip
  const EquilibriumSet mp = support_enumeration(builtin_game("MP"));
  REQUIRE(mp.equilibria.size() == 1);
  REQUIRE(profile_distance_sum(mp.equilibria[0],
                               both(MixedStrategy({0.5, 0.5}))) < 1e-7);
  REQUIRE_FALSE(mp.degenerate);

  // unique pure equilibrium (e1, e1)
  const EquilibriumSet pure = support_enumeration(builtin_game("3X3-1eq1sp"));
  REQUIRE(pure.equilibria.size() == 1);
  REQUIRE(profile_distance_sum(pure.equilibria[0],
                               both(MixedStrategy::vertex(3, 0))) < 1e-7);

  // MP3: unique equilibrium ((.5,.5,0),(.5,.5,0))
  const EquilibriumSet mp3 = support_enumeration(builtin_game("3X3-1eq2sp"));
  REQUIRE(mp3.equilibria.size() == 1);
  REQUIRE(profile_distance_sum(mp3.equilibria[0],
                               both(MixedStrategy({0.5, 0.5, 0.0}))) < 1e-7);

  // RPS: unique interior equilibrium (uniform, uniform)
  const EquilibriumSet rps = support_enumeration(builtin_game("3X3-1eq3sp"));
  REQUIRE(rps.equilibria.size() == 1);
  REQUIRE(profile_distance_sum(rps.equilibria[0],
                               both(MixedStrategy::uniform(3))) < 1e-7);

  // 3X3-2eq2sp: the two advertised 2-support equilibria plus the interior
  // one (a nondegenerate game always has an odd number)
  const EquilibriumSet two = support_enumeration(builtin_game("3X3-2eq2sp"));
  REQUIRE(two.equilibria.size() == 3);
  REQUIRE(profile_distance_sum(two.equilibria[0],
                               both(MixedStrategy({0.5, 0.5, 0.0}))) < 1e-7);
  REQUIRE(profile_distance_sum(two.equilibria[1],
                               both(MixedStrategy({0.0, 0.5, 0.5}))) < 1e-7);
  const StrategyProfile interior({MixedStrategy({2.0 / 9, 5.0 / 9, 2.0 / 9}),
                                  MixedStrategy({2.0 / 7, 2.0 / 7, 3.0 / 7})});
  REQUIRE(profile_distance_sum(two.equilibria[2], interior) < 1e-7);
  REQUIRE_FALSE(two.degenerate);
}

TEST_CASE("every oracle equilibrium passes the regret check", "[oracle]") {
  Rng rng(41);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t k = 2 + rng.next_u64() % 3;
    const std::size_t m = 2 + rng.next_u64() % 3;
    const Game g = random_game({k, m}, rng.next_u64());
    const EquilibriumSet eqs = support_enumeration(g);
    for (const StrategyProfile& eq : eqs.equilibria) {
      REQUIRE(regret_report(g, eq).max_regret_sum() <= eqs.tolerance);
    }
  }
}

TEST_CASE("oracle equilibria are invariant under positive affine maps",
          "[oracle]") {
  Rng rng(43);
  for (int iter = 0; iter < 10; ++iter) {
    const Game g = random_game({3, 3}, rng.next_u64());
    const EquilibriumSet base = support_enumeration(g);
    for (double a : {0.5, 2.0, 10.0}) {
      // regret scales with a, so the acceptance slack scales too
      const EquilibriumSet scaled =
          support_enumeration(affine_transform(g, a, 0.3), 1e-7 * std::max(1.0, a));
      REQUIRE(set_distance(base, scaled) < 1e-6);
    }
  }
}

TEST_CASE("degenerate games are flagged", "[oracle]") {
  // the column player is indifferent everywhere, so equilibrium components
  // are continua; representatives come back flagged
  const Game degenerate = Game::bimatrix({{1, 1}, {0, 0}}, {{0, 0}, {0, 0}});
  const EquilibriumSet eqs = support_enumeration(degenerate);
  REQUIRE_FALSE(eqs.equilibria.empty());
  REQUIRE(eqs.degenerate);
}

TEST_CASE("oracle guards", "[oracle]") {
  REQUIRE_THROWS_AS(support_enumeration(random_game({11, 3}, 1)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(support_enumeration(random_game({2, 2, 2}, 1)),
                    std::invalid_argument);
}

TEST_CASE("nearest equilibrium", "[oracle]") {
  const EquilibriumSet eqs = support_enumeration(builtin_game("3X3-2eq2sp"));
  // a profile equal to an equilibrium reports distance zero
  const auto [i0, d0] = nearest_equilibrium(eqs.equilibria[1], eqs);
  REQUIRE(i0 == 1);
  REQUIRE(d0 == 0.0);

  // near the first equilibrium
  const StrategyProfile close = both(MixedStrategy({0.52, 0.48, 0.0}));
  const auto [i1, d1] = nearest_equilibrium(close, eqs);
  REQUIRE(i1 == 0);
  REQUIRE(d1 > 0.0);
  REQUIRE(d1 < 0.1);

  // an exact tie goes to the lower index
  EquilibriumSet pair;
  pair.equilibria = {both(MixedStrategy::vertex(2, 0)),
                     both(MixedStrategy::vertex(2, 1))};
  const StrategyProfile middle = both(MixedStrategy({0.5, 0.5}));
  const auto [i2, d2] = nearest_equilibrium(middle, pair);
  REQUIRE(i2 == 0);
  REQUIRE(near(profile_distance_sum(middle, pair.equilibria[1]), d2, 1e-15));

  REQUIRE_THROWS_AS(nearest_equilibrium(middle, EquilibriumSet{}),
                    std::invalid_argument);
}
