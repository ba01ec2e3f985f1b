#include <catch2/catch_amalgamated.hpp>

#include "nashtrace/rng.hpp"
#include "nashtrace/strategy.hpp"

using namespace nashtrace;

TEST_CASE("construction renormalizes and validates", "[strategy]") {
  const MixedStrategy s({0.5, 0.5});
  REQUIRE(s.size() == 2);
  REQUIRE(s[0] == 0.5);

  // drift within tolerance is repaired
  const MixedStrategy t({0.5, 0.5 + 5e-7});
  double sum = 0.0;
  for (double w : t) sum += w;
  REQUIRE(std::abs(sum - 1.0) <= 1e-12);

  // tiny negatives clamp to zero
  const MixedStrategy u({1.0 + 5e-10, -5e-10});
  REQUIRE(u[1] == 0.0);

  REQUIRE_THROWS_AS(MixedStrategy({0.5, 0.6}), std::invalid_argument);
  REQUIRE_THROWS_AS(MixedStrategy({1.5, -0.5}), std::invalid_argument);
  REQUIRE_THROWS_AS(MixedStrategy(std::vector<double>{}), std::invalid_argument);
  REQUIRE_THROWS_AS(MixedStrategy({0.5, std::nan("")}),
                    std::invalid_argument);
}

TEST_CASE("normalized accepts any positive mass", "[strategy]") {
  const MixedStrategy s = MixedStrategy::normalized({2.0, 6.0});
  REQUIRE(s[0] == 0.25);
  REQUIRE(s[1] == 0.75);
  REQUIRE_THROWS_AS(MixedStrategy::normalized({0.0, 0.0}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(MixedStrategy::normalized({1.0, -0.5}),
                    std::invalid_argument);
}

TEST_CASE("uniform and vertex factories", "[strategy]") {
  const MixedStrategy u = MixedStrategy::uniform(4);
  REQUIRE(u[0] == 0.25);
  const MixedStrategy v = MixedStrategy::vertex(3, 1);
  REQUIRE(v.weights() == std::vector<double>{0.0, 1.0, 0.0});
  REQUIRE_THROWS_AS(MixedStrategy::vertex(3, 3), std::invalid_argument);
}

TEST_CASE("random simplex points satisfy the invariants", "[strategy]") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const MixedStrategy s = rng.simplex_point(2 + i % 5);
    double sum = 0.0;
    for (double w : s) {
      REQUIRE(w >= 0.0);
      sum += w;
    }
    REQUIRE(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("substreams are deterministic and distinct", "[strategy]") {
  Rng a = Rng::substream(7, 0);
  Rng b = Rng::substream(7, 0);
  Rng c = Rng::substream(7, 1);
  const double xa = a.uniform01(), xb = b.uniform01(), xc = c.uniform01();
  REQUIRE(xa == xb);
  REQUIRE(xa != xc);
}

TEST_CASE("profile holds one strategy per player", "[strategy]") {
  const StrategyProfile p({MixedStrategy::uniform(2), MixedStrategy::uniform(3)});
  REQUIRE(p.num_players() == 2);
  REQUIRE(p[1].size() == 3);
  REQUIRE_THROWS_AS(StrategyProfile(std::vector<MixedStrategy>{}), std::invalid_argument);
}
