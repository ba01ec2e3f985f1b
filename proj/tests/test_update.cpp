#include <catch2/catch_amalgamated.hpp>

#include "nashtrace/builtin.hpp"
#include "nashtrace/game.hpp"
#include "nashtrace/rng.hpp"
#include "nashtrace/update.hpp"
#include "support/test_util.hpp"

using namespace nashtrace;
using testutil::near;

TEST_CASE("psi update on hand-checked inputs", "[update]") {
  // zero regret is a fixed point, bit-identically
  const MixedStrategy s1({0.3, 0.7});
  REQUIRE(psi_update(s1, {0.0, 0.0}, 1.0).weights() == s1.weights());

  // ((1,0,0) + 0.5*(0,2,0)) / (1 + 0.5*2) = (0.5, 0.5, 0)
  const MixedStrategy s2 = psi_update(MixedStrategy::vertex(3, 0), {0, 2, 0}, 0.5);
  REQUIRE(s2.weights() == std::vector<double>{0.5, 0.5, 0.0});

  // ((1/3,1/3,1/3) + (0,0,1)) / 2 = (1/6, 1/6, 2/3)
  const MixedStrategy s3 = psi_update(MixedStrategy::uniform(3), {0, 0, 1}, 1.0);
  REQUIRE(near(s3[0], 1.0 / 6.0, 1e-15));
  REQUIRE(near(s3[1], 1.0 / 6.0, 1e-15));
  REQUIRE(near(s3[2], 2.0 / 3.0, 1e-15));

  REQUIRE_THROWS_AS(psi_update(s1, {0.0, 0.0}, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(psi_update(s1, {0.0, -1.0}, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(psi_update(s1, {0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("psi update stays on the simplex", "[update]") {
  Rng rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    const std::size_t g = 2 + rng.next_u64() % 5;
    const MixedStrategy s = rng.simplex_point(g);
    std::vector<double> lam(g);
    for (double& x : lam) x = rng.uniform(0.0, 3.0);
    const double r = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const MixedStrategy out = psi_update(s, lam, r);
    double sum = 0.0;
    for (double w : out) {
      REQUIRE(w >= 0.0);
      sum += w;
    }
    REQUIRE(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("payoff and regret theorems on random games", "[update]") {
  Rng rng(12);
  for (int iter = 0; iter < 300; ++iter) {
    const Game g = testutil::random_small_game(rng);
    const StrategyProfile p = random_profile(g, rng);
    const double r = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const RegretReport report = regret_report(g, p);
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      const auto& pr = report.players[i];
      const MixedStrategy next = psi_update(p[i], pr.regret_vector, r);

      // unilateral payoff never drops, and the increment has the closed form
      // |lambda|^2 / (1/r + |lambda|)
      const double p_old = pr.payoff;
      const double p_new = expected_payoff(next, pr.vertex_payoffs);
      REQUIRE(p_new >= p_old - 1e-9);
      const double lam2 = [&] {
        double acc = 0.0;
        for (double x : pr.regret_vector) acc += x * x;
        return acc;
      }();
      const double predicted = lam2 / (1.0 / r + pr.regret_sum);
      REQUIRE(near(p_new - p_old, predicted, 1e-9, 1e-9));

      // unilateral regret sum never grows
      std::vector<MixedStrategy> unilateral = p.strategies();
      unilateral[i] = next;
      const RegretReport after =
          regret_report(g, StrategyProfile(std::move(unilateral)));
      REQUIRE(after.players[i].regret_sum <= pr.regret_sum + 1e-9);

      // suppression: zero-regret components shrink while regret remains
      if (pr.regret_sum > 1e-12) {
        for (std::size_t j = 0; j < pr.regret_vector.size(); ++j) {
          if (pr.regret_vector[j] == 0.0) {
            if (p[i][j] > 0.0) {
              REQUIRE(next[j] < p[i][j]);
            } else {
              REQUIRE(next[j] == 0.0);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("large rates approach the normalized regret vector", "[update]") {
  Rng rng(13);
  for (int iter = 0; iter < 50; ++iter) {
    const std::size_t g = 2 + rng.next_u64() % 4;
    const MixedStrategy s = rng.simplex_point(g);
    std::vector<double> lam(g, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < g; ++j) {
      lam[j] = rng.uniform(0.0, 2.0);
      total += lam[j];
    }
    if (total == 0.0) continue;
    const MixedStrategy out = psi_update(s, lam, 1e12);
    for (std::size_t j = 0; j < g; ++j) {
      REQUIRE(near(out[j], lam[j] / total, 1e-6));
    }
  }
}

TEST_CASE("generalized update", "[update]") {
  Rng rng(14);
  // identity alpha with a constant rate reproduces psi_update exactly
  const UpdateRule identity_rule =
      UpdateRule::generalized(RateSpec::constant(0.7), AlphaSpec::identity());
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t g = 2 + rng.next_u64() % 4;
    const MixedStrategy s = rng.simplex_point(g);
    std::vector<double> lam(g);
    for (double& x : lam) x = rng.uniform(0.0, 2.0);
    const MixedStrategy a = psi_update(s, lam, 0.7);
    const MixedStrategy b = psi_update_general(s, lam, identity_rule, 0.0);
    REQUIRE(a.weights() == b.weights());
  }

  // alpha = square: ((1,0,0) + 0.5*(0,4,0)) / (1 + 0.5*4) = (1/3, 2/3, 0)
  const UpdateRule square_rule =
      UpdateRule::generalized(RateSpec::constant(0.5), AlphaSpec::power(2.0));
  const MixedStrategy out =
      psi_update_general(MixedStrategy::vertex(3, 0), {0, 2, 0}, square_rule, 0.0);
  REQUIRE(near(out[0], 1.0 / 3.0, 1e-15));
  REQUIRE(near(out[1], 2.0 / 3.0, 1e-15));
  REQUIRE(out[2] == 0.0);

  // any alpha preset fixes zero regret
  for (const AlphaSpec& alpha :
       {AlphaSpec::identity(), AlphaSpec::power(3.0), AlphaSpec::deadzone(0.2)}) {
    const UpdateRule rule = UpdateRule::generalized(RateSpec::constant(1.0), alpha);
    const MixedStrategy s = rng.simplex_point(4);
    const MixedStrategy kept =
        psi_update_general(s, {0, 0, 0, 0}, rule, 0.0);
    REQUIRE(kept.weights() == s.weights());
  }

  REQUIRE_THROWS_AS(AlphaSpec::power(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(AlphaSpec::deadzone(-0.1), std::invalid_argument);
}

TEST_CASE("generalized payoff increment closed form", "[update]") {
  Rng rng(15);
  for (int iter = 0; iter < 200; ++iter) {
    const Game g = testutil::random_small_game(rng);
    const StrategyProfile p = random_profile(g, rng);
    const AlphaSpec alpha = (iter % 2) ? AlphaSpec::power(2.0)
                                       : AlphaSpec::deadzone(0.05);
    const double r = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
    const UpdateRule rule = UpdateRule::generalized(RateSpec::constant(r), alpha);
    const RegretReport report = regret_report(g, p);
    for (std::size_t i = 0; i < g.num_players(); ++i) {
      const auto& pr = report.players[i];
      const MixedStrategy next =
          psi_update_general(p[i], pr.regret_vector, rule, 0.0);
      double dot = 0.0, transformed_sum = 0.0;
      for (double x : pr.regret_vector) {
        dot += alpha(x) * x;
        transformed_sum += alpha(x);
      }
      const double predicted = dot / (1.0 / r + transformed_sum);
      const double actual = expected_payoff(next, pr.vertex_payoffs) - pr.payoff;
      REQUIRE(near(actual, predicted, 1e-9, 1e-9));
      REQUIRE(actual >= -1e-9);
    }
  }
}

TEST_CASE("damped rate uses the profile regret sum", "[update]") {
  const RateSpec damped = RateSpec::damped(0.5);
  REQUIRE(damped.value(0.0) == 0.5);
  REQUIRE(damped.value(4.0) == 0.1);
  REQUIRE(RateSpec::constant(0.3).value(100.0) == 0.3);
  REQUIRE_THROWS_AS(RateSpec::constant(0.0), std::invalid_argument);
}

TEST_CASE("convex update on hand-checked inputs", "[update]") {
  const MixedStrategy a({1.0, 0.0});
  const MixedStrategy b({0.0, 1.0});
  REQUIRE(convex_update(a, b, 1.0).weights() == std::vector<double>{0.5, 0.5});
  REQUIRE(convex_update(a, a, 2.0).weights() == a.weights());

  const MixedStrategy c = convex_update(a, b, 3.0);
  REQUIRE(near(c[0], 0.25, 1e-15));
  REQUIRE(near(c[1], 0.75, 1e-15));
  REQUIRE(near(l2_distance(c, b), l2_distance(a, b) / 4.0, 1e-15));

  REQUIRE_THROWS_AS(convex_update(a, b, 0.0), std::invalid_argument);
}

TEST_CASE("convex update contracts toward the target by 1/(1+r)", "[update]") {
  Rng rng(16);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t g = 2 + rng.next_u64() % 5;
    const MixedStrategy s = rng.simplex_point(g);
    const MixedStrategy t = rng.simplex_point(g);
    const double r = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const MixedStrategy out = convex_update(s, t, r);
    REQUIRE(near(l2_distance(out, t), l2_distance(s, t) / (1.0 + r), 1e-12));
  }
}

TEST_CASE("softmax target lies on the simplex and tracks payoffs", "[update]") {
  const TargetSpec soft = TargetSpec::softmax(1.0);
  const MixedStrategy t = soft.resolve({1.0, 2.0, 0.0});
  REQUIRE(t[1] > t[0]);
  REQUIRE(t[0] > t[2]);
  double sum = 0.0;
  for (double w : t) sum += w;
  REQUIRE(std::abs(sum - 1.0) <= 1e-12);

  const TargetSpec fixed = TargetSpec::constant({0.25, 0.75});
  REQUIRE(fixed.resolve({5.0, 5.0}).weights() ==
          std::vector<double>{0.25, 0.75});
  REQUIRE_THROWS_AS(TargetSpec::softmax(0.0), std::invalid_argument);
}

TEST_CASE("cosine angle", "[update]") {
  REQUIRE(cosine_angle({1, 0}, {1, 0}) == 1.0);
  REQUIRE(cosine_angle({1, 0}, {0, 1}) == 0.0);
  // pushing u toward v closes the angle: hand check with u+v
  REQUIRE(near(cosine_angle({1, 1}, {0, 1}), 1.0 / std::sqrt(2.0), 1e-15));
  REQUIRE(cosine_angle({1, 1}, {0, 1}) > cosine_angle({1, 0}, {0, 1}));
  REQUIRE_THROWS_AS(cosine_angle({0, 0}, {1, 0}), std::invalid_argument);
  REQUIRE_THROWS_AS(cosine_angle({1, 0}, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("angle theorem on random vectors", "[update]") {
  Rng rng(17);
  int tested = 0;
  while (tested < 500) {
    const std::size_t d = 2 + rng.next_u64() % 5;
    std::vector<double> u(d), v(d), pushed(d);
    for (double& x : u) x = rng.uniform(-1.0, 1.0);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    const double r = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    double nu = l2_norm(u), nv = l2_norm(v), np = 0.0;
    for (std::size_t j = 0; j < d; ++j) pushed[j] = u[j] + r * v[j];
    np = l2_norm(pushed);
    if (nu < 1e-6 || nv < 1e-6 || np < 1e-6) continue;
    REQUIRE(cosine_angle(pushed, v) >= cosine_angle(u, v) - 1e-12);
    ++tested;
  }
}

TEST_CASE("rule spec grammar", "[update]") {
  const UpdateRule r1 = parse_rule_spec("standard:r=0.05");
  REQUIRE(r1.variant == UpdateVariant::standard);
  REQUIRE(r1.rate == RateSpec::constant(0.05));

  const UpdateRule r2 = parse_rule_spec("general:r=0.05,alpha=power:2");
  REQUIRE(r2.variant == UpdateVariant::generalized);
  REQUIRE(r2.alpha == AlphaSpec::power(2.0));

  const UpdateRule r3 = parse_rule_spec("general:r=damped:0.4,alpha=deadzone:0.1");
  REQUIRE(r3.rate == RateSpec::damped(0.4));
  REQUIRE(r3.alpha == AlphaSpec::deadzone(0.1));

  const UpdateRule r4 = parse_rule_spec("convex:r=0.5,target=softmax:1.0");
  REQUIRE(r4.variant == UpdateVariant::convex_target);
  REQUIRE(r4.target == TargetSpec::softmax(1.0));

  const UpdateRule r5 = parse_rule_spec("convex:r=2,target=uniform");
  REQUIRE(r5.target.kind == TargetSpec::Kind::constant);

  REQUIRE_THROWS_AS(parse_rule_spec("bogus:r=1"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rule_spec("standard:r=-1"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rule_spec("standard:alpha=power:2"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rule_spec("standard:r=0.1,alpha=power:2"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rule_spec("general:r=0.1,alpha=log"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rule_spec("standard"), std::invalid_argument);
}
