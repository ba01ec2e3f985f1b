#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashtrace/game.hpp"
#include "nashtrace/strategy.hpp"

namespace nashtrace {

// ---------------------------------------------------------------------------
// Update-rule specification
// ---------------------------------------------------------------------------

/// Componentwise transform applied to the regret vector before the update.
/// Every preset maps 0 to 0 and nonnegatives to nonnegatives, which is what
/// keeps zero-regret profiles fixed under the generalized update.
struct AlphaSpec {
  enum class Kind { identity, power, deadzone };
  Kind kind = Kind::identity;
  double param = 1.0;  // exponent for power, cutoff for deadzone

  static AlphaSpec identity() { return {Kind::identity, 1.0}; }
  static AlphaSpec power(double exponent) {
    if (!(exponent > 0.0)) {
      throw std::invalid_argument("alpha power: exponent must be > 0");
    }
    return {Kind::power, exponent};
  }
  static AlphaSpec deadzone(double cutoff) {
    if (!(cutoff >= 0.0)) {
      throw std::invalid_argument("alpha deadzone: cutoff must be >= 0");
    }
    return {Kind::deadzone, cutoff};
  }

  double operator()(double x) const {
    switch (kind) {
      case Kind::identity:
        return x;
      case Kind::power:
        return std::pow(x, param);
      case Kind::deadzone:
        return std::max(0.0, x - param);
    }
    return x;
  }

  bool operator==(const AlphaSpec&) const = default;
};

/// Adjustment rate: a positive constant, or damped by the profile's overall
/// regret sum, r(S) = c / (1 + sum_i |lambda_i|).
struct RateSpec {
  enum class Kind { constant, damped };
  Kind kind = Kind::constant;
  double coefficient = 0.1;

  static RateSpec constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("rate: must be > 0");
    return {Kind::constant, c};
  }
  static RateSpec damped(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("rate: must be > 0");
    return {Kind::damped, c};
  }

  double value(double profile_regret_sum) const {
    return kind == Kind::constant ? coefficient
                                  : coefficient / (1.0 + profile_regret_sum);
  }

  bool operator==(const RateSpec&) const = default;
};

/// Target map for the convex-combination update: sends the player's current
/// situation to a point of its own simplex.
struct TargetSpec {
  enum class Kind { softmax, constant };
  Kind kind = Kind::softmax;
  double temperature = 1.0;           // softmax only
  std::vector<double> fixed_weights;  // constant only; empty means uniform

  static TargetSpec softmax(double temperature) {
    if (!(temperature > 0.0)) {
      throw std::invalid_argument("target softmax: temperature must be > 0");
    }
    TargetSpec t;
    t.kind = Kind::softmax;
    t.temperature = temperature;
    return t;
  }
  static TargetSpec constant(std::vector<double> weights) {
    TargetSpec t;
    t.kind = Kind::constant;
    t.fixed_weights = std::move(weights);
    return t;
  }

  MixedStrategy resolve(const std::vector<double>& vertex_payoffs) const {
    if (kind == Kind::constant) {
      if (fixed_weights.empty()) {
        return MixedStrategy::uniform(vertex_payoffs.size());
      }
      return MixedStrategy(fixed_weights);
    }
    double hi = vertex_payoffs[0];
    for (double v : vertex_payoffs) hi = std::max(hi, v);
    std::vector<double> w(vertex_payoffs.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] = std::exp((vertex_payoffs[j] - hi) / temperature);
    }
    return MixedStrategy::normalized(std::move(w));
  }

  bool operator==(const TargetSpec&) const = default;
};

enum class UpdateVariant { standard, generalized, convex_target };

struct UpdateRule {
  UpdateVariant variant = UpdateVariant::standard;
  RateSpec rate = RateSpec{RateSpec::Kind::constant, 0.1};
  AlphaSpec alpha = AlphaSpec{};   // generalized only
  TargetSpec target = TargetSpec{};  // convex_target only

  static UpdateRule standard(double r) {
    UpdateRule rule;
    rule.variant = UpdateVariant::standard;
    rule.rate = RateSpec::constant(r);
    return rule;
  }
  static UpdateRule generalized(RateSpec rate, AlphaSpec alpha) {
    UpdateRule rule;
    rule.variant = UpdateVariant::generalized;
    rule.rate = rate;
    rule.alpha = alpha;
    return rule;
  }
  static UpdateRule convex(double r, TargetSpec target) {
    UpdateRule rule;
    rule.variant = UpdateVariant::convex_target;
    rule.rate = RateSpec::constant(r);
    rule.target = std::move(target);
    return rule;
  }

  bool operator==(const UpdateRule&) const = default;
};

// ---------------------------------------------------------------------------
// Updates
// ---------------------------------------------------------------------------

namespace detail {

// Shared core of the standard and generalized updates:
//   (s + r * lam) / (1 + r * |lam|), renormalized against float drift.
// |lam| == 0 returns the strategy bit-identically, so exact zero-regret
// profiles are exact fixed points.
inline MixedStrategy push_toward(const MixedStrategy& strategy,
                                 const std::vector<double>& lam, double rate) {
  double total = 0.0;
  for (double x : lam) total += x;
  if (total == 0.0) return strategy;
  const double denom = 1.0 + rate * total;
  std::vector<double> w(strategy.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = (strategy[j] + rate * lam[j]) / denom;
  }
  return MixedStrategy::normalized(std::move(w));
}

inline void check_regret(const MixedStrategy& strategy,
                         const std::vector<double>& regret) {
  if (regret.size() != strategy.size()) {
    throw std::invalid_argument("regret length does not match strategy");
  }
  for (double x : regret) {
    if (!(x >= 0.0)) {
      throw std::invalid_argument("regret components must be >= 0");
    }
  }
}

}  // namespace detail

/// One regret-matching step for a single player:
///   s' = (s + r * lambda) / (1 + r * |lambda|).
/// Zero regret returns the strategy unchanged.
inline MixedStrategy psi_update(const MixedStrategy& strategy,
                                const std::vector<double>& regret,
                                double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("psi_update: rate must be > 0");
  }
  detail::check_regret(strategy, regret);
  return detail::push_toward(strategy, regret, rate);
}

/// Generalized update: the regret vector passes through the rule's alpha
/// transform and the rate may depend on the profile's overall regret sum.
/// With the identity alpha and a constant rate this is psi_update exactly.
inline MixedStrategy psi_update_general(const MixedStrategy& strategy,
                                        const std::vector<double>& regret,
                                        const UpdateRule& rule,
                                        double profile_regret_sum) {
  if (rule.variant != UpdateVariant::generalized &&
      rule.variant != UpdateVariant::standard) {
    throw std::invalid_argument(
        "psi_update_general: rule must be standard or generalized");
  }
  detail::check_regret(strategy, regret);
  const double rate = rule.rate.value(profile_regret_sum);
  if (!(rate > 0.0)) {
    throw std::invalid_argument("psi_update_general: rate must be > 0");
  }
  if (rule.variant == UpdateVariant::standard ||
      rule.alpha == AlphaSpec::identity()) {
    return detail::push_toward(strategy, regret, rate);
  }
  std::vector<double> lam(regret.size());
  for (std::size_t j = 0; j < lam.size(); ++j) lam[j] = rule.alpha(regret[j]);
  return detail::push_toward(strategy, lam, rate);
}

/// Convex-combination update toward a target state:
///   s' = s / (1 + r) + target * r / (1 + r).
/// The L2 distance to the target shrinks by exactly 1 / (1 + r).
inline MixedStrategy convex_update(const MixedStrategy& state,
                                   const MixedStrategy& target, double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("convex_update: rate must be > 0");
  }
  if (state.size() != target.size()) {
    throw std::invalid_argument("convex_update: length mismatch");
  }
  const double denom = 1.0 + rate;
  std::vector<double> w(state.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = (state[j] + rate * target[j]) / denom;
  }
  return MixedStrategy::normalized(std::move(w));
}

/// cos of the angle between two nonzero vectors, clamped to [-1, 1].
inline double cosine_angle(const std::vector<double>& u,
                           const std::vector<double>& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine_angle: length mismatch");
  }
  const double nu = l2_norm(u), nv = l2_norm(v);
  if (nu == 0.0 || nv == 0.0) {
    throw std::invalid_argument("cosine_angle: zero vector");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Rule-spec grammar
// ---------------------------------------------------------------------------
//
//   "standard:r=0.05"
//   "general:r=0.05,alpha=power:2"          (alpha: identity | power:K | deadzone:C)
//   "general:r=damped:0.05,alpha=identity"  (rate: constant unless "damped:C")
//   "convex:r=0.5,target=softmax:1.0"       (target: softmax:TAU | uniform)

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline double parse_positive(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("rule spec: bad " + what + " \"" + text + "\"");
  }
  if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("rule spec: bad " + what + " \"" + text + "\"");
  }
  return v;
}

inline RateSpec parse_rate(const std::string& text) {
  if (text.rfind("damped:", 0) == 0) {
    return RateSpec::damped(parse_positive(text.substr(7), "damped rate"));
  }
  return RateSpec::constant(parse_positive(text, "rate"));
}

inline AlphaSpec parse_alpha(const std::string& text) {
  if (text == "identity") return AlphaSpec::identity();
  if (text.rfind("power:", 0) == 0) {
    return AlphaSpec::power(parse_positive(text.substr(6), "alpha exponent"));
  }
  if (text.rfind("deadzone:", 0) == 0) {
    std::size_t used = 0;
    double c = std::stod(text.substr(9), &used);
    if (used != text.size() - 9 || !(c >= 0.0)) {
      throw std::invalid_argument("rule spec: bad deadzone cutoff");
    }
    return AlphaSpec::deadzone(c);
  }
  throw std::invalid_argument("rule spec: unknown alpha \"" + text + "\"");
}

inline TargetSpec parse_target(const std::string& text) {
  if (text == "uniform") return TargetSpec::constant({});
  if (text.rfind("softmax:", 0) == 0) {
    return TargetSpec::softmax(parse_positive(text.substr(8), "temperature"));
  }
  throw std::invalid_argument("rule spec: unknown target \"" + text + "\"");
}

}  // namespace detail

inline UpdateRule parse_rule_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("rule spec: expected \"variant:key=value,...\"");
  }
  const std::string variant = spec.substr(0, colon);
  UpdateRule rule;
  if (variant == "standard") {
    rule.variant = UpdateVariant::standard;
  } else if (variant == "general") {
    rule.variant = UpdateVariant::generalized;
  } else if (variant == "convex") {
    rule.variant = UpdateVariant::convex_target;
  } else {
    throw std::invalid_argument("rule spec: unknown variant \"" + variant +
                                "\"");
  }

  bool have_rate = false;
  for (const std::string& item : detail::split(spec.substr(colon + 1), ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("rule spec: expected key=value, got \"" +
                                  item + "\"");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "r") {
      rule.rate = detail::parse_rate(value);
      have_rate = true;
    } else if (key == "alpha") {
      if (rule.variant != UpdateVariant::generalized) {
        throw std::invalid_argument("rule spec: alpha only applies to general");
      }
      rule.alpha = detail::parse_alpha(value);
    } else if (key == "target") {
      if (rule.variant != UpdateVariant::convex_target) {
        throw std::invalid_argument("rule spec: target only applies to convex");
      }
      rule.target = detail::parse_target(value);
    } else {
      throw std::invalid_argument("rule spec: unknown key \"" + key + "\"");
    }
  }
  if (!have_rate) throw std::invalid_argument("rule spec: missing r=");
  return rule;
}

}  // namespace nashtrace
