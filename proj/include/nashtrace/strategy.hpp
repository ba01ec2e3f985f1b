#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashtrace {

/// A point on a probability simplex: nonnegative weights summing to one.
///
/// Construction renormalizes. Inputs are rejected when a weight is below
/// -1e-9 or the sum deviates from one by more than 1e-6; anything closer is
/// treated as float drift and repaired (tiny negatives clamp to zero).
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> weights) {
    if (weights.size() < 1) {
      throw std::invalid_argument("MixedStrategy: weight vector is empty");
    }
    double sum = 0.0;
    for (double w : weights) {
      if (!std::isfinite(w)) {
        throw std::invalid_argument("MixedStrategy: non-finite weight");
      }
      if (w < -1e-9) {
        throw std::invalid_argument("MixedStrategy: negative weight " +
                                    std::to_string(w));
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw std::invalid_argument("MixedStrategy: weights sum to " +
                                  std::to_string(sum) + ", expected 1");
    }
    for (double& w : weights) {
      if (w < 0.0) w = 0.0;
    }
    weights_ = std::move(weights);
    renormalize();
  }

  /// Rescales an arbitrary nonnegative vector onto the simplex.
  /// Unlike the constructor the sum may be any positive finite value.
  static MixedStrategy normalized(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
      if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument(
            "MixedStrategy::normalized: weights must be finite and >= 0");
      }
      sum += w;
    }
    if (!(sum > 0.0)) {
      throw std::invalid_argument(
          "MixedStrategy::normalized: weight sum must be positive");
    }
    MixedStrategy s;
    s.weights_ = std::move(weights);
    for (double& w : s.weights_) w /= sum;
    return s;
  }

  static MixedStrategy uniform(std::size_t size) {
    if (size < 1) throw std::invalid_argument("uniform: size must be >= 1");
    return normalized(std::vector<double>(size, 1.0));
  }

  /// Pure strategy: all mass on one vertex.
  static MixedStrategy vertex(std::size_t size, std::size_t index) {
    if (index >= size) {
      throw std::invalid_argument("vertex: index out of range");
    }
    std::vector<double> w(size, 0.0);
    w[index] = 1.0;
    MixedStrategy s;
    s.weights_ = std::move(w);
    return s;
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

  bool operator==(const MixedStrategy& other) const = default;

 private:
  MixedStrategy() = default;

  void renormalize() {
    double sum = 0.0;
    for (double w : weights_) sum += w;
    for (double& w : weights_) w /= sum;
  }

  std::vector<double> weights_;
};

/// One mixed strategy per player.
class StrategyProfile {
 public:
  explicit StrategyProfile(std::vector<MixedStrategy> strategies)
      : strategies_(std::move(strategies)) {
    if (strategies_.empty()) {
      throw std::invalid_argument("StrategyProfile: no strategies");
    }
  }

  std::size_t num_players() const { return strategies_.size(); }
  const MixedStrategy& operator[](std::size_t i) const {
    return strategies_[i];
  }
  const std::vector<MixedStrategy>& strategies() const { return strategies_; }

  auto begin() const { return strategies_.begin(); }
  auto end() const { return strategies_.end(); }

  bool operator==(const StrategyProfile& other) const = default;

 private:
  std::vector<MixedStrategy> strategies_;
};

inline double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double l2_distance(const MixedStrategy& a, const MixedStrategy& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l2_distance: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace nashtrace
