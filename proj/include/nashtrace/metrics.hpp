#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nashtrace/metrics_fwd.hpp"
#include "nashtrace/strategy.hpp"

namespace nashtrace {

enum class MetricKind { sum, max };

inline double profile_distance(const StrategyProfile& x,
                               const StrategyProfile& y, MetricKind kind) {
  return kind == MetricKind::sum ? profile_distance_sum(x, y)
                                 : profile_distance_max(x, y);
}

/// Successive-step distances and their ratios for a profile sequence of
/// length L:
///   d_dot[t] = d(S_t, S_{t+1})            for t = 0..L-2
///   q_dot[t] = d_dot[t+1] / d_dot[t]      for t = 0..L-3
/// q_dot is NaN wherever the dividing distance is zero (a reached fixed
/// point has no meaningful contraction ratio).
struct MetricTrace {
  std::vector<double> d_dot;
  std::vector<double> q_dot;
  MetricKind kind = MetricKind::sum;
};

inline MetricTrace metric_trace(const std::vector<StrategyProfile>& profiles,
                                MetricKind kind) {
  if (profiles.size() < 3) {
    throw std::invalid_argument("metric_trace: need at least 3 profiles");
  }
  MetricTrace mt;
  mt.kind = kind;
  mt.d_dot.reserve(profiles.size() - 1);
  for (std::size_t t = 0; t + 1 < profiles.size(); ++t) {
    mt.d_dot.push_back(profile_distance(profiles[t], profiles[t + 1], kind));
  }
  mt.q_dot.reserve(mt.d_dot.size() - 1);
  for (std::size_t t = 0; t + 1 < mt.d_dot.size(); ++t) {
    mt.q_dot.push_back(mt.d_dot[t] > 0.0
                           ? mt.d_dot[t + 1] / mt.d_dot[t]
                           : std::numeric_limits<double>::quiet_NaN());
  }
  return mt;
}

/// Dominant period of a scalar series, if any.
///
/// The series is linearly detrended and mean-removed, then the normalized
/// autocorrelation is scanned over lags 1..n/2. Returns the lag of the
/// highest local peak whose correlation exceeds 0.5, or nullopt when no
/// such peak exists.
inline std::optional<std::size_t> periodicity_estimate(
    const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 16) {
    throw std::invalid_argument("periodicity_estimate: need >= 16 samples");
  }

  // least-squares line fit over t = 0..n-1
  double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    st += static_cast<double>(t);
    sx += series[t];
    stt += static_cast<double>(t) * static_cast<double>(t);
    stx += static_cast<double>(t) * series[t];
  }
  const double denom = n * stt - st * st;
  const double slope = denom != 0.0 ? (n * stx - st * sx) / denom : 0.0;
  const double intercept = (sx - slope * st) / n;

  std::vector<double> res(n);
  double mean = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    res[t] = series[t] - (intercept + slope * static_cast<double>(t));
    mean += res[t];
  }
  mean /= n;
  double var = 0.0;
  for (double& r : res) {
    r -= mean;
    var += r * r;
  }
  if (var <= 0.0) return std::nullopt;  // constant series

  const std::size_t max_lag = n / 2;
  std::vector<double> corr(max_lag + 1, 0.0);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) c += res[t] * res[t + lag];
    corr[lag] = c / var;
  }

  std::optional<std::size_t> best;
  double best_corr = 0.5;
  for (std::size_t lag = 2; lag + 1 <= max_lag; ++lag) {
    if (corr[lag] >= corr[lag - 1] && corr[lag] >= corr[lag + 1] &&
        corr[lag] > best_corr) {
      best_corr = corr[lag];
      best = lag;
    }
  }
  return best;
}

}  // namespace nashtrace
