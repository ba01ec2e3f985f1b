#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nashtrace/strategy.hpp"

namespace nashtrace {

/// 2-D or 3-D coordinates for a projected trajectory (z is zero when dims=2).
struct PlanarPath {
  std::vector<std::array<double, 3>> points;
  int dims = 2;
};

/// Exact planar coordinates for a 3-simplex point: the row vector times
///   [ 0      0     ]
///   [ √2/2   √6/2  ]
///   [ √2     0     ]
/// The three vertices map to the corners of an equilateral triangle with
/// side √2.
inline std::array<double, 2> simplex3_to_plane(const MixedStrategy& s) {
  if (s.size() != 3) {
    throw std::invalid_argument(
        "simplex3_to_plane: strategy must have exactly 3 weights");
  }
  static const double kX1 = std::sqrt(2.0) / 2.0;
  static const double kY1 = std::sqrt(6.0) / 2.0;
  static const double kX2 = std::sqrt(2.0);
  return {s[1] * kX1 + s[2] * kX2, s[1] * kY1};
}

inline PlanarPath project_barycentric(const std::vector<MixedStrategy>& path) {
  PlanarPath out;
  out.dims = 2;
  out.points.reserve(path.size());
  for (const MixedStrategy& s : path) {
    auto [x, y] = simplex3_to_plane(s);
    out.points.push_back({x, y, 0.0});
  }
  return out;
}

struct PcaResult {
  PlanarPath path;
  double captured_variance_ratio = 0.0;
  bool degenerate = false;  // all input points identical
};

namespace detail {

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Eigenpairs are
// returned sorted by descending eigenvalue (ties keep lower original index),
// eigenvectors as columns of v.
inline void jacobi_eigen(std::vector<std::vector<double>>& a,
                         std::vector<std::vector<double>>& v,
                         std::vector<double>& eigenvalues) {
  const std::size_t d = a.size();
  v.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(a[i][j]));
  }
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) off += a[p][q] * a[p][q];
    }
    if (std::sqrt(off) < 1e-14 * scale) break;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  eigenvalues.resize(d);
  for (std::size_t i = 0; i < d; ++i) eigenvalues[i] = a[i][i];
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return eigenvalues[x] > eigenvalues[y];
  });
  std::vector<double> ev(d);
  std::vector<std::vector<double>> vv(d, std::vector<double>(d));
  for (std::size_t c = 0; c < d; ++c) {
    ev[c] = eigenvalues[order[c]];
    for (std::size_t r = 0; r < d; ++r) vv[r][c] = v[r][order[c]];
  }
  eigenvalues = std::move(ev);
  v = std::move(vv);
}

}  // namespace detail

/// Projects a trajectory of d-dimensional points onto its top out_dim
/// principal directions. Points are centered; directions come from a cyclic
/// Jacobi eigendecomposition of the sample covariance; each direction's sign
/// is fixed so its largest-magnitude loading is positive. Identical input
/// points yield an all-zero path with the degenerate flag set.
inline PcaResult pca_project(const std::vector<std::vector<double>>& points,
                             int out_dim) {
  if (out_dim != 2 && out_dim != 3) {
    throw std::invalid_argument("pca_project: out_dim must be 2 or 3");
  }
  if (points.size() < 2) {
    throw std::invalid_argument("pca_project: need at least 2 points");
  }
  const std::size_t d = points[0].size();
  if (d < static_cast<std::size_t>(out_dim)) {
    throw std::invalid_argument(
        "pca_project: point dimension below output dimension");
  }
  for (const auto& p : points) {
    if (p.size() != d) {
      throw std::invalid_argument("pca_project: ragged input points");
    }
  }

  const std::size_t n = points.size();
  std::vector<double> mean(d, 0.0);
  for (const auto& p : points) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += p[j];
  }
  for (double& m : mean) m /= static_cast<double>(n);

  std::vector<std::vector<double>> centered(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) centered[i][j] = points[i][j] - mean[j];
  }

  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (const auto& p : centered) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = r; c < d; ++c) cov[r][c] += p[r] * p[c];
    }
  }
  const double norm = 1.0 / static_cast<double>(n - 1);
  double total_variance = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      cov[r][c] *= norm;
      cov[c][r] = cov[r][c];
    }
    total_variance += cov[r][r];
  }

  PcaResult result;
  result.path.dims = out_dim;
  result.path.points.assign(n, {0.0, 0.0, 0.0});
  if (total_variance <= 0.0) {
    result.degenerate = true;
    return result;
  }

  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> eigenvalues;
  detail::jacobi_eigen(cov, eigenvectors, eigenvalues);

  double captured = 0.0;
  for (int c = 0; c < out_dim; ++c) {
    captured += std::max(0.0, eigenvalues[c]);
    // sign convention: largest-magnitude loading positive
    std::size_t arg = 0;
    for (std::size_t r = 1; r < d; ++r) {
      if (std::abs(eigenvectors[r][c]) > std::abs(eigenvectors[arg][c])) {
        arg = r;
      }
    }
    if (eigenvectors[arg][c] < 0.0) {
      for (std::size_t r = 0; r < d; ++r) eigenvectors[r][c] = -eigenvectors[r][c];
    }
  }
  result.captured_variance_ratio = captured / total_variance;

  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < out_dim; ++c) {
      double acc = 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        acc += centered[i][r] * eigenvectors[r][c];
      }
      result.path.points[i][static_cast<std::size_t>(c)] = acc;
    }
  }
  return result;
}

}  // namespace nashtrace
