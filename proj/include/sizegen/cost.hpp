#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sizegen/instance.hpp"
#include "sizegen/random.hpp"

namespace sizegen {

// Maximum-weight perfect assignment on a square matrix (Hungarian algorithm
// with potentials, O(k^3)). Returns the optimal total agreement.
inline double max_agreement(const std::vector<std::vector<double>>& agree) {
  const int n = static_cast<int>(agree.size());
  if (n == 0) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  auto cost = [&](int i, int j) { return -agree[i][j]; };

  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += agree[match[j] - 1][j - 1];
  return total;
}

// Permutation-minimized misassignment rate of a clustering against the
// ground truth, evaluated over the given (point, label) pairs. Queries the
// oracle once per listed point. Duplicate points are allowed and weigh in
// once per occurrence.
inline double clustering_cost(std::span<const Index> points, std::span<const Index> labels,
                              Index k, const GroundTruthOracle& truth) {
  if (points.size() != labels.size())
    throw std::invalid_argument("clustering_cost: points/labels length mismatch");
  if (points.empty()) throw std::invalid_argument("clustering_cost: empty clustering");
  if (k != truth.k()) throw std::invalid_argument("clustering_cost: k differs from ground truth");
  std::vector<std::vector<double>> agree(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] >= k) throw std::invalid_argument("clustering_cost: label out of range");
    agree[labels[i]][truth(points[i])] += 1.0;
  }
  const double matched = max_agreement(agree);
  return (static_cast<double>(points.size()) - matched) / static_cast<double>(points.size());
}

inline double clustering_cost(const Clustering& c, const GroundTruthOracle& truth) {
  return clustering_cost(c.points, c.labels, c.k, truth);
}

// Cost estimated on ceil(c * k / eps^2 * log(1/delta)) points sampled without
// replacement, capped at the full set (in which case the value is exact).
inline double estimate_cost_sampled(const Clustering& c, const GroundTruthOracle& truth,
                                    double eps, double delta, RandomStream& rng,
                                    double sample_constant = 1.0) {
  if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("estimate_cost_sampled: eps, delta must be in (0,1)");
  const double raw = sample_constant * c.k * std::log(1.0 / delta) / (eps * eps);
  const std::size_t want = static_cast<std::size_t>(std::ceil(raw));
  if (want >= c.points.size()) return clustering_cost(c, truth);

  std::vector<std::size_t> pos(c.points.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
  std::vector<Index> pts, lab;
  pts.reserve(want);
  lab.reserve(want);
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t j = i + rng.uniform_int(pos.size() - i);
    std::swap(pos[i], pos[j]);
    pts.push_back(c.points[pos[i]]);
    lab.push_back(c.labels[pos[i]]);
  }
  return clustering_cost(pts, lab, c.k, truth);
}

}  // namespace sizegen
