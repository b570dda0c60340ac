#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sizegen/instance.hpp"
#include "sizegen/random.hpp"
#include "sizegen/selection.hpp"

namespace sizegen {

// Chosen point indices in selection order.
struct Centers {
  std::vector<Index> ids;
};

namespace detail {

// Sample an index proportionally to w over candidates with mask[i] == false;
// falls back to uniform over unmasked indices when all weights vanish.
inline Index sample_weighted(const std::vector<double>& w, const std::vector<char>& mask,
                             RandomStream& rng) {
  double total = 0.0;
  for (Index i = 0; i < w.size(); ++i)
    if (!mask[i]) total += w[i];
  if (total > 0.0) {
    const double r = rng.uniform() * total;
    double acc = 0.0;
    Index last = 0;
    bool seen = false;
    for (Index i = 0; i < w.size(); ++i) {
      if (mask[i]) continue;
      last = i;
      seen = true;
      acc += w[i];
      if (r < acc) return i;
    }
    if (seen) return last;  // guards against accumulated round-off
  }
  // all remaining weights are zero: uniform over the remaining points
  std::vector<Index> open;
  for (Index i = 0; i < mask.size(); ++i)
    if (!mask[i]) open.push_back(i);
  if (open.empty()) throw std::logic_error("sample_weighted: no candidates left");
  return open[rng.uniform_int(open.size())];
}

}  // namespace detail

// Sequential center selection: the first center is uniform, each subsequent
// one is drawn with probability proportional to f(distance to the nearest
// chosen center). gonzalez deterministically takes the farthest point (ties
// to the lowest index). Costs O(nk) distance queries.
inline Centers generic_seeding(const DistanceOracle& d, Index k, const SelectionFn& f,
                               RandomStream& rng) {
  const Index n = d.size();
  if (k < 1 || k > n) throw std::invalid_argument("generic_seeding: need 1 <= k <= n");
  Centers c;
  c.ids.reserve(k);
  std::vector<char> is_center(n, 0);
  std::vector<double> dmin(n, std::numeric_limits<double>::infinity());

  const Index first = static_cast<Index>(rng.uniform_int(n));
  c.ids.push_back(first);
  is_center[first] = 1;

  std::vector<double> w(n, 0.0);
  for (Index round = 1; round < k; ++round) {
    const Index latest = c.ids.back();
    for (Index i = 0; i < n; ++i) dmin[i] = std::min(dmin[i], d(i, latest));

    Index next;
    if (f.kind == SelectionKind::gonzalez) {
      next = n;  // sentinel
      double best = -1.0;
      for (Index i = 0; i < n; ++i)
        if (!is_center[i] && dmin[i] > best) best = dmin[i], next = i;
      if (next == n) throw std::logic_error("generic_seeding: no candidate left");
    } else {
      for (Index i = 0; i < n; ++i) w[i] = is_center[i] ? 0.0 : f.weight(dmin[i]);
      next = detail::sample_weighted(w, is_center, rng);
    }
    c.ids.push_back(next);
    is_center[next] = 1;
  }
  return c;
}

namespace detail {

// Acceptance ratio f(d_y)/f(d_x) with the zero-weight convention: a zero
// current weight against a positive fresh weight always accepts, two zeros
// keep the current candidate. gonzalez uses the indicator's limit: accept
// exactly when the fresh sample is at least as far.
inline bool mcmc_accept(const SelectionFn& f, double d_x, double d_y, double u) {
  if (f.kind == SelectionKind::gonzalez) return d_y >= d_x;
  if (f.kind == SelectionKind::uniform) return true;  // ratio 1 > u in [0,1)
  const double fx = f.weight(d_x);
  const double fy = f.weight(d_y);
  if (fx == 0.0) return fy > 0.0;
  return fy / fx > u;
}

}  // namespace detail

// Markov-chain center selection over a pre-drawn sample of m*k point indices
// (uniform with replacement, drawn by the caller). The sample is consumed in
// order: one candidate plus m-1 fresh proposals per round. Costs O(mk^2)
// distance queries and never touches points outside the sample.
inline Centers approx_seeding(const DistanceOracle& d, std::span<const Index> sample, Index k,
                              Index m, const SelectionFn& f, RandomStream& rng) {
  if (k < 1 || m < 1) throw std::invalid_argument("approx_seeding: need k >= 1 and m >= 1");
  const std::size_t need = static_cast<std::size_t>(m) * k;
  if (sample.size() < need) throw std::invalid_argument("approx_seeding: sample shorter than m*k");

  auto dist_to_centers = [&](Index p, const std::vector<Index>& centers) {
    double best = std::numeric_limits<double>::infinity();
    for (Index c : centers) best = std::min(best, d(p, c));
    return best;
  };

  Centers c;
  c.ids.reserve(k);
  c.ids.push_back(sample[rng.uniform_int(need)]);

  std::size_t cursor = 0;
  for (Index i = 1; i < k; ++i) {
    Index x = sample[cursor++];
    double d_x = dist_to_centers(x, c.ids);
    for (Index j = 1; j < m; ++j) {
      const Index y = sample[cursor++];
      const double d_y = dist_to_centers(y, c.ids);
      const double u = rng.uniform();
      if (detail::mcmc_accept(f, d_x, d_y, u)) {
        x = y;
        d_x = d_y;
      }
    }
    c.ids.push_back(x);
  }
  return c;
}

// Assign each point to its nearest center; equidistant points go to the
// earliest center in selection order. Labels are center positions in C.
inline Clustering voronoi_partition(const DistanceOracle& d, const Centers& c,
                                    std::span<const Index> points) {
  if (c.ids.empty()) throw std::invalid_argument("voronoi_partition: no centers");
  Clustering out;
  out.k = static_cast<Index>(c.ids.size());
  out.points.assign(points.begin(), points.end());
  out.labels.reserve(points.size());
  for (Index p : points) {
    Index best = 0;
    double best_d = d(p, c.ids[0]);
    for (Index j = 1; j < c.ids.size(); ++j) {
      const double dj = d(p, c.ids[j]);
      if (dj < best_d) {
        best_d = dj;
        best = j;
      }
    }
    out.labels.push_back(best);
  }
  return out;
}

inline Clustering voronoi_partition(const DistanceOracle& d, const Centers& c) {
  std::vector<Index> all(d.size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  return voronoi_partition(d, c, all);
}

// max over points of the distance to the nearest center.
inline double k_centers_objective(const DistanceOracle& d, const Centers& c) {
  if (c.ids.empty()) throw std::invalid_argument("k_centers_objective: no centers");
  double worst = 0.0;
  for (Index p = 0; p < d.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (Index cid : c.ids) best = std::min(best, d(p, cid));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace sizegen
