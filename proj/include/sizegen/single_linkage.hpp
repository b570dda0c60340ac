#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sizegen/instance.hpp"

namespace sizegen {

struct MergeEvent {
  Index iteration;  // outer-loop index: merges at equal distance share it
  double distance;
  Index cluster_a, cluster_b;  // smallest point index of each side, a < b
};

// Full agglomeration record down to one cluster. Iterations group merges at
// the same distance; within an iteration merges are serialized one pair at a
// time in lexicographic cluster-id order, so a snapshot exists for every
// cluster count from n to 1.
struct MergeTrace {
  Index n = 0;
  std::vector<MergeEvent> events;

  // Partition after n - k merges, labels numbered by ascending representative.
  Clustering clustering_at(Index k) const {
    if (k < 1 || k > n) throw std::invalid_argument("clustering_at: need 1 <= k <= n");
    std::vector<Index> parent(n);
    for (Index i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](Index a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (Index e = 0; e < n - k; ++e) {
      const Index ra = find(events[e].cluster_a);
      const Index rb = find(events[e].cluster_b);
      parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<Index> rep_to_label(n, n);
    Clustering out;
    out.k = k;
    out.points.resize(n);
    out.labels.resize(n);
    Index next = 0;
    for (Index i = 0; i < n; ++i) {
      out.points[i] = i;
      const Index r = find(i);
      if (rep_to_label[r] == n) rep_to_label[r] = next++;
      out.labels[i] = rep_to_label[r];
    }
    return out;
  }

  // Merge distance of the first event at or before which the whole set S sits
  // inside one cluster (the merge distance of S).
  double merge_distance_of(std::span<const Index> s) const {
    if (s.empty()) throw std::invalid_argument("merge_distance_of: empty set");
    std::vector<Index> parent(n);
    std::vector<Index> size(n, 1);
    for (Index i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](Index a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto together = [&]() {
      const Index r = find(s[0]);
      for (Index x : s)
        if (find(x) != r) return false;
      return true;
    };
    if (together()) return 0.0;
    for (const auto& e : events) {
      const Index ra = find(e.cluster_a), rb = find(e.cluster_b);
      parent[std::max(ra, rb)] = std::min(ra, rb);
      if (together()) return e.distance;
    }
    throw std::logic_error("merge_distance_of: trace incomplete");
  }
};

// Agglomerative clustering with the minimum inter-cluster distance rule
// d(A,B) = min over cross pairs. All pairwise distances are evaluated once up
// front (n(n-1)/2 oracle queries) and ties are resolved on the cached values.
inline std::pair<Clustering, MergeTrace> single_linkage(const DistanceOracle& d, Index k) {
  const Index n = d.size();
  if (k < 1 || k > n) throw std::invalid_argument("single_linkage: need 1 <= k <= n");
  constexpr double inf = std::numeric_limits<double>::infinity();

  // dist[i*n+j] is the current single-linkage distance between the active
  // clusters represented by i and j; rows collapse onto the smaller index.
  std::vector<double> dist(static_cast<std::size_t>(n) * n, inf);
  auto at = [&](Index i, Index j) -> double& { return dist[static_cast<std::size_t>(i) * n + j]; };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) at(i, j) = at(j, i) = d(i, j);

  std::vector<char> active(n, 1);
  struct Near {
    double dist;
    Index partner;
  };
  // nearest active partner with a larger representative (ties to smallest)
  std::vector<Near> near(n, {inf, n});
  auto recompute = [&](Index i) {
    near[i] = {inf, n};
    for (Index j = i + 1; j < n; ++j)
      if (active[j] && at(i, j) < near[i].dist) near[i] = {at(i, j), j};
  };
  for (Index i = 0; i < n; ++i) recompute(i);

  MergeTrace trace;
  trace.n = n;
  trace.events.reserve(n - 1);
  double last_distance = -inf;
  Index iteration = 0;

  for (Index step = 0; step + 1 < n; ++step) {
    double best = inf;
    Index a = n;
    for (Index i = 0; i < n; ++i)
      if (active[i] && near[i].dist < best) {
        best = near[i].dist;
        a = i;
      }
    const Index b = near[a].partner;

    if (best != last_distance) {
      ++iteration;
      last_distance = best;
    }
    trace.events.push_back({iteration, best, a, b});

    // fold b into a
    active[b] = 0;
    for (Index c = 0; c < n; ++c) {
      if (!active[c] || c == a) continue;
      const double m = std::min(at(a, c), at(b, c));
      at(a, c) = at(c, a) = m;
    }
    recompute(a);
    for (Index c = 0; c < a; ++c) {
      if (!active[c]) continue;
      if (near[c].partner == b) {
        recompute(c);
      } else if (at(c, a) < near[c].dist || (at(c, a) == near[c].dist && a < near[c].partner)) {
        near[c] = {at(c, a), a};
      }
    }
    for (Index c = a + 1; c < b; ++c)
      if (active[c] && near[c].partner == b) recompute(c);
  }

  return {trace.clustering_at(k), std::move(trace)};
}

inline std::pair<Clustering, MergeTrace> single_linkage(const ClusteringInstance& x, Index k) {
  DistanceOracle d(x);
  return single_linkage(d, k);
}

// Min-max (bottleneck) distances: the minimum over paths of the largest hop,
// equal to the maximum edge on the minimum-spanning-tree path. The MST is
// built once (dense Prim, O(n^2)) and queries walk it.
class MinMaxDistance {
 public:
  explicit MinMaxDistance(const ClusteringInstance& x) : n_(x.size()), adj_(x.size()) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best(n_, inf);
    std::vector<Index> from(n_, 0);
    std::vector<char> in_tree(n_, 0);
    in_tree[0] = 1;
    for (Index j = 1; j < n_; ++j) {
      best[j] = x.distance(0, j);
      from[j] = 0;
    }
    for (Index round = 1; round < n_; ++round) {
      Index pick = n_;
      double pick_d = inf;
      for (Index j = 0; j < n_; ++j)
        if (!in_tree[j] && best[j] < pick_d) {
          pick_d = best[j];
          pick = j;
        }
      in_tree[pick] = 1;
      adj_[pick].push_back({from[pick], pick_d});
      adj_[from[pick]].push_back({pick, pick_d});
      for (Index j = 0; j < n_; ++j) {
        if (in_tree[j]) continue;
        const double dj = x.distance(pick, j);
        if (dj < best[j]) {
          best[j] = dj;
          from[j] = pick;
        }
      }
    }
  }

  // Max MST edge on the path to every node, one DFS from src.
  std::vector<double> from_source(Index src) const {
    if (src >= n_) throw std::out_of_range("minmax: index out of range");
    std::vector<double> out(n_, -1.0);
    out[src] = 0.0;
    std::vector<Index> stack{src};
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : adj_[u]) {
        if (out[v] >= 0.0) continue;
        out[v] = std::max(out[u], w);
        stack.push_back(v);
      }
    }
    return out;
  }

  double operator()(Index i, Index j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("minmax: index out of range");
    if (i == j) return 0.0;
    return from_source(i)[j];
  }

  // max pairwise min-max distance within S
  double bottleneck_of_set(std::span<const Index> s) const {
    if (s.empty()) throw std::invalid_argument("bottleneck_of_set: empty set");
    double worst = 0.0;
    for (std::size_t a = 0; a + 1 < s.size(); ++a) {
      const auto row = from_source(s[a]);
      for (std::size_t b = a + 1; b < s.size(); ++b) worst = std::max(worst, row[s[b]]);
    }
    return worst;
  }

 private:
  Index n_;
  std::vector<std::vector<std::pair<Index, double>>> adj_;
};

inline double minmax_distance(const ClusteringInstance& x, Index i, Index j) {
  return MinMaxDistance(x)(i, j);
}

inline double bottleneck_of_set(const ClusteringInstance& x, std::span<const Index> s) {
  return MinMaxDistance(x).bottleneck_of_set(s);
}

}  // namespace sizegen
