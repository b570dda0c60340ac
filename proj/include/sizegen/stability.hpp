#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sizegen/instance.hpp"
#include "sizegen/random.hpp"
#include "sizegen/selection.hpp"
#include "sizegen/single_linkage.hpp"

namespace sizegen {

struct ZetaReport {
  double value = 0.0;
  bool exact = false;
  // witness for the seeding parameter: the maximizing (Q, x)
  std::vector<Index> witness_q;
  Index witness_x = 0;
  // witness for the single-linkage parameter: cluster pair and cluster index
  Index witness_i = 0, witness_j = 0, witness_t = 0;
};

namespace detail {

// n * max_x f(d(x;Q)) / sum_y f(d(y;Q)); negative when every weight is zero.
inline double zeta_ratio(const ClusteringInstance& x, std::span<const Index> q,
                         const SelectionFn& f, Index* argmax_x) {
  const Index n = x.size();
  std::vector<double> dmin(n, std::numeric_limits<double>::infinity());
  for (Index i = 0; i < n; ++i)
    for (Index c : q) dmin[i] = std::min(dmin[i], x.distance(i, c));

  std::vector<double> w(n);
  if (f.kind == SelectionKind::gonzalez) {
    double far = 0.0;
    for (Index i = 0; i < n; ++i) far = std::max(far, dmin[i]);
    for (Index i = 0; i < n; ++i) w[i] = dmin[i] == far ? 1.0 : 0.0;
  } else {
    for (Index i = 0; i < n; ++i) w[i] = f.weight(dmin[i]);
  }
  double total = 0.0, best = 0.0;
  Index best_i = 0;
  for (Index i = 0; i < n; ++i) {
    total += w[i];
    if (w[i] > best) {
      best = w[i];
      best_i = i;
    }
  }
  if (total == 0.0) return -1.0;
  if (argmax_x) *argmax_x = best_i;
  return n * best / total;
}

inline std::uint64_t subset_count_capped(Index n, Index k, std::uint64_t cap) {
  std::uint64_t total = 0;
  double binom = 1.0;
  for (Index j = 1; j <= k && j <= n; ++j) {
    binom = binom * (n - j + 1) / j;
    if (binom > static_cast<double>(cap)) return cap + 1;
    total += static_cast<std::uint64_t>(binom);
    if (total > cap) return cap + 1;
  }
  return total;
}

template <typename Fn>
inline void for_each_subset(Index n, Index max_size, Fn&& fn) {
  std::vector<Index> q;
  auto rec = [&](auto&& self, Index start) -> void {
    if (!q.empty()) fn(std::span<const Index>(q));
    if (q.size() == max_size) return;
    for (Index i = start; i < n; ++i) {
      q.push_back(i);
      self(self, i + 1);
      q.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// Smoothness of the seeding sampling distribution: the maximum over center
// sets Q (1 <= |Q| <= k) and points x of n*f(d(x;Q)) / sum_y f(d(y;Q)). Full
// enumeration when the subset count fits the budget; otherwise Monte Carlo
// starts refined by single-element-swap hill climbing, reported as a lower
// bound with exact=false.
inline ZetaReport zeta_kf(const ClusteringInstance& x, Index k, const SelectionFn& f,
                          std::uint64_t budget, RandomStream& rng) {
  if (k < 1) throw std::invalid_argument("zeta_kf: need k >= 1");
  const Index n = x.size();
  ZetaReport rep;
  rep.value = -1.0;

  auto consider = [&](std::span<const Index> q) {
    Index ax = 0;
    const double v = detail::zeta_ratio(x, q, f, &ax);
    if (v > rep.value) {
      rep.value = v;
      rep.witness_q.assign(q.begin(), q.end());
      rep.witness_x = ax;
    }
  };

  if (detail::subset_count_capped(n, std::min(k, n), budget) <= budget) {
    detail::for_each_subset(n, std::min(k, n), consider);
    rep.exact = true;
  } else {
    rep.exact = false;
    std::vector<char> in_q(n, 0);
    for (std::uint64_t trial = 0; trial < budget; ++trial) {
      const Index sz = 1 + static_cast<Index>(rng.uniform_int(std::min<Index>(k, n)));
      std::vector<Index> q;
      std::fill(in_q.begin(), in_q.end(), 0);
      while (q.size() < sz) {
        const Index cand = static_cast<Index>(rng.uniform_int(n));
        if (!in_q[cand]) {
          in_q[cand] = 1;
          q.push_back(cand);
        }
      }
      consider(q);
    }
    // first-improvement swaps from the best sampled Q
    bool improved = !rep.witness_q.empty();
    while (improved) {
      improved = false;
      std::vector<Index> q = rep.witness_q;
      for (std::size_t slot = 0; slot < q.size() && !improved; ++slot) {
        const Index old = q[slot];
        for (Index cand = 0; cand < n && !improved; ++cand) {
          bool member = false;
          for (Index e : q) member |= (e == cand);
          if (member) continue;
          q[slot] = cand;
          Index ax = 0;
          const double v = detail::zeta_ratio(x, q, f, &ax);
          if (v > rep.value) {
            rep.value = v;
            rep.witness_q = q;
            rep.witness_x = ax;
            improved = true;
          }
        }
        q[slot] = old;
      }
    }
  }
  if (rep.value < 0.0)
    throw std::domain_error("zeta_kf: selection weights are identically zero");
  return rep;
}

// Cluster-separation ratio of the single-linkage k-clustering:
//   n * ceil((min_{i<j} d_B(C_i u C_j) - max_t d_B(C_t)) / max_t d_B(C_t))^-1.
// When every cluster is a coincident-point group (max_t d_B = 0) the instance
// is maximally stable and 0 is returned. A nonpositive numerator can only
// arise when the k-snapshot falls inside an equal-distance merge batch; the
// value is then clamped to n, the formula's supremum.
inline ZetaReport zeta_sl(const ClusteringInstance& x, Index k) {
  const Index n = x.size();
  if (k < 2) throw std::invalid_argument("zeta_sl: need k >= 2");
  if (k > n) throw std::invalid_argument("zeta_sl: k exceeds instance size");

  auto [clusters, trace] = single_linkage(x, k);
  std::vector<std::vector<Index>> members(k);
  for (std::size_t i = 0; i < clusters.points.size(); ++i)
    members[clusters.labels[i]].push_back(clusters.points[i]);

  MinMaxDistance bn(x);
  ZetaReport rep;
  rep.exact = true;

  double within = -1.0;
  for (Index t = 0; t < k; ++t) {
    const double b = bn.bottleneck_of_set(members[t]);
    if (b > within) {
      within = b;
      rep.witness_t = t;
    }
  }
  double between = std::numeric_limits<double>::infinity();
  std::vector<Index> pair_set;
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j) {
      pair_set = members[i];
      pair_set.insert(pair_set.end(), members[j].begin(), members[j].end());
      const double b = bn.bottleneck_of_set(pair_set);
      if (b < between) {
        between = b;
        rep.witness_i = i;
        rep.witness_j = j;
      }
    }

  if (within == 0.0) {
    rep.value = 0.0;  // infinitely separated; treated as maximally stable
    return rep;
  }
  const double ratio = (between - within) / within;
  const double c = std::ceil(ratio);
  rep.value = c >= 1.0 ? static_cast<double>(n) / c : static_cast<double>(n);
  return rep;
}

}  // namespace sizegen
