#pragma once

#include <span>
#include <vector>

#include "sizegen/graph.hpp"
#include "sizegen/random.hpp"

namespace sizegen {

// Visit vertices in the given order and put each on the side with the larger
// crossing weight among already-placed neighbors; ties go to +1. O(|E|).
inline Cut greedy_with_order(const Graph& g, std::span<const Index> order) {
  Cut z(g.n, 0);
  const auto adj = g.adjacency_list();
  for (Index v : order) {
    double to_plus = 0.0, to_minus = 0.0;
    for (const auto& [u, w] : adj[v]) {
      if (z[u] > 0)
        to_plus += w;
      else if (z[u] < 0)
        to_minus += w;
    }
    // placing on +1 cuts to_minus, placing on -1 cuts to_plus
    z[v] = to_minus >= to_plus ? 1 : -1;
  }
  return z;
}

inline Cut greedy(const Graph& g, RandomStream& rng) {
  std::vector<Index> order(g.n);
  for (Index i = 0; i < g.n; ++i) order[i] = i;
  for (Index i = 0; i + 1 < g.n; ++i) {
    const Index j = i + static_cast<Index>(rng.uniform_int(g.n - i));
    std::swap(order[i], order[j]);
  }
  return greedy_with_order(g, order);
}

}  // namespace sizegen
