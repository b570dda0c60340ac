#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sizegen/instance.hpp"

namespace sizegen {

struct Edge {
  Index u = 0, v = 0;
  double w = 1.0;
};

// Simple weighted undirected graph as an edge list with u < v. Adjacency and
// degree views are derived on demand.
struct Graph {
  Index n = 0;
  std::vector<Edge> edges;

  Graph() = default;
  explicit Graph(Index n_) : n(n_) {}

  void add_edge(Index u, Index v, double w = 1.0) {
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u >= n || v >= n) throw std::invalid_argument("graph: vertex out of range");
    if (w <= 0.0) throw std::invalid_argument("graph: edge weight must be positive");
    if (u > v) std::swap(u, v);
    edges.push_back({u, v, w});
  }

  double total_weight() const {
    double s = 0.0;
    for (const auto& e : edges) s += e.w;
    return s;
  }

  std::vector<double> weighted_degrees() const {
    std::vector<double> deg(n, 0.0);
    for (const auto& e : edges) {
      deg[e.u] += e.w;
      deg[e.v] += e.w;
    }
    return deg;
  }

  std::vector<std::vector<std::pair<Index, double>>> adjacency_list() const {
    std::vector<std::vector<std::pair<Index, double>>> adj(n);
    for (const auto& e : edges) {
      adj[e.u].emplace_back(e.v, e.w);
      adj[e.v].emplace_back(e.u, e.w);
    }
    return adj;
  }

  static Graph complete(Index n, double w = 1.0) {
    Graph g(n);
    for (Index u = 0; u < n; ++u)
      for (Index v = u + 1; v < n; ++v) g.add_edge(u, v, w);
    return g;
  }

  static Graph cycle(Index n, double w = 1.0) {
    Graph g(n);
    if (n == 2) {
      g.add_edge(0, 1, w);
      return g;
    }
    for (Index u = 0; n >= 3 && u < n; ++u) g.add_edge(u, (u + 1) % n, w);
    return g;
  }

  static Graph path(Index n, double w = 1.0) {
    Graph g(n);
    for (Index u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1, w);
    return g;
  }
};

// +1 / -1 per vertex; 0 marks an unassigned vertex of a partial cut.
using Cut = std::vector<std::int8_t>;

// Zeros contribute z_i * z_j = 0, i.e. half of each incident edge.
inline double cut_weight_partial(const Graph& g, const Cut& z) {
  if (z.size() != g.n) throw std::invalid_argument("cut_weight: length mismatch");
  double s = 0.0;
  for (const auto& e : g.edges)
    s += e.w * (1.0 - static_cast<double>(z[e.u]) * static_cast<double>(z[e.v]));
  return 0.5 * s;
}

inline double cut_weight(const Graph& g, const Cut& z) {
  if (z.size() != g.n) throw std::invalid_argument("cut_weight: length mismatch");
  for (auto zi : z)
    if (zi == 0) throw std::invalid_argument("cut_weight: cut is incomplete");
  return cut_weight_partial(g, z);
}

inline double cut_density(const Graph& g, const Cut& z) {
  return cut_weight(g, z) / (static_cast<double>(g.n) * g.n);
}

}  // namespace sizegen
