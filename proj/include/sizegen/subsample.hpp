#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "sizegen/graph.hpp"
#include "sizegen/instance.hpp"
#include "sizegen/random.hpp"

namespace sizegen {

enum class SubsampleMode {
  points_with_replacement,
  points_without_replacement,
  vertices_bernoulli,
  vertices_uniform,
};

struct SubsampleSpec {
  SubsampleMode mode = SubsampleMode::points_without_replacement;
  double size_or_rate = 0.0;  // a count m, or the expected count t for Bernoulli
};

// m indices drawn uniformly with replacement.
inline std::vector<Index> sample_with_replacement(Index n, std::size_t m, RandomStream& rng) {
  std::vector<Index> out(m);
  for (auto& v : out) v = static_cast<Index>(rng.uniform_int(n));
  return out;
}

// Uniformly random m-subset, ascending. Partial Fisher-Yates.
inline std::vector<Index> sample_without_replacement(Index n, std::size_t m, RandomStream& rng) {
  if (m > n) throw std::invalid_argument("sample_without_replacement: m exceeds n");
  std::vector<Index> pool(n);
  for (Index i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.uniform_int(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Each of the n items kept independently with probability rate.
inline std::vector<Index> sample_bernoulli(Index n, double rate, RandomStream& rng) {
  if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("sample_bernoulli: rate outside [0,1]");
  std::vector<Index> out;
  for (Index i = 0; i < n; ++i)
    if (rng.uniform() < rate) out.push_back(i);
  return out;
}

inline std::vector<Index> subsample_points(Index n, const SubsampleSpec& spec, RandomStream& rng) {
  switch (spec.mode) {
    case SubsampleMode::points_with_replacement:
      return sample_with_replacement(n, static_cast<std::size_t>(spec.size_or_rate), rng);
    case SubsampleMode::points_without_replacement:
      return sample_without_replacement(n, static_cast<std::size_t>(spec.size_or_rate), rng);
    case SubsampleMode::vertices_bernoulli:
      return sample_bernoulli(n, spec.size_or_rate / n, rng);
    case SubsampleMode::vertices_uniform:
      return sample_without_replacement(n, static_cast<std::size_t>(spec.size_or_rate), rng);
  }
  throw std::logic_error("subsample_points: unreachable");
}

// Vertex-induced subgraph with vertices reindexed 0..|S|-1; `vertices` is the
// back-map to the parent graph.
struct InducedSubgraph {
  Graph graph;
  std::vector<Index> vertices;
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Index> vertices) {
  InducedSubgraph sub;
  sub.vertices.assign(vertices.begin(), vertices.end());
  sub.graph.n = static_cast<Index>(vertices.size());
  std::vector<Index> to_new(g.n, g.n);
  for (Index i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.n) throw std::out_of_range("induced_subgraph: vertex out of range");
    to_new[vertices[i]] = i;
  }
  for (const auto& e : g.edges)
    if (to_new[e.u] != g.n && to_new[e.v] != g.n)
      sub.graph.add_edge(to_new[e.u], to_new[e.v], e.w);
  return sub;
}

inline InducedSubgraph subsample_graph(const Graph& g, const SubsampleSpec& spec,
                                       RandomStream& rng) {
  if (spec.mode != SubsampleMode::vertices_bernoulli && spec.mode != SubsampleMode::vertices_uniform)
    throw std::invalid_argument("subsample_graph: expected a vertex mode");
  return induced_subgraph(g, subsample_points(g.n, spec, rng));
}

}  // namespace sizegen
