#pragma once

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sizegen/graph.hpp"
#include "sizegen/instance.hpp"
#include "sizegen/random.hpp"

namespace sizegen {

// Instance plus its (hidden) ground-truth labels. Construct a fresh metered
// oracle per experiment with make_oracle().
struct LabeledInstance {
  ClusteringInstance x;
  std::vector<Index> labels;
  Index k = 0;

  GroundTruthOracle make_oracle(std::optional<std::uint64_t> budget = std::nullopt) const {
    return GroundTruthOracle(labels, k, budget);
  }
};

// Two isotropic Gaussians at (0,0) and (1,1), variance 0.5 per coordinate,
// mixed 50/50; labels name the component.
inline LabeledInstance gen_gaussian_mixture(Index n, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("gaussian mixture: n must be >= 2");
  const double sigma = std::sqrt(0.5);
  std::vector<double> coords;
  coords.reserve(2 * n);
  std::vector<Index> labels(n);
  for (Index i = 0; i < n; ++i) {
    const Index comp = rng.uniform() < 0.5 ? 0u : 1u;
    const double mu = comp == 0 ? 0.0 : 1.0;
    coords.push_back(mu + sigma * rng.normal());
    coords.push_back(mu + sigma * rng.normal());
    labels[i] = comp;
  }
  return {ClusteringInstance(std::move(coords), n, 2), std::move(labels), 2};
}

// Two concentric circles, outer radius 1 and inner radius 0.2, with additive
// Gaussian coordinate noise of std 0.05; n/2 points per circle.
inline LabeledInstance gen_noisy_circles(Index n, RandomStream& rng) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("noisy circles: n must be even and >= 2");
  constexpr double kNoise = 0.05;
  constexpr double kFactor = 0.2;
  std::vector<double> coords;
  coords.reserve(2 * n);
  std::vector<Index> labels(n);
  for (Index i = 0; i < n; ++i) {
    const Index circle = i < n / 2 ? 0u : 1u;
    const double r = circle == 0 ? 1.0 : kFactor;
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    coords.push_back(r * std::cos(theta) + kNoise * rng.normal());
    coords.push_back(r * std::sin(theta) + kNoise * rng.normal());
    labels[i] = circle;
  }
  return {ClusteringInstance(std::move(coords), n, 2), std::move(labels), 2};
}

// One-dimensional bridge fixture: (n-1)/3 points each at 0, 2a and 2a+b, plus
// a single bridge point at a. Ground truth groups everything left of the
// b-gap together. Requires n = 1 mod 3 and 0 < a < b < 2a.
inline LabeledInstance gen_bridge_instance(Index n, double alpha, double beta) {
  if (n % 3 != 1 || n < 4) throw std::invalid_argument("bridge: n must be 1 mod 3 and >= 4");
  if (!(0.0 < alpha && alpha < beta && beta < 2.0 * alpha))
    throw std::invalid_argument("bridge: need 0 < alpha < beta < 2*alpha");
  const Index third = (n - 1) / 3;
  std::vector<double> coords;
  std::vector<Index> labels;
  coords.reserve(n);
  labels.reserve(n);
  for (Index i = 0; i < third; ++i) coords.push_back(0.0), labels.push_back(0);
  coords.push_back(alpha);
  labels.push_back(0);
  for (Index i = 0; i < third; ++i) coords.push_back(2.0 * alpha), labels.push_back(0);
  for (Index i = 0; i < third; ++i) coords.push_back(2.0 * alpha + beta), labels.push_back(1);
  return {ClusteringInstance(std::move(coords), n, 1), std::move(labels), 2};
}

// One-dimensional outlier fixture: (n-1)/2 points spread over [0, a], another
// (n-1)/2 over [3-a, 3], and a lone point at 6 that merges last. Ground truth
// isolates the outlier.
inline LabeledInstance gen_outlier_instance(Index n, double alpha) {
  if (n < 5 || n % 2 != 1) throw std::invalid_argument("outlier: n must be odd and >= 5");
  if (!(0.0 < alpha && alpha < 0.5)) throw std::invalid_argument("outlier: need 0 < alpha < 1/2");
  const Index half = (n - 1) / 2;
  std::vector<double> coords;
  std::vector<Index> labels;
  coords.reserve(n);
  labels.reserve(n);
  const double step = half > 1 ? alpha / static_cast<double>(half - 1) : 0.0;
  for (Index i = 0; i < half; ++i) coords.push_back(i * step), labels.push_back(0);
  for (Index i = 0; i < half; ++i) coords.push_back(3.0 - alpha + i * step), labels.push_back(0);
  coords.push_back(6.0);
  labels.push_back(1);
  return {ClusteringInstance(std::move(coords), n, 1), std::move(labels), 2};
}

enum class GraphFamily {
  erdos_renyi,
  random_geometric,
  barbell,
  barabasi_albert,
  complete,
  cycle,
  path,
};

struct GraphSpec {
  GraphFamily family = GraphFamily::erdos_renyi;
  Index n = 1;
  double p = 0.5;      // erdos_renyi
  double radius = 0.5; // random_geometric
  Index inter = 1;     // barbell inter-clique edges
  Index m = 1;         // barabasi_albert attachment count
};

inline GraphFamily parse_graph_family(const std::string& s) {
  if (s == "er" || s == "erdos_renyi") return GraphFamily::erdos_renyi;
  if (s == "geometric" || s == "random_geometric") return GraphFamily::random_geometric;
  if (s == "barbell") return GraphFamily::barbell;
  if (s == "ba" || s == "barabasi_albert") return GraphFamily::barabasi_albert;
  if (s == "complete") return GraphFamily::complete;
  if (s == "cycle") return GraphFamily::cycle;
  if (s == "path") return GraphFamily::path;
  throw std::invalid_argument("unknown graph family: " + s);
}

namespace detail {

inline Graph gen_erdos_renyi(Index n, double p, RandomStream& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p must be in [0,1]");
  Graph g(n);
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (rng.uniform() < p) g.add_edge(u, v);
  return g;
}

inline Graph gen_geometric(Index n, double radius, RandomStream& rng) {
  if (radius < 0.0) throw std::invalid_argument("geometric: radius must be >= 0");
  std::vector<double> xs(n), ys(n);
  for (Index i = 0; i < n; ++i) {
    xs[i] = rng.uniform();
    ys[i] = rng.uniform();
  }
  Graph g(n);
  const double r2 = radius * radius;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) {
      const double dx = xs[u] - xs[v], dy = ys[u] - ys[v];
      if (dx * dx + dy * dy <= r2) g.add_edge(u, v);
    }
  return g;
}

// Two cliques of size floor(n/2) and ceil(n/2) plus `inter` crossing edges
// drawn uniformly without replacement (Floyd's sampling).
inline Graph gen_barbell(Index n, Index inter, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("barbell: n must be >= 2");
  const Index n1 = n / 2, n2 = n - n1;
  const std::uint64_t cross = static_cast<std::uint64_t>(n1) * n2;
  if (inter > cross) throw std::invalid_argument("barbell: more inter-clique edges than pairs");
  Graph g(n);
  for (Index u = 0; u < n1; ++u)
    for (Index v = u + 1; v < n1; ++v) g.add_edge(u, v);
  for (Index u = n1; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) g.add_edge(u, v);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = cross - inter; j < cross; ++j) {
    const std::uint64_t t = rng.uniform_int(j + 1);
    chosen.insert(chosen.count(t) ? j : t);
  }
  for (std::uint64_t c : chosen) {
    const Index u = static_cast<Index>(c / n2);
    const Index v = n1 + static_cast<Index>(c % n2);
    g.add_edge(u, v);
  }
  return g;
}

// Preferential attachment seeded with an m-clique; each new node attaches m
// distinct edges, endpoints drawn proportionally to degree (uniform while the
// seed core still has degree zero).
inline Graph gen_barabasi_albert(Index n, Index m, RandomStream& rng) {
  if (m < 1) throw std::invalid_argument("barabasi_albert: m must be >= 1");
  if (n < m) throw std::invalid_argument("barabasi_albert: n must be >= m");
  Graph g(n);
  std::vector<Index> endpoints;  // one entry per edge endpoint
  for (Index u = 0; u < m; ++u)
    for (Index v = u + 1; v < m; ++v) {
      g.add_edge(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  for (Index v = m; v < n; ++v) {
    std::set<Index> targets;
    while (targets.size() < m) {
      Index t;
      if (endpoints.empty()) {
        t = static_cast<Index>(rng.uniform_int(v));
      } else {
        t = endpoints[rng.uniform_int(endpoints.size())];
      }
      targets.insert(t);
    }
    for (Index t : targets) {
      g.add_edge(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return g;
}

}  // namespace detail

inline Graph gen_graph(const GraphSpec& spec, RandomStream& rng) {
  if (spec.n < 1) throw std::invalid_argument("gen_graph: n must be >= 1");
  switch (spec.family) {
    case GraphFamily::erdos_renyi:
      return detail::gen_erdos_renyi(spec.n, spec.p, rng);
    case GraphFamily::random_geometric:
      return detail::gen_geometric(spec.n, spec.radius, rng);
    case GraphFamily::barbell:
      return detail::gen_barbell(spec.n, spec.inter, rng);
    case GraphFamily::barabasi_albert:
      return detail::gen_barabasi_albert(spec.n, spec.m, rng);
    case GraphFamily::complete:
      return Graph::complete(spec.n);
    case GraphFamily::cycle:
      return Graph::cycle(spec.n);
    case GraphFamily::path:
      return Graph::path(spec.n);
  }
  throw std::logic_error("gen_graph: unreachable");
}

}  // namespace sizegen
