#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sizegen/graph.hpp"
#include "sizegen/random.hpp"
#include "sizegen/sdp.hpp"

namespace sizegen {

// Random-hyperplane rounding: z_i = sign(v_i . u) for a standard normal u.
// A zero dot product (measure zero) resolves to +1.
inline Cut gw_round(const SdpSolution& sol, RandomStream& rng) {
  if (sol.factor.size() != static_cast<std::size_t>(sol.n) * sol.rank)
    throw std::invalid_argument("gw_round: malformed factor");
  std::vector<double> u(sol.rank);
  for (auto& c : u) c = rng.normal();
  Cut z(sol.n);
  for (Index i = 0; i < sol.n; ++i) {
    const double* vi = sol.factor.data() + static_cast<std::size_t>(i) * sol.rank;
    double dot = 0.0;
    for (Index c = 0; c < sol.rank; ++c) dot += vi[c] * u[c];
    z[i] = dot < 0.0 ? -1 : 1;
  }
  return z;
}

namespace detail {

inline double arccos_term(double xij) {
  if (std::abs(xij) > 1.0 + 1e-9)
    throw std::invalid_argument("gw_expected_value: entry outside [-1, 1]");
  return std::acos(std::clamp(xij, -1.0, 1.0));
}

}  // namespace detail

// Closed-form expectation of the rounded cut weight over the hyperplane draw:
// sum over edges of w_ij * arccos(X_ij) / pi.
inline double gw_expected_value(const Graph& g, const std::vector<double>& x_dense) {
  if (x_dense.size() != static_cast<std::size_t>(g.n) * g.n)
    throw std::invalid_argument("gw_expected_value: matrix size mismatch");
  double s = 0.0;
  for (const auto& e : g.edges)
    s += e.w * detail::arccos_term(x_dense[static_cast<std::size_t>(e.u) * g.n + e.v]);
  return s / std::numbers::pi;
}

inline double gw_expected_value(const Graph& g, const SdpSolution& sol) {
  if (sol.n != g.n) throw std::invalid_argument("gw_expected_value: size mismatch");
  double s = 0.0;
  for (const auto& e : g.edges) s += e.w * detail::arccos_term(sol.entry(e.u, e.v));
  return s / std::numbers::pi;
}

// 1/4 L.X for a dense matrix on the elliptope, via the cut form
// (1/2) sum w_ij (1 - X_ij).
inline double sdp_objective(const Graph& g, const std::vector<double>& x_dense) {
  if (x_dense.size() != static_cast<std::size_t>(g.n) * g.n)
    throw std::invalid_argument("sdp_objective: matrix size mismatch");
  double s = 0.0;
  for (const auto& e : g.edges)
    s += e.w * (1.0 - x_dense[static_cast<std::size_t>(e.u) * g.n + e.v]);
  return 0.5 * s;
}

// Factor an externally supplied elliptope matrix into unit-norm rows via a
// symmetric eigendecomposition. Eigenvalues in (-eig_tol, 0) are clamped to
// zero so singular optima (rank-one cut matrices) factor cleanly; anything
// more negative is rejected. The returned solution carries no dual.
inline SdpSolution solution_from_elliptope(const Graph& g, const std::vector<double>& x_dense,
                                           double eig_tol = 1e-8) {
  if (x_dense.size() != static_cast<std::size_t>(g.n) * g.n)
    throw std::invalid_argument("solution_from_elliptope: matrix size mismatch");
  const Index n = g.n;
  Eigen::MatrixXd x(n, n);
  for (Index i = 0; i < n; ++i) {
    if (std::abs(x_dense[static_cast<std::size_t>(i) * n + i] - 1.0) > 1e-8)
      throw std::invalid_argument("solution_from_elliptope: diagonal must be 1");
    for (Index j = 0; j < n; ++j) x(i, j) = x_dense[static_cast<std::size_t>(i) * n + j];
  }
  if (!x.isApprox(x.transpose(), 1e-9))
    throw std::invalid_argument("solution_from_elliptope: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("solution_from_elliptope: eigendecomposition failed");

  std::vector<Index> keep;
  for (Index c = 0; c < n; ++c) {
    const double l = eig.eigenvalues()(c);
    if (l < -eig_tol) throw std::invalid_argument("solution_from_elliptope: matrix not psd");
    if (l > 0.0) keep.push_back(c);
  }
  SdpSolution sol;
  sol.n = n;
  sol.rank = std::max<Index>(1, static_cast<Index>(keep.size()));
  sol.factor.assign(static_cast<std::size_t>(n) * sol.rank, 0.0);
  for (Index i = 0; i < n; ++i)
    for (std::size_t c = 0; c < keep.size(); ++c)
      sol.factor[static_cast<std::size_t>(i) * sol.rank + c] =
          eig.eigenvectors()(i, keep[c]) * std::sqrt(eig.eigenvalues()(keep[c]));
  sol.primal_value = sdp_objective(g, x_dense);
  sol.dual_value = std::numeric_limits<double>::quiet_NaN();
  sol.gap = std::numeric_limits<double>::quiet_NaN();
  return sol;
}

// Complete graph K_n (n even) with two distinct relaxation optima of equal
// objective n^2/4: X has -1/(n-1) off the diagonal, Y is the rank-one matrix
// of the alternating +-1 bipartition. Both are certified by the constant dual
// vector n/4.
struct NonuniqueFixtures {
  Graph graph;
  std::vector<double> x;  // n x n dense
  std::vector<double> y;
  std::vector<double> dual;  // n/4 per coordinate, feasible for both
};

inline NonuniqueFixtures nonunique_fixtures(Index n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("nonunique_fixtures: n must be even, >= 2");
  NonuniqueFixtures f;
  f.graph = Graph::complete(n);
  f.x.assign(static_cast<std::size_t>(n) * n, 0.0);
  f.y.assign(static_cast<std::size_t>(n) * n, 0.0);
  const double off = -1.0 / (n - 1.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      f.x[static_cast<std::size_t>(i) * n + j] = i == j ? 1.0 : off;
      const double zi = i % 2 == 0 ? 1.0 : -1.0;
      const double zj = j % 2 == 0 ? 1.0 : -1.0;
      f.y[static_cast<std::size_t>(i) * n + j] = zi * zj;
    }
  f.dual.assign(n, n / 4.0);
  return f;
}

}  // namespace sizegen
