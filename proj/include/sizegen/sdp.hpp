#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sizegen/graph.hpp"
#include "sizegen/random.hpp"

namespace sizegen {

// Solution of the max-cut relaxation
//   max 1/4 L.X  s.t.  X psd, diag(X) = 1
// held as a low-rank factor V with unit rows (X = V V^T), together with a
// feasible dual vector certifying near-optimality: diag(dual_y) - L/4 is psd
// within tolerance and gap = dual_value - primal_value bounds the
// suboptimality.
struct SdpSolution {
  Index n = 0;
  Index rank = 0;
  std::vector<double> factor;  // n x rank, row-major, rows unit norm
  double primal_value = 0.0;
  std::vector<double> dual_y;
  double dual_value = 0.0;
  double gap = 0.0;
  bool converged = true;
  Index sweeps = 0;

  std::span<const double> row(Index i) const { return {factor.data() + static_cast<std::size_t>(i) * rank, rank}; }

  double entry(Index i, Index j) const {  // X_ij
    const double* a = factor.data() + static_cast<std::size_t>(i) * rank;
    const double* b = factor.data() + static_cast<std::size_t>(j) * rank;
    double s = 0.0;
    for (Index c = 0; c < rank; ++c) s += a[c] * b[c];
    return s;
  }
};

namespace detail {

// Smallest eigenvalue of the symmetric matrix diag(shift_diag) + sign * A_G.
// A dense symmetric eigensolve is used rather than shifted power iteration:
// near stationary points the bottom of the spectrum is a near-degenerate
// cluster (the certificate matrix approaches a psd matrix with a multiple
// zero eigenvalue), where Krylov iteration from a fixed vector needs on the
// order of 1/gap steps to separate it. A small slack keeps the returned value
// on the conservative side of floating-point error.
inline double lambda_min_diag_plus_adj(const Graph& g, std::span<const double> shift_diag,
                                       double sign_adj = 1.0) {
  const Index n = g.n;
  if (n == 0) return 0.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  double scale = 0.0;
  for (Index i = 0; i < n; ++i) {
    m(i, i) = shift_diag[i];
    scale = std::max(scale, std::abs(shift_diag[i]));
  }
  for (const auto& e : g.edges) {
    m(e.u, e.v) += sign_adj * e.w;
    m(e.v, e.u) += sign_adj * e.w;
    scale = std::max(scale, e.w);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() - 1e-12 * (1.0 + scale) * n;
}

}  // namespace detail

// lambda_min(diag(y) - L/4); nonnegative (up to tolerance) means y is dual
// feasible.
inline double dual_feasibility_margin(const Graph& g, std::span<const double> y) {
  if (y.size() != g.n) throw std::invalid_argument("dual_feasibility_margin: length mismatch");
  const auto deg = g.weighted_degrees();
  std::vector<double> diag(g.n);
  for (Index i = 0; i < g.n; ++i) diag[i] = y[i] - 0.25 * deg[i];
  // diag(y) - L/4 = diag(y - d/4) + A/4
  Graph quarter = g;
  for (auto& e : quarter.edges) e.w *= 0.25;
  return detail::lambda_min_diag_plus_adj(quarter, diag, 1.0);
}

// Low-rank coordinate ascent on unit-sphere rows: each row moves to the
// weighted-neighbor direction that maximizes its term of the objective,
// v_i <- -normalize(sum_j w_ij v_j). Rank ceil(sqrt(2n)) + 1 is enough for
// this regime to reach the relaxation optimum. Sweeps stop when the relative
// objective change drops below tol; hitting max_sweeps first returns the last
// iterate flagged non-converged (the objective is monotone, so it is also the
// best one).
//
// The dual certificate uses g_i = |sum_j w_ij v_j|: y_i = (deg_i + g_i)/4 is
// dual feasible exactly at stationary points, and a uniform shift by
// lambda = max(0, -lambda_min(diag(g) + A))/4 repairs feasibility away from
// them. dual_value - primal_value certifies how far the solve is from the
// true optimum.
inline SdpSolution sdp_solve(const Graph& g, double tol, Index max_sweeps, RandomStream& rng) {
  if (tol <= 0.0) throw std::invalid_argument("sdp_solve: tol must be positive");
  SdpSolution sol;
  sol.n = g.n;
  if (g.n == 0) return sol;
  if (g.edges.empty()) {
    sol.rank = 1;
    sol.factor.assign(g.n, 1.0);
    sol.dual_y.assign(g.n, 0.0);
    return sol;
  }
  const Index r = std::min<Index>(g.n, static_cast<Index>(std::ceil(std::sqrt(2.0 * g.n))) + 1);
  sol.rank = r;
  sol.factor.resize(static_cast<std::size_t>(g.n) * r);

  for (Index i = 0; i < g.n; ++i) {
    double* row = sol.factor.data() + static_cast<std::size_t>(i) * r;
    double norm = 0.0;
    do {
      norm = 0.0;
      for (Index c = 0; c < r; ++c) {
        row[c] = rng.normal();
        norm += row[c] * row[c];
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (Index c = 0; c < r; ++c) row[c] /= norm;
  }

  const auto adj = g.adjacency_list();
  auto objective = [&]() {
    double s = 0.0;
    for (const auto& e : g.edges) s += e.w * (1.0 - sol.entry(e.u, e.v));
    return 0.5 * s;
  };

  std::vector<double> dir(r);
  double prev = objective();
  sol.converged = false;
  for (Index sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (Index i = 0; i < g.n; ++i) {
      if (adj[i].empty()) continue;
      std::fill(dir.begin(), dir.end(), 0.0);
      for (const auto& [j, w] : adj[i]) {
        const double* vj = sol.factor.data() + static_cast<std::size_t>(j) * r;
        for (Index c = 0; c < r; ++c) dir[c] += w * vj[c];
      }
      double norm = 0.0;
      for (Index c = 0; c < r; ++c) norm += dir[c] * dir[c];
      norm = std::sqrt(norm);
      if (norm == 0.0) continue;
      double* vi = sol.factor.data() + static_cast<std::size_t>(i) * r;
      for (Index c = 0; c < r; ++c) vi[c] = -dir[c] / norm;
    }
    const double obj = objective();
    sol.sweeps = sweep;
    if (std::abs(obj - prev) <= tol * std::max(1.0, std::abs(obj))) {
      prev = obj;
      sol.converged = true;
      break;
    }
    prev = obj;
  }
  sol.primal_value = prev;

  // certificate
  std::vector<double> gnorm(g.n, 0.0);
  for (Index i = 0; i < g.n; ++i) {
    std::fill(dir.begin(), dir.end(), 0.0);
    for (const auto& [j, w] : adj[i]) {
      const double* vj = sol.factor.data() + static_cast<std::size_t>(j) * r;
      for (Index c = 0; c < r; ++c) dir[c] += w * vj[c];
    }
    double norm = 0.0;
    for (Index c = 0; c < r; ++c) norm += dir[c] * dir[c];
    gnorm[i] = std::sqrt(norm);
  }
  const double lmin = detail::lambda_min_diag_plus_adj(g, gnorm, 1.0);
  const double lambda = std::max(0.0, -lmin) / 4.0;
  const auto deg = g.weighted_degrees();
  sol.dual_y.resize(g.n);
  sol.dual_value = 0.0;
  for (Index i = 0; i < g.n; ++i) {
    sol.dual_y[i] = 0.25 * (deg[i] + gnorm[i]) + lambda;
    sol.dual_value += sol.dual_y[i];
  }
  sol.gap = sol.dual_value - sol.primal_value;
  return sol;
}

inline SdpSolution sdp_solve(const Graph& g, RandomStream& rng) {
  return sdp_solve(g, 1e-7, 10000, rng);
}

// Restriction of a feasible full-graph dual vector to the induced subgraph
// G[S]: y_i - (1/4) * sum of weights from i to vertices outside S. The result
// is dual feasible for G[S], so its sum upper-bounds sdp(G[S]).
inline std::vector<double> trim_dual(const Graph& g, std::span<const double> y_star,
                                     std::span<const Index> s, double feas_tol = 1e-6) {
  if (y_star.size() != g.n) throw std::invalid_argument("trim_dual: dual length mismatch");
  if (dual_feasibility_margin(g, y_star) < -feas_tol)
    throw std::invalid_argument("trim_dual: y_star is not dual feasible");
  std::vector<char> in_s(g.n, 0);
  for (Index v : s) {
    if (v >= g.n) throw std::out_of_range("trim_dual: vertex out of range");
    in_s[v] = 1;
  }
  std::vector<double> outside(g.n, 0.0);
  for (const auto& e : g.edges) {
    if (in_s[e.u] && !in_s[e.v]) outside[e.u] += e.w;
    if (in_s[e.v] && !in_s[e.u]) outside[e.v] += e.w;
  }
  std::vector<double> trimmed;
  trimmed.reserve(s.size());
  for (Index v : s) trimmed.push_back(y_star[v] - 0.25 * outside[v]);
  return trimmed;
}

}  // namespace sizegen
