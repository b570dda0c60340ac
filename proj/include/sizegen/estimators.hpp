#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sizegen/cost.hpp"
#include "sizegen/datagen.hpp"
#include "sizegen/graph.hpp"
#include "sizegen/greedy.hpp"
#include "sizegen/instance.hpp"
#include "sizegen/random.hpp"
#include "sizegen/sdp.hpp"
#include "sizegen/seeding.hpp"
#include "sizegen/single_linkage.hpp"
#include "sizegen/subsample.hpp"
#include "sizegen/gw.hpp"

namespace sizegen {

struct EstimateReport {
  double point_estimate = 0.0;
  bool has_interval = false;
  double lo = 0.0, hi = 0.0;
  Index trials = 0;
  double stderr_of_mean = 0.0;
  std::uint64_t queries_distance = 0;
  std::uint64_t queries_ground_truth = 0;
  double wall_time_s = 0.0;
};

namespace detail {

struct RunningMean {
  double mean = 0.0, m2 = 0.0;
  std::uint64_t count = 0;
  void add(double v) {
    ++count;
    const double d = v - mean;
    mean += d / count;
    m2 += d * (v - mean);
  }
  double variance() const { return count > 1 ? m2 / (count - 1) : 0.0; }
  double stderr_of_mean() const { return count > 0 ? std::sqrt(variance() / count) : 0.0; }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// Additive error term for predicting the full-graph relaxation density from
// Bernoulli subsamples of expected size t:
//   (n-t)/(n^2 t) * (sdp(G) - W/2).
// Without sdp(G) the computable overestimate (n-t)/(n^2 t) * W/2 is returned
// (valid since sdp(G) <= W), flagged exact = false.
struct EpsilonSdp {
  double value = 0.0;
  bool exact = false;
};

inline EpsilonSdp epsilon_sdp(const Graph& g, double t, std::optional<double> sdp_g = {}) {
  if (!(t > 0.0) || t > static_cast<double>(g.n))
    throw std::invalid_argument("epsilon_sdp: need 0 < t <= n");
  const double n = static_cast<double>(g.n);
  const double w_half = 0.5 * g.total_weight();
  const double scale = (n - t) / (n * n * t);
  if (sdp_g) return {scale * (*sdp_g - w_half), true};
  return {scale * w_half, false};
}

struct SdpSolveOptions {
  double tol = 1e-7;
  Index max_sweeps = 10000;
};

// Bracket for the full-graph rounded-cut density built from subsampled
// relaxation values:
//   [0.878/t^2 * mean sdp(G[S_t]) - 0.878 * eps,  1/t^2 * mean sdp(G[S_t])]
// where S_t is Bernoulli with expected size t and eps is epsilon_sdp (the
// overestimate unless sdp_g is supplied). Draws below two vertices contribute
// a relaxation value of zero and stay in the mean.
inline EstimateReport estimate_gw_interval(const Graph& g, double t, Index trials,
                                           RandomStream& rng, SdpSolveOptions opts = {},
                                           std::optional<double> sdp_g = {}) {
  if (trials < 1) throw std::invalid_argument("estimate_gw_interval: need trials >= 1");
  detail::Stopwatch watch;
  detail::RunningMean acc;
  for (Index trial = 0; trial < trials; ++trial) {
    RandomStream trial_rng = rng.split(trial);
    const auto sub = subsample_graph(g, {SubsampleMode::vertices_bernoulli, t}, trial_rng);
    if (sub.graph.n < 2) {
      acc.add(0.0);
      continue;
    }
    acc.add(sdp_solve(sub.graph, opts.tol, opts.max_sweeps, trial_rng).primal_value);
  }
  const double t2 = t * t;
  const auto eps = epsilon_sdp(g, t, sdp_g);
  EstimateReport rep;
  rep.point_estimate = acc.mean / t2;
  rep.has_interval = true;
  rep.lo = 0.878 * acc.mean / t2 - 0.878 * eps.value;
  rep.hi = acc.mean / t2;
  rep.trials = trials;
  rep.stderr_of_mean = acc.stderr_of_mean() / t2;
  rep.wall_time_s = watch.seconds();
  return rep;
}

// Both sides of the expectation bound
//   |1/t^2 E[sdp(G[S_t])] - 1/n^2 sdp(G)| <= (n-t)/(n^2 t) (sdp(G) - W/2)
// measured with a trial mean, plus the high-probability radius
//   (n-t)/(n^2 t) (sdp(G) - |E|/2) + sqrt(n^3/t^4 log(2/delta)).
struct SdpConvergenceReport {
  double lhs = 0.0;
  double rhs_expectation = 0.0;
  double rhs_high_prob = 0.0;
  double mean_subsample_sdp = 0.0;
  double stderr_subsample = 0.0;  // stderr of mean_subsample_sdp / t^2
  double sdp_full = 0.0;
  double solver_slack = 0.0;  // certified solve error folded into the check
  Index trials = 0;
  bool violation = false;  // lhs beyond rhs_expectation + 3 stderr + solver_slack
  double wall_time_s = 0.0;
};

inline SdpConvergenceReport check_sdp_convergence(const Graph& g, double t, Index trials,
                                                  RandomStream& rng, SdpSolveOptions opts = {},
                                                  double delta = 0.05) {
  if (trials < 1) throw std::invalid_argument("check_sdp_convergence: need trials >= 1");
  detail::Stopwatch watch;
  RandomStream full_rng = rng.split(~std::uint64_t{0});
  const auto full_sol = sdp_solve(g, opts.tol, opts.max_sweeps, full_rng);
  const double full = full_sol.primal_value;

  detail::RunningMean acc;
  detail::RunningMean gap_acc;
  for (Index trial = 0; trial < trials; ++trial) {
    RandomStream trial_rng = rng.split(trial);
    const auto sub = subsample_graph(g, {SubsampleMode::vertices_bernoulli, t}, trial_rng);
    if (sub.graph.n < 2) {
      acc.add(0.0);
      gap_acc.add(0.0);
      continue;
    }
    const auto sol = sdp_solve(sub.graph, opts.tol, opts.max_sweeps, trial_rng);
    acc.add(sol.primal_value);
    gap_acc.add(std::max(0.0, sol.gap));
  }

  const double n = static_cast<double>(g.n);
  SdpConvergenceReport rep;
  rep.trials = trials;
  rep.sdp_full = full;
  rep.mean_subsample_sdp = acc.mean;
  rep.stderr_subsample = acc.stderr_of_mean() / (t * t);
  rep.lhs = std::abs(acc.mean / (t * t) - full / (n * n));
  rep.rhs_expectation = (n - t) / (n * n * t) * (full - 0.5 * g.total_weight());
  rep.rhs_high_prob = (n - t) / (n * n * t) * (full - 0.5 * static_cast<double>(g.edges.size())) +
                      std::sqrt(n * n * n / (t * t * t * t) * std::log(2.0 / delta));
  // every solve sits within its certified duality gap of the true optimum
  rep.solver_slack = gap_acc.mean / (t * t) + std::max(0.0, full_sol.gap) / (n * n);
  rep.violation = rep.lhs > rep.rhs_expectation + 3.0 * rep.stderr_subsample + rep.solver_slack;
  rep.wall_time_s = watch.seconds();
  return rep;
}

// Mean greedy cut density w(Greedy(G[S_t]); G[S_t]) / t^2 over uniform
// without-replacement vertex subsets of exact size t, fresh greedy order each
// trial.
inline EstimateReport estimate_greedy_density(const Graph& g, Index t, Index trials,
                                              RandomStream& rng) {
  if (t < 1 || t > g.n) throw std::invalid_argument("estimate_greedy_density: need 1 <= t <= n");
  if (trials < 1) throw std::invalid_argument("estimate_greedy_density: need trials >= 1");
  detail::Stopwatch watch;
  detail::RunningMean acc;
  for (Index trial = 0; trial < trials; ++trial) {
    RandomStream trial_rng = rng.split(trial);
    const auto sub = subsample_graph(g, {SubsampleMode::vertices_uniform, double(t)}, trial_rng);
    const Cut z = greedy(sub.graph, trial_rng);
    acc.add(cut_weight(sub.graph, z) / (static_cast<double>(t) * t));
  }
  EstimateReport rep;
  rep.point_estimate = acc.mean;
  rep.trials = trials;
  rep.stderr_of_mean = acc.stderr_of_mean();
  rep.wall_time_s = watch.seconds();
  return rep;
}

enum class ClusterAlgo { single_linkage, kmeanspp, softmax, gonzalez };

inline ClusterAlgo parse_cluster_algo(const std::string& s) {
  if (s == "sl" || s == "single_linkage") return ClusterAlgo::single_linkage;
  if (s == "kmeanspp" || s == "kmeans++") return ClusterAlgo::kmeanspp;
  if (s == "softmax") return ClusterAlgo::softmax;
  if (s == "gonzalez") return ClusterAlgo::gonzalez;
  throw std::invalid_argument("unknown clustering algorithm: " + s);
}

inline std::string cluster_algo_name(ClusterAlgo a) {
  switch (a) {
    case ClusterAlgo::single_linkage: return "sl";
    case ClusterAlgo::kmeanspp: return "kmeanspp";
    case ClusterAlgo::softmax: return "softmax";
    case ClusterAlgo::gonzalez: return "gonzalez";
  }
  return "?";
}

struct ClusterEstimateOptions {
  double softmax_beta = 1.0;
  std::optional<std::uint64_t> gt_budget;  // when set, score on a fresh sampled evaluation set
  double eval_eps = 0.05;
  double eval_delta = 0.05;
  double sample_constant = 1.0;
};

struct TrialResult {
  double value = 0.0;  // accuracy = 1 - cost
  std::uint64_t queries_distance = 0;
  std::uint64_t queries_ground_truth = 0;
};

namespace detail {

inline SelectionFn selection_for(ClusterAlgo a, const ClusteringInstance& x,
                                 const ClusterEstimateOptions& opts) {
  switch (a) {
    case ClusterAlgo::kmeanspp: return SelectionFn::kmeanspp();
    case ClusterAlgo::softmax: return SelectionFn::softmax(opts.softmax_beta, x.diameter());
    case ClusterAlgo::gonzalez: return SelectionFn::gonzalez();
    case ClusterAlgo::single_linkage: break;
  }
  throw std::logic_error("selection_for: not a center-based algorithm");
}

inline double score_centers(const DistanceOracle& d, const Centers& centers, Index k,
                            const GroundTruthOracle& truth, std::span<const Index> eval_points,
                            const ClusterEstimateOptions& opts, RandomStream& rng) {
  if (opts.gt_budget) {
    const double raw = opts.sample_constant * k * std::log(1.0 / opts.eval_delta) /
                       (opts.eval_eps * opts.eval_eps);
    const std::size_t ell =
        std::min<std::size_t>(static_cast<std::size_t>(std::ceil(raw)), d.size());
    const auto pts = sample_without_replacement(d.size(), ell, rng);
    const Clustering part = voronoi_partition(d, centers, pts);
    return clustering_cost(part, truth);
  }
  const Clustering part = voronoi_partition(d, centers, eval_points);
  return clustering_cost(part, truth);
}

}  // namespace detail

// One proxy trial: run the subsample stand-in (the Markov-chain seeding over
// an mk with-replacement sample for center-based algorithms, single linkage
// on an m-subset for SL) and score accuracy against the ground truth on the
// sample itself.
inline TrialResult clustering_proxy_trial(const ClusteringInstance& x,
                                          const std::vector<Index>& gt_labels, Index gt_k,
                                          ClusterAlgo algo, Index k, Index m,
                                          RandomStream& trial_rng,
                                          const ClusterEstimateOptions& opts = {}) {
  GroundTruthOracle truth(gt_labels, gt_k, opts.gt_budget);
  TrialResult out;
  if (algo == ClusterAlgo::single_linkage) {
    const auto idx = sample_without_replacement(x.size(), m, trial_rng);
    const ClusteringInstance sub = x.restrict_to(idx);
    DistanceOracle d(sub);
    auto [clusters, trace] = single_linkage(d, k);
    std::vector<Index> orig_points(clusters.points.size());
    for (std::size_t i = 0; i < clusters.points.size(); ++i)
      orig_points[i] = idx[clusters.points[i]];
    const double cost = clustering_cost(orig_points, clusters.labels, clusters.k, truth);
    out.value = 1.0 - cost;
    out.queries_distance = d.query_count();
  } else {
    DistanceOracle d(x);
    const SelectionFn f = detail::selection_for(algo, x, opts);
    const auto sample =
        sample_with_replacement(x.size(), static_cast<std::size_t>(m) * k, trial_rng);
    const Centers centers = approx_seeding(d, sample, k, m, f, trial_rng);
    const double cost = detail::score_centers(d, centers, k, truth, sample, opts, trial_rng);
    out.value = 1.0 - cost;
    out.queries_distance = d.query_count();
  }
  out.queries_ground_truth = truth.query_count();
  return out;
}

// One full-instance run of the original algorithm, scored exactly.
inline TrialResult clustering_full_trial(const ClusteringInstance& x,
                                         const std::vector<Index>& gt_labels, Index gt_k,
                                         ClusterAlgo algo, Index k, RandomStream& trial_rng,
                                         const ClusterEstimateOptions& opts = {}) {
  GroundTruthOracle truth(gt_labels, gt_k, opts.gt_budget);
  DistanceOracle d(x);
  TrialResult out;
  if (algo == ClusterAlgo::single_linkage) {
    auto [clusters, trace] = single_linkage(d, k);
    out.value = 1.0 - clustering_cost(clusters, truth);
  } else {
    const SelectionFn f = detail::selection_for(algo, x, opts);
    const Centers centers = generic_seeding(d, k, f, trial_rng);
    const Clustering part = voronoi_partition(d, centers);
    out.value = 1.0 - clustering_cost(part, truth);
  }
  out.queries_distance = d.query_count();
  out.queries_ground_truth = truth.query_count();
  return out;
}

inline EstimateReport estimate_clustering_accuracy(const ClusteringInstance& x,
                                                   const std::vector<Index>& gt_labels, Index gt_k,
                                                   ClusterAlgo algo, Index k, Index m, Index trials,
                                                   RandomStream& rng,
                                                   const ClusterEstimateOptions& opts = {}) {
  if (trials < 1) throw std::invalid_argument("estimate_clustering_accuracy: need trials >= 1");
  detail::Stopwatch watch;
  detail::RunningMean acc;
  EstimateReport rep;
  for (Index trial = 0; trial < trials; ++trial) {
    RandomStream trial_rng = rng.split(trial);
    const TrialResult r = clustering_proxy_trial(x, gt_labels, gt_k, algo, k, m, trial_rng, opts);
    acc.add(r.value);
    rep.queries_distance += r.queries_distance;
    rep.queries_ground_truth += r.queries_ground_truth;
  }
  rep.point_estimate = acc.mean;
  rep.trials = trials;
  rep.stderr_of_mean = acc.stderr_of_mean();
  rep.wall_time_s = watch.seconds();
  return rep;
}

inline EstimateReport full_clustering_accuracy(const ClusteringInstance& x,
                                               const std::vector<Index>& gt_labels, Index gt_k,
                                               ClusterAlgo algo, Index k, Index trials,
                                               RandomStream& rng,
                                               const ClusterEstimateOptions& opts = {}) {
  if (trials < 1) throw std::invalid_argument("full_clustering_accuracy: need trials >= 1");
  detail::Stopwatch watch;
  detail::RunningMean acc;
  EstimateReport rep;
  if (algo == ClusterAlgo::single_linkage) {
    // deterministic: one run stands for every trial
    RandomStream trial_rng = rng.split(0);
    const TrialResult r = clustering_full_trial(x, gt_labels, gt_k, algo, k, trial_rng, opts);
    rep.point_estimate = r.value;
    rep.trials = trials;
    rep.queries_distance = r.queries_distance;
    rep.queries_ground_truth = r.queries_ground_truth;
    rep.wall_time_s = watch.seconds();
    return rep;
  }
  for (Index trial = 0; trial < trials; ++trial) {
    RandomStream trial_rng = rng.split(trial);
    const TrialResult r = clustering_full_trial(x, gt_labels, gt_k, algo, k, trial_rng, opts);
    acc.add(r.value);
    rep.queries_distance += r.queries_distance;
    rep.queries_ground_truth += r.queries_ground_truth;
  }
  rep.point_estimate = acc.mean;
  rep.trials = trials;
  rep.stderr_of_mean = acc.stderr_of_mean();
  rep.wall_time_s = watch.seconds();
  return rep;
}

// Candidate algorithm for adaptive selection: maps a (sub)graph and a stream
// to an objective value.
using GraphAlgo = std::function<double(const Graph&, RandomStream&)>;

inline GraphAlgo make_greedy_algo() {
  return [](const Graph& g, RandomStream& rng) {
    if (g.n == 0) return 0.0;
    return cut_weight(g, greedy(g, rng));
  };
}

// Solve once, round `roundings` hyperplanes, keep the best cut (the usual
// practical deployment of the rounding scheme). roundings = 1 gives the bare
// single-hyperplane variant.
inline GraphAlgo make_gw_algo(SdpSolveOptions opts = {}, Index roundings = 32) {
  return [opts, roundings](const Graph& g, RandomStream& rng) {
    if (g.n < 2 || g.edges.empty()) return 0.0;
    const SdpSolution sol = sdp_solve(g, opts.tol, opts.max_sweeps, rng);
    double best = 0.0;
    for (Index i = 0; i < roundings; ++i)
      best = std::max(best, cut_weight(g, gw_round(sol, rng)));
    return best;
  };
}

struct AdaptiveRow {
  Index size = 0;
  std::vector<double> mean;  // per candidate
  std::vector<double> se;
  // decision at this size: strict ranking (best first), exact tie, or
  // undecided when means overlap within one combined stderr
  std::vector<int> order;
  bool exact_tie = false;
  bool decided = false;
};

struct AdaptiveResult {
  int winner = -1;           // candidate index; -1 means "both"
  bool stable = false;
  Index stop_size = 0;       // size at which the ranking stabilized (or last size)
  std::vector<AdaptiveRow> table;
};

// Run every candidate `trials` times on fresh uniform vertex subsets of each
// scheduled size and stop once `stability_window` consecutive sizes decide
// the same strict ranking (consecutive means separated by more than one
// combined stderr). Bitwise-equal means are an exact tie: ties carry no
// counter-evidence, so they leave the stability streak untouched, and a
// schedule that ends all-tied is the stable verdict "both" (in hindsight
// already settled at the first window). Means overlapping within stderr are
// undecided and reset the streak.
inline AdaptiveResult adaptive_select(const Graph& g,
                                      const std::vector<std::pair<std::string, GraphAlgo>>& algos,
                                      std::span<const Index> sizes, Index trials,
                                      Index stability_window, RandomStream& rng) {
  if (algos.size() < 2) throw std::invalid_argument("adaptive_select: need at least 2 candidates");
  if (sizes.empty() || trials < 1 || stability_window < 1)
    throw std::invalid_argument("adaptive_select: bad schedule");
  const std::size_t a = algos.size();

  AdaptiveResult res;
  Index streak = 0;
  std::vector<int> streak_order;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const Index s = sizes[si];
    if (s > g.n) throw std::invalid_argument("adaptive_select: size exceeds instance");
    std::vector<detail::RunningMean> acc(a);
    for (Index trial = 0; trial < trials; ++trial) {
      RandomStream draw_rng = rng.split(si * 1000003ULL + trial);
      const auto sub = subsample_graph(g, {SubsampleMode::vertices_uniform, double(s)}, draw_rng);
      for (std::size_t c = 0; c < a; ++c) {
        RandomStream algo_rng = draw_rng.split(c + 1);
        acc[c].add(algos[c].second(sub.graph, algo_rng));
      }
    }
    AdaptiveRow row;
    row.size = s;
    for (std::size_t c = 0; c < a; ++c) {
      row.mean.push_back(acc[c].mean);
      row.se.push_back(acc[c].stderr_of_mean());
    }
    row.order.resize(a);
    for (std::size_t c = 0; c < a; ++c) row.order[c] = static_cast<int>(c);
    std::stable_sort(row.order.begin(), row.order.end(),
                     [&](int l, int r) { return row.mean[l] > row.mean[r]; });
    row.exact_tie = true;
    for (std::size_t c = 1; c < a; ++c) row.exact_tie &= row.mean[c] == row.mean[0];
    if (!row.exact_tie) {
      row.decided = true;
      for (std::size_t c = 0; c + 1 < a; ++c) {
        const int hi = row.order[c], lo = row.order[c + 1];
        const double sep = row.mean[hi] - row.mean[lo];
        const double combined = std::sqrt(row.se[hi] * row.se[hi] + row.se[lo] * row.se[lo]);
        if (sep <= combined) {
          row.decided = false;
          break;
        }
      }
    }
    res.table.push_back(row);

    if (row.decided) {
      if (streak > 0 && row.order == streak_order) {
        ++streak;
      } else {
        streak = 1;
        streak_order = row.order;
      }
    } else if (!row.exact_tie) {
      streak = 0;  // overlap within noise: start over
    }
    if (streak >= stability_window) {
      res.stable = true;
      res.stop_size = s;
      res.winner = streak_order[0];
      return res;
    }
  }

  bool all_tied = true;
  for (const auto& row : res.table) all_tied &= row.exact_tie;
  if (all_tied) {
    res.stable = true;
    res.winner = -1;  // indistinguishable candidates: "both"
    res.stop_size = res.table[std::min<std::size_t>(stability_window, res.table.size()) - 1].size;
    return res;
  }
  const AdaptiveRow& last = res.table.back();
  res.stable = false;
  res.stop_size = last.size;
  res.winner = last.exact_tie || !last.decided ? -1 : last.order[0];
  return res;
}

// Index of the row with the largest sum, ties to the lowest index.
inline std::size_t erm_select(const std::vector<std::vector<double>>& values) {
  if (values.empty()) throw std::invalid_argument("erm_select: empty matrix");
  const std::size_t cols = values[0].size();
  std::size_t best = 0;
  double best_sum = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r].size() != cols) throw std::invalid_argument("erm_select: ragged matrix");
    double s = 0.0;
    for (double v : values[r]) s += v;
    if (s > best_sum) {
      best_sum = s;
      best = r;
    }
  }
  return best;
}

}  // namespace sizegen
