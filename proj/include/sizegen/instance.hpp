#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace sizegen {

using Index = std::uint32_t;

// Finite point set in R^d, row-major coordinates. Immutable after
// construction apart from the lazily cached diameter.
class ClusteringInstance {
 public:
  ClusteringInstance() = default;

  ClusteringInstance(std::vector<double> coords, Index n, Index d)
      : coords_(std::move(coords)), n_(n), d_(d) {
    if (n_ < 1) throw std::invalid_argument("instance needs at least one point");
    if (d_ < 1 || coords_.size() != static_cast<std::size_t>(n_) * d_)
      throw std::invalid_argument("coordinate buffer does not match n x d");
  }

  static ClusteringInstance from_points(const std::vector<std::vector<double>>& pts) {
    if (pts.empty()) throw std::invalid_argument("instance needs at least one point");
    const Index d = static_cast<Index>(pts[0].size());
    std::vector<double> coords;
    coords.reserve(pts.size() * d);
    for (const auto& p : pts) {
      if (p.size() != d) throw std::invalid_argument("points have mixed dimensions");
      coords.insert(coords.end(), p.begin(), p.end());
    }
    return ClusteringInstance(std::move(coords), static_cast<Index>(pts.size()), d);
  }

  // 1-D convenience used heavily by fixtures and tests.
  static ClusteringInstance line(std::initializer_list<double> xs) {
    std::vector<double> coords(xs);
    const Index n = static_cast<Index>(coords.size());
    return ClusteringInstance(std::move(coords), n, 1);
  }

  ClusteringInstance(const ClusteringInstance& o)
      : coords_(o.coords_), n_(o.n_), d_(o.d_), diameter_(o.diameter_.load()) {}
  ClusteringInstance& operator=(const ClusteringInstance& o) {
    coords_ = o.coords_;
    n_ = o.n_;
    d_ = o.d_;
    diameter_.store(o.diameter_.load());
    return *this;
  }
  ClusteringInstance(ClusteringInstance&&) noexcept = default;
  ClusteringInstance& operator=(ClusteringInstance&&) noexcept = default;

  Index size() const { return n_; }
  Index dimension() const { return d_; }

  std::span<const double> point(Index i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * d_, d_};
  }

  // Plain Euclidean distance, no query accounting.
  double distance(Index i, Index j) const {
    const double* a = coords_.data() + static_cast<std::size_t>(i) * d_;
    const double* b = coords_.data() + static_cast<std::size_t>(j) * d_;
    double s = 0.0;
    for (Index c = 0; c < d_; ++c) {
      const double t = a[c] - b[c];
      s += t * t;
    }
    return std::sqrt(s);
  }

  // Max pairwise distance; computed on first use and cached. The racy
  // double-compute is benign: both writers store the same value.
  double diameter() const {
    double cached = diameter_.load(std::memory_order_relaxed);
    if (cached >= 0.0) return cached;
    double r = 0.0;
    for (Index i = 0; i < n_; ++i)
      for (Index j = i + 1; j < n_; ++j) r = std::max(r, distance(i, j));
    diameter_.store(r, std::memory_order_relaxed);
    return r;
  }

  ClusteringInstance restrict_to(std::span<const Index> idx) const {
    std::vector<double> coords;
    coords.reserve(idx.size() * d_);
    for (Index i : idx) {
      if (i >= n_) throw std::out_of_range("restrict_to: index out of range");
      auto p = point(i);
      coords.insert(coords.end(), p.begin(), p.end());
    }
    return ClusteringInstance(std::move(coords), static_cast<Index>(idx.size()), d_);
  }

 private:
  std::vector<double> coords_;
  Index n_ = 0;
  Index d_ = 0;
  mutable std::atomic<double> diameter_ = -1.0;
};

// Metered Euclidean distance access. With caching enabled each unordered
// pair is charged once; without it every evaluation counts. The counter is
// atomic so concurrent trials can share one oracle.
class DistanceOracle {
 public:
  explicit DistanceOracle(const ClusteringInstance& x, bool cache_pairs = false)
      : x_(&x), cache_(cache_pairs) {}

  const ClusteringInstance& instance() const { return *x_; }
  Index size() const { return x_->size(); }

  double operator()(Index i, Index j) const {
    if (i >= x_->size() || j >= x_->size())
      throw std::out_of_range("distance oracle: index out of range");
    if (!cache_) {
      count_.fetch_add(1, std::memory_order_relaxed);
      return x_->distance(i, j);
    }
    const std::uint64_t key = pair_key(i, j);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_map_.find(key);
      if (it != cache_map_.end()) return it->second;
    }
    const double d = x_->distance(i, j);
    std::lock_guard<std::mutex> lock(mu_);
    if (cache_map_.emplace(key, d).second) count_.fetch_add(1, std::memory_order_relaxed);
    return d;
  }

  std::uint64_t query_count() const { return count_.load(std::memory_order_relaxed); }
  void reset_count() { count_.store(0, std::memory_order_relaxed); }

 private:
  static std::uint64_t pair_key(Index i, Index j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }

  const ClusteringInstance* x_;
  bool cache_;
  mutable std::atomic<std::uint64_t> count_{0};
  mutable std::unordered_map<std::uint64_t, double> cache_map_;
  mutable std::mutex mu_;
};

// Hidden labeling behind a metered lookup. An optional hard budget models a
// labeling expert who can only be asked so many times.
class GroundTruthOracle {
 public:
  GroundTruthOracle(std::vector<Index> labels, Index k,
                    std::optional<std::uint64_t> budget = std::nullopt)
      : labels_(std::move(labels)), k_(k), budget_(budget) {
    if (k_ < 1) throw std::invalid_argument("ground truth needs k >= 1");
    for (Index l : labels_)
      if (l >= k_) throw std::invalid_argument("ground-truth label out of range");
  }

  Index k() const { return k_; }
  Index size() const { return static_cast<Index>(labels_.size()); }

  Index operator()(Index i) const {
    if (i >= labels_.size()) throw std::out_of_range("ground-truth oracle: index out of range");
    const std::uint64_t used = count_.fetch_add(1, std::memory_order_relaxed);
    if (budget_ && used >= *budget_) {
      count_.fetch_sub(1, std::memory_order_relaxed);
      throw std::runtime_error("ground-truth query budget exceeded");
    }
    return labels_[i];
  }

  std::uint64_t query_count() const { return count_.load(std::memory_order_relaxed); }
  void reset_count() { count_.store(0, std::memory_order_relaxed); }

 private:
  std::vector<Index> labels_;
  Index k_;
  std::optional<std::uint64_t> budget_;
  mutable std::atomic<std::uint64_t> count_{0};
};

// A k-partition of a point-index subset, stored as aligned (point, label)
// sequences. Empty clusters are allowed.
struct Clustering {
  std::vector<Index> points;
  std::vector<Index> labels;
  Index k = 0;

  void validate() const {
    if (points.size() != labels.size())
      throw std::invalid_argument("clustering: points/labels length mismatch");
    for (Index l : labels)
      if (l >= k) throw std::invalid_argument("clustering: label out of range");
  }
};

}  // namespace sizegen
