#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "cbir/rng.hpp"

namespace cbir {

// An indexed object: its id and its embedded coordinates.
struct MetricPoint {
  std::int64_t id = -1;
  std::vector<double> vec;
};

// Distance function wrapper that counts invocations. Searches report their
// call counts through it; the whole point of the tree is to spend fewer
// calls than a linear scan.
class Metric {
 public:
  using Fn = std::function<double(const MetricPoint&, const MetricPoint&)>;

  explicit Metric(Fn fn) : fn_(std::move(fn)) {}
  Metric(Metric&& other) noexcept
      : fn_(std::move(other.fn_)), calls_(other.calls()) {}
  Metric& operator=(Metric&&) = delete;

  double operator()(const MetricPoint& a, const MetricPoint& b) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return fn_(a, b);
  }
  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  void reset_calls() const { calls_.store(0, std::memory_order_relaxed); }

 private:
  Fn fn_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// Leaf payload: members with their 1-median centroid and precomputed
// centroid distances, used for call-free inclusion and exclusion.
struct Cluster {
  std::vector<MetricPoint> members;
  std::size_t centroid_index = 0;
  double radius = 0.0;
  std::vector<double> centroid_dist;  // parallel to members

  const MetricPoint& centroid() const { return members[centroid_index]; }
};

struct AntipoleNode {
  bool is_leaf = false;

  // Internal node: the antipole pair and the radii of the subtrees around
  // each endpoint. Every left-subtree point p satisfies dist(p, a) <= rad_a.
  MetricPoint a, b;
  double rad_a = 0.0, rad_b = 0.0;
  std::unique_ptr<AntipoleNode> left, right;

  Cluster cluster;  // leaf payload
};

// Build and search tuning. t and k apply to searches, tau and sigma to
// construction. sigma <= 0 asks build_catalog to derive one; build_tree
// itself requires sigma > 0.
struct SearchParams {
  double t = 0.0;
  std::size_t k = 1;
  int tau = 3;
  double sigma = 0.0;
};

struct SearchHit {
  std::int64_t id = -1;
  double distance = 0.0;
  // False when the distance is a triangle-inequality upper bound obtained
  // without a distance call (still within the range threshold).
  bool exact = true;
};

// The member of x minimizing the sum of distances to all of x. Ties break
// by smallest id.
const MetricPoint& exact_1_median(std::span<const MetricPoint> x,
                                  const Metric& dist);

// Tournament 1-median: while more than small_threshold points remain, draw
// disjoint tau-subsets, advance each subset's exact 1-median, and append
// the 1-median of the leftover points; finish with an exact 1-median.
// Always returns a member of s.
MetricPoint approx_1_median(std::vector<MetricPoint> s, int tau,
                            std::size_t small_threshold, const Metric& dist,
                            Rng& rng);

// t without its exact 1-median: the outer elements advance.
std::vector<MetricPoint> local_winner(std::vector<MetricPoint> t,
                                      const Metric& dist);

// Exact farthest pair by pairwise scan. Ties break by lexicographically
// smallest (id, id); the returned pair has first.id < second.id.
std::pair<MetricPoint, MetricPoint> find_antipole(
    std::span<const MetricPoint> t, const Metric& dist);

// Tournament diameter approximation: while more than 3 * tau points remain,
// local_winner each disjoint tau-subset and the leftover, then scan the
// survivors exactly. Both returned points belong to s.
std::pair<MetricPoint, MetricPoint> approx_antipole(std::vector<MetricPoint> s,
                                                    int tau,
                                                    const Metric& dist,
                                                    Rng& rng);

// Recursive construction. A point set whose approximate antipole pair lies
// within sigma becomes a leaf (singletons and pairs always do); otherwise
// the set splits between the two endpoints, ties toward a. Reproducible
// bit-for-bit given the same rng seed.
std::unique_ptr<AntipoleNode> build_tree(std::vector<MetricPoint> s,
                                         const SearchParams& params,
                                         const Metric& dist, Rng& rng);

// All points within distance t of q, exactly. Subtrees with
// dist(q, endpoint) > t + radius are skipped; leaf members are resolved by
// centroid inclusion or exclusion bounds where possible, and by a direct
// distance call otherwise. Hits come back sorted by (distance, id).
std::vector<SearchHit> range_search(const AntipoleNode& tree,
                                    const MetricPoint& q, double t,
                                    const Metric& dist);

// The k closest points to q, exactly, sorted by (distance, id). Best-first
// branch and bound: the frontier is ordered by distance lower bounds
// (dist(q, endpoint) - radius for subtrees, |dist(q, centroid) - stored
// centroid distance| for leaf members) and pruned against the current k-th
// best distance.
std::vector<SearchHit> knn_search(const AntipoleNode& tree,
                                  const MetricPoint& q, std::size_t k,
                                  const Metric& dist);

// Number of points stored in the tree (sum of leaf cluster sizes).
std::size_t tree_size(const AntipoleNode& tree);

}  // namespace cbir
