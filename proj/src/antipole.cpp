#include "cbir/antipole.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace cbir {

namespace {

// Index of the member minimizing (sum of distances, id). Distances are
// accumulated symmetrically so each pair costs one call; per-index sums are
// added in a fixed order, keeping the choice deterministic.
std::size_t median_index(std::span<const MetricPoint> x, const Metric& dist) {
  if (x.empty())
    throw std::invalid_argument("exact_1_median: empty point set");
  std::vector<double> sums(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = dist(x[i], x[j]);
      sums[i] += d;
      sums[j] += d;
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (sums[i] < sums[best] ||
        (sums[i] == sums[best] && x[i].id < x[best].id))
      best = i;
  }
  return best;
}

// Shuffles indices, then cuts disjoint groups of tau off the front while at
// least 2 * tau indices remain uncut. Returns the number of full groups;
// the tail [groups * tau, n) is the leftover set.
std::size_t draw_groups(std::vector<std::size_t>& idx, int tau, Rng& rng) {
  rng.partial_shuffle(idx, idx.size());
  std::size_t groups = 0;
  std::size_t remaining = idx.size();
  while (remaining >= 2 * static_cast<std::size_t>(tau)) {
    ++groups;
    remaining -= tau;
  }
  return groups;
}

std::vector<MetricPoint> collect(const std::vector<MetricPoint>& s,
                                 std::span<const std::size_t> idx) {
  std::vector<MetricPoint> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(s[i]);
  return out;
}

}  // namespace

const MetricPoint& exact_1_median(std::span<const MetricPoint> x,
                                  const Metric& dist) {
  return x[median_index(x, dist)];
}

MetricPoint approx_1_median(std::vector<MetricPoint> s, int tau,
                            std::size_t small_threshold, const Metric& dist,
                            Rng& rng) {
  if (s.empty())
    throw std::invalid_argument("approx_1_median: empty point set");
  if (tau < 3) throw std::invalid_argument("approx_1_median: tau must be >= 3");
  if (small_threshold < 2 * static_cast<std::size_t>(tau))
    throw std::invalid_argument(
        "approx_1_median: small_threshold must be >= 2*tau");

  while (s.size() > small_threshold) {
    std::vector<std::size_t> idx(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t groups = draw_groups(idx, tau, rng);

    std::vector<MetricPoint> next;
    next.reserve(groups + 1);
    for (std::size_t g = 0; g < groups; ++g) {
      const auto group = collect(
          s, std::span(idx).subspan(g * tau, static_cast<std::size_t>(tau)));
      next.push_back(group[median_index(group, dist)]);
    }
    const auto rest = collect(s, std::span(idx).subspan(groups * tau));
    next.push_back(rest[median_index(rest, dist)]);
    s = std::move(next);
  }
  return s[median_index(s, dist)];
}

std::vector<MetricPoint> local_winner(std::vector<MetricPoint> t,
                                      const Metric& dist) {
  if (t.size() < 2)
    throw std::invalid_argument("local_winner: need at least two points");
  t.erase(t.begin() + static_cast<std::ptrdiff_t>(median_index(t, dist)));
  return t;
}

std::pair<MetricPoint, MetricPoint> find_antipole(
    std::span<const MetricPoint> t, const Metric& dist) {
  if (t.size() < 2)
    throw std::invalid_argument("find_antipole: need at least two points");
  double best_d = -1.0;
  std::size_t bi = 0, bj = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const double d = dist(t[i], t[j]);
      auto lo = std::min(t[i].id, t[j].id);
      auto hi = std::max(t[i].id, t[j].id);
      auto blo = std::min(t[bi].id, t[bj].id);
      auto bhi = std::max(t[bi].id, t[bj].id);
      if (d > best_d || (d == best_d && (lo < blo || (lo == blo && hi < bhi)))) {
        best_d = d;
        bi = i;
        bj = j;
      }
    }
  }
  if (t[bi].id > t[bj].id) std::swap(bi, bj);
  return {t[bi], t[bj]};
}

std::pair<MetricPoint, MetricPoint> approx_antipole(std::vector<MetricPoint> s,
                                                    int tau,
                                                    const Metric& dist,
                                                    Rng& rng) {
  if (s.size() < 2)
    throw std::invalid_argument("approx_antipole: need at least two points");
  if (tau < 3) throw std::invalid_argument("approx_antipole: tau must be >= 3");

  const std::size_t threshold = 3 * static_cast<std::size_t>(tau);
  while (s.size() > threshold) {
    std::vector<std::size_t> idx(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t groups = draw_groups(idx, tau, rng);

    std::vector<MetricPoint> next;
    for (std::size_t g = 0; g < groups; ++g) {
      auto survivors = local_winner(
          collect(s, std::span(idx).subspan(g * tau,
                                            static_cast<std::size_t>(tau))),
          dist);
      for (auto& p : survivors) next.push_back(std::move(p));
    }
    auto survivors =
        local_winner(collect(s, std::span(idx).subspan(groups * tau)), dist);
    for (auto& p : survivors) next.push_back(std::move(p));
    s = std::move(next);
  }
  return find_antipole(s, dist);
}

namespace {

std::unique_ptr<AntipoleNode> make_leaf(std::vector<MetricPoint> pts, int tau,
                                        const Metric& dist, Rng& rng) {
  auto node = std::make_unique<AntipoleNode>();
  node->is_leaf = true;
  Cluster& c = node->cluster;

  const MetricPoint centroid = approx_1_median(
      pts, tau, 3 * static_cast<std::size_t>(tau), dist, rng);
  c.members = std::move(pts);
  c.centroid_index = 0;
  while (c.members[c.centroid_index].id != centroid.id) ++c.centroid_index;

  c.centroid_dist.assign(c.members.size(), 0.0);
  c.radius = 0.0;
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (i == c.centroid_index) continue;
    c.centroid_dist[i] = dist(c.members[i], c.centroid());
    c.radius = std::max(c.radius, c.centroid_dist[i]);
  }
  return node;
}

std::unique_ptr<AntipoleNode> build_node(std::vector<MetricPoint> pts,
                                         const SearchParams& params,
                                         const Metric& dist, Rng& rng) {
  if (pts.size() <= 2) return make_leaf(std::move(pts), params.tau, dist, rng);

  auto [a, b] = approx_antipole(pts, params.tau, dist, rng);
  if (dist(a, b) <= params.sigma)
    return make_leaf(std::move(pts), params.tau, dist, rng);

  auto node = std::make_unique<AntipoleNode>();
  node->a = a;
  node->b = b;

  std::vector<MetricPoint> left, right;
  left.push_back(a);
  right.push_back(b);
  for (auto& p : pts) {
    if (p.id == a.id || p.id == b.id) continue;
    const double da = dist(p, a);
    const double db = dist(p, b);
    if (da <= db) {
      node->rad_a = std::max(node->rad_a, da);
      left.push_back(std::move(p));
    } else {
      node->rad_b = std::max(node->rad_b, db);
      right.push_back(std::move(p));
    }
  }
  pts.clear();
  node->left = build_node(std::move(left), params, dist, rng);
  node->right = build_node(std::move(right), params, dist, rng);
  return node;
}

}  // namespace

std::unique_ptr<AntipoleNode> build_tree(std::vector<MetricPoint> s,
                                         const SearchParams& params,
                                         const Metric& dist, Rng& rng) {
  if (s.empty()) throw std::invalid_argument("build_tree: empty point set");
  if (params.tau < 3)
    throw std::invalid_argument("build_tree: tau must be >= 3");
  if (!(params.sigma > 0.0))
    throw std::invalid_argument("build_tree: sigma must be positive");
  return build_node(std::move(s), params, dist, rng);
}

namespace {

// Keeps the better record for an id: an exact distance beats a bound, and
// between two bounds the tighter one wins.
void merge_hit(std::unordered_map<std::int64_t, SearchHit>& hits,
               const SearchHit& h) {
  auto [it, inserted] = hits.emplace(h.id, h);
  if (inserted) return;
  SearchHit& cur = it->second;
  if (h.exact && !cur.exact)
    cur = h;
  else if (h.exact == cur.exact && h.distance < cur.distance)
    cur.distance = h.distance;
}

void range_walk(const AntipoleNode& node, const MetricPoint& q, double t,
                const Metric& dist,
                std::unordered_map<std::int64_t, SearchHit>& hits) {
  if (!node.is_leaf) {
    const double da = dist(q, node.a);
    const double db = dist(q, node.b);
    if (da <= t) merge_hit(hits, {node.a.id, da, true});
    if (db <= t) merge_hit(hits, {node.b.id, db, true});
    if (da <= t + node.rad_a) range_walk(*node.left, q, t, dist, hits);
    if (db <= t + node.rad_b) range_walk(*node.right, q, t, dist, hits);
    return;
  }

  const Cluster& c = node.cluster;
  const double dc = dist(q, c.centroid());
  if (dc <= t) merge_hit(hits, {c.centroid().id, dc, true});
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (i == c.centroid_index) continue;
    const double dm = c.centroid_dist[i];
    if (dc + dm <= t) {
      merge_hit(hits, {c.members[i].id, dc + dm, false});
    } else if (std::abs(dc - dm) > t) {
      continue;
    } else {
      const double d = dist(q, c.members[i]);
      if (d <= t) merge_hit(hits, {c.members[i].id, d, true});
    }
  }
}

void sort_hits(std::vector<SearchHit>& v) {
  std::sort(v.begin(), v.end(), [](const SearchHit& x, const SearchHit& y) {
    return x.distance < y.distance ||
           (x.distance == y.distance && x.id < y.id);
  });
}

}  // namespace

std::vector<SearchHit> range_search(const AntipoleNode& tree,
                                    const MetricPoint& q, double t,
                                    const Metric& dist) {
  if (t < 0.0) throw std::invalid_argument("range_search: negative threshold");
  std::unordered_map<std::int64_t, SearchHit> hits;
  range_walk(tree, q, t, dist, hits);
  std::vector<SearchHit> out;
  out.reserve(hits.size());
  for (auto& [id, h] : hits) out.push_back(h);
  sort_hits(out);
  return out;
}

std::size_t tree_size(const AntipoleNode& tree) {
  if (tree.is_leaf) return tree.cluster.members.size();
  return tree_size(*tree.left) + tree_size(*tree.right);
}

namespace {

struct FrontierEntry {
  double lower_bound = 0.0;
  std::uint64_t seq = 0;  // insertion order: total, reproducible pop order
  const AntipoleNode* node = nullptr;       // set for subtree entries
  const Cluster* cluster = nullptr;          // set for member entries
  std::size_t member_index = 0;
};

struct FrontierLater {
  bool operator()(const FrontierEntry& x, const FrontierEntry& y) const {
    return x.lower_bound > y.lower_bound ||
           (x.lower_bound == y.lower_bound && x.seq > y.seq);
  }
};

class ResultPool {
 public:
  explicit ResultPool(std::size_t k) : k_(k) {}

  double bound() const {
    return hits_.size() < k_ ? std::numeric_limits<double>::infinity()
                             : hits_[worst_].distance;
  }

  // Inserts (or replaces the worst) when (distance, id) beats it.
  void offer(std::int64_t id, double distance) {
    if (!offered_.insert(id).second) return;
    if (hits_.size() < k_) {
      hits_.push_back({id, distance, true});
      refresh_worst();
      return;
    }
    const SearchHit& w = hits_[worst_];
    if (distance < w.distance || (distance == w.distance && id < w.id)) {
      hits_[worst_] = {id, distance, true};
      refresh_worst();
    }
  }

  bool already_offered(std::int64_t id) const { return offered_.contains(id); }

  std::vector<SearchHit> take() {
    sort_hits(hits_);
    return std::move(hits_);
  }

 private:
  void refresh_worst() {
    worst_ = 0;
    for (std::size_t i = 1; i < hits_.size(); ++i) {
      const SearchHit& w = hits_[worst_];
      if (hits_[i].distance > w.distance ||
          (hits_[i].distance == w.distance && hits_[i].id > w.id))
        worst_ = i;
    }
  }

  std::size_t k_;
  std::vector<SearchHit> hits_;
  std::size_t worst_ = 0;
  std::unordered_set<std::int64_t> offered_;
};

}  // namespace

std::vector<SearchHit> knn_search(const AntipoleNode& tree,
                                  const MetricPoint& q, std::size_t k,
                                  const Metric& dist) {
  if (k < 1) throw std::invalid_argument("knn_search: k must be >= 1");
  if (k > tree_size(tree))
    throw std::invalid_argument("knn_search: k exceeds indexed point count");

  std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, FrontierLater>
      frontier;
  std::uint64_t seq = 0;
  frontier.push({0.0, seq++, &tree, nullptr, 0});
  ResultPool pool(k);

  while (!frontier.empty()) {
    const FrontierEntry e = frontier.top();
    frontier.pop();
    // Min-heap: every remaining entry is at least as far. Entries at
    // exactly the bound still matter for id tie-breaking at rank k.
    if (e.lower_bound > pool.bound()) break;

    if (e.node != nullptr && !e.node->is_leaf) {
      const AntipoleNode& n = *e.node;
      const double da = dist(q, n.a);
      const double db = dist(q, n.b);
      pool.offer(n.a.id, da);
      pool.offer(n.b.id, db);
      frontier.push(
          {std::max(0.0, da - n.rad_a), seq++, n.left.get(), nullptr, 0});
      frontier.push(
          {std::max(0.0, db - n.rad_b), seq++, n.right.get(), nullptr, 0});
    } else if (e.node != nullptr) {
      const Cluster& c = e.node->cluster;
      const double dc = dist(q, c.centroid());
      pool.offer(c.centroid().id, dc);
      for (std::size_t i = 0; i < c.members.size(); ++i) {
        if (i == c.centroid_index) continue;
        if (pool.already_offered(c.members[i].id)) continue;
        frontier.push(
            {std::abs(dc - c.centroid_dist[i]), seq++, nullptr, &c, i});
      }
    } else {
      const MetricPoint& m = e.cluster->members[e.member_index];
      if (pool.already_offered(m.id)) continue;
      pool.offer(m.id, dist(q, m));
    }
  }
  return pool.take();
}

}  // namespace cbir
