#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "coretower/persistence.hpp"

namespace coretower {
namespace {

class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t left, std::size_t right)
      : adj_(left), match_left_(left, kFree), match_right_(right, kFree), dist_(left) {}

  void add_edge(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

  std::size_t max_matching() {
    std::size_t size = 0;
    while (bfs()) {
      for (std::size_t l = 0; l < adj_.size(); ++l) {
        if (match_left_[l] == kFree && dfs(l)) ++size;
      }
    }
    return size;
  }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      if (match_left_[l] == kFree) {
        dist_[l] = 0;
        q.push(l);
      } else {
        dist_[l] = kUnreached;
      }
    }
    while (!q.empty()) {
      const std::size_t l = q.front();
      q.pop();
      for (std::size_t r : adj_[l]) {
        const std::size_t next = match_right_[r];
        if (next == kFree) {
          found = true;
        } else if (dist_[next] == kUnreached) {
          dist_[next] = dist_[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t l) {
    for (std::size_t r : adj_[l]) {
      const std::size_t next = match_right_[r];
      if (next == kFree || (dist_[next] == dist_[l] + 1 && dfs(next))) {
        match_left_[l] = r;
        match_right_[r] = l;
        return true;
      }
    }
    dist_[l] = kUnreached;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> dist_;
};

double linf(const PersistencePair& a, const PersistencePair& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double to_diagonal(const PersistencePair& p) { return (p.death - p.birth) / 2.0; }

// Left side: points of `a`, then diagonal copies of `b`.
// Right side: points of `b`, then diagonal copies of `a`.
bool perfect_matching_within(const std::vector<PersistencePair>& a,
                             const std::vector<PersistencePair>& b, double radius) {
  const std::size_t p = a.size();
  const std::size_t q = b.size();
  HopcroftKarp hk(p + q, q + p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      if (linf(a[i], b[j]) <= radius) hk.add_edge(i, j);
    }
    if (to_diagonal(a[i]) <= radius) hk.add_edge(i, q + i);
  }
  for (std::size_t j = 0; j < q; ++j) {
    if (to_diagonal(b[j]) <= radius) hk.add_edge(p + j, j);
    for (std::size_t i = 0; i < p; ++i) hk.add_edge(p + j, q + i);
  }
  return hk.max_matching() == p + q;
}

}  // namespace

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
  std::vector<PersistencePair> fa;
  std::vector<PersistencePair> fb;
  std::vector<double> ea;
  std::vector<double> eb;
  for (const auto& p : a.pairs) {
    if (p.dim != dim) continue;
    if (p.essential()) ea.push_back(p.birth); else fa.push_back(p);
  }
  for (const auto& p : b.pairs) {
    if (p.dim != dim) continue;
    if (p.essential()) eb.push_back(p.birth); else fb.push_back(p);
  }
  if (ea.size() != eb.size()) return kInfinity;

  // Sorted order is an optimal bottleneck matching on the line.
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

  std::vector<double> candidates{0.0};
  for (const auto& p : fa) {
    candidates.push_back(to_diagonal(p));
    for (const auto& q : fb) candidates.push_back(linf(p, q));
  }
  for (const auto& q : fb) candidates.push_back(to_diagonal(q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Smallest feasible candidate; the largest is always feasible.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (perfect_matching_within(fa, fb, candidates[mid])) hi = mid; else lo = mid + 1;
  }
  return std::max(essential, candidates[lo]);
}

}  // namespace coretower
