#include "coretower/rips.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace coretower {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), d_(std::move(entries)) {
  if (d_.size() != n_ * n_) throw DataError("distance matrix has wrong number of entries");
  for (std::size_t i = 0; i < n_; ++i) {
    if (d_[i * n_ + i] != 0.0) {
      throw DataError("distance matrix diagonal entry " + std::to_string(i) + " is not zero");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double a = d_[i * n_ + j];
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw DataError("distance d(" + std::to_string(i) + "," + std::to_string(j) +
                        ") is negative or not finite");
      }
      if (a != d_[j * n_ + i]) {
        throw DataError("distance matrix is not symmetric at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      }
    }
  }
}

DistanceMatrix DistanceMatrix::from_lower_triangle(const std::vector<std::vector<double>>& lower) {
  const std::size_t n = lower.size();
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i].size() != i) {
      throw DataError("lower-triangular row " + std::to_string(i) + " must have " +
                      std::to_string(i) + " entries");
    }
    for (std::size_t j = 0; j < i; ++j) {
      entries[i * n + j] = lower[i][j];
      entries[j * n + i] = lower[i][j];
    }
  }
  return DistanceMatrix(n, std::move(entries));
}

double DistanceMatrix::max_distance() const {
  double best = 0.0;
  for (double x : d_) best = std::max(best, x);
  return best;
}

double DistanceMatrix::min_positive_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (double x : d_) {
    if (x > 0.0) best = std::min(best, x);
  }
  return best;
}

DistanceMatrix pairwise_distances(std::span<const Point> points) {
  if (points.empty()) throw DataError("point cloud is empty");
  const std::size_t dim = points.front().size();
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != dim) {
      throw DataError("point " + std::to_string(i) + " has dimension " +
                      std::to_string(points[i].size()) + ", expected " + std::to_string(dim));
    }
  }
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = points[i][k] - points[j][k];
        sq += diff * diff;
      }
      const double dist = std::sqrt(sq);
      entries[i * n + j] = dist;
      entries[j * n + i] = dist;
    }
  }
  return DistanceMatrix(n, std::move(entries));
}

std::vector<double> SnapshotSchedule::grades() const {
  if (!std::isfinite(start) || !std::isfinite(step) || !std::isfinite(end)) {
    throw DataError("schedule values must be finite");
  }
  if (!(step > 0.0)) throw DataError("schedule step must be positive");
  if (end < start) throw DataError("schedule end must not be below start");
  const double span = (end - start) / step;
  const auto last = static_cast<std::size_t>(std::floor(span + 1e-9));
  std::vector<double> out;
  out.reserve(last + 1);
  for (std::size_t k = 0; k <= last; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

void validate_grades(std::span<const double> grades) {
  if (grades.empty()) throw DataError("grade list is empty");
  for (std::size_t i = 0; i < grades.size(); ++i) {
    if (!std::isfinite(grades[i])) throw DataError("grade " + std::to_string(i) + " is not finite");
    if (i > 0 && !(grades[i - 1] < grades[i])) {
      throw DataError("grades must be strictly increasing (at index " + std::to_string(i) + ")");
    }
  }
}

NeighborhoodGraph::NeighborhoodGraph(const DistanceMatrix& d, double t) : adj_(d.size()) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && d(i, j) <= t) adj_[i].push_back(static_cast<VertexId>(j));
    }
  }
}

std::size_t NeighborhoodGraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& a : adj_) total += a.size();
  return total / 2;
}

namespace {

using VertexSet = std::vector<VertexId>;

VertexSet intersect(const VertexSet& a, std::span<const VertexId> b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class CliqueEnumerator {
 public:
  explicit CliqueEnumerator(const NeighborhoodGraph& g) : g_(g) {}

  std::vector<Simplex> run() {
    const std::size_t n = g_.size();
    const std::vector<VertexId> order = degeneracy_order();
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

    for (VertexId v : order) {
      VertexSet later;
      VertexSet earlier;
      for (VertexId w : g_.neighbors(v)) {
        (rank[w] > rank[v] ? later : earlier).push_back(w);
      }
      VertexSet r{v};
      expand(r, std::move(later), std::move(earlier));
    }
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  std::vector<VertexId> degeneracy_order() const {
    const std::size_t n = g_.size();
    std::vector<std::size_t> degree(n);
    std::vector<bool> removed(n, false);
    for (std::size_t v = 0; v < n; ++v) degree[v] = g_.neighbors(static_cast<VertexId>(v)).size();
    std::vector<VertexId> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (!removed[v] && (best == n || degree[v] < degree[best])) best = v;
      }
      removed[best] = true;
      order.push_back(static_cast<VertexId>(best));
      for (VertexId w : g_.neighbors(static_cast<VertexId>(best))) {
        if (!removed[w]) --degree[w];
      }
    }
    return order;
  }

  void expand(VertexSet& r, VertexSet p, VertexSet x) {
    if (p.empty()) {
      if (x.empty()) {
        VertexSet clique = r;
        std::sort(clique.begin(), clique.end());
        out_.push_back(Simplex::from_sorted(std::move(clique)));
      }
      return;
    }
    // Pivot maximizing |P ∩ N(u)| over P ∪ X; smallest id on ties.
    VertexId pivot = p.front();
    std::size_t best = 0;
    bool have = false;
    for (const VertexSet* pool : {&p, &x}) {
      for (VertexId u : *pool) {
        const std::size_t score = intersect(p, g_.neighbors(u)).size();
        if (!have || score > best || (score == best && u < pivot)) {
          pivot = u;
          best = score;
          have = true;
        }
      }
    }
    VertexSet branch;
    auto pn = g_.neighbors(pivot);
    std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(branch));
    for (VertexId v : branch) {
      auto nv = g_.neighbors(v);
      r.push_back(v);
      expand(r, intersect(p, nv), intersect(x, nv));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  const NeighborhoodGraph& g_;
  std::vector<Simplex> out_;
};

}  // namespace

std::vector<Simplex> maximal_cliques(const NeighborhoodGraph& g) {
  return CliqueEnumerator(g).run();
}

ComplexMatrix rips_snapshot(const DistanceMatrix& d, double t) {
  if (d.size() == 0) throw DataError("empty complex");
  const auto cliques = maximal_cliques(NeighborhoodGraph(d, t));
  return ComplexMatrix::from_simplex_list(cliques);
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<ComplexMatrix> rips_snapshots(const DistanceMatrix& d, std::span<const double> grades,
                                          std::size_t workers) {
  validate_grades(grades);
  std::vector<std::optional<ComplexMatrix>> slots(grades.size());
  parallel_for(grades.size(), workers, [&](std::size_t i) { slots[i] = rips_snapshot(d, grades[i]); });
  std::vector<ComplexMatrix> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<ComplexMatrix> rips_snapshots(const DistanceMatrix& d, const SnapshotSchedule& sched,
                                          std::size_t workers) {
  const auto grades = sched.grades();
  return rips_snapshots(d, grades, workers);
}

}  // namespace coretower
