#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coretower/complex_matrix.hpp"
#include "coretower/types.hpp"

namespace coretower {

using Point = std::vector<double>;

/// Dense symmetric matrix of non-negative distances with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Row-major n*n entries; validated for symmetry, zero diagonal and
  /// non-negativity (DataError otherwise).
  DistanceMatrix(std::size_t n, std::vector<double> entries);
  /// Lower triangle: `lower[i]` holds d(i,0)..d(i,i-1).
  static DistanceMatrix from_lower_triangle(const std::vector<std::vector<double>>& lower);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double max_distance() const;
  /// Smallest strictly positive off-diagonal entry, or +inf if none.
  double min_positive_distance() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Euclidean distances. Throws DataError on no points or mixed dimensions.
DistanceMatrix pairwise_distances(std::span<const Point> points);

/// Uniform scale schedule start, start+step, ... up to end.
struct SnapshotSchedule {
  double start = 0.0;
  double step = 1.0;
  double end = 0.0;

  /// Grades start + k*step for k = 0..K, K the largest integer with
  /// start + K*step <= end up to a 1e-9*step tolerance. Throws DataError if
  /// step <= 0 or end < start.
  std::vector<double> grades() const;
};

/// Validates an explicit grade list (non-empty, strictly increasing,
/// finite); throws DataError otherwise.
void validate_grades(std::span<const double> grades);

/// 1-skeleton of the Rips complex at scale t: i ~ j iff d(i,j) <= t.
class NeighborhoodGraph {
 public:
  NeighborhoodGraph(const DistanceMatrix& d, double t);

  std::size_t size() const { return adj_.size(); }
  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }
  std::size_t num_edges() const;

 private:
  std::vector<std::vector<VertexId>> adj_;
};

/// All maximal cliques (Bron–Kerbosch with max-degree pivoting, degeneracy
/// order at the top level), each sorted, the list sorted lexicographically.
/// Isolated vertices are returned as singleton cliques.
std::vector<Simplex> maximal_cliques(const NeighborhoodGraph& g);

/// Rips complex at scale t represented by its maximal simplices.
ComplexMatrix rips_snapshot(const DistanceMatrix& d, double t);

/// One Rips complex per grade, computed on `workers` threads; the output
/// order and content do not depend on `workers`.
std::vector<ComplexMatrix> rips_snapshots(const DistanceMatrix& d, std::span<const double> grades,
                                          std::size_t workers = 1);
std::vector<ComplexMatrix> rips_snapshots(const DistanceMatrix& d, const SnapshotSchedule& sched,
                                          std::size_t workers = 1);

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Exceptions
/// thrown by fn are rethrown (the one with the smallest index wins).
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace coretower
