#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "coretower/complex_matrix.hpp"
#include "coretower/rips.hpp"
#include "coretower/tower.hpp"

namespace coretower {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;

  bool essential() const { return death == kInfinity; }
  double length() const { return death - birth; }

  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
  friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

/// Multiset of intervals, kept sorted by (dim, birth, death).
struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;

  std::vector<PersistencePair> in_dimension(int dim) const;
  std::size_t essential_count(int dim) const;
  /// Largest dimension with at least one pair, or -1.
  int max_dimension() const;
  void normalize();

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

/// Boundary matrix over GF(2): column j lists the indices of the facets of
/// cell j, sorted. Cells are in filtration order.
struct BoundaryMatrix {
  std::vector<std::vector<std::uint32_t>> columns;
  std::vector<int> dims;
  std::vector<double> grades;
};

struct PersistenceOptions {
  /// Twist/clearing optimization.
  bool clearing = false;
  /// Emit pairs with birth == death.
  bool keep_zero_length = false;
};

/// Checks that every facet of each cell occurs earlier with a grade no
/// larger, no cell repeats and grades never decrease. Throws DataError
/// naming the first offending cell index.
void validate_filtration(const Filtration& f);

/// Stable reorder by (grade, dimension, lexicographic).
Filtration canonical_order(const Filtration& f);

BoundaryMatrix build_boundary_matrix(const Filtration& ordered);

/// Persistence diagram by standard left-to-right column reduction over GF(2).
/// Validates `f` first, then reduces in canonical order.
PersistenceDiagram compute_persistence(const Filtration& f, const PersistenceOptions& opts = {});

/// Betti numbers over GF(2) for dimensions 0..d.
std::vector<std::size_t> betti_numbers(const ComplexMatrix& m, std::size_t cap = kDefaultExpansionCap);

/// Uncollapsed snapshot filtration: every simplex of every snapshot, graded
/// by the first snapshot containing it.
Filtration snapshot_filtration(std::span<const ComplexMatrix> snapshots,
                               std::span<const double> grades,
                               std::size_t cap = kDefaultExpansionCap);

/// Ground-truth pipeline without collapses.
PersistenceDiagram oracle_pipeline(const DistanceMatrix& d, std::span<const double> grades,
                                   std::size_t cap = kDefaultExpansionCap, std::size_t workers = 1);
PersistenceDiagram oracle_pipeline(const DistanceMatrix& d, const SnapshotSchedule& sched,
                                   std::size_t cap = kDefaultExpansionCap, std::size_t workers = 1);

/// Bottleneck distance between the dimension-`dim` parts of two diagrams.
/// Essential intervals are matched only with each other (by birth); a
/// mismatch in their counts gives +inf.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

}  // namespace coretower
