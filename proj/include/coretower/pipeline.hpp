#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coretower/complex_matrix.hpp"
#include "coretower/persistence.hpp"
#include "coretower/rips.hpp"
#include "coretower/tower.hpp"

namespace coretower {

struct SnapshotStats {
  double grade = 0.0;
  ComplexStats before;
  ComplexStats after;
};

/// Wall-clock seconds per phase. `max_collapse` is the longest single
/// snapshot collapse (the time of a fully parallel run); `persistence`
/// covers tower-to-filtration conversion plus reduction.
struct PipelineTimings {
  double rips = 0.0;
  double max_collapse = 0.0;
  double total_collapse = 0.0;
  double assembly = 0.0;
  double persistence = 0.0;
};

struct PipelineOptions {
  std::size_t workers = 1;
  bool collapse = true;
  std::size_t cap = kDefaultExpansionCap;
  PersistenceOptions persistence;
};

struct PipelineResult {
  PersistenceDiagram diagram;
  /// Core tower, or the uncollapsed filtration as a tower of inclusions.
  Tower tower;
  /// Cells of the filtration that was reduced.
  std::size_t filtration_size = 0;
  std::vector<SnapshotStats> stats;
  PipelineTimings timings;
};

/// Rips snapshots at `grades`, each collapsed independently on `workers`
/// threads, assembled into the core tower, converted to a filtration and
/// reduced. With `collapse == false` the uncollapsed snapshot filtration is
/// reduced instead. Output does not depend on `workers`.
PipelineResult run_pipeline(const DistanceMatrix& d, std::span<const double> grades,
                            const PipelineOptions& opts = {});

/// Same, starting from an already built nested snapshot sequence.
PipelineResult run_pipeline(std::span<const ComplexMatrix> snapshots, std::span<const double> grades,
                            const PipelineOptions& opts = {});

/// Header `grade,v_before,m_before,d_before,v_after,m_after,d_after`.
std::string write_stats_csv(std::span<const SnapshotStats> stats);

}  // namespace coretower
