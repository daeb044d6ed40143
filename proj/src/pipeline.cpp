#include "coretower/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include "coretower/strong_collapse.hpp"

namespace coretower {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

PipelineResult run_pipeline(std::span<const ComplexMatrix> snapshots, std::span<const double> grades,
                            const PipelineOptions& opts) {
  if (snapshots.size() != grades.size()) throw DataError("snapshot and grade counts differ");
  validate_grades(grades);
  PipelineResult result;
  const std::size_t count = snapshots.size();

  if (!opts.collapse) {
    auto start = Clock::now();
    Filtration f = snapshot_filtration(snapshots, grades, opts.cap);
    result.timings.assembly = seconds_since(start);
    start = Clock::now();
    result.diagram = compute_persistence(f, opts.persistence);
    result.timings.persistence = seconds_since(start);
    result.filtration_size = f.size();
    for (std::size_t i = 0; i < count; ++i) {
      const ComplexStats s = snapshots[i].stats();
      result.stats.push_back({grades[i], s, s});
    }
    result.tower = filtration_to_tower(f);
    return result;
  }

  std::vector<std::optional<CollapseResult>> collapsed(count);
  std::vector<double> collapse_seconds(count, 0.0);
  parallel_for(count, opts.workers, [&](std::size_t i) {
    const auto start = Clock::now();
    collapsed[i] = core(snapshots[i]);
    collapse_seconds[i] = seconds_since(start);
  });
  for (double s : collapse_seconds) {
    result.timings.max_collapse = std::max(result.timings.max_collapse, s);
    result.timings.total_collapse += s;
  }

  std::vector<ComplexMatrix> cores;
  std::vector<RetractionMap> retractions;
  cores.reserve(count);
  retractions.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    result.stats.push_back({grades[i], snapshots[i].stats(), collapsed[i]->matrix.stats()});
    cores.push_back(std::move(collapsed[i]->matrix));
    retractions.push_back(std::move(collapsed[i]->retraction));
  }

  auto start = Clock::now();
  result.tower = assemble_core_tower(cores, retractions, grades, opts.cap);
  result.timings.assembly = seconds_since(start);

  start = Clock::now();
  const Filtration f = tower_to_filtration(result.tower, opts.cap);
  result.filtration_size = f.size();
  result.diagram = compute_persistence(f, opts.persistence);
  result.timings.persistence = seconds_since(start);
  return result;
}

PipelineResult run_pipeline(const DistanceMatrix& d, std::span<const double> grades,
                            const PipelineOptions& opts) {
  const auto start = Clock::now();
  const auto snapshots = rips_snapshots(d, grades, opts.workers);
  const double rips_seconds = seconds_since(start);
  PipelineResult result = run_pipeline(snapshots, grades, opts);
  result.timings.rips = rips_seconds;
  return result;
}

std::string write_stats_csv(std::span<const SnapshotStats> stats) {
  std::string out = "grade,v_before,m_before,d_before,v_after,m_after,d_after\n";
  for (const SnapshotStats& s : stats) {
    out += format_real(s.grade) + ',' + std::to_string(s.before.v) + ',' + std::to_string(s.before.m) +
           ',' + std::to_string(s.before.d) + ',' + std::to_string(s.after.v) + ',' +
           std::to_string(s.after.m) + ',' + std::to_string(s.after.d) + '\n';
  }
  return out;
}

}  // namespace coretower
