#include "coretower/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace coretower {

std::vector<PersistencePair> PersistenceDiagram::in_dimension(int dim) const {
  std::vector<PersistencePair> out;
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out),
               [dim](const PersistencePair& p) { return p.dim == dim; });
  return out;
}

std::size_t PersistenceDiagram::essential_count(int dim) const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [dim](const auto& p) {
    return p.dim == dim && p.essential();
  }));
}

int PersistenceDiagram::max_dimension() const {
  int best = -1;
  for (const auto& p : pairs) best = std::max(best, p.dim);
  return best;
}

void PersistenceDiagram::normalize() { std::sort(pairs.begin(), pairs.end()); }

void validate_filtration(const Filtration& f) {
  std::unordered_map<Simplex, double, SimplexHash> seen;
  seen.reserve(f.cells.size());
  for (std::size_t i = 0; i < f.cells.size(); ++i) {
    const auto& [s, grade] = f.cells[i];
    const auto fail = [&](const std::string& why) {
      throw DataError("filtration cell " + std::to_string(i) + ": " + why);
    };
    if (s.size() == 0) fail("empty simplex");
    if (i > 0 && grade < f.cells[i - 1].grade) fail("grade decreases");
    for (const Simplex& facet : s.facets()) {
      auto it = seen.find(facet);
      if (it == seen.end()) fail("facet missing before the cell (downward closure violated)");
      if (it->second > grade) fail("facet has a larger grade");
    }
    if (!seen.emplace(s, grade).second) fail("repeated simplex");
  }
}

Filtration canonical_order(const Filtration& f) {
  Filtration out = f;
  std::stable_sort(out.cells.begin(), out.cells.end(),
                   [](const FiltrationCell& a, const FiltrationCell& b) {
                     if (a.grade != b.grade) return a.grade < b.grade;
                     return DimLexLess{}(a.simplex, b.simplex);
                   });
  return out;
}

BoundaryMatrix build_boundary_matrix(const Filtration& ordered) {
  BoundaryMatrix bm;
  const std::size_t n = ordered.cells.size();
  bm.columns.resize(n);
  bm.dims.resize(n);
  bm.grades.resize(n);
  std::unordered_map<Simplex, std::uint32_t, SimplexHash> index;
  index.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& [s, grade] = ordered.cells[j];
    bm.dims[j] = s.dimension();
    bm.grades[j] = grade;
    for (const Simplex& facet : s.facets()) {
      auto it = index.find(facet);
      if (it == index.end()) {
        throw DataError("filtration cell " + std::to_string(j) + ": facet missing");
      }
      bm.columns[j].push_back(it->second);
    }
    std::sort(bm.columns[j].begin(), bm.columns[j].end());
    index.emplace(s, static_cast<std::uint32_t>(j));
  }
  return bm;
}

namespace {

constexpr std::int64_t kNone = -1;

// In-place GF(2) sum: target ^= source.
void add_column(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source,
                std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

PersistenceDiagram compute_persistence(const Filtration& f, const PersistenceOptions& opts) {
  validate_filtration(f);
  BoundaryMatrix bm = build_boundary_matrix(canonical_order(f));
  const std::size_t n = bm.columns.size();

  auto& cols = bm.columns;
  std::vector<std::int64_t> pivot_owner(n, kNone);  // row -> column whose low it is
  std::vector<bool> paired(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::uint32_t> scratch;

  const auto reduce = [&](std::size_t j) {
    auto& col = cols[j];
    while (!col.empty()) {
      const std::int64_t owner = pivot_owner[col.back()];
      if (owner == kNone) break;
      add_column(col, cols[static_cast<std::size_t>(owner)], scratch);
    }
    if (!col.empty()) {
      const std::uint32_t low = col.back();
      pivot_owner[low] = static_cast<std::int64_t>(j);
      paired[low] = true;
      paired[j] = true;
      pairs.emplace_back(low, j);
      return std::optional<std::uint32_t>(low);
    }
    return std::optional<std::uint32_t>();
  };

  if (opts.clearing) {
    const int top = n == 0 ? 0 : *std::max_element(bm.dims.begin(), bm.dims.end());
    std::vector<bool> cleared(n, false);
    for (int k = top; k >= 1; --k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bm.dims[j] != k || cleared[j]) continue;
        if (auto low = reduce(j)) {
          cleared[*low] = true;
          cols[*low].clear();
        }
      }
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) reduce(j);
  }

  PersistenceDiagram pd;
  for (const auto& [b, d] : pairs) {
    if (!opts.keep_zero_length && bm.grades[b] == bm.grades[d]) continue;
    pd.pairs.push_back({bm.dims[b], bm.grades[b], bm.grades[d]});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!paired[j]) pd.pairs.push_back({bm.dims[j], bm.grades[j], kInfinity});
  }
  pd.normalize();
  return pd;
}

std::vector<std::size_t> betti_numbers(const ComplexMatrix& m, std::size_t cap) {
  Filtration f;
  for (Simplex& s : m.expand_all_simplices(cap)) f.cells.push_back({std::move(s), 0.0});
  const PersistenceDiagram pd = compute_persistence(f);
  std::vector<std::size_t> betti(static_cast<std::size_t>(m.stats().d) + 1, 0);
  for (const auto& p : pd.pairs) {
    if (p.essential()) ++betti[static_cast<std::size_t>(p.dim)];
  }
  return betti;
}

Filtration snapshot_filtration(std::span<const ComplexMatrix> snapshots,
                               std::span<const double> grades, std::size_t cap) {
  if (snapshots.size() != grades.size()) throw DataError("snapshot and grade counts differ");
  validate_grades(grades);
  Filtration f;
  std::unordered_set<Simplex, SimplexHash> seen;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    for (Simplex& s : snapshots[i].expand_all_simplices(cap)) {
      if (seen.contains(s)) continue;
      seen.insert(s);
      f.cells.push_back({std::move(s), grades[i]});
      if (f.cells.size() > cap) throw CapExceeded(f.cells.size(), cap);
    }
  }
  return f;
}

PersistenceDiagram oracle_pipeline(const DistanceMatrix& d, std::span<const double> grades,
                                   std::size_t cap, std::size_t workers) {
  const auto snapshots = rips_snapshots(d, grades, workers);
  return compute_persistence(snapshot_filtration(snapshots, grades, cap));
}

PersistenceDiagram oracle_pipeline(const DistanceMatrix& d, const SnapshotSchedule& sched,
                                   std::size_t cap, std::size_t workers) {
  const auto grades = sched.grades();
  return oracle_pipeline(d, grades, cap, workers);
}

}  // namespace coretower
