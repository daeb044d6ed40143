#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coretower/types.hpp"

namespace coretower {

struct ComplexStats {
  std::size_t v = 0;       // vertices
  std::size_t m = 0;       // maximal simplices
  int d = 0;               // dimension
  std::size_t gamma0 = 0;  // max maximal simplices on one vertex

  friend bool operator==(const ComplexStats&, const ComplexStats&) = default;
};

/// Default cap on the number of simplices produced by a full expansion.
inline constexpr std::size_t kDefaultExpansionCap = 10'000'000;

/// Incidence structure between the vertices (rows) and the maximal
/// simplices (columns) of a simplicial complex.
///
/// Rows are labelled by vertex ids and kept in increasing id order. Columns
/// carry their own ids, also strictly increasing, and are never renumbered
/// once assigned. Each row lists the positions of the columns containing
/// that vertex; each column lists its vertex ids. Both lists are sorted.
///
/// Invariants: every vertex listed in a column has a row and vice versa, no
/// column is a subset of another, and no row or column is empty.
class ComplexMatrix {
 public:
  /// Canonicalizes a simplex list: drops duplicates and non-maximal
  /// simplices and numbers the survivors 0..m-1 by first appearance.
  /// Throws DataError("empty complex") on empty input.
  static ComplexMatrix from_simplex_list(std::span<const Simplex> simplices);

  /// Builds from columns that are already pairwise incomparable. Column ids
  /// must be strictly increasing. Throws DataError when an invariant fails.
  static ComplexMatrix from_columns(std::vector<ColumnId> column_ids,
                                    std::vector<Simplex> columns);

  std::size_t num_rows() const { return row_ids_.size(); }
  std::size_t num_cols() const { return columns_.size(); }

  std::span<const VertexId> row_ids() const { return row_ids_; }
  std::span<const ColumnId> column_ids() const { return column_ids_; }

  /// Vertex set of the column at `pos`.
  const Simplex& column(std::size_t pos) const { return columns_[pos]; }
  std::span<const Simplex> columns() const { return columns_; }

  /// Column positions incident to the row at `pos`.
  std::span<const std::size_t> row(std::size_t pos) const { return rows_[pos]; }

  std::optional<std::size_t> row_position(VertexId v) const;
  std::optional<std::size_t> column_position(ColumnId id) const;

  ComplexStats stats() const;

  /// True iff `s` is a face of at least one column.
  bool contains_simplex(const Simplex& s) const;

  /// Upper bound on the number of simplices `expand_all_simplices` emits.
  /// Saturates at SIZE_MAX.
  std::size_t projected_expansion_size() const;

  /// Every non-empty face of every column, each once, in (dimension,
  /// lexicographic) order. Throws CapExceeded when the projected count
  /// exceeds `cap`.
  std::vector<Simplex> expand_all_simplices(std::size_t cap = kDefaultExpansionCap) const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::vector<VertexId> row_ids_;
  std::vector<std::vector<std::size_t>> rows_;
  std::vector<ColumnId> column_ids_;
  std::vector<Simplex> columns_;
};

inline ComplexStats stats(const ComplexMatrix& m) { return m.stats(); }
inline bool contains_simplex(const ComplexMatrix& m, const Simplex& s) {
  return m.contains_simplex(s);
}
inline std::vector<Simplex> expand_all_simplices(const ComplexMatrix& m,
                                                 std::size_t cap = kDefaultExpansionCap) {
  return m.expand_all_simplices(cap);
}

}  // namespace coretower
