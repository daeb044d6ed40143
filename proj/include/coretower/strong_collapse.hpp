#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coretower/complex_matrix.hpp"
#include "coretower/types.hpp"

namespace coretower {

/// Vertex map from a complex onto its core, fully composed: every vertex
/// maps directly to a fixed point.
class RetractionMap {
 public:
  RetractionMap() = default;
  /// `domain` strictly increasing; `target[i]` is the image of `domain[i]`.
  RetractionMap(std::vector<VertexId> domain, std::vector<VertexId> target);

  static RetractionMap identity(std::span<const VertexId> vertices);

  std::span<const VertexId> domain() const { return domain_; }
  std::span<const VertexId> targets() const { return target_; }
  bool contains(VertexId u) const;
  /// Throws std::out_of_range for vertices outside the domain.
  VertexId operator()(VertexId u) const;
  /// Image of a simplex, as a simplex (repeated images merged).
  Simplex apply(const Simplex& s) const;
  std::vector<VertexId> fixed_points() const;

  friend bool operator==(const RetractionMap&, const RetractionMap&) = default;

 private:
  std::vector<VertexId> domain_;
  std::vector<VertexId> target_;
};

struct CollapseStep {
  enum class Kind { Row, Column };
  Kind kind;
  std::uint32_t dominated;   // vertex id or column id
  std::uint32_t dominating;  // vertex id or column id

  friend bool operator==(const CollapseStep&, const CollapseStep&) = default;
};

struct PhaseWork {
  CollapseStep::Kind kind;
  std::size_t pops = 0;
  std::size_t subset_tests = 0;
};

/// Removal log of one core() run, in removal order.
struct CollapseTrace {
  std::vector<CollapseStep> steps;
  std::size_t rounds = 0;
  std::vector<PhaseWork> phases;

  std::vector<CollapseStep> removed_rows() const;
  std::vector<CollapseStep> removed_cols() const;
};

struct CollapseResult {
  ComplexMatrix matrix;
  RetractionMap retraction;
  CollapseTrace trace;
};

/// Mutable working copy of a ComplexMatrix supporting row and column
/// removal. Rows and columns are addressed by their ids in the source
/// matrix; ids of removed rows/columns are never reused.
class CollapseMatrix {
 public:
  explicit CollapseMatrix(const ComplexMatrix& m);

  bool row_live(VertexId v) const;
  bool column_live(ColumnId c) const;
  std::vector<VertexId> live_rows() const;
  std::vector<ColumnId> live_columns() const;

  /// Smallest-id live row w != v, taken from the rows of v's first live
  /// column, whose column set contains v's. Among rows with identical
  /// column sets only the smaller id dominates. `tests` accumulates the
  /// number of subset tests performed.
  std::optional<VertexId> find_dominating_row(VertexId v, std::size_t* tests = nullptr) const;
  /// Row/column mirror of find_dominating_row.
  std::optional<ColumnId> find_dominating_column(ColumnId c, std::size_t* tests = nullptr) const;

  void remove_row(VertexId v);
  void remove_column(ColumnId c);

  /// Live columns with their live vertices; column ids are preserved.
  ComplexMatrix to_matrix() const;

  // Internal positions; exposed for the collapse loop.
  std::size_t row_pos(VertexId v) const;
  std::size_t column_pos(ColumnId c) const;
  std::span<const std::size_t> row_at(std::size_t pos) const { return rows_[pos]; }
  std::span<const std::size_t> column_at(std::size_t pos) const { return cols_[pos]; }
  VertexId row_id(std::size_t pos) const { return row_ids_[pos]; }
  ColumnId column_id(std::size_t pos) const { return col_ids_[pos]; }

 private:
  std::optional<std::size_t> dominating_row_pos(std::size_t v, std::size_t* tests) const;
  std::optional<std::size_t> dominating_column_pos(std::size_t c, std::size_t* tests) const;
  void remove_row_pos(std::size_t v);
  void remove_column_pos(std::size_t c);

  friend CollapseResult core(const ComplexMatrix& m);
  friend ComplexMatrix nerve_step(const ComplexMatrix& m);
  friend ComplexMatrix replay(const ComplexMatrix& m, const CollapseTrace& trace);

  std::vector<VertexId> row_ids_;
  std::vector<ColumnId> col_ids_;
  std::vector<std::vector<std::size_t>> rows_;  // row pos -> live column positions
  std::vector<std::vector<std::size_t>> cols_;  // column pos -> live row positions
  std::vector<bool> row_live_;
  std::vector<bool> col_live_;
};

std::optional<VertexId> find_dominating_row(const ComplexMatrix& m, VertexId v);
std::optional<ColumnId> find_dominating_column(const ComplexMatrix& m, ColumnId c);

/// Strong-collapses `m` to its core by alternating FIFO row and column
/// phases. The first row phase visits every row in increasing id order;
/// later phases visit only rows (columns) that lost an incident column
/// (row). Deterministic.
CollapseResult core(const ComplexMatrix& m);

/// Removes every dominated row (in increasing id order), then transposes.
/// Rows of the result are labelled by the input's column ids, columns by the
/// surviving input vertex ids.
ComplexMatrix nerve_step(const ComplexMatrix& m);

/// Re-applies a trace to `m`, checking every recorded domination. Throws
/// DataError when a step is not a valid domination at that point.
ComplexMatrix replay(const ComplexMatrix& m, const CollapseTrace& trace);

}  // namespace coretower
