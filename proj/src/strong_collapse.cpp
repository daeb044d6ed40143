#include "coretower/strong_collapse.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace coretower {

// --- RetractionMap ----------------------------------------------------------

RetractionMap::RetractionMap(std::vector<VertexId> domain, std::vector<VertexId> target)
    : domain_(std::move(domain)), target_(std::move(target)) {
  if (domain_.size() != target_.size()) {
    throw std::invalid_argument("retraction domain and target sizes differ");
  }
  for (std::size_t i = 1; i < domain_.size(); ++i) {
    if (domain_[i - 1] >= domain_[i]) {
      throw std::invalid_argument("retraction domain must be strictly increasing");
    }
  }
}

RetractionMap RetractionMap::identity(std::span<const VertexId> vertices) {
  std::vector<VertexId> d(vertices.begin(), vertices.end());
  return RetractionMap(d, d);
}

bool RetractionMap::contains(VertexId u) const {
  return std::binary_search(domain_.begin(), domain_.end(), u);
}

VertexId RetractionMap::operator()(VertexId u) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), u);
  if (it == domain_.end() || *it != u) {
    throw std::out_of_range("vertex " + std::to_string(u) + " not in retraction domain");
  }
  return target_[static_cast<std::size_t>(it - domain_.begin())];
}

Simplex RetractionMap::apply(const Simplex& s) const {
  std::vector<VertexId> image;
  image.reserve(s.size());
  for (VertexId u : s) image.push_back((*this)(u));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return Simplex::from_sorted(std::move(image));
}

std::vector<VertexId> RetractionMap::fixed_points() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] == target_[i]) out.push_back(domain_[i]);
  }
  return out;
}

std::vector<CollapseStep> CollapseTrace::removed_rows() const {
  std::vector<CollapseStep> out;
  std::copy_if(steps.begin(), steps.end(), std::back_inserter(out),
               [](const CollapseStep& s) { return s.kind == CollapseStep::Kind::Row; });
  return out;
}

std::vector<CollapseStep> CollapseTrace::removed_cols() const {
  std::vector<CollapseStep> out;
  std::copy_if(steps.begin(), steps.end(), std::back_inserter(out),
               [](const CollapseStep& s) { return s.kind == CollapseStep::Kind::Column; });
  return out;
}

// --- CollapseMatrix ---------------------------------------------------------

CollapseMatrix::CollapseMatrix(const ComplexMatrix& m)
    : row_ids_(m.row_ids().begin(), m.row_ids().end()),
      col_ids_(m.column_ids().begin(), m.column_ids().end()),
      rows_(m.num_rows()),
      cols_(m.num_cols()),
      row_live_(m.num_rows(), true),
      col_live_(m.num_cols(), true) {
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    auto row = m.row(r);
    rows_[r].assign(row.begin(), row.end());
  }
  for (std::size_t c = 0; c < m.num_cols(); ++c) {
    for (VertexId v : m.column(c)) cols_[c].push_back(*m.row_position(v));
  }
}

std::size_t CollapseMatrix::row_pos(VertexId v) const {
  auto it = std::lower_bound(row_ids_.begin(), row_ids_.end(), v);
  if (it == row_ids_.end() || *it != v) {
    throw std::out_of_range("no row for vertex " + std::to_string(v));
  }
  return static_cast<std::size_t>(it - row_ids_.begin());
}

std::size_t CollapseMatrix::column_pos(ColumnId c) const {
  auto it = std::lower_bound(col_ids_.begin(), col_ids_.end(), c);
  if (it == col_ids_.end() || *it != c) {
    throw std::out_of_range("no column with id " + std::to_string(c));
  }
  return static_cast<std::size_t>(it - col_ids_.begin());
}

bool CollapseMatrix::row_live(VertexId v) const { return row_live_[row_pos(v)]; }
bool CollapseMatrix::column_live(ColumnId c) const { return col_live_[column_pos(c)]; }

std::vector<VertexId> CollapseMatrix::live_rows() const {
  std::vector<VertexId> out;
  for (std::size_t r = 0; r < row_ids_.size(); ++r) {
    if (row_live_[r]) out.push_back(row_ids_[r]);
  }
  return out;
}

std::vector<ColumnId> CollapseMatrix::live_columns() const {
  std::vector<ColumnId> out;
  for (std::size_t c = 0; c < col_ids_.size(); ++c) {
    if (col_live_[c]) out.push_back(col_ids_[c]);
  }
  return out;
}

namespace {

// `sub` is dominated by `sup`: strict inclusion, or equality with the
// dominator being the smaller position (so exactly one of two equal lines
// survives).
bool dominated_by(std::span<const std::size_t> sub, std::size_t sub_pos,
                  std::span<const std::size_t> sup, std::size_t sup_pos) {
  if (!is_sorted_subset<std::size_t>(sub, sup)) return false;
  return sub.size() < sup.size() || sup_pos < sub_pos;
}

}  // namespace

std::optional<std::size_t> CollapseMatrix::dominating_row_pos(std::size_t v,
                                                              std::size_t* tests) const {
  const auto& row = rows_[v];
  if (row.empty()) return std::nullopt;
  for (std::size_t w : cols_[row.front()]) {
    if (w == v) continue;
    if (tests) ++*tests;
    if (dominated_by(row, v, rows_[w], w)) return w;
  }
  return std::nullopt;
}

std::optional<std::size_t> CollapseMatrix::dominating_column_pos(std::size_t c,
                                                                 std::size_t* tests) const {
  const auto& col = cols_[c];
  if (col.empty()) return std::nullopt;
  for (std::size_t s : rows_[col.front()]) {
    if (s == c) continue;
    if (tests) ++*tests;
    if (dominated_by(col, c, cols_[s], s)) return s;
  }
  return std::nullopt;
}

std::optional<VertexId> CollapseMatrix::find_dominating_row(VertexId v, std::size_t* tests) const {
  const std::size_t p = row_pos(v);
  if (!row_live_[p]) return std::nullopt;
  auto w = dominating_row_pos(p, tests);
  if (!w) return std::nullopt;
  return row_ids_[*w];
}

std::optional<ColumnId> CollapseMatrix::find_dominating_column(ColumnId c,
                                                               std::size_t* tests) const {
  const std::size_t p = column_pos(c);
  if (!col_live_[p]) return std::nullopt;
  auto s = dominating_column_pos(p, tests);
  if (!s) return std::nullopt;
  return col_ids_[*s];
}

void CollapseMatrix::remove_row_pos(std::size_t v) {
  for (std::size_t c : rows_[v]) {
    auto& col = cols_[c];
    col.erase(std::lower_bound(col.begin(), col.end(), v));
  }
  rows_[v].clear();
  row_live_[v] = false;
}

void CollapseMatrix::remove_column_pos(std::size_t c) {
  for (std::size_t r : cols_[c]) {
    auto& row = rows_[r];
    row.erase(std::lower_bound(row.begin(), row.end(), c));
  }
  cols_[c].clear();
  col_live_[c] = false;
}

void CollapseMatrix::remove_row(VertexId v) {
  const std::size_t p = row_pos(v);
  if (!row_live_[p]) throw std::logic_error("row " + std::to_string(v) + " already removed");
  remove_row_pos(p);
}

void CollapseMatrix::remove_column(ColumnId c) {
  const std::size_t p = column_pos(c);
  if (!col_live_[p]) throw std::logic_error("column " + std::to_string(c) + " already removed");
  remove_column_pos(p);
}

ComplexMatrix CollapseMatrix::to_matrix() const {
  std::vector<ColumnId> ids;
  std::vector<Simplex> columns;
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    if (!col_live_[c] || cols_[c].empty()) continue;
    std::vector<VertexId> verts;
    verts.reserve(cols_[c].size());
    for (std::size_t r : cols_[c]) verts.push_back(row_ids_[r]);
    ids.push_back(col_ids_[c]);
    columns.push_back(Simplex::from_sorted(std::move(verts)));
  }
  return ComplexMatrix::from_columns(std::move(ids), std::move(columns));
}

std::optional<VertexId> find_dominating_row(const ComplexMatrix& m, VertexId v) {
  return CollapseMatrix(m).find_dominating_row(v);
}

std::optional<ColumnId> find_dominating_column(const ComplexMatrix& m, ColumnId c) {
  return CollapseMatrix(m).find_dominating_column(c);
}

// --- core -------------------------------------------------------------------

namespace {

// FIFO queue that ignores pushes of entries already waiting.
class CandidateQueue {
 public:
  explicit CandidateQueue(std::size_t n) : queued_(n, false) {}

  void push(std::size_t x) {
    if (queued_[x]) return;
    queued_[x] = true;
    q_.push_back(x);
  }
  bool empty() const { return q_.empty(); }
  std::size_t pop() {
    const std::size_t x = q_.front();
    q_.pop_front();
    queued_[x] = false;
    return x;
  }

 private:
  std::deque<std::size_t> q_;
  std::vector<bool> queued_;
};

}  // namespace

CollapseResult core(const ComplexMatrix& m) {
  CollapseMatrix work(m);
  CollapseTrace trace;
  const std::size_t nrows = m.num_rows();
  const std::size_t ncols = m.num_cols();
  std::vector<std::size_t> dominator(nrows);
  for (std::size_t r = 0; r < nrows; ++r) dominator[r] = r;

  CandidateQueue row_queue(nrows);
  CandidateQueue col_queue(ncols);
  for (std::size_t r = 0; r < nrows; ++r) row_queue.push(r);

  while (!row_queue.empty()) {
    PhaseWork rows{CollapseStep::Kind::Row};
    while (!row_queue.empty()) {
      const std::size_t v = row_queue.pop();
      if (!work.row_live_[v]) continue;
      ++rows.pops;
      auto w = work.dominating_row_pos(v, &rows.subset_tests);
      if (!w) continue;
      const std::vector<std::size_t> affected = work.rows_[v];
      work.remove_row_pos(v);
      dominator[v] = *w;
      trace.steps.push_back({CollapseStep::Kind::Row, work.row_ids_[v], work.row_ids_[*w]});
      for (std::size_t c : affected) col_queue.push(c);
    }
    trace.phases.push_back(rows);
    ++trace.rounds;
    if (col_queue.empty()) break;

    PhaseWork cols{CollapseStep::Kind::Column};
    while (!col_queue.empty()) {
      const std::size_t c = col_queue.pop();
      if (!work.col_live_[c]) continue;
      ++cols.pops;
      auto s = work.dominating_column_pos(c, &cols.subset_tests);
      if (!s) continue;
      const std::vector<std::size_t> affected = work.cols_[c];
      work.remove_column_pos(c);
      trace.steps.push_back({CollapseStep::Kind::Column, work.col_ids_[c], work.col_ids_[*s]});
      for (std::size_t r : affected) row_queue.push(r);
    }
    trace.phases.push_back(cols);
    ++trace.rounds;
  }

  // Compose: a dominator is live when recorded, so resolving removals in
  // reverse order sees each dominator's final target first.
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    if (it->kind != CollapseStep::Kind::Row) continue;
    const std::size_t v = work.row_pos(it->dominated);
    dominator[v] = dominator[dominator[v]];
  }
  std::vector<VertexId> target(nrows);
  for (std::size_t r = 0; r < nrows; ++r) target[r] = work.row_ids_[dominator[r]];

  return CollapseResult{work.to_matrix(), RetractionMap(work.row_ids_, std::move(target)),
                        std::move(trace)};
}

ComplexMatrix nerve_step(const ComplexMatrix& m) {
  CollapseMatrix work(m);
  for (VertexId v : m.row_ids()) {
    if (work.find_dominating_row(v)) work.remove_row(v);
  }
  // Surviving rows become columns; their column ids become vertex ids.
  std::vector<ColumnId> ids;
  std::vector<Simplex> columns;
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    if (!work.row_live_[r]) continue;
    std::vector<VertexId> verts;
    for (std::size_t c : work.rows_[r]) verts.push_back(m.column_ids()[c]);
    ids.push_back(m.row_ids()[r]);
    columns.push_back(Simplex::from_sorted(std::move(verts)));
  }
  return ComplexMatrix::from_columns(std::move(ids), std::move(columns));
}

ComplexMatrix replay(const ComplexMatrix& m, const CollapseTrace& trace) {
  CollapseMatrix work(m);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const CollapseStep& step = trace.steps[i];
    const auto fail = [&](const std::string& why) {
      throw DataError("trace step " + std::to_string(i) + ": " + why);
    };
    try {
      if (step.kind == CollapseStep::Kind::Row) {
        const std::size_t v = work.row_pos(step.dominated);
        const std::size_t w = work.row_pos(step.dominating);
        if (v == w || !work.row_live_[v] || !work.row_live_[w]) fail("row not live");
        if (!dominated_by(work.rows_[v], v, work.rows_[w], w)) fail("row not dominated");
        work.remove_row_pos(v);
      } else {
        const std::size_t c = work.column_pos(step.dominated);
        const std::size_t s = work.column_pos(step.dominating);
        if (c == s || !work.col_live_[c] || !work.col_live_[s]) fail("column not live");
        if (!dominated_by(work.cols_[c], c, work.cols_[s], s)) fail("column not dominated");
        work.remove_column_pos(c);
      }
    } catch (const std::out_of_range& e) {
      fail(e.what());
    }
  }
  return work.to_matrix();
}

}  // namespace coretower
