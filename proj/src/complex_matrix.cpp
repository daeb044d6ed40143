#include "coretower/complex_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace coretower {

CapExceeded::CapExceeded(std::size_t projected, std::size_t cap)
    : std::runtime_error("expansion too large: projected " + std::to_string(projected) +
                         " simplices exceeds cap " + std::to_string(cap)),
      projected_(projected),
      cap_(cap) {}

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw DataError("simplex must have at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw DataError("simplex has a repeated vertex");
  }
}

Simplex::Simplex(std::initializer_list<VertexId> vertices)
    : Simplex(std::vector<VertexId>(vertices)) {}

Simplex Simplex::from_sorted(std::vector<VertexId> vertices) {
  Simplex s;
  s.vertices_ = std::move(vertices);
  return s;
}

bool Simplex::contains(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const {
  return is_sorted_subset<VertexId>(vertices_, other.vertices_);
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (vertices_.size() < 2) return out;
  out.reserve(vertices_.size());
  for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
    std::vector<VertexId> face;
    face.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i != skip) face.push_back(vertices_[i]);
    }
    out.push_back(from_sorted(std::move(face)));
  }
  return out;
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  // FNV-1a over the vertex ids.
  std::size_t h = 1469598103934665603ULL;
  for (VertexId v : s) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

ComplexMatrix ComplexMatrix::from_simplex_list(std::span<const Simplex> simplices) {
  if (simplices.empty()) throw DataError("empty complex");

  // Largest first, so every simplex is compared only against simplices that
  // could contain it. Stable to keep first appearance among equals.
  std::vector<std::size_t> order(simplices.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return simplices[a].size() > simplices[b].size();
  });

  std::vector<std::size_t> kept;
  // vertex id -> indices (into `simplices`) of kept simplices containing it
  std::vector<std::vector<std::size_t>> by_vertex;
  for (std::size_t idx : order) {
    const Simplex& s = simplices[idx];
    if (s.size() == 0) throw DataError("simplex must have at least one vertex");
    const VertexId pivot = s[0];
    bool absorbed = false;
    if (pivot < by_vertex.size()) {
      for (std::size_t other : by_vertex[pivot]) {
        if (s.is_face_of(simplices[other])) {
          absorbed = true;
          break;
        }
      }
    }
    if (absorbed) continue;
    kept.push_back(idx);
    const VertexId top = s.vertices().back();
    if (top >= by_vertex.size()) by_vertex.resize(static_cast<std::size_t>(top) + 1);
    for (VertexId v : s) by_vertex[v].push_back(idx);
  }

  std::sort(kept.begin(), kept.end());
  std::vector<ColumnId> ids(kept.size());
  std::vector<Simplex> columns;
  columns.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    ids[i] = static_cast<ColumnId>(i);
    columns.push_back(simplices[kept[i]]);
  }
  return from_columns(std::move(ids), std::move(columns));
}

ComplexMatrix ComplexMatrix::from_columns(std::vector<ColumnId> column_ids,
                                          std::vector<Simplex> columns) {
  if (columns.empty()) throw DataError("empty complex");
  if (column_ids.size() != columns.size()) {
    throw DataError("column id count does not match column count");
  }
  for (std::size_t i = 1; i < column_ids.size(); ++i) {
    if (column_ids[i - 1] >= column_ids[i]) throw DataError("column ids must be strictly increasing");
  }

  ComplexMatrix m;
  for (const Simplex& c : columns) {
    if (c.size() == 0) throw DataError("empty column");
    m.row_ids_.insert(m.row_ids_.end(), c.begin(), c.end());
  }
  std::sort(m.row_ids_.begin(), m.row_ids_.end());
  m.row_ids_.erase(std::unique(m.row_ids_.begin(), m.row_ids_.end()), m.row_ids_.end());
  m.rows_.resize(m.row_ids_.size());
  for (std::size_t pos = 0; pos < columns.size(); ++pos) {
    for (VertexId v : columns[pos]) {
      auto it = std::lower_bound(m.row_ids_.begin(), m.row_ids_.end(), v);
      m.rows_[static_cast<std::size_t>(it - m.row_ids_.begin())].push_back(pos);
    }
  }

  // Maximality: a column contained in another shares its first vertex row.
  for (std::size_t pos = 0; pos < columns.size(); ++pos) {
    const auto& first_row = m.rows_[*m.row_position(columns[pos][0])];
    for (std::size_t other : first_row) {
      if (other != pos && columns[pos].is_face_of(columns[other])) {
        throw DataError("column " + std::to_string(column_ids[pos]) +
                        " is not maximal (contained in column " +
                        std::to_string(column_ids[other]) + ")");
      }
    }
  }

  m.column_ids_ = std::move(column_ids);
  m.columns_ = std::move(columns);
  return m;
}

std::optional<std::size_t> ComplexMatrix::row_position(VertexId v) const {
  auto it = std::lower_bound(row_ids_.begin(), row_ids_.end(), v);
  if (it == row_ids_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - row_ids_.begin());
}

std::optional<std::size_t> ComplexMatrix::column_position(ColumnId id) const {
  auto it = std::lower_bound(column_ids_.begin(), column_ids_.end(), id);
  if (it == column_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - column_ids_.begin());
}

ComplexStats ComplexMatrix::stats() const {
  ComplexStats s;
  s.v = row_ids_.size();
  s.m = columns_.size();
  for (const Simplex& c : columns_) s.d = std::max(s.d, c.dimension());
  for (const auto& r : rows_) s.gamma0 = std::max(s.gamma0, r.size());
  return s;
}

bool ComplexMatrix::contains_simplex(const Simplex& s) const {
  if (s.size() == 0) return false;
  auto pos = row_position(s[0]);
  if (!pos) return false;
  for (std::size_t c : rows_[*pos]) {
    if (s.is_face_of(columns_[c])) return true;
  }
  return false;
}

std::size_t ComplexMatrix::projected_expansion_size() const {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  for (const Simplex& c : columns_) {
    if (c.size() >= 63) return kMax;
    const std::size_t faces = (std::size_t{1} << c.size()) - 1;
    if (total > kMax - faces) return kMax;
    total += faces;
  }
  return total;
}

std::vector<Simplex> ComplexMatrix::expand_all_simplices(std::size_t cap) const {
  const std::size_t projected = projected_expansion_size();
  if (projected > cap) throw CapExceeded(projected, cap);

  std::vector<Simplex> out;
  out.reserve(projected);
  std::vector<VertexId> face;
  for (const Simplex& c : columns_) {
    const std::size_t k = c.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      face.clear();
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (std::uint64_t{1} << i)) face.push_back(c[i]);
      }
      out.push_back(Simplex::from_sorted(face));
    }
  }
  std::sort(out.begin(), out.end(), DimLexLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace coretower
