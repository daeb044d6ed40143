#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coretower {

using VertexId = std::uint32_t;
using ColumnId = std::uint32_t;

/// Input that is well-formed text but violates a domain invariant
/// (empty complex, negative distance, invalid schedule, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a full simplex expansion or filtration would exceed the
/// configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t projected, std::size_t cap);

  std::size_t projected() const { return projected_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t projected_;
  std::size_t cap_;
};

/// A non-empty set of vertices, stored strictly increasing.
class Simplex {
 public:
  Simplex() = default;
  /// Sorts the input; throws DataError on empty input or repeated vertices.
  explicit Simplex(std::vector<VertexId> vertices);
  Simplex(std::initializer_list<VertexId> vertices);

  /// Wraps an already strictly increasing, non-empty sequence without checks.
  static Simplex from_sorted(std::vector<VertexId> vertices);

  std::span<const VertexId> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }
  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }

  bool contains(VertexId v) const;
  /// True if every vertex of this simplex is a vertex of `other`.
  bool is_face_of(const Simplex& other) const;

  /// Codimension-one faces, each obtained by dropping one vertex, in
  /// order of the dropped position. Empty for vertices.
  std::vector<Simplex> facets() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;

 private:
  std::vector<VertexId> vertices_;
};

/// Orders simplices by dimension first, then lexicographically.
struct DimLexLess {
  bool operator()(const Simplex& a, const Simplex& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Sorted-list inclusion test by merge scan, O(|a| + |b|).
template <typename T>
bool is_sorted_subset(std::span<const T> a, std::span<const T> b) {
  if (a.size() > b.size()) return false;
  auto it = b.begin();
  for (const T& x : a) {
    while (it != b.end() && *it < x) ++it;
    if (it == b.end() || *it != x) return false;
    ++it;
  }
  return true;
}

/// Shortest decimal literal that parses back to exactly `value`;
/// `inf` for positive infinity.
std::string format_real(double value);

}  // namespace coretower
