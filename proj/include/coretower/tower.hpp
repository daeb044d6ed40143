#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "coretower/complex_matrix.hpp"
#include "coretower/strong_collapse.hpp"
#include "coretower/types.hpp"

namespace coretower {

struct Include {
  Simplex simplex;
  friend bool operator==(const Include&, const Include&) = default;
};

/// Elementary contraction: vertex `from` is identified with vertex `to`.
struct Contract {
  VertexId from;
  VertexId to;
  friend bool operator==(const Contract&, const Contract&) = default;
};

struct ElementaryOp {
  std::variant<Include, Contract> op;
  double grade = 0.0;
  friend bool operator==(const ElementaryOp&, const ElementaryOp&) = default;
};

/// Sequence of elementary inclusions and contractions replayed from the
/// empty complex.
struct Tower {
  std::vector<ElementaryOp> ops;

  std::size_t num_includes() const;
  std::size_t num_contracts() const;
  friend bool operator==(const Tower&, const Tower&) = default;
};

struct FiltrationCell {
  Simplex simplex;
  double grade = 0.0;
  friend bool operator==(const FiltrationCell&, const FiltrationCell&) = default;
};

/// Cells in insertion order; every face of a cell precedes it and grades
/// never decrease.
struct Filtration {
  std::vector<FiltrationCell> cells;

  std::size_t size() const { return cells.size(); }
  friend bool operator==(const Filtration&, const Filtration&) = default;
};

/// Current complex of a tower during replay.
class TowerState {
 public:
  /// Strict: every vertex must be live or never seen before, the simplex
  /// must be absent and all its facets present. Throws DataError.
  void include(const Simplex& s);
  /// Strict: both vertices live and distinct. Throws DataError.
  void contract(VertexId from, VertexId to);

  bool contains(const Simplex& s) const { return simplices_.contains(s); }
  bool is_live(VertexId v) const { return live_.contains(v); }
  bool was_used(VertexId v) const { return used_.contains(v); }
  std::size_t size() const { return simplices_.size(); }
  /// Simplices sorted by (dimension, lexicographic).
  std::vector<Simplex> simplices() const;

 private:
  std::unordered_set<Simplex, SimplexHash> simplices_;
  std::unordered_set<VertexId> live_;
  std::unordered_set<VertexId> used_;
};

/// Replays `t` with TowerState checks and non-decreasing grades. Throws
/// DataError naming the offending op index.
void validate_tower(const Tower& t);

/// Chains the cores of a nested snapshot sequence into a tower realizing the
/// maps induced by the retractions: at grades[0] the first core is
/// included; at each later grade the previous core's vertices are
/// contracted onto their retraction images and the missing simplices of the
/// next core are included in (dimension, lexicographic) order.
///
/// Tower vertices keep their original ids except when a core revives an id
/// that an earlier contraction removed; such a vertex gets a fresh id above
/// every input id.
///
/// Throws std::logic_error if a retraction does not map the previous core
/// into the next one (a collapse bug), DataError on malformed input.
Tower assemble_core_tower(std::span<const ComplexMatrix> cores,
                          std::span<const RetractionMap> retractions,
                          std::span<const double> grades,
                          std::size_t cap = kDefaultExpansionCap);

/// Equivalent filtration by coning: each contraction of u onto v adds
/// sigma ∪ {v}, with its missing faces, for every active simplex sigma
/// containing u, then aliases u to v for good. Includes of aliased
/// vertices are rewritten to their alias. Contract of an unknown vertex
/// throws DataError; exceeding `cap` cells throws CapExceeded.
Filtration tower_to_filtration(const Tower& t,
                               std::size_t cap = std::numeric_limits<std::size_t>::max());

/// A filtration seen as a tower of inclusions.
Tower filtration_to_tower(const Filtration& f);

}  // namespace coretower
