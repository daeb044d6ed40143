#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coretower/complex_matrix.hpp"
#include "coretower/persistence.hpp"
#include "coretower/rips.hpp"
#include "coretower/strong_collapse.hpp"
#include "coretower/tower.hpp"

namespace coretower {

/// Malformed text. `line` and `column` are 1-based; column 0 means the
/// whole line.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class InputKind { Points, DistMat, Complex };

/// Accepts "points", "distmat" or "complex"; throws DataError otherwise.
InputKind parse_input_kind(std::string_view name);

struct ParsedInput {
  InputKind kind;
  std::variant<std::vector<Point>, DistanceMatrix, ComplexMatrix> payload;
};

ParsedInput parse(InputKind kind, std::string_view text);

// Every format is line-oriented text; lines whose first non-blank character
// is '#' are comments.

/// One point per line, whitespace-separated coordinates.
std::vector<Point> parse_points(std::string_view text);
std::string write_points(const std::vector<Point>& points);

/// Lower triangle: line i holds d(i,0)..d(i,i-1), so line 0 is blank. A
/// leading line with a single integer (a point count) is accepted and
/// ignored. The blank line 0 may be omitted.
DistanceMatrix parse_distance_matrix(std::string_view text);
std::string write_distance_matrix(const DistanceMatrix& d);

/// One maximal simplex per line as vertex ids.
ComplexMatrix parse_complex(std::string_view text);
std::string write_complex(const ComplexMatrix& m);

/// Header `# tower 1`, then `i <grade> <v0> ... <vk>` and
/// `c <grade> <u> <v>` lines in replay order.
Tower parse_tower(std::string_view text);
std::string write_tower(const Tower& t);

/// `<grade> <v0> ... <vk>` per cell, in filtration order.
Filtration parse_filtration(std::string_view text);
std::string write_filtration(const Filtration& f);

/// `<dim> <birth> <death>` per interval, `inf` for essential classes,
/// sorted by (dim, birth, death).
PersistenceDiagram parse_diagram(std::string_view text);
std::string write_diagram(const PersistenceDiagram& pd);

/// Whitespace-separated, strictly increasing grades.
std::vector<double> parse_grades(std::string_view text);

/// `r <dominated> <dominating>` and `c <dominated> <dominating>` lines.
CollapseTrace parse_trace(std::string_view text);
std::string write_trace(const CollapseTrace& t);

/// `<u> <r(u)>` per vertex of the domain.
std::string write_retraction(const RetractionMap& r);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace coretower
