#include "coretower/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace coretower {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : DataError("line " + std::to_string(line) +
                (column > 0 ? ", column " + std::to_string(column) : std::string()) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
  bool comment = false;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{++number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      if (i >= raw.size()) break;
      if (line.tokens.empty() && raw[i] == '#') {
        line.comment = true;
        line.tokens.push_back({raw.substr(i), i + 1});
        break;
      }
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  // The final newline does not start a line.
  while (!out.empty() && out.back().tokens.empty()) out.pop_back();
  return out;
}

double parse_real(const Line& line, const Token& tok) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (!tok.text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || std::isnan(value)) {
    throw ParseError(line.number, tok.column, "expected a real number, got '" + std::string(tok.text) + "'");
  }
  return value;
}

double parse_finite(const Line& line, const Token& tok) {
  const double v = parse_real(line, tok);
  if (!std::isfinite(v)) throw ParseError(line.number, tok.column, "value must be finite");
  return v;
}

template <typename Int>
Int parse_int(const Line& line, const Token& tok, const char* what) {
  Int value{};
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line.number, tok.column,
                     std::string("expected a non-negative integer ") + what + ", got '" +
                         std::string(tok.text) + "'");
  }
  return value;
}

Simplex parse_simplex(const Line& line, std::span<const Token> tokens) {
  std::vector<VertexId> verts;
  verts.reserve(tokens.size());
  for (const Token& t : tokens) verts.push_back(parse_int<VertexId>(line, t, "vertex id"));
  try {
    return Simplex(std::move(verts));
  } catch (const DataError& e) {
    throw ParseError(line.number, 0, e.what());
  }
}

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void append_simplex(std::string& out, const Simplex& s) {
  for (VertexId v : s) {
    out += ' ';
    out += std::to_string(v);
  }
}

}  // namespace

InputKind parse_input_kind(std::string_view name) {
  if (name == "points") return InputKind::Points;
  if (name == "distmat") return InputKind::DistMat;
  if (name == "complex") return InputKind::Complex;
  throw DataError("unknown input format '" + std::string(name) + "'");
}

ParsedInput parse(InputKind kind, std::string_view text) {
  switch (kind) {
    case InputKind::Points: return {kind, parse_points(text)};
    case InputKind::DistMat: return {kind, parse_distance_matrix(text)};
    case InputKind::Complex: return {kind, parse_complex(text)};
  }
  throw DataError("unknown input kind");
}

// --- points -----------------------------------------------------------------

std::vector<Point> parse_points(std::string_view text) {
  std::vector<Point> points;
  std::size_t dim = 0;
  for (const Line& line : split_lines(text)) {
    if (line.comment || line.tokens.empty()) continue;
    Point p;
    for (const Token& t : line.tokens) p.push_back(parse_finite(line, t));
    if (points.empty()) {
      dim = p.size();
    } else if (p.size() != dim) {
      throw ParseError(line.number, 0,
                       "point has " + std::to_string(p.size()) + " coordinates, expected " +
                           std::to_string(dim));
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw DataError("point cloud is empty");
  return points;
}

std::string write_points(const std::vector<Point>& points) {
  std::string out;
  for (const Point& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i > 0) out += ' ';
      out += format_real(p[i]);
    }
    out += '\n';
  }
  return out;
}

// --- distance matrix --------------------------------------------------------

DistanceMatrix parse_distance_matrix(std::string_view text) {
  std::vector<Line> lines;
  for (Line& l : split_lines(text)) {
    if (!l.comment) lines.push_back(std::move(l));
  }
  if (lines.empty()) throw DataError("distance matrix is empty");

  std::size_t idx = 0;
  // A single integer followed by a blank row 0 or a one-entry row 1 is the
  // point-count header; followed by a two-entry row it is d(1,0) itself.
  if (lines[0].tokens.size() == 1 && is_integer_token(lines[0].tokens[0].text) &&
      (lines.size() == 1 || lines[1].tokens.size() <= 1)) {
    idx = 1;
  }
  std::vector<std::vector<double>> lower;
  if (idx >= lines.size() || !lines[idx].tokens.empty()) {
    lower.emplace_back();  // implicit row 0
  }
  for (; idx < lines.size(); ++idx) {
    const Line& line = lines[idx];
    const std::size_t row = lower.size();
    if (line.tokens.size() != row) {
      throw ParseError(line.number, 0,
                       "row " + std::to_string(row) + " must have " + std::to_string(row) +
                           " entries, found " + std::to_string(line.tokens.size()));
    }
    std::vector<double> entries;
    for (const Token& t : line.tokens) {
      const double v = parse_finite(line, t);
      if (v < 0.0) throw ParseError(line.number, t.column, "negative distance");
      entries.push_back(v);
    }
    lower.push_back(std::move(entries));
  }
  return DistanceMatrix::from_lower_triangle(lower);
}

std::string write_distance_matrix(const DistanceMatrix& d) {
  std::string out = std::to_string(d.size()) + '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (j > 0) out += ' ';
      out += format_real(d(i, j));
    }
    out += '\n';
  }
  return out;
}

// --- complex ----------------------------------------------------------------

ComplexMatrix parse_complex(std::string_view text) {
  std::vector<Simplex> simplices;
  for (const Line& line : split_lines(text)) {
    if (line.comment || line.tokens.empty()) continue;
    simplices.push_back(parse_simplex(line, line.tokens));
  }
  return ComplexMatrix::from_simplex_list(simplices);
}

std::string write_complex(const ComplexMatrix& m) {
  std::string out;
  for (const Simplex& c : m.columns()) {
    std::string line;
    append_simplex(line, c);
    out += line.substr(1);
    out += '\n';
  }
  return out;
}

// --- tower ------------------------------------------------------------------

Tower parse_tower(std::string_view text) {
  const auto lines = split_lines(text);
  Tower t;
  bool header = false;
  for (const Line& line : lines) {
    if (line.tokens.empty()) continue;
    if (!header) {
      std::string_view first = line.tokens[0].text;
      if (!line.comment || first.substr(0, 1) != "#") {
        throw ParseError(line.number, 0, "missing '# tower 1' header");
      }
      first.remove_prefix(1);
      while (!first.empty() && (first.front() == ' ' || first.front() == '\t')) first.remove_prefix(1);
      while (!first.empty() && (first.back() == ' ' || first.back() == '\t')) first.remove_suffix(1);
      if (first != "tower 1") throw ParseError(line.number, 0, "missing '# tower 1' header");
      header = true;
      continue;
    }
    if (line.comment) continue;
    const auto& tok = line.tokens;
    if (tok.size() < 3) throw ParseError(line.number, 0, "tower op needs a kind, a grade and vertices");
    const double grade = parse_finite(line, tok[1]);
    if (tok[0].text == "i") {
      t.ops.push_back({Include{parse_simplex(line, std::span(tok).subspan(2))}, grade});
    } else if (tok[0].text == "c") {
      if (tok.size() != 4) throw ParseError(line.number, 0, "contraction needs exactly two vertices");
      t.ops.push_back({Contract{parse_int<VertexId>(line, tok[2], "vertex id"),
                                parse_int<VertexId>(line, tok[3], "vertex id")},
                       grade});
    } else {
      throw ParseError(line.number, tok[0].column, "unknown tower op '" + std::string(tok[0].text) + "'");
    }
  }
  if (!header) throw DataError("missing '# tower 1' header");
  return t;
}

std::string write_tower(const Tower& t) {
  std::string out = "# tower 1\n";
  for (const ElementaryOp& op : t.ops) {
    if (const auto* inc = std::get_if<Include>(&op.op)) {
      out += "i " + format_real(op.grade);
      append_simplex(out, inc->simplex);
    } else {
      const auto& c = std::get<Contract>(op.op);
      out += "c " + format_real(op.grade) + ' ' + std::to_string(c.from) + ' ' + std::to_string(c.to);
    }
    out += '\n';
  }
  return out;
}

// --- filtration -------------------------------------------------------------

Filtration parse_filtration(std::string_view text) {
  Filtration f;
  for (const Line& line : split_lines(text)) {
    if (line.comment || line.tokens.empty()) continue;
    if (line.tokens.size() < 2) throw ParseError(line.number, 0, "cell needs a grade and vertices");
    const double grade = parse_finite(line, line.tokens[0]);
    f.cells.push_back({parse_simplex(line, std::span(line.tokens).subspan(1)), grade});
  }
  return f;
}

std::string write_filtration(const Filtration& f) {
  std::string out;
  for (const FiltrationCell& c : f.cells) {
    out += format_real(c.grade);
    append_simplex(out, c.simplex);
    out += '\n';
  }
  return out;
}

// --- persistence diagram ----------------------------------------------------

PersistenceDiagram parse_diagram(std::string_view text) {
  PersistenceDiagram pd;
  for (const Line& line : split_lines(text)) {
    if (line.comment || line.tokens.empty()) continue;
    if (line.tokens.size() != 3) throw ParseError(line.number, 0, "expected '<dim> <birth> <death>'");
    PersistencePair p;
    p.dim = parse_int<int>(line, line.tokens[0], "dimension");
    if (p.dim < 0) throw ParseError(line.number, line.tokens[0].column, "negative dimension");
    p.birth = parse_finite(line, line.tokens[1]);
    p.death = parse_real(line, line.tokens[2]);
    if (p.death == -kInfinity) throw ParseError(line.number, line.tokens[2].column, "death is -inf");
    if (p.death < p.birth) throw ParseError(line.number, line.tokens[2].column, "death before birth");
    pd.pairs.push_back(p);
  }
  pd.normalize();
  return pd;
}

std::string write_diagram(const PersistenceDiagram& pd) {
  PersistenceDiagram sorted = pd;
  sorted.normalize();
  std::string out;
  for (const PersistencePair& p : sorted.pairs) {
    out += std::to_string(p.dim) + ' ' + format_real(p.birth) + ' ' + format_real(p.death) + '\n';
  }
  return out;
}

// --- grades, trace, retraction ----------------------------------------------

std::vector<double> parse_grades(std::string_view text) {
  std::vector<double> grades;
  for (const Line& line : split_lines(text)) {
    if (line.comment) continue;
    for (const Token& t : line.tokens) grades.push_back(parse_finite(line, t));
  }
  validate_grades(grades);
  return grades;
}

CollapseTrace parse_trace(std::string_view text) {
  CollapseTrace t;
  for (const Line& line : split_lines(text)) {
    if (line.comment || line.tokens.empty()) continue;
    if (line.tokens.size() != 3) throw ParseError(line.number, 0, "expected '<r|c> <dominated> <dominating>'");
    CollapseStep step{};
    if (line.tokens[0].text == "r") {
      step.kind = CollapseStep::Kind::Row;
    } else if (line.tokens[0].text == "c") {
      step.kind = CollapseStep::Kind::Column;
    } else {
      throw ParseError(line.number, line.tokens[0].column, "unknown trace entry");
    }
    step.dominated = parse_int<std::uint32_t>(line, line.tokens[1], "id");
    step.dominating = parse_int<std::uint32_t>(line, line.tokens[2], "id");
    t.steps.push_back(step);
  }
  return t;
}

std::string write_trace(const CollapseTrace& t) {
  std::string out;
  for (const CollapseStep& s : t.steps) {
    out += s.kind == CollapseStep::Kind::Row ? 'r' : 'c';
    out += ' ' + std::to_string(s.dominated) + ' ' + std::to_string(s.dominating) + '\n';
  }
  return out;
}

std::string write_retraction(const RetractionMap& r) {
  std::string out;
  for (std::size_t i = 0; i < r.domain().size(); ++i) {
    out += std::to_string(r.domain()[i]) + ' ' + std::to_string(r.targets()[i]) + '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace coretower
