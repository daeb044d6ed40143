#include "coretower/tower.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace coretower {

std::size_t Tower::num_includes() const {
  return static_cast<std::size_t>(std::count_if(ops.begin(), ops.end(), [](const ElementaryOp& o) {
    return std::holds_alternative<Include>(o.op);
  }));
}

std::size_t Tower::num_contracts() const { return ops.size() - num_includes(); }

// --- TowerState -------------------------------------------------------------

void TowerState::include(const Simplex& s) {
  if (s.size() == 0) throw DataError("include of an empty simplex");
  for (VertexId v : s) {
    if (used_.contains(v) && !live_.contains(v)) {
      throw DataError("include references contracted vertex " + std::to_string(v));
    }
  }
  if (simplices_.contains(s)) throw DataError("include of a simplex already present");
  for (const Simplex& f : s.facets()) {
    if (!simplices_.contains(f)) throw DataError("include of a simplex with a missing facet");
  }
  simplices_.insert(s);
  for (VertexId v : s) {
    live_.insert(v);
    used_.insert(v);
  }
}

void TowerState::contract(VertexId from, VertexId to) {
  if (from == to) throw DataError("contraction of a vertex onto itself");
  if (!live_.contains(from) || !live_.contains(to)) {
    throw DataError("contraction " + std::to_string(from) + " -> " + std::to_string(to) +
                    " involves a vertex that is not live");
  }
  std::unordered_set<Simplex, SimplexHash> next;
  next.reserve(simplices_.size());
  std::vector<VertexId> buf;
  for (const Simplex& s : simplices_) {
    if (!s.contains(from)) {
      next.insert(s);
      continue;
    }
    buf.assign(s.begin(), s.end());
    std::replace(buf.begin(), buf.end(), from, to);
    std::sort(buf.begin(), buf.end());
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    next.insert(Simplex::from_sorted(buf));
  }
  simplices_ = std::move(next);
  live_.erase(from);
}

std::vector<Simplex> TowerState::simplices() const {
  std::vector<Simplex> out(simplices_.begin(), simplices_.end());
  std::sort(out.begin(), out.end(), DimLexLess{});
  return out;
}

void validate_tower(const Tower& t) {
  TowerState state;
  for (std::size_t i = 0; i < t.ops.size(); ++i) {
    const ElementaryOp& op = t.ops[i];
    try {
      if (i > 0 && op.grade < t.ops[i - 1].grade) throw DataError("grade decreases");
      if (const auto* inc = std::get_if<Include>(&op.op)) {
        state.include(inc->simplex);
      } else {
        const auto& c = std::get<Contract>(op.op);
        state.contract(c.from, c.to);
      }
    } catch (const DataError& e) {
      throw DataError("tower op " + std::to_string(i) + ": " + e.what());
    }
  }
}

// --- assembly ---------------------------------------------------------------

Tower assemble_core_tower(std::span<const ComplexMatrix> cores,
                          std::span<const RetractionMap> retractions,
                          std::span<const double> grades, std::size_t cap) {
  if (cores.size() != retractions.size() || cores.size() != grades.size()) {
    throw DataError("cores, retractions and grades must have equal length");
  }
  for (std::size_t i = 1; i < grades.size(); ++i) {
    if (!(grades[i - 1] < grades[i])) throw DataError("grades must be strictly increasing");
  }

  Tower tower;
  if (cores.empty()) return tower;

  VertexId next_fresh = 0;
  for (std::size_t j = 0; j < cores.size(); ++j) {
    for (VertexId v : cores[j].row_ids()) next_fresh = std::max(next_fresh, v + 1);
    for (VertexId v : retractions[j].domain()) next_fresh = std::max(next_fresh, v + 1);
  }

  TowerState state;
  // core vertex id -> tower vertex id, for the current core
  std::map<VertexId, VertexId> phi;

  const auto emit_include = [&](Simplex s, double grade) {
    state.include(s);
    tower.ops.push_back({Include{std::move(s)}, grade});
  };
  const auto map_simplex = [&](const Simplex& s) {
    std::vector<VertexId> out;
    out.reserve(s.size());
    for (VertexId v : s) out.push_back(phi.at(v));
    return Simplex(std::move(out));
  };
  const auto include_missing = [&](const ComplexMatrix& c, double grade) {
    std::vector<Simplex> mapped;
    for (const Simplex& s : c.expand_all_simplices(cap)) mapped.push_back(map_simplex(s));
    std::sort(mapped.begin(), mapped.end(), DimLexLess{});
    for (Simplex& s : mapped) {
      if (!state.contains(s)) emit_include(std::move(s), grade);
    }
    if (state.size() != mapped.size()) {
      throw std::logic_error("retraction is not simplicial onto the next core at grade " +
                             format_real(grade));
    }
  };

  for (VertexId v : cores[0].row_ids()) phi[v] = v;
  include_missing(cores[0], grades[0]);

  for (std::size_t j = 1; j < cores.size(); ++j) {
    const ComplexMatrix& next = cores[j];
    const RetractionMap& r = retractions[j];
    const double grade = grades[j];

    // Preimages in the tower of each image vertex.
    std::map<VertexId, std::vector<VertexId>> groups;
    for (const auto& [x, tx] : phi) {
      if (!r.contains(x)) {
        throw DataError("retraction at grade " + format_real(grade) +
                        " does not cover vertex " + std::to_string(x) +
                        " (snapshots must be nested)");
      }
      const VertexId y = r(x);
      if (!next.row_position(y)) {
        throw std::logic_error("retraction image " + std::to_string(y) +
                               " is not a vertex of the next core");
      }
      groups[y].push_back(tx);
    }

    std::map<VertexId, VertexId> next_phi;
    std::vector<std::pair<VertexId, VertexId>> contractions;
    for (auto& [y, pre] : groups) {
      VertexId target;
      if (auto it = phi.find(y); it != phi.end()) {
        target = it->second;
      } else if (!state.was_used(y)) {
        emit_include(Simplex{y}, grade);
        target = y;
      } else {
        target = *std::min_element(pre.begin(), pre.end());
      }
      next_phi[y] = target;
      for (VertexId p : pre) {
        if (p != target) contractions.emplace_back(p, target);
      }
    }
    std::sort(contractions.begin(), contractions.end());
    for (const auto& [from, to] : contractions) {
      state.contract(from, to);
      tower.ops.push_back({Contract{from, to}, grade});
    }

    for (VertexId y : next.row_ids()) {
      if (next_phi.contains(y)) continue;
      if (!state.was_used(y)) {
        next_phi[y] = y;
      } else {
        next_phi[y] = next_fresh++;
      }
    }
    phi = std::move(next_phi);
    include_missing(next, grade);
  }
  return tower;
}

// --- tower -> filtration ----------------------------------------------------

namespace {

class ConingBuilder {
 public:
  explicit ConingBuilder(std::size_t cap) : cap_(cap) {}

  void include(const Simplex& raw, double grade) {
    std::vector<VertexId> verts;
    verts.reserve(raw.size());
    for (VertexId v : raw) verts.push_back(resolve(v));
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (VertexId v : verts) {
      known_.insert(v);
      live_.insert(v);
    }
    add_closure(verts, grade);
  }

  void contract(VertexId from, VertexId to, double grade) {
    if (!known_.contains(from)) throw DataError("contraction of unknown vertex " + std::to_string(from));
    if (!known_.contains(to)) throw DataError("contraction onto unknown vertex " + std::to_string(to));
    const VertexId u = resolve(from);
    const VertexId v = resolve(to);
    if (u == v) return;

    std::vector<std::size_t> star;
    for (std::size_t idx : incident_[u]) {
      if (is_active(cells_[idx].simplex)) star.push_back(idx);
    }
    std::vector<VertexId> buf;
    for (std::size_t idx : star) {
      const Simplex& s = cells_[idx].simplex;
      if (s.contains(v)) continue;
      buf.assign(s.begin(), s.end());
      buf.insert(std::lower_bound(buf.begin(), buf.end(), v), v);
      add_closure(buf, grade);
    }
    alias_[u] = v;
    live_.erase(u);
  }

  Filtration finish() && { return Filtration{std::move(cells_)}; }

 private:
  VertexId resolve(VertexId v) {
    auto it = alias_.find(v);
    if (it == alias_.end()) return v;
    const VertexId root = resolve(it->second);
    it->second = root;
    return root;
  }

  bool is_active(const Simplex& s) const {
    return std::all_of(s.begin(), s.end(), [&](VertexId v) { return live_.contains(v); });
  }

  // Adds `verts` and every missing face, smaller faces first.
  void add_closure(const std::vector<VertexId>& verts, double grade) {
    if (index_.contains(Simplex::from_sorted(verts))) return;
    const std::size_t k = verts.size();
    std::vector<Simplex> faces;
    faces.reserve((std::size_t{1} << k) - 1);
    std::vector<VertexId> face;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      face.clear();
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (std::uint64_t{1} << i)) face.push_back(verts[i]);
      }
      faces.push_back(Simplex::from_sorted(face));
    }
    std::sort(faces.begin(), faces.end(), DimLexLess{});
    for (Simplex& f : faces) {
      if (index_.contains(f)) continue;
      if (cells_.size() >= cap_) throw CapExceeded(cells_.size() + 1, cap_);
      const std::size_t idx = cells_.size();
      index_.emplace(f, idx);
      for (VertexId v : f) incident_[v].push_back(idx);
      cells_.push_back({std::move(f), grade});
    }
  }

  std::size_t cap_;
  std::vector<FiltrationCell> cells_;
  std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
  std::unordered_map<VertexId, std::vector<std::size_t>> incident_;
  std::unordered_map<VertexId, VertexId> alias_;
  std::unordered_set<VertexId> known_;
  std::unordered_set<VertexId> live_;
};

}  // namespace

Filtration tower_to_filtration(const Tower& t, std::size_t cap) {
  ConingBuilder builder(cap);
  for (std::size_t i = 0; i < t.ops.size(); ++i) {
    const ElementaryOp& op = t.ops[i];
    if (i > 0 && op.grade < t.ops[i - 1].grade) {
      throw DataError("tower op " + std::to_string(i) + ": grade decreases");
    }
    if (const auto* inc = std::get_if<Include>(&op.op)) {
      builder.include(inc->simplex, op.grade);
    } else {
      const auto& c = std::get<Contract>(op.op);
      builder.contract(c.from, c.to, op.grade);
    }
  }
  return std::move(builder).finish();
}

Tower filtration_to_tower(const Filtration& f) {
  Tower t;
  t.ops.reserve(f.cells.size());
  for (const FiltrationCell& c : f.cells) t.ops.push_back({Include{c.simplex}, c.grade});
  return t;
}

}  // namespace coretower
