#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace oracle {
namespace {

// Dense GF(2) vector.
struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void flip(std::size_t i) { w[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool get(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1U; }
  void add(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
  }
  // Highest set index, or -1.
  long top() const {
    for (std::size_t i = w.size(); i-- > 0;) {
      if (w[i] != 0) return static_cast<long>(i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w[i])));
    }
    return -1;
  }
};

// Incremental echelon basis.
class Echelon {
 public:
  // Returns true when `v` was independent of the basis so far.
  bool insert(Bits v) {
    for (long t = v.top(); t >= 0; t = v.top()) {
      auto it = pivots_.find(t);
      if (it == pivots_.end()) {
        pivots_.emplace(t, std::move(v));
        return true;
      }
      v.add(it->second);
    }
    return false;
  }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<long, Bits> pivots_;
};

std::size_t rank_of(const std::vector<Bits>& vectors) {
  Echelon e;
  for (const Bits& v : vectors) e.insert(v);
  return e.rank();
}

using Index = std::map<Simplex, std::size_t>;

Bits boundary(const Simplex& s, const Index& faces) {
  Bits b(faces.size());
  for (const Simplex& f : s.facets()) b.flip(faces.at(f));
  return b;
}

// Basis of the kernel of the boundary map on `chains` (k-simplices), as
// vectors over the k-simplex index `own`.
std::vector<Bits> cycle_basis(const std::vector<Simplex>& chains, const Index& own, const Index& faces) {
  std::vector<Bits> out;
  std::map<long, std::pair<Bits, Bits>> pivots;  // low -> (reduced boundary, combination)
  for (const Simplex& s : chains) {
    Bits comb(own.size());
    comb.flip(own.at(s));
    if (s.size() == 1) {
      out.push_back(comb);
      continue;
    }
    Bits b = boundary(s, faces);
    for (long t = b.top(); t >= 0; t = b.top()) {
      auto it = pivots.find(t);
      if (it == pivots.end()) break;
      b.add(it->second.first);
      comb.add(it->second.second);
    }
    const long t = b.top();
    if (t < 0) {
      out.push_back(comb);
    } else {
      pivots.emplace(t, std::make_pair(b, comb));
    }
  }
  return out;
}

}  // namespace

std::vector<Simplex> random_simplices(Rng& rng, std::size_t n, std::size_t count, std::size_t max_size) {
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = 1 + rng.below(std::min(max_size, n));
    std::vector<VertexId> all(n);
    std::iota(all.begin(), all.end(), VertexId{0});
    std::shuffle(all.begin(), all.end(), rng.engine);
    all.resize(size);
    out.emplace_back(all);
  }
  return out;
}

std::vector<Point> random_points(Rng& rng, std::size_t n, std::size_t dim) {
  std::vector<Point> out(n, Point(dim));
  for (auto& p : out) {
    for (double& x : p) x = rng.uniform();
  }
  return out;
}

std::vector<Point> random_circle_points(Rng& rng, std::size_t n) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    out.push_back({std::cos(a), std::sin(a)});
  }
  return out;
}

std::vector<Simplex> random_complex(Rng& rng, std::size_t max_vertices) {
  const std::size_t n = 1 + rng.below(max_vertices);
  if (rng.coin()) return random_simplices(rng, n, 1 + rng.below(12), 1 + rng.below(5));
  const auto d = coretower::pairwise_distances(random_points(rng, n));
  const SimplexSet cliques = brute_force_cliques(d, rng.uniform(0.15, 0.8));
  return {cliques.begin(), cliques.end()};
}

SimplexSet maximal_by_pairs(const std::vector<Simplex>& simplices) {
  SimplexSet out;
  for (const Simplex& a : simplices) {
    bool maximal = true;
    for (const Simplex& b : simplices) {
      if (a != b && a.is_face_of(b)) maximal = false;
    }
    if (maximal) out.insert(a);
  }
  return out;
}

SimplexSet powerset_union(const std::vector<Simplex>& generators) {
  SimplexSet out;
  for (const Simplex& g : generators) {
    const std::size_t k = g.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<VertexId> face;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1U) face.push_back(g[i]);
      }
      out.insert(Simplex(face));
    }
  }
  return out;
}

SimplexSet column_set(const coretower::ComplexMatrix& m) {
  return {m.columns().begin(), m.columns().end()};
}

std::vector<std::size_t> betti_by_rank(const SimplexSet& complex) {
  std::size_t top = 0;
  for (const Simplex& s : complex) top = std::max(top, s.size());
  std::vector<Index> index(top + 1);  // by vertex count
  for (const Simplex& s : complex) index[s.size()].emplace(s, index[s.size()].size());
  // rank of the boundary map from (k+1)-vertex simplices.
  std::vector<std::size_t> rank(top + 2, 0);
  for (std::size_t k = 2; k <= top; ++k) {
    std::vector<Bits> cols;
    for (const auto& [s, i] : index[k]) cols.push_back(boundary(s, index[k - 1]));
    rank[k] = rank_of(cols);
  }
  std::vector<std::size_t> betti;
  for (std::size_t k = 1; k <= top; ++k) betti.push_back(index[k].size() - rank[k] - rank[k + 1]);
  return betti;
}

std::vector<std::size_t> trim(std::vector<std::size_t> betti) {
  while (!betti.empty() && betti.back() == 0) betti.pop_back();
  return betti;
}

SimplexSet brute_force_cliques(const coretower::DistanceMatrix& d, double t) {
  const std::size_t n = d.size();
  if (n > 15) throw std::invalid_argument("brute_force_cliques: n > 15");
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && d(i, j) <= t) adj[i] |= 1U << j;
    }
  }
  SimplexSet out;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::uint32_t common = (1U << n) - 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) common &= adj[i] | (1U << i);
    }
    if ((common & mask) != mask) continue;  // not a clique
    if (common != mask) continue;           // extendable
    std::vector<VertexId> verts;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) verts.push_back(static_cast<VertexId>(i));
    }
    out.insert(Simplex(verts));
  }
  return out;
}

Filtration exact_rips_filtration(const coretower::DistanceMatrix& d, double limit) {
  const std::size_t n = d.size();
  if (n > 14) throw std::invalid_argument("exact_rips_filtration: n > 14");
  Filtration f;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<VertexId> verts;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) verts.push_back(static_cast<VertexId>(i));
    }
    double grade = 0.0;
    for (std::size_t a = 0; a < verts.size(); ++a) {
      for (std::size_t b = a + 1; b < verts.size(); ++b) grade = std::max(grade, d(verts[a], verts[b]));
    }
    if (grade <= limit) f.cells.push_back({Simplex(verts), grade});
  }
  std::sort(f.cells.begin(), f.cells.end(), [](const auto& x, const auto& y) {
    if (x.grade != y.grade) return x.grade < y.grade;
    return coretower::DimLexLess{}(x.simplex, y.simplex);
  });
  return f;
}

PersistenceDiagram rank_function_diagram(const Filtration& f) {
  std::vector<double> grades;
  for (const auto& c : f.cells) grades.push_back(c.grade);
  std::sort(grades.begin(), grades.end());
  grades.erase(std::unique(grades.begin(), grades.end()), grades.end());
  const std::size_t T = grades.size();
  const auto grade_index = [&](double g) {
    return static_cast<std::size_t>(std::lower_bound(grades.begin(), grades.end(), g) - grades.begin());
  };

  std::size_t top = 0;
  for (const auto& c : f.cells) top = std::max(top, c.simplex.size());
  // by vertex count: index of all simplices, and simplices entering at each grade
  std::vector<Index> index(top + 2);
  std::vector<std::vector<std::vector<Simplex>>> entering(top + 2, std::vector<std::vector<Simplex>>(T));
  for (const auto& c : f.cells) {
    const std::size_t k = c.simplex.size();
    index[k].emplace(c.simplex, index[k].size());
    entering[k][grade_index(c.grade)].push_back(c.simplex);
  }

  PersistenceDiagram pd;
  for (std::size_t k = 1; k <= top; ++k) {
    // beta[i][j] = rank H(K_i) -> H(K_j), i <= j
    std::vector<std::vector<long>> beta(T, std::vector<long>(T, 0));
    std::vector<Simplex> chains_i;
    for (std::size_t i = 0; i < T; ++i) {
      chains_i.insert(chains_i.end(), entering[k][i].begin(), entering[k][i].end());
      const auto z = cycle_basis(chains_i, index[k], index[k - 1]);
      std::vector<Bits> bounds;
      for (std::size_t j = 0; j < T; ++j) {
        for (const Simplex& s : entering[k + 1][j]) bounds.push_back(boundary(s, index[k]));
        if (j < i) continue;
        const std::size_t rb = rank_of(bounds);
        std::vector<Bits> both = bounds;
        both.insert(both.end(), z.begin(), z.end());
        beta[i][j] = static_cast<long>(rank_of(both) - rb);
      }
    }
    const auto b = [&](long i, long j) -> long { return i < 0 ? 0 : beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    const int dim = static_cast<int>(k) - 1;
    for (long i = 0; i < static_cast<long>(T); ++i) {
      for (long j = i + 1; j < static_cast<long>(T); ++j) {
        const long mu = b(i, j - 1) - b(i, j) - b(i - 1, j - 1) + b(i - 1, j);
        if (mu < 0) throw std::logic_error("negative multiplicity");
        for (long r = 0; r < mu; ++r) pd.pairs.push_back({dim, grades[i], grades[j]});
      }
      const long mu = b(i, T - 1) - b(i - 1, T - 1);
      if (mu < 0) throw std::logic_error("negative multiplicity");
      for (long r = 0; r < mu; ++r) pd.pairs.push_back({dim, grades[i], coretower::kInfinity});
    }
  }
  pd.normalize();
  return pd;
}

double brute_force_bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
  std::vector<double> ea;
  std::vector<double> eb;
  std::vector<std::pair<double, double>> fa;
  std::vector<std::pair<double, double>> fb;
  for (const auto& p : a.in_dimension(dim)) {
    if (p.essential()) ea.push_back(p.birth); else fa.emplace_back(p.birth, p.death);
  }
  for (const auto& p : b.in_dimension(dim)) {
    if (p.essential()) eb.push_back(p.birth); else fb.emplace_back(p.birth, p.death);
  }
  if (ea.size() != eb.size()) return coretower::kInfinity;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

  const std::size_t p = fa.size();
  const std::size_t q = fb.size();
  const std::size_t n = p + q;
  if (n > 7) throw std::invalid_argument("brute_force_bottleneck: too many points");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // left: fa[0..p), diagonal copies of fb; right: fb[0..q), diagonal copies of fa
  const auto cost = [&](std::size_t l, std::size_t r) {
    if (l < p && r < q) {
      return std::max(std::abs(fa[l].first - fb[r].first), std::abs(fa[l].second - fb[r].second));
    }
    if (l < p) return r - q == l ? (fa[l].second - fa[l].first) / 2 : kInf;
    if (r < q) return l - p == r ? (fb[r].second - fb[r].first) / 2 : kInf;
    return 0.0;
  };
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = n == 0 ? 0.0 : kInf;
  do {
    double worst = 0.0;
    for (std::size_t l = 0; l < n; ++l) worst = std::max(worst, cost(l, perm[l]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::max(best, essential);
}

}  // namespace oracle
