#include <gtest/gtest.h>

#include <cmath>

#include "coretower/rips.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace coretower;

TEST(Distances, UnitSquare) {
  const auto pts = fixture::unit_square();
  const DistanceMatrix d = pairwise_distances(pts);
  EXPECT_EQ(d(0, 1), 1.0);
  EXPECT_EQ(d(1, 2), 1.0);
  EXPECT_EQ(d(0, 2), std::sqrt(2.0));
  EXPECT_EQ(d(1, 3), std::sqrt(2.0));
  EXPECT_EQ(d(2, 2), 0.0);
  EXPECT_EQ(d.max_distance(), std::sqrt(2.0));
  EXPECT_EQ(d.min_positive_distance(), 1.0);
}

TEST(Distances, SinglePointAndErrors) {
  const std::vector<Point> one{{3.0, 4.0}};
  const DistanceMatrix d = pairwise_distances(one);
  EXPECT_EQ(d.size(), 1U);
  EXPECT_EQ(d(0, 0), 0.0);
  EXPECT_EQ(d.min_positive_distance(), kInfinity);
  const std::vector<Point> mixed{{0, 0}, {1, 0, 0}};
  EXPECT_THROW((void)pairwise_distances(mixed), DataError);
  EXPECT_THROW((void)pairwise_distances(std::vector<Point>{}), DataError);
}

TEST(Distances, MatchesLongDoubleRecompute) {
  oracle::Rng rng(11);
  const auto pts = oracle::random_points(rng, 30, 3);
  const DistanceMatrix d = pairwise_distances(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      long double s = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        const long double diff = static_cast<long double>(pts[i][k]) - pts[j][k];
        s += diff * diff;
      }
      EXPECT_NEAR(d(i, j), static_cast<double>(std::sqrt(s)), 1e-12);
      EXPECT_EQ(d(i, j), d(j, i));
    }
  }
}

TEST(Distances, MatrixValidation) {
  EXPECT_THROW(DistanceMatrix(2, {0, 1, 2, 0}), DataError);   // asymmetric
  EXPECT_THROW(DistanceMatrix(2, {0, -1, -1, 0}), DataError); // negative
  EXPECT_THROW(DistanceMatrix(2, {1, 1, 1, 0}), DataError);   // diagonal
  EXPECT_THROW(DistanceMatrix(2, {0, 1, 1}), DataError);      // size
  const DistanceMatrix d = DistanceMatrix::from_lower_triangle({{}, {1.0}, {1.0, 1.0}});
  EXPECT_EQ(d(2, 1), 1.0);
  EXPECT_EQ(d(0, 2), 1.0);
}

TEST(Schedule, Grades) {
  EXPECT_EQ((SnapshotSchedule{0.5, 0.5, 1.5}.grades()), (std::vector<double>{0.5, 1.0, 1.5}));
  EXPECT_EQ((SnapshotSchedule{0.1, 0.005, 0.5}.grades().size()), 81U);
  EXPECT_EQ((SnapshotSchedule{0.1, 0.1, 1.0}.grades().size()), 10U);
  EXPECT_EQ((SnapshotSchedule{0.2, 1.0, 0.2}.grades()), (std::vector<double>{0.2}));
  // never past the end, even with a large remainder
  const auto g = SnapshotSchedule{0.0, 0.3, 1.0}.grades();
  EXPECT_EQ(g.size(), 4U);
  EXPECT_LE(g.back(), 1.0);
  EXPECT_THROW((void)(SnapshotSchedule{0.0, 0.0, 1.0}.grades()), DataError);
  EXPECT_THROW((void)(SnapshotSchedule{1.0, 0.1, 0.5}.grades()), DataError);
}

TEST(Schedule, ExplicitGrades) {
  EXPECT_NO_THROW(validate_grades(std::vector<double>{0.1, 0.3, 0.7}));
  EXPECT_THROW(validate_grades(std::vector<double>{}), DataError);
  EXPECT_THROW(validate_grades(std::vector<double>{0.1, 0.1}), DataError);
  EXPECT_THROW(validate_grades(std::vector<double>{0.3, 0.1}), DataError);
  EXPECT_THROW(validate_grades(std::vector<double>{0.1, kInfinity}), DataError);
}

TEST(Rips, UnitSquareSnapshots) {
  const auto pts = fixture::unit_square();
  const DistanceMatrix d = pairwise_distances(pts);
  const ComplexMatrix k0 = rips_snapshot(d, 0.5);
  EXPECT_EQ(k0.stats(), (ComplexStats{4, 4, 0, 1}));
  const ComplexMatrix k1 = rips_snapshot(d, 1.0);
  EXPECT_EQ(oracle::column_set(k1), (oracle::SimplexSet{{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  EXPECT_EQ(oracle::column_set(k1), oracle::brute_force_cliques(d, 1.0));
  const ComplexMatrix k2 = rips_snapshot(d, 1.5);
  EXPECT_EQ(oracle::column_set(k2), (oracle::SimplexSet{{0, 1, 2, 3}}));

  const std::vector<double> grades{0.5, 1.0, 1.5};
  const auto seq = rips_snapshots(d, grades);
  ASSERT_EQ(seq.size(), 3U);
  EXPECT_EQ(seq[0], k0);
  EXPECT_EQ(seq[1], k1);
  EXPECT_EQ(seq[2], k2);
}

TEST(Rips, ClosedThreshold) {
  const DistanceMatrix d = DistanceMatrix::from_lower_triangle({{}, {0.25}});
  EXPECT_EQ(rips_snapshot(d, 0.25).num_cols(), 1U);
  EXPECT_EQ(rips_snapshot(d, std::nextafter(0.25, 0.0)).num_cols(), 2U);
}

TEST(Rips, BelowSmallestDistanceIsVertexSet) {
  oracle::Rng rng(5);
  const DistanceMatrix d = pairwise_distances(oracle::random_points(rng, 9));
  const double t = d.min_positive_distance() / 2;
  for (const ComplexMatrix& k : rips_snapshots(d, SnapshotSchedule{t / 4, t / 4, t})) {
    EXPECT_EQ(k.stats(), (ComplexStats{9, 9, 0, 1}));
  }
}

class RipsProperties : public ::testing::TestWithParam<int> {};

TEST_P(RipsProperties, CliquesMatchBruteForce) {
  oracle::Rng rng(300 + static_cast<std::uint64_t>(GetParam()));
  const std::size_t n = 1 + rng.below(15);
  const DistanceMatrix d = pairwise_distances(oracle::random_points(rng, n));
  for (double t : {0.0, 0.1, 0.2, 0.35, 0.5, 0.8, 1.5}) {
    const NeighborhoodGraph g(d, t);
    const auto cliques = maximal_cliques(g);
    EXPECT_TRUE(std::is_sorted(cliques.begin(), cliques.end()));
    EXPECT_EQ(oracle::SimplexSet(cliques.begin(), cliques.end()), oracle::brute_force_cliques(d, t)) << "t=" << t;
    EXPECT_EQ(oracle::column_set(rips_snapshot(d, t)), oracle::brute_force_cliques(d, t));
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) edges += d(i, j) <= t ? 1 : 0;
    }
    EXPECT_EQ(g.num_edges(), edges);
  }
  const ComplexMatrix full = rips_snapshot(d, d.max_distance());
  EXPECT_EQ(full.num_cols(), 1U);
  EXPECT_EQ(full.stats().d, static_cast<int>(n) - 1);
}

TEST_P(RipsProperties, SnapshotsAreNested) {
  oracle::Rng rng(400 + static_cast<std::uint64_t>(GetParam()));
  const std::size_t n = 2 + rng.below(9);
  const DistanceMatrix d = pairwise_distances(oracle::random_points(rng, n));
  const auto seq = rips_snapshots(d, SnapshotSchedule{0.05, 0.05, 0.6}, 3);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const auto now = seq[i].expand_all_simplices();
    const auto next = seq[i + 1].expand_all_simplices();
    const oracle::SimplexSet later(next.begin(), next.end());
    for (const Simplex& s : now) EXPECT_TRUE(later.contains(s));
    EXPECT_EQ(seq[i].num_rows(), n);
  }
}

TEST_P(RipsProperties, WorkerCountDoesNotMatter) {
  oracle::Rng rng(500 + static_cast<std::uint64_t>(GetParam()));
  const DistanceMatrix d = pairwise_distances(oracle::random_points(rng, 25));
  const SnapshotSchedule s{0.05, 0.02, 0.4};
  const auto one = rips_snapshots(d, s, 1);
  EXPECT_EQ(rips_snapshots(d, s, 2), one);
  EXPECT_EQ(rips_snapshots(d, s, 8), one);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RipsProperties, ::testing::Range(0, 20));

TEST(ParallelFor, RethrowsLowestIndex) {
  try {
    parallel_for(50, 4, [](std::size_t i) {
      if (i == 7 || i == 30) throw DataError("boom " + std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "boom 7");
  }
}
