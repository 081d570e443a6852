#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "specnet/clustering.hpp"

using namespace specnet;

namespace {

double recomputed_objective(const Matrix& pts, const Clustering& c) {
  double total = 0;
  for (Index i = 0; i < pts.rows(); ++i) total += (pts.row(i) - c.centers.row(c.labels[i] - 1)).squaredNorm();
  return total;
}

std::vector<int> random_labels(std::mt19937_64& gen, int n, int k) {
  std::uniform_int_distribution<int> lab(1, k);
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int& l : out) l = lab(gen);
  return out;
}

}  // namespace

TEST(KMeans, SeparatedDuplicates) {
  Matrix pts(9, 2);
  pts << 0, 0, 0, 0, 0, 0, 5, 5, 5, 5, 5, 5, -4, 6, -4, 6, -4, 6;
  RngStream rng(1, 0);
  const auto c = kmeans(pts, 3, {}, rng);
  EXPECT_EQ(c.objective, 0.0);
  for (int g = 0; g < 3; ++g) {
    EXPECT_EQ(c.labels[3 * g], c.labels[3 * g + 1]);
    EXPECT_EQ(c.labels[3 * g], c.labels[3 * g + 2]);
  }
  EXPECT_NE(c.labels[0], c.labels[3]);
  EXPECT_NE(c.labels[3], c.labels[6]);
  EXPECT_NE(c.labels[0], c.labels[6]);
}

TEST(KMeans, SingleCluster) {
  std::mt19937_64 gen(2);
  const Matrix pts = oracle::random_matrix(gen, 15, 3);
  RngStream rng(2, 0);
  const auto c = kmeans(pts, 1, {}, rng);
  const Vector mean = pts.colwise().mean().transpose();
  EXPECT_LT((c.centers.row(0).transpose() - mean).norm(), 1e-12);
  const double total = (pts.rowwise() - mean.transpose()).squaredNorm();
  EXPECT_NEAR(c.objective, total, 1e-10);
  for (int l : c.labels) EXPECT_EQ(l, 1);
}

TEST(KMeans, MatchesExhaustiveSearchTinyN) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 gen(300 + seed);
    const Matrix pts = oracle::random_matrix(gen, 12, 1);
    RngStream rng(3, seed);
    const auto c = kmeans(pts, 2, {}, rng);
    EXPECT_NEAR(c.objective, oracle::exhaustive_two_means(pts), 1e-10) << "seed " << seed;
  }
}

TEST(KMeans, RejectsBadK) {
  const Matrix pts = Matrix::Zero(3, 2);
  RngStream rng(4, 0);
  EXPECT_THROW(kmeans(pts, 4, {}, rng), InvalidArgument);
  EXPECT_THROW(kmeans(pts, 0, {}, rng), InvalidArgument);
}

TEST(KMeansProperty, ObjectiveTraceAndBestOfRestarts) {
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = std::uniform_int_distribution<int>(2, 60)(gen);
    const int d = std::uniform_int_distribution<int>(1, 4)(gen);
    const int k = std::uniform_int_distribution<int>(1, std::min(n, 6))(gen);
    Matrix pts = oracle::random_matrix(gen, n, d);
    if (rep % 3 == 0) pts.topRows(n / 2).setZero();  // force duplicate-heavy inputs
    RngStream rng(6, static_cast<std::uint64_t>(rep));
    const KMeansOptions opts{5, 100};
    const auto best = kmeans(pts, k, opts, rng);
    ASSERT_NEAR(best.objective, recomputed_objective(pts, best), 1e-9 * (1 + best.objective));
    for (int l : best.labels) ASSERT_TRUE(l >= 1 && l <= k);
    for (int r = 0; r < opts.restarts; ++r) {
      RngStream sub = rng.derive(static_cast<std::uint64_t>(r));
      const auto run = kmeans_single_run(pts, k, opts.max_iter, sub);
      for (std::size_t t = 1; t < run.objective_trace.size(); ++t) {
        ASSERT_LE(run.objective_trace[t], run.objective_trace[t - 1] * (1 + 1e-12) + 1e-12);
      }
      ASSERT_LE(best.objective, run.result.objective);
    }
  }
}

TEST(KMeans, Deterministic) {
  std::mt19937_64 gen(7);
  const Matrix pts = oracle::random_matrix(gen, 40, 2);
  RngStream a(8, 1);
  RngStream b(8, 1);
  EXPECT_EQ(kmeans(pts, 3, {}, a).labels, kmeans(pts, 3, {}, b).labels);
}

TEST(Hungarian, SmallCases) {
  Matrix c1(2, 2);
  c1 << 1, 2, 2, 1;
  auto a = hungarian(c1);
  EXPECT_EQ(a.perm, (std::vector<int>{0, 1}));
  EXPECT_EQ(a.cost, 2);
  Matrix c2(2, 2);
  c2 << 4, 1, 2, 3;
  a = hungarian(c2);
  EXPECT_EQ(a.perm, (std::vector<int>{1, 0}));
  EXPECT_EQ(a.cost, 3);
  EXPECT_THROW(hungarian(Matrix::Zero(2, 3)), InvalidArgument);
}

TEST(Hungarian, SixBySixBruteForce) {
  std::mt19937_64 gen(9);
  const Matrix cost = oracle::random_matrix(gen, 6, 6);
  EXPECT_NEAR(hungarian(cost).cost, oracle::brute_force_assignment(cost), 1e-12);
}

TEST(HungarianProperty, EqualsBruteForce) {
  std::mt19937_64 gen(10);
  for (int rep = 0; rep < 500; ++rep) {
    const int k = std::uniform_int_distribution<int>(1, 7)(gen);
    Matrix cost = oracle::random_matrix(gen, k, k, 10.0);
    if (rep % 4 == 0) cost = cost.array().round();  // ties
    const auto a = hungarian(cost);
    std::vector<int> sorted = a.perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < k; ++i) ASSERT_EQ(sorted[i], i);
    double direct = 0;
    for (int i = 0; i < k; ++i) direct += cost(i, a.perm[i]);
    ASSERT_EQ(a.cost, direct);
    ASSERT_NEAR(a.cost, oracle::brute_force_assignment(cost), 1e-9);
  }
}

TEST(Discrepancy, Examples) {
  EXPECT_EQ(discrepancy({1, 2, 2, 1}, {1, 2, 2, 1}), 0.0);
  EXPECT_EQ(discrepancy({1, 1, 2, 2}, {2, 2, 1, 1}), 0.0);
  EXPECT_EQ(discrepancy({1, 1, 2, 2}, {1, 2, 1, 2}), 0.5);
  EXPECT_THROW(discrepancy({1, 2}, {1}), InvalidArgument);
  EXPECT_THROW(discrepancy({1, 2}, {1, 3}, 2), InvalidArgument);
  EXPECT_THROW(discrepancy({0, 1}, {1, 1}), InvalidArgument);
}

TEST(Discrepancy, UnequalAlphabets) {
  // c' uses a single label: the best match leaves the smaller block wrong.
  EXPECT_NEAR(discrepancy({1, 1, 1, 2, 2}, {1, 1, 1, 1, 1}), 0.4, 1e-15);
}

TEST(DiscrepancyProperty, EqualsBruteForce) {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 500; ++rep) {
    const int k = std::uniform_int_distribution<int>(1, 5)(gen);
    const int n = std::uniform_int_distribution<int>(1, 40)(gen);
    const auto c = random_labels(gen, n, k);
    const auto cp = random_labels(gen, n, k);
    ASSERT_NEAR(discrepancy(c, cp, k), oracle::brute_force_discrepancy(c, cp, k), 1e-15);
  }
}

TEST(DiscrepancyProperty, Pseudometric) {
  std::mt19937_64 gen(12);
  for (int rep = 0; rep < 1000; ++rep) {
    const int k = std::uniform_int_distribution<int>(1, 4)(gen);
    const int n = std::uniform_int_distribution<int>(1, 30)(gen);
    const auto a = random_labels(gen, n, k);
    const auto b = random_labels(gen, n, k);
    const auto c = random_labels(gen, n, k);
    const double ab = oracle::brute_force_discrepancy(a, b, k);
    ASSERT_NEAR(discrepancy(a, b, k), ab, 1e-15);
    ASSERT_NEAR(discrepancy(b, a, k), ab, 1e-15);
    ASSERT_LE(discrepancy(a, c, k), ab + discrepancy(b, c, k) + 1e-12);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<int> relabeled(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) relabeled[i] = perm[a[i] - 1];
    ASSERT_EQ(discrepancy(a, relabeled, k), 0.0);
  }
}

namespace {

CommunityModel two_block(Index n) {
  Matrix centers(2, 2);
  centers << 0.8, 0.1, 0.1, 0.8;
  return CommunityModel::make(make_balanced_memberships(n, 2), centers);
}

}  // namespace

TEST(RecoverCommunities, ZeroNoiseIsExact) {
  const auto model = two_block(60);
  RngStream rng(13, 0);
  const std::vector<NoiseSpec> specs(3, NoiseSpec::gaussian(0));
  const auto nets = generate_collection(model, specs, rng);
  RngStream krng = rng.derive(1);
  const auto r = recover_communities(nets, 2, 2, RhoVariant::subgamma, {}, krng);
  EXPECT_EQ(discrepancy(model.labels, r.clustering.labels, 2), 0.0);
}

TEST(RecoverCommunities, SeparatedRegimeExactRecovery) {
  const auto model = two_block(600);
  const std::vector<NoiseSpec> specs(4, NoiseSpec::gaussian(0.25));
  int exact = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    RngStream rng(14, t);
    const auto nets = generate_collection(model, specs, rng);
    RngStream krng = rng.derive(1);
    const auto r = recover_communities(nets, 2, 2, RhoVariant::subgamma, {}, krng);
    exact += discrepancy(model.labels, r.clustering.labels, 2) == 0.0;
  }
  EXPECT_GE(exact, 19);
}

TEST(RecoverCommunities, NetworkOrderDoesNotMatter) {
  const auto model = two_block(80);
  const std::vector<NoiseSpec> specs{NoiseSpec::gaussian(0.5), NoiseSpec::laplace(1), NoiseSpec::gaussian(2)};
  RngStream rng(15, 0);
  const auto nets = generate_collection(model, specs, rng);
  NetworkCollection rev;
  rev.networks.assign(nets.networks.rbegin(), nets.networks.rend());
  RngStream k1(16, 0);
  RngStream k2(16, 0);
  const auto a = recover_communities(nets, 2, 2, RhoVariant::subgamma, {}, k1);
  const auto b = recover_communities(rev, 2, 2, RhoVariant::subgamma, {}, k2);
  EXPECT_EQ(discrepancy(a.clustering.labels, b.clustering.labels, 2), 0.0);
}
