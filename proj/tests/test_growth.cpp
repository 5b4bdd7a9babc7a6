#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "leafgrow/growth.hpp"
#include "leafgrow/io/json.hpp"
#include "support.hpp"

using namespace leafgrow;
using leafgrow::oracle::Fixture;

TEST(BatchSize, ZeroMeanAlwaysZero) {
  auto rng = make_stream(1, "batch");
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(draw_batch_size(rng, 0.0), 0u);
  EXPECT_THROW(draw_batch_size(rng, -1.0), invalid_parameter);
}

TEST(BatchSize, PoissonMoments) {
  auto rng = make_stream(2024, "batch");
  constexpr int n = 100000;
  std::vector<double> xs;
  xs.reserve(n);
  for (int i = 0; i < n; ++i) xs.push_back(static_cast<double>(draw_batch_size(rng, 2.0)));
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / (n - 1);
  EXPECT_LT(std::abs(mean - 2.0), 3.0 * std::sqrt(2.0 / n));
  EXPECT_LT(std::abs(var - 2.0), 0.05 * 2.0);
}

TEST(BatchSize, DeterministicPerSeed) {
  auto a = make_stream(7, "batch", 3);
  auto b = make_stream(7, "batch", 3);
  auto c = make_stream(7, "targets", 3);
  std::vector<std::uint64_t> xa, xb, xc;
  for (int i = 0; i < 50; ++i) {
    xa.push_back(draw_batch_size(a, 2.0));
    xb.push_back(draw_batch_size(b, 2.0));
    xc.push_back(draw_batch_size(c, 2.0));
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
}

TEST(DeriveSeed, LabelsAndRunsSeparate) {
  EXPECT_NE(derive_seed(0, "batch", 0), derive_seed(0, "targets", 0));
  EXPECT_NE(derive_seed(0, "batch", 0), derive_seed(0, "batch", 1));
  EXPECT_NE(derive_seed(0, "batch", 0), derive_seed(1, "batch", 0));
  EXPECT_EQ(derive_seed(5, "batch", 2), derive_seed(5, "batch", 2));
}

TEST(SampleTargets, EdgeCases) {
  auto rng = make_stream(3, "targets");
  const auto d = LeafDistribution::uniform({4, 8, 9});
  EXPECT_TRUE(sample_targets(rng, d, 0).empty());
  const auto point = LeafDistribution::point_mass({4, 8, 9}, 8);
  EXPECT_EQ(sample_targets(rng, point, 25), std::vector<VertexId>(25, 8));
  const auto last = LeafDistribution::point_mass({4, 8, 9}, 9);
  EXPECT_EQ(sample_targets(rng, last, 25), std::vector<VertexId>(25, 9));
}

TEST(SampleTargets, EmpiricalFrequencies) {
  auto rng = make_stream(11, "targets");
  const LeafDistribution d{{1, 2}, {0.25, 0.75}};
  const auto draws = sample_targets(rng, d, 100000);
  const auto ones = std::count(draws.begin(), draws.end(), VertexId{1});
  EXPECT_NEAR(static_cast<double>(ones) / 100000.0, 0.25, 0.01);
}

TEST(SampleTargets, UniformPriorPassesChiSquareOnFixture) {
  Fixture f;
  GrowthConfig c;
  const auto d = policy_distribution(f.tree, c, 4);
  auto rng = make_stream(99, "targets");
  constexpr std::size_t n = 100000;
  const auto draws = sample_targets(rng, d, n);
  double chi2 = 0.0;
  for (VertexId leaf : Fixture::leaves()) {
    const double observed = static_cast<double>(std::count(draws.begin(), draws.end(), leaf));
    const double expected = n / 5.0;
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  // Upper 0.001 critical value of chi-square with 4 degrees of freedom.
  EXPECT_LT(chi2, 18.467);
}

TEST(PolicyDistribution, BayesCasesOnFixture) {
  Fixture f;
  GrowthConfig c;
  c.policy = BayesCase::prior;
  const auto prior = policy_distribution(f.tree, c, 4);
  for (double p : prior.p) EXPECT_DOUBLE_EQ(p, 0.2);

  c.policy = BayesCase::global;
  const auto global = policy_distribution(f.tree, c, 4);
  const double g[] = {2, 6, 6, 5, 3};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(global.p[i], g[i] / 22.0, 1e-15);

  c.policy = BayesCase::local;
  const auto local = policy_distribution(f.tree, c, 4);
  const double l[] = {1, 6, 6, 3, 1};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(local.p[i], l[i] / 17.0, 1e-15);
}

TEST(PolicyDistribution, MixtureAndOscillation) {
  Fixture f;
  GrowthConfig c;
  c.policy = BayesCase::global;
  c.q = 1.0;
  for (double p : policy_distribution(f.tree, c, 4).p) EXPECT_DOUBLE_EQ(p, 0.2);
  c.q = OscillatingQ{0.0, 1.0, 10};
  for (double p : policy_distribution(f.tree, c, 0).p) EXPECT_DOUBLE_EQ(p, 0.2);
  const auto at_trough = policy_distribution(f.tree, c, 5);
  EXPECT_NEAR(at_trough.p[1], 6.0 / 22.0, 1e-15);
}

TEST(PolicyDistribution, RootOnlyFallsBackToPrior) {
  GrowthConfig c;
  for (auto policy : {BayesCase::prior, BayesCase::global, BayesCase::local}) {
    c.policy = policy;
    const auto d = policy_distribution(Tree{}, c, 1);
    EXPECT_EQ(d.leaves, std::vector<VertexId>{root_id});
    EXPECT_EQ(d.p, std::vector<double>{1.0});
  }
}

TEST(PolicyDistribution, BranchPolicy) {
  Fixture f;
  GrowthConfig c;
  c.policy = BranchPolicy{BranchWeighting::in_degree, {SharpenSpec::Kind::power, 2.0}};
  const auto d = policy_distribution(f.tree, c, 4);
  const double r[] = {5, 18, 18, 9, 5};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(d.p[i], r[i] / 55.0, 1e-15);
}

TEST(Run, SingleIntervalIsRootOnly) {
  GrowthConfig c;
  c.intervals = 1;
  c.poisson_mean = 2;
  const auto traj = run(c);
  EXPECT_TRUE(traj.frames.empty());
  EXPECT_EQ(traj.tree.size(), 1u);
  EXPECT_EQ(traj.final_distribution.p, std::vector<double>{1.0});
}

TEST(Run, DeterministicForSameSeed) {
  GrowthConfig c;
  c.intervals = 10;
  c.poisson_mean = 2;
  c.seed = 42;
  for (auto policy : {BayesCase::prior, BayesCase::global, BayesCase::local}) {
    c.policy = policy;
    EXPECT_EQ(io::export_trajectory_json(run(c)), io::export_trajectory_json(run(c)));
  }
}

TEST(Run, BatchSizesIndependentOfPolicy) {
  GrowthConfig c;
  c.intervals = 25;
  c.poisson_mean = 2;
  c.seed = 7;
  c.policy = BayesCase::prior;
  const auto reference = run(c).batch_sizes();
  ASSERT_EQ(reference.size(), 24u);
  for (Policy p : {Policy{BayesCase::global}, Policy{BayesCase::local},
                   Policy{BranchPolicy{BranchWeighting::cumulative_in_degree, {SharpenSpec::Kind::exponential, 0.5}}}}) {
    c.policy = p;
    EXPECT_EQ(run(c).batch_sizes(), reference) << policy_label(p);
  }
}

TEST(Run, TrajectoryInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (auto policy : {BayesCase::prior, BayesCase::global, BayesCase::local}) {
      GrowthConfig c;
      c.intervals = 15;
      c.poisson_mean = 2.5;
      c.seed = seed;
      c.policy = policy;
      const auto traj = run(c);

      const auto sizes = traj.batch_sizes();
      EXPECT_EQ(traj.tree.size(), 1 + std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0}));
      EXPECT_EQ(replay(traj.batches()), traj.tree);

      // Replay step by step: every attachment targets a pre-batch leaf and
      // every sampling distribution is normalized and strictly positive.
      Tree partial;
      for (const auto& f : traj.frames) {
        EXPECT_EQ(f.distribution.leaves, partial.leaves());
        EXPECT_NEAR(f.distribution.total(), 1.0, 1e-12);
        for (double p : f.distribution.p) EXPECT_GT(p, 0.0);
        for (const auto& a : f.attachments) EXPECT_TRUE(partial.is_leaf(a.parent));
        std::vector<VertexId> targets;
        for (const auto& a : f.attachments) targets.push_back(a.parent);
        EXPECT_EQ(partial.append_batch(f.t, targets), f.new_vertices);
      }
    }
  }
}

TEST(Run, TimeDependentRate) {
  GrowthConfig c;
  c.intervals = 8;
  c.rate = [](TimeIndex t) { return t % 2 == 0 ? 0.0 : 3.0; };
  const auto traj = run(c);
  for (const auto& f : traj.frames) {
    if (f.t % 2 == 0) {
      EXPECT_TRUE(f.new_vertices.empty());
    }
  }
}

TEST(Run, RejectsInvalidConfig) {
  GrowthConfig c;
  c.intervals = 0;
  EXPECT_THROW(run(c), invalid_parameter);
  c.intervals = 5;
  c.q = 1.5;
  EXPECT_THROW(run(c), invalid_parameter);
  c.q = 0.0;
  c.poisson_mean = -1.0;
  EXPECT_THROW(run(c), invalid_parameter);
}
