#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "geoclust/error.hpp"
#include "geoclust/instances.hpp"
#include "geoclust/metrics.hpp"
#include "geoclust/recovery.hpp"

using namespace geoclust;

namespace {

// Checks the documented invariants of every intermediate state.
class InvariantObserver : public RecoveryObserver {
 public:
  explicit InvariantObserver(const Clustering& truth) : truth_(truth) {}

  void on_path(ClusterId i, const ThresholdGraph&, std::span<const Node>,
               std::span<const Node> path) override {
    ++paths;
    bool inside = true;
    for (const Node v : path) {
      const bool here = truth_.labels[v] == i;
      if (here && !inside) ++unprefixed;
      inside = inside && here;
    }
    if (inside) ++unprefixed;  // the path must reach outside C_i
  }

  void on_separator(const ThresholdGraph&, const SeparatorPair& sep) override {
    ++separators;
    const ClusterId j = truth_.labels[sep.u_j];
    for (const Node v : sep.s_i) breaches += truth_.labels[v] == j;
    for (const Node v : sep.s_j) breaches += truth_.labels[v] == sep.i;
  }

  void on_new_seed(ClusterId i, Node x, int) override { foreign_seeds += truth_.labels[x] == i; }

  int paths = 0;
  int unprefixed = 0;
  int separators = 0;
  int breaches = 0;
  int foreign_seeds = 0;

 private:
  const Clustering& truth_;
};

RecoveryReport run(const Instance& inst, OracleSession& oracle, const RecoveryOptions& options = {}) {
  if (inst.params.identical()) {
    return recover_clustering(inst.graph, inst.params.radii.front(), inst.params.beta,
                              inst.params.gamma, inst.seeds, oracle, options);
  }
  return recover_clustering2(inst.graph, inst.params.radii, inst.params.beta, inst.params.gamma,
                             inst.seeds, oracle, options);
}

}  // namespace

TEST(Mbs, ReturnsTheClusterPartOfZ) {
  // Two clusters on a line of unit steps; the cross edge 2-3 has weight 2.
  const SemimetricGraph g(5, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 3, Rational(2)},
                              {3, 4, Rational(1)}});
  const Clustering truth({0, 0, 0, 1, 1}, 2);
  OracleSession oracle(truth);
  const std::vector<Node> z{0, 1, 2, 3, 4};
  EXPECT_EQ(mbs(g, z, Rational(2), Rational(1, 2), 4, oracle), (std::vector<Node>{3, 4}));
  EXPECT_EQ(oracle.scq_count(), 2U);
  EXPECT_EQ(mbs(g, std::vector<Node>{0, 2}, Rational(2), Rational(1, 2), 1, oracle),
            (std::vector<Node>{0, 2}));
  EXPECT_EQ(oracle.scq_count(), 4U);
  EXPECT_TRUE(mbs(g, {}, Rational(2), Rational(1, 2), 1, oracle).empty());
}

TEST(Mbs, SpendsOneQueryPerComponent) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = bf::random_graph(rng, 15, 0.3, 4);
    std::vector<ClusterId> labels(15);
    for (auto& l : labels) l = rng() % 2;
    labels[0] = 0;
    labels[1] = 1;
    OracleSession oracle(Clustering(labels, 2));
    std::vector<Node> z;
    for (Node v = 0; v < 15; ++v) {
      if (rng() % 3) z.push_back(v);
    }
    const Rational eps(1), beta(1, 2);
    mbs(g, z, eps, beta, 0, oracle);
    std::vector<bool> keep(15, false);
    for (const Node v : z) keep[v] = true;
    const auto d = bf::hops(g, beta * eps, &keep);
    std::set<Node> roots;
    for (const Node v : z) {
      Node root = v;
      for (const Node u : z) {
        if (d[v][u] != bf::kInf) root = std::min(root, u);
      }
      roots.insert(root);
    }
    EXPECT_EQ(oracle.scq_count(), roots.size());
  }
}

TEST(FindCutEdge, EightNodePathWithPrefixThree) {
  const std::vector<Node> path{7, 3, 5, 0, 1, 2, 4, 6};
  std::vector<ClusterId> labels(8, 1);
  labels[7] = labels[3] = labels[5] = 0;
  OracleSession oracle(Clustering(labels, 2));
  const auto [a, b] = find_cut_edge(path, 7, oracle);
  EXPECT_EQ(a, 5U);
  EXPECT_EQ(b, 0U);
  EXPECT_LE(oracle.scq_count(), 3U);
}

TEST(FindCutEdge, EveryPrefixLength) {
  for (std::size_t len = 2; len <= 33; ++len) {
    for (std::size_t prefix = 1; prefix < len; ++prefix) {
      std::vector<Node> path(len);
      std::iota(path.begin(), path.end(), 0U);
      std::vector<ClusterId> labels(len, 1);
      for (std::size_t v = 0; v < prefix; ++v) labels[v] = 0;
      OracleSession oracle(Clustering(labels, 2));
      const auto edge = find_cut_edge(path, 0, oracle);
      EXPECT_EQ(edge, (std::pair<Node, Node>{prefix - 1, prefix}));
      EXPECT_LE(oracle.scq_count(), ceil_log2(len));
    }
  }
}

TEST(FindCutEdge, RejectsTrivialPath) {
  OracleSession oracle(Clustering({0}, 1));
  EXPECT_THROW(find_cut_edge(std::vector<Node>{0}, 0, oracle), Error);
}

TEST(Recovery, FamiliesAreRecoveredExactly) {
  for (const char* family : {"whirl", "oort", "caterpillar", "complete-random", "radii-path"}) {
    const Instance inst = generate(family, {}, 5);
    OracleSession oracle(inst.truth);
    const auto report = run(inst, oracle);
    EXPECT_EQ(report.predicted, inst.truth) << family;
  }
}

TEST(Recovery, IntermediateStatesKeepTheirInvariants) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = generate(
        "random-convex", FamilyParams::parse(seed % 2 ? "two_scale=1" : ""), seed);
    OracleSession oracle(inst.truth);
    InvariantObserver observer(inst.truth);
    RecoveryOptions options;
    options.observer = &observer;
    options.check_contracts = true;
    const auto report = run(inst, oracle, options);
    EXPECT_EQ(report.predicted, inst.truth) << seed;
    EXPECT_EQ(observer.unprefixed, 0) << seed;
    EXPECT_EQ(observer.breaches, 0) << seed;
    EXPECT_EQ(observer.foreign_seeds, 0) << seed;
    EXPECT_EQ(observer.paths, observer.separators);
    EXPECT_EQ(report.phases.verify_scq, 2U * observer.paths);
    EXPECT_EQ(report.scq_used + report.phases.verify_scq, oracle.scq_count());
  }
}

TEST(Recovery, StaysWithinTheQueryBudget) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = generate("random-convex", FamilyParams::parse("n=60"), seed);
    OracleSession oracle(inst.truth);
    const auto report = run(inst, oracle);
    PackingCalculator packing(inst.graph, kMaxBallCap);
    const auto budget = query_budget(packing, inst.graph.size(), inst.truth.k, inst.params.beta,
                                     inst.params.gamma);
    EXPECT_LE(report.scq_used, budget) << seed;
    EXPECT_EQ(report.seed_used, 0U);
  }
}

TEST(Recovery, NaiveAndAmortizedSeedSearchAgree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = generate("random-convex", FamilyParams::parse("n=50"), seed);
    OracleSession fast(inst.truth);
    OracleSession slow(inst.truth);
    RecoveryOptions naive;
    naive.naive_find_new_seed = true;
    const auto a = run(inst, fast);
    const auto b = run(inst, slow, naive);
    EXPECT_EQ(a.predicted, b.predicted);
    EXPECT_EQ(a.phases.cut_edge_scq, b.phases.cut_edge_scq);
    EXPECT_EQ(a.phases.separator_scq, b.phases.separator_scq);
    EXPECT_EQ(a.phases.iterations, b.phases.iterations);
    EXPECT_LE(a.phases.new_seed_scq, b.phases.new_seed_scq);
  }
}

TEST(Recovery, SingleClusterNeedsNoQueries) {
  const SemimetricGraph g(4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 3, Rational(1)}});
  OracleSession oracle(Clustering({0, 0, 0, 0}, 1));
  const auto report = recover_clustering(g, Rational(1), Rational(1, 2), Rational(1, 2),
                                         std::vector<Node>{2}, oracle);
  EXPECT_EQ(report.predicted.labels, (std::vector<ClusterId>{0, 0, 0, 0}));
  EXPECT_EQ(report.scq_used, 0U);
}

TEST(Recovery, CompleteGraphNeedsAtLeastNMinusTwoQueries) {
  const Instance inst = generate("complete-random", FamilyParams::parse("n=64"), 2);
  OracleSession oracle(inst.truth);
  const auto report = run(inst, oracle);
  EXPECT_EQ(report.predicted, inst.truth);
  EXPECT_GE(report.scq_used, inst.graph.size() - 2);
}

TEST(Recovery, MultiRadiusMatchesIdenticalWhenRadiiAgree) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Instance inst = generate("random-convex", {}, seed);
    OracleSession a(inst.truth);
    OracleSession b(inst.truth);
    const auto one = run(inst, a);
    const std::vector<Rational> radii(inst.truth.k, inst.params.radii.front());
    const auto two = recover_clustering2(inst.graph, radii, inst.params.beta, inst.params.gamma,
                                         inst.seeds, b);
    EXPECT_EQ(one.predicted, two.predicted);
  }
}

TEST(Recovery, ResultDoesNotDependOnTheSeedPolicy) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst =
        generate("random-convex", FamilyParams::parse("k=2,two_scale=1"), seed);
    OracleSession first(inst.truth);
    OracleSession adversarial(inst.truth, SeedPolicy::parse("adversarial-minmax"));
    EXPECT_EQ(run(inst, first).predicted, run(inst, adversarial).predicted);
  }
}

TEST(Recovery, RejectsBadSeeds) {
  const Instance inst = generate("whirl", {}, 0);
  OracleSession oracle(inst.truth);
  std::vector<Node> seeds{inst.seeds[0]};
  EXPECT_THROW(recover_clustering(inst.graph, Rational(1), inst.params.beta, inst.params.gamma,
                                  seeds, oracle),
               Error);
  seeds = {0, 100000};
  EXPECT_THROW(recover_clustering(inst.graph, Rational(1), inst.params.beta, inst.params.gamma,
                                  seeds, oracle),
               Error);
}

TEST(Recovery, NonConvexInputIsReportedNotSilentlyAccepted) {
  const Instance inst = generate("violate-geodesic", {}, 0);
  OracleSession oracle(inst.truth);
  try {
    const auto report = run(inst, oracle);
    EXPECT_NE(report.predicted, inst.truth);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PartitionError);
  }
}

TEST(QueryBudget, Formula) {
  EXPECT_EQ(ceil_log2(1), 0U);
  EXPECT_EQ(ceil_log2(2), 1U);
  EXPECT_EQ(ceil_log2(5), 3U);
  EXPECT_EQ(ceil_log2(64), 6U);
  std::vector<WeightedEdge> edges;
  for (Node u = 0; u < 6; ++u) {
    for (Node v = u + 1; v < 6; ++v) edges.push_back({u, v, Rational(1)});
  }
  const SemimetricGraph g(6, edges);
  PackingCalculator packing(g);
  // 4 * 3 + 4 * 6 + 4 * 6
  EXPECT_EQ(query_budget(packing, 6, 2, Rational(1, 2), Rational(1, 2)), 60U);
}
