#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "geoclust/convexity.hpp"
#include "geoclust/error.hpp"
#include "geoclust/instances.hpp"

using namespace geoclust;

namespace {

bf::Properties flags(const ConvexityVerdict& v) {
  bf::Properties p;
  for (const auto& x : v.violations) {
    if (x.property == Property::Connectivity) p.connectivity = false;
    if (x.property == Property::MetricMargin) p.margin = false;
    if (x.property == Property::Geodesic) p.geodesic = false;
  }
  return p;
}

Clustering random_clustering(std::mt19937_64& rng, std::size_t n, std::uint32_t k) {
  std::vector<ClusterId> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = v < k ? static_cast<ClusterId>(v) : rng() % k;
  std::shuffle(labels.begin(), labels.end(), rng);
  return Clustering(labels, k);
}

// True when some simple path of G(eps) between two members of cluster i,
// no longer than (1 + gamma) times their hop distance, leaves the cluster.
bool geodesic_breach(const SemimetricGraph& g, const Clustering& c, ClusterId i,
                     const Rational& eps, const Rational& gamma) {
  const auto d = bf::hops(g, eps);
  std::vector<std::vector<Node>> adj(g.size());
  for (const auto& e : g.edges()) {
    if (e.w <= eps) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  }
  bool breach = false;
  const auto members = c.members(i);
  for (const Node x : members) {
    for (const Node y : members) {
      if (x >= y || d[x][y] == bf::kInf) continue;
      const Rational bound = (1 + gamma) * d[x][y];
      const auto len = static_cast<std::uint32_t>(boost::multiprecision::numerator(bound) /
                                                  boost::multiprecision::denominator(bound));
      bf::simple_paths(adj, x, y, len, [&](const std::vector<Node>& path) {
        for (const Node v : path) breach = breach || c.labels[v] != i;
      });
    }
  }
  return breach;
}

// Per-cluster radii: connectivity and margin at the radius, geodesic at every
// distinct weight below it and at the radius itself.
bf::Properties generalized_brute(const SemimetricGraph& g, const Clustering& c,
                                 const std::vector<Rational>& radii, const Rational& beta,
                                 const Rational& gamma) {
  bf::Properties p;
  for (ClusterId i = 0; i < c.k; ++i) {
    std::vector<Rational> levels{radii[i]};
    for (const auto& w : bf::distinct_weights(g)) {
      if (w < radii[i]) levels.push_back(w);
    }
    for (const auto& eps : levels) {
      if (geodesic_breach(g, c, i, eps, gamma)) p.geodesic = false;
    }
    if (!bf::induced_connected(g, c.members(i), radii[i])) p.connectivity = false;
    for (const auto& e : g.edges()) {
      const bool cut = (c.labels[e.u] == i) != (c.labels[e.v] == i);
      if (cut && e.w <= beta * radii[i]) p.margin = false;
    }
  }
  return p;
}

void expect_same(const bf::Properties& got, const bf::Properties& want, const std::string& where) {
  EXPECT_EQ(got.connectivity, want.connectivity) << where;
  EXPECT_EQ(got.margin, want.margin) << where;
  EXPECT_EQ(got.geodesic, want.geodesic) << where;
}

}  // namespace

TEST(Convexity, AgreesWithPathEnumerationOnSmallGraphs) {
  std::mt19937_64 rng(41);
  const Rational betas[] = {Rational(1, 4), Rational(1, 2), Rational(1)};
  const Rational gammas[] = {Rational(1, 4), Rational(1, 2), Rational(1)};
  int rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 4 + trial % 6;
    const auto g = bf::random_graph(rng, n, 0.6, 4);
    const auto c = random_clustering(rng, n, 1 + trial % 3);
    const Rational eps(1 + trial % 4, 4);
    const auto& beta = betas[trial % 3];
    const auto& gamma = gammas[(trial / 3) % 3];
    const auto verdict = check_convex(g, c, eps, beta, gamma);
    expect_same(flags(verdict), bf::convex(g, c, eps, beta, gamma), "trial " + std::to_string(trial));
    EXPECT_EQ(verdict.ok, verdict.violations.empty());
    for (const auto& v : verdict.violations) EXPECT_TRUE(confirms(g, c, beta, gamma, v));
    rejected += !verdict.ok;
  }
  EXPECT_GT(rejected, 0);
  EXPECT_LT(rejected, 300);
}

TEST(Convexity, GeneralizedAgreesWithBruteForce) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const auto g = bf::random_graph(rng, n, 0.6, 4);
    const std::uint32_t k = 1 + trial % 3;
    const auto c = random_clustering(rng, n, k);
    std::vector<Rational> radii;
    for (std::uint32_t i = 0; i < k; ++i) radii.emplace_back(1 + rng() % 4, 4);
    const Rational beta(1, 2);
    const Rational gamma(1, 2);
    const auto verdict = check_convex_generalized(g, c, radii, beta, gamma);
    expect_same(flags(verdict), generalized_brute(g, c, radii, beta, gamma),
                "trial " + std::to_string(trial));
    for (const auto& v : verdict.violations) EXPECT_TRUE(confirms(g, c, beta, gamma, v));
  }
}

TEST(Convexity, SingleClusterOnlyNeedsConnectivity) {
  const SemimetricGraph path(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
  EXPECT_TRUE(check_convex(path, Clustering({0, 0, 0}, 1), Rational(1), Rational(1), Rational(1)).ok);
  const auto v = check_convex(path, Clustering({0, 0, 0}, 1), Rational(1, 2), Rational(1), Rational(1));
  ASSERT_EQ(v.violations.size(), 1U);
  EXPECT_EQ(v.violations[0].property, Property::Connectivity);
}

TEST(Convexity, BuiltInFamiliesAreConvex) {
  for (const char* family : {"whirl", "oort", "caterpillar", "complete-random", "radii-path"}) {
    const Instance inst = geoclust::generate(family, {}, 1);
    const auto verdict = check_instance(inst);
    EXPECT_TRUE(verdict.ok) << family;
  }
}

TEST(Convexity, WhirlFailsWhenTheMarginIsTooWide) {
  const Instance inst = generate("whirl", {}, 0);
  const auto verdict = check_convex(inst.graph, inst.truth, Rational(1), Rational(1), inst.params.gamma);
  EXPECT_FALSE(verdict.ok);
  EXPECT_FALSE(flags(verdict).margin);
}

TEST(Convexity, ViolatingFamiliesBreakExactlyTheirProperty) {
  const std::pair<const char*, Property> cases[] = {
      {"violate-connectivity", Property::Connectivity},
      {"violate-margin", Property::MetricMargin},
      {"violate-geodesic", Property::Geodesic},
  };
  for (const auto& [family, property] : cases) {
    const Instance inst = geoclust::generate(family, {}, 3);
    const auto verdict = check_instance(inst);
    ASSERT_FALSE(verdict.ok) << family;
    for (const auto& v : verdict.violations) {
      EXPECT_EQ(v.property, property) << family;
      EXPECT_TRUE(confirms(inst.graph, inst.truth, inst.params.beta, inst.params.gamma, v));
    }
    const auto expected = bf::convex(inst.graph, inst.truth, inst.params.radii.front(),
                                     inst.params.beta, inst.params.gamma);
    expect_same(flags(verdict), expected, family);
  }
}

TEST(Convexity, ConfirmsRejectsForgedWitnesses) {
  const SemimetricGraph g(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
  const Clustering c({0, 0, 1}, 2);
  const Rational half(1, 2);
  EXPECT_FALSE(confirms(g, c, half, half, {0, Property::Connectivity, Rational(1), {0, 1}}));
  EXPECT_FALSE(confirms(g, c, half, half, {0, Property::MetricMargin, Rational(1), {1, 2}}));
  EXPECT_TRUE(confirms(g, c, half, half, {0, Property::MetricMargin, Rational(2), {1, 2}}));
  EXPECT_FALSE(confirms(g, c, half, half, {0, Property::Geodesic, Rational(1), {0, 1}}));
  EXPECT_FALSE(confirms(g, c, half, half, {5, Property::Geodesic, Rational(1), {0, 1}}));
}

TEST(MinRadius, MatchesBothCharacterizations) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + trial % 8;
    const auto g = bf::random_graph(rng, n, 0.5, 8);
    const auto c = random_clustering(rng, n, 1 + trial % 3);
    for (const auto& members : c.clusters()) {
      const auto want = bf::min_radius(g, members);
      if (!want) {
        try {
          min_radius(g, members);
          ADD_FAILURE() << "expected Disconnected";
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::Disconnected);
        }
        continue;
      }
      EXPECT_EQ(min_radius(g, members), *want);
      // the induced and the ambient characterizations agree on convex
      // clusters only, so compare the weaker one as a lower bound
      const auto pairs = bf::min_radius_pairs(g, members);
      ASSERT_TRUE(pairs.has_value());
      EXPECT_LE(*pairs, *want);
    }
  }
}

TEST(MinRadius, AgreeOnConvexClusters) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = generate("random-convex", FamilyParams::parse("n=40,two_scale=1"), seed);
    for (const auto& members : inst.truth.clusters()) {
      EXPECT_EQ(min_radius(inst.graph, members), *bf::min_radius_pairs(inst.graph, members));
    }
  }
}

TEST(MinRadius, SingletonUsesTheSmallestWeight) {
  const SemimetricGraph g(3, {{0, 1, Rational(3)}, {1, 2, Rational(5, 2)}});
  EXPECT_EQ(min_radius(g, std::vector<Node>{2}), Rational(5, 2));
}

TEST(Convexity, ExpansionBudgetRaisesTooLarge) {
  const Instance inst = generate("violate-geodesic", FamilyParams::parse("n=20"), 0);
  CheckOptions options;
  options.expansion_budget = 1;
  try {
    check_instance(inst, options);
    ADD_FAILURE() << "budget was not enforced";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(Convexity, RejectsBadParameters) {
  const SemimetricGraph g(2, {{0, 1, Rational(1)}});
  const Clustering c({0, 1}, 2);
  EXPECT_THROW(check_convex(g, c, Rational(1), Rational(0), Rational(1)), Error);
  EXPECT_THROW(check_convex(g, c, Rational(1), Rational(1), Rational(3, 2)), Error);
  EXPECT_THROW(check_convex(g, c, Rational(0), Rational(1), Rational(1)), Error);
  EXPECT_THROW(check_convex(g, Clustering({0, 0, 0}, 1), Rational(1), Rational(1), Rational(1)), Error);
}
